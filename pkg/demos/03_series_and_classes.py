"""Certified generating series and the three behaviours of avoider counts."""
from affine_avoid.abacus import bott_series
from affine_avoid.enumeration import classify_combinatorial, pattern_series
from affine_avoid.series import classify_behavior, expand

print("Bott series, n = 3:", bott_series(3))
print("  ", expand(bott_series(3), 10))
print()

for p in ["12", "321", "2431", "24351", "4321"]:
    s = pattern_series(p, 3)
    rep = classify_behavior(s.avoiders)
    line = f"{p:>6}  avoiders {s.avoiders}"
    print(line)
    print(f"        {expand(s.avoiders, 14)}")
    extra = f", period {rep.period} from index {rep.preperiod}" if rep.period else ""
    print(f"        {rep.kind}{extra}; rule-based: {classify_combinatorial(p, 3).kind}")
    print(f"        fitted against {s.verified_to + 1} exact counts")

# The same kinds persist at n = 4, where each series takes a few seconds.
s = pattern_series("321", 4)
print("\n321 at n = 4:", s.avoiders)
