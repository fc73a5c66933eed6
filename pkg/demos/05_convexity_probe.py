"""Experimental: is the union of assignment regions convex in each cell?

Nothing here feeds the classifiers; it just scans a box and reports.
"""
from affine_avoid.affine_core import all_patterns, strand_count
from affine_avoid.enumeration import probe_union_convexity

for p in ["321", "2431", "24351"]:
    rep = probe_union_convexity(p, 3, 8)
    verdict = "convex in every cell" if not rep.violations else f"violations: {rep.violations}"
    print(f"{p:>6}: {rep.cells} cells, box 0..{rep.box}, {verdict}")

bad = [
    str(p)
    for p in all_patterns(5)
    if strand_count(p) == 3 and probe_union_convexity(p, 3, 5).violations
]
print("three-strand patterns in S5 with a non-convex union (box 5):", bad or "none")
