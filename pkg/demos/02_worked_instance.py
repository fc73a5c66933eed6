"""The pattern 24351 inside w = [-9, 4, 11], seen three ways.

1. Directly, as positions in Z-notation.
2. As a point (t, c) of the inequality system for the strand assignment
   [2,3,2,2,1] in the base cell.
3. Through the projection onto t alone.
"""
from affine_avoid.abacus import cone_coords
from affine_avoid.affine_core import (
    contains_pattern,
    is_instance,
    make_affine,
    parabolic_decompose,
)
from affine_avoid.pattern_geometry import (
    build_system,
    projected_system,
    shifts,
    strand_assignments,
    window_witness,
)

w = make_affine([-9, 4, 11], 3)
inst = contains_pattern(w, "24351")
print("first occurrence found:", inst.positions, "values", inst.values)
# another one, spread over three windows
spread = (-4, -3, -1, 5, 7)
print("also an occurrence:    ", spread, is_instance(w, "24351", spread), [w(i) for i in spread])

u, v = parabolic_decompose(w)
coords = cone_coords(u)
print("flattening", v, " bias", coords.bias.delta, " t", coords.t)

pis = strand_assignments("24351", 3)
print(len(pis), "strand assignments into 3 strands:", ", ".join(map(str, pis)))

pi = (2, 3, 2, 2, 1)
print("shifts of", list(pi), ":", " ".join(str(s) for s in shifts("24351", pi)))

system = build_system("24351", pi, coords.bias, v, 3)
print("\nsystem in (t, c):")
print(system.to_text())

c = window_witness(coords, "24351", pi, v)
print("\nwindow assignment found by shortest paths:", c)
print("(c = (0,1,2,1) works too; the system has more than one solution)")

print("\nprojection onto t:")
print(projected_system("24351", pi, coords.bias, v, 3).to_text(["t1", "t2"]))
