"""A walk through the abacus coordinates of one affine permutation.

Run: python3 demos/01_abacus_tour.py
"""
from affine_avoid.abacus import (
    bias_of,
    cone_coords,
    delta_vector,
    enumerate_biases,
    from_cone_coords,
    gap_vector,
    length_from_gaps,
)
from affine_avoid.affine_core import coxeter_length, make_affine

w = make_affine([-12, -8, 2, 9, 13, 17], 6)
print("base window      ", list(w.window))
print("Z-notation       ", [w(i) for i in range(-5, 13)])

# The window is sorted, so w is its own minimal coset representative.
print("delta vector     ", delta_vector(w))
print("gap vector       ", gap_vector(w).gaps)
print("bias (delta mod) ", bias_of(w).delta)

# Length two ways: inversion count, and the weighted gap formula.
print("length           ", coxeter_length(w), "=", length_from_gaps(gap_vector(w).gaps))

c = cone_coords(w)
print("cone coordinates  bias", c.bias.delta, "t", c.t)
assert from_cone_coords(c) == w

print()
print("the", len(enumerate_biases(4)), "biases for n = 4 (delta, offset, weight):")
for b in enumerate_biases(4):
    print("  ", b.delta, b.offset, b.weight)
