import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_avoid.abacus import enumerate_biases
from affine_avoid.pattern_geometry import projected_system, strand_assignments
from affine_avoid.polyhedra import (
    Grading,
    NotPointedError,
    Polyhedron,
    bounds,
    count_by_weight,
    eliminate,
    find_integer_point,
    format_row,
    has_ray_direction,
    integer_point_exists,
    is_feasible,
    parse_row,
    recession_rays,
    remove_redundant,
    vertices,
    vertices_and_rays,
)


def P(dim, *rows):
    return Polyhedron.make(dim, rows)


ORTHANT2 = Polyhedron.orthant(2)


class TestEliminate:
    def test_simple(self):
        got = eliminate(P(2, ((1, -1), 0), ((0, 1), 1)), 1)
        assert got.rows == (((1,), 1),)

    def test_infeasible_marker(self):
        got = eliminate(P(1, ((1,), 1), ((-1,), 0)), 0)
        assert got.is_trivially_empty

    def test_hand_projection_2431(self):
        from affine_avoid.abacus import base_bias

        got = projected_system("2431", (3, 3, 2, 1), base_bias(3), "123", 3)
        assert set(got.rows) == {((1, 0), 2), ((0, 1), 1)}


def _rational_feasible_2d(poly):
    # pointed: nonempty iff some vertex exists
    return bool(vertices(poly))


rows2 = st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-4, 4))


@settings(max_examples=150, deadline=None)
@given(st.lists(rows2, max_size=5))
def test_elimination_preserves_feasibility(extra):
    poly = Polyhedron.make(2, list(ORTHANT2.rows) + extra)
    assert is_feasible(poly) == _rational_feasible_2d(poly) if not poly.is_trivially_empty else True
    if not poly.is_trivially_empty:
        assert is_feasible(poly) == (not eliminate(poly, 1).is_trivially_empty and is_feasible(eliminate(poly, 1)))


class TestGenerators:
    def test_orthant(self):
        gens = vertices_and_rays(ORTHANT2)
        assert [(g.kind, tuple(g.coords)) for g in gens] == [("vertex", (0, 0)), ("ray", (1, 0)), ("ray", (0, 1))]

    def test_shifted_orthant(self):
        poly = P(2, ((1, 0), 2), ((0, 1), 1), ((1, 0), 0), ((0, 1), 0))
        gens = vertices_and_rays(poly)
        assert [g.coords for g in gens if g.kind == "vertex"] == [(2, 1)]
        assert sorted(g.coords for g in gens if g.kind == "ray") == [(0, 1), (1, 0)]

    def test_triangle(self):
        poly = P(2, ((-1, -1), -1), ((1, 0), 0), ((0, 1), 0))
        gens = vertices_and_rays(poly)
        assert sorted(g.coords for g in gens if g.kind == "vertex") == [(0, 0), (0, 1), (1, 0)]
        assert not [g for g in gens if g.kind == "ray"]

    def test_rays(self):
        assert sorted(recession_rays(P(2, ((1, -1), 0), ((1, 0), 0), ((0, 1), 0)))) == [(1, 0), (1, 1)]

    def test_not_pointed(self):
        with pytest.raises(NotPointedError):
            recession_rays(P(2, ((1, 0), 0)))

    def test_empty_still_reports_cone(self):
        poly = P(2, ((1, 1), 1), ((-1, -1), 0), ((1, 0), 0), ((0, 1), 0))
        assert not integer_point_exists(poly)
        assert recession_rays(poly) == []  # the cone {x+y=0, x,y>=0} is the origin

    @settings(max_examples=60, deadline=None)
    @given(st.lists(rows2, max_size=4))
    def test_round_trip(self, extra):
        poly = Polyhedron.make(2, list(ORTHANT2.rows) + extra)
        if poly.is_trivially_empty:
            return
        verts = vertices(poly)
        for v in verts:
            assert poly.contains(v)
            tight = [a for a, b in poly.rows if sum(x * y for x, y in zip(a, v)) == b]
            from affine_avoid.polyhedra import rank

            assert rank(tight) == 2
        for r in (recession_rays(poly) if verts else []):
            assert all(sum(x * y for x, y in zip(a, r)) >= 0 for a, _ in poly.rows)


class TestIntegerPoints:
    def test_parity(self):
        assert not integer_point_exists(P(1, ((2,), 1), ((-2,), -1)))

    def test_simple(self):
        assert integer_point_exists(P(2, ((1, 0), 1), ((1, 0), 0), ((0, 1), 0)))

    def test_thin_strip(self):
        # 1/3 <= x - y/2 <= 2/3 has no integer point with 0 <= y <= 1 ... but one at y = 1? no
        poly = P(2, ((3, 0), 1), ((-3, 0), -2), ((0, 1), 0))
        assert not integer_point_exists(poly)

    def test_found_point_is_member(self):
        poly = P(3, ((2, -1, 0), 1), ((0, 3, -2), 1), ((1, 1, 1), 5), ((-1, -1, -1), -9))
        pt = find_integer_point(poly)
        assert pt is not None and poly.contains(pt)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-6, 6)), max_size=4))
    def test_against_box_scan(self, extra):
        box = [((1, 0), 0), ((0, 1), 0), ((-1, 0), -6), ((0, -1), -6)]
        poly = Polyhedron.make(2, box + extra)
        brute = any(poly.contains(p) for p in itertools.product(range(7), repeat=2))
        assert integer_point_exists(poly) == brute


class TestRayDirection:
    def test_321(self):
        proj = projected_system("321", (3, 2, 1), n=3)
        assert has_ray_direction(proj, 0) and has_ray_direction(proj, 1)

    def test_24351_missing_t2(self):
        proj = projected_system("24351", (2, 3, 2, 2, 1), n=3)
        assert has_ray_direction(proj, 0)
        assert not has_ray_direction(proj, 1)

    def test_empty(self):
        assert not has_ray_direction(Polyhedron.empty(2), 0)


class TestCounting:
    def test_orthant(self):
        assert count_by_weight(ORTHANT2, Grading((2, 2)), 4) == [1, 0, 2, 0, 3]

    def test_both_n3_cells(self):
        total = [0] * 6
        for b in enumerate_biases(3):
            for i, c in enumerate(count_by_weight(ORTHANT2, Grading((2, 2), b.weight), 5)):
                total[i] += c
        assert total == [1, 1, 2, 2, 3, 3]

    def test_empty(self):
        assert count_by_weight(Polyhedron.empty(2), Grading((1, 1)), 3) == [0, 0, 0, 0]

    def test_nonpositive_weight(self):
        with pytest.raises(ValueError):
            Grading((1, 0))

    def test_random_boxes(self):
        rng = random.Random(7)
        from affine_avoid.series import Polynomial, RationalFunction, expand

        for _ in range(20):
            d = rng.randint(1, 3)
            lower = [rng.randint(0, 3) for _ in range(d)]
            w = [rng.randint(1, 3) for _ in range(d)]
            rows = [(tuple(int(i == j) for j in range(d)), lo) for i, lo in enumerate(lower)]
            got = count_by_weight(Polyhedron.make(d, rows), Grading(tuple(w)), 15)
            den = Polynomial([1])
            for wi in w:
                den = den * Polynomial.one_minus_x_power(wi)
            shift = sum(a * b for a, b in zip(w, lower))
            assert got == expand(RationalFunction.make(Polynomial.x_power(shift), den), 15)


def test_projected_counts_match_oracle():
    """Per strand assignment: graded counts of the projected polyhedron equal
    the elements of that cell containing p through that assignment."""
    from oracles import contains_with_assignment

    from affine_avoid.abacus import AbacusCoords, coset_weights, from_cone_coords
    from affine_avoid.affine_core import (
        compose_flattening,
        inversion_count,
        normalize_pattern,
    )

    L = 12
    for p in ("321", "2431", "24351"):
        for pi in strand_assignments(p, 3):
            for b in enumerate_biases(3):
                for v in ("123", "213", "312"):
                    v = normalize_pattern(v)
                    const = b.weight + inversion_count(v)
                    proj = projected_system(p, pi, b, v, 3)
                    got = count_by_weight(proj, Grading(coset_weights(3), const), L)
                    want = [0] * (L + 1)
                    for t in itertools.product(range(7), repeat=2):
                        ell = 2 * sum(t) + const
                        if ell > L:
                            continue
                        w = compose_flattening(from_cone_coords(AbacusCoords(b, t)), v)
                        if contains_with_assignment(w, p, pi.pi):
                            want[ell] += 1
                    assert got == want, (p, pi, b.delta, v)


def test_text_format_round_trip():
    names = ["t1", "t2", "c1"]
    line = format_row((1, -1, 0), Fraction(2), names)
    assert line == "1*t1 + -1*t2 >= 2"
    assert parse_row(line, names) == ((1, -1, 0), 2)


def test_redundancy_and_bounds():
    poly = P(1, ((1,), 1), ((1,), 0), ((-1,), -5))
    assert remove_redundant(poly).rows == (((-1,), -5), ((1,), 1))
    assert bounds(poly, (1,)) == (1, 5)
