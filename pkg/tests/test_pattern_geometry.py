import itertools

import pytest
from oracles import contains_with_assignment

from affine_avoid.abacus import (
    AbacusCoords,
    base_bias,
    bias_from_delta,
    enumerate_biases,
    from_cone_coords,
)
from affine_avoid.affine_core import (
    PatternError,
    all_patterns,
    compose_flattening,
    normalize_pattern,
)
from affine_avoid.checks import GOLDEN_24351
from affine_avoid.pattern_geometry import (
    build_system,
    is_valid_assignment,
    member,
    projected_system,
    recession_system,
    satisfies,
    shifts,
    strand_assignments,
    window_witness,
)
from affine_avoid.polyhedra import (
    Polyhedron,
    integer_point_exists,
    is_feasible,
    recession_rays,
)

B0 = base_bias(3)


class TestAssignments:
    def test_examples(self):
        assert [a.pi for a in strand_assignments("321", 3)] == [(3, 2, 1)]
        assert len(strand_assignments("12", 3)) == 9
        assert strand_assignments("4321", 3) == []
        assert [a.pi for a in strand_assignments("21", 2)] == [(2, 1)]

    def test_lexicographic_and_valid(self):
        for p in ("2431", "24351", "3412"):
            got = [a.pi for a in strand_assignments(p, 3)]
            assert got == sorted(got)
            brute = [pi for pi in itertools.product(range(1, 4), repeat=len(p)) if is_valid_assignment(normalize_pattern(p), pi, 3)]
            assert got == brute

    def test_guard(self):
        with pytest.raises(PatternError):
            strand_assignments(list(range(1, 14)), 3)


class TestShifts:
    def test_2431(self):
        assert [str(s) for s in shifts("2431", (3, 3, 2, 1))] == ["up(1<4)", "down(1<3)", "up(2<3)"]

    def test_24351(self):
        assert [str(s) for s in shifts("24351", (2, 3, 2, 2, 1))] == ["up(1<5)", "up(2<3)", "down(2<4)"]

    def test_shifts_cross_strands(self):
        for p in all_patterns(4):
            for pi in strand_assignments(p, 3):
                for s in shifts(p, pi):
                    assert pi[s.earlier - 1] < pi[s.later - 1] or pi[s.earlier - 1] > pi[s.later - 1]

    def test_single_strand_has_none(self):
        assert shifts("123", (1, 1, 1)) == []


class TestSystems:
    def test_golden(self):
        assert build_system("24351", (2, 3, 2, 2, 1), B0, "123", 3).to_text() == GOLDEN_24351

    def test_321(self):
        text = build_system("321", (3, 2, 1), B0, "123", 3).to_text()
        assert text.splitlines() == [
            "1*c2 >= 1",
            "1*c1 >= 1",
            "1*t2 + -1*c1 >= 0",
            "1*t2 >= 0",
            "1*t1 + -1*c2 >= 0",
            "1*t1 >= 0",
        ]

    def test_worked_witness(self):
        system = build_system("24351", (2, 3, 2, 2, 1), B0, "123", 3)
        assert satisfies(system, (4, 2), (0, 1, 2, 1))
        c = window_witness(AbacusCoords(B0, (4, 2)), "24351", (2, 3, 2, 2, 1), "123")
        assert c is not None and satisfies(system, (4, 2), c)

    def test_member_examples(self):
        assert member(AbacusCoords(B0, (1, 1)), "321", (3, 2, 1), "123")
        assert not member(AbacusCoords(B0, (0, 5)), "321", (3, 2, 1), "123")

    def test_single_entry(self):
        assert window_witness(AbacusCoords(B0, (0, 0)), "1", (2,), "123") == ()

    def test_warning_projection_is_contradiction(self):
        p = normalize_pattern([7, 1, 0, 4, 5, 2, 8, 10, 6, 9, 3])
        (pi,) = strand_assignments(p, 3)
        proj = projected_system(p, pi, B0, "123", 3)
        assert proj.is_trivially_empty or not integer_point_exists(proj)


@pytest.mark.parametrize("p", ["321", "2431", "3412", "24351"])
def test_member_matches_restricted_oracle(p):
    for b in enumerate_biases(3):
        for v in ("123", "132", "312"):
            v = normalize_pattern(v)
            for t in itertools.product(range(6), repeat=2):
                coords = AbacusCoords(b, t)
                w = compose_flattening(from_cone_coords(coords), v)
                for pi in strand_assignments(p, 3):
                    assert member(coords, p, pi, v) == contains_with_assignment(w, p, pi.pi), (p, pi, b.delta, v, t)


def test_projection_agrees_with_member():
    for p in ("2431", "24351"):
        for pi in strand_assignments(p, 3):
            for b in enumerate_biases(3):
                proj = projected_system(p, pi, b, "213", 3)
                for t in itertools.product(range(6), repeat=2):
                    assert proj.contains(t) == member(AbacusCoords(b, t), p, pi, "213")


def test_rational_and_integer_c_agree():
    # totally unimodular c-part: fixing t, a rational c exists iff an integer c does
    for p in ("24351", "3412", "2431"):
        for pi in strand_assignments(p, 3):
            system = build_system(p, pi, B0, "123", 3).polyhedron
            for t in itertools.product(range(5), repeat=2):
                fixed = system
                for x in t:
                    fixed = fixed.substitute(0, x)
                rational = not fixed.is_trivially_empty and is_feasible(fixed)
                assert rational == integer_point_exists(fixed) if not fixed.is_trivially_empty else True


@pytest.mark.parametrize("n", [3, 4])
def test_ray_set_is_cell_independent(n):
    for p in ("321", "2431", "24351"):
        for pi in strand_assignments(p, 3):
            sets = set()
            for b in enumerate_biases(n):
                for v in all_patterns(n):
                    P = projected_system(p, pi, b, v, n)
                    if integer_point_exists(P):
                        sets.add(tuple(recession_rays(P)))
            assert len(sets) <= 1, (p, pi, sets)
            if sets:
                assert set(next(iter(sets))) == set(recession_rays(recession_system(p, pi, n)))


def test_bias_changes_floor_terms():
    # strands 3 and 1 are two steps apart, where the two n=3 biases differ
    a = build_system("2431", (3, 3, 2, 1), B0, "123", 3).to_text()
    b = build_system("2431", (3, 3, 2, 1), bias_from_delta((2, 2), 3), "123", 3).to_text()
    assert a != b
    assert build_system("321", (3, 2, 1), B0, "123", 3).to_text() == build_system(
        "321", (3, 2, 1), bias_from_delta((2, 2), 3), "123", 3
    ).to_text()


def test_trivial_group_rejected():
    with pytest.raises(ValueError):
        strand_assignments("1", 1)


def test_recession_is_a_cone():
    P = recession_system("24351", (2, 3, 2, 2, 1), 3)
    assert isinstance(P, Polyhedron)
    assert all(b == 0 for _, b in P.rows)
