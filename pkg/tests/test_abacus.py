import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from affine_avoid.abacus import (
    AbacusCoords,
    GapVector,
    base_bias,
    bias_from_delta,
    bias_of,
    bott_series,
    cone_coords,
    coset_weights,
    delta_vector,
    enumerate_biases,
    from_cone_coords,
    from_gap_vector,
    gap_vector,
    length_from_gaps,
    window_boundary_counts,
)
from affine_avoid.affine_core import (
    AffinePermutationError,
    coxeter_length,
    elements_by_bfs,
    identity,
    make_affine,
    parabolic_decompose,
)
from affine_avoid.series import expand

FIG1 = make_affine([-12, -8, 2, 9, 13, 17], 6)
WORKED = make_affine([-9, 4, 11], 3)


def test_six_window_coordinates():
    assert gap_vector(FIG1).gaps == (0, 3, 3, 2, 3)
    assert delta_vector(FIG1) == (4, 10, 7, 4, 4)
    assert bias_of(FIG1).delta == (4, 4, 1, 4, 4)
    assert from_gap_vector((0, 3, 3, 2, 3)) == FIG1


def test_identity_coordinates():
    for n in range(2, 6):
        assert gap_vector(identity(n)).gaps == (0,) * (n - 1)
        assert delta_vector(identity(n)) == (1,) * (n - 1)
        assert cone_coords(identity(n)).t == (0,) * (n - 1)
        assert from_gap_vector((0,) * (n - 1)) == identity(n)


def test_worked_example_coordinates():
    assert delta_vector(WORKED) == (13, 7)
    assert from_gap_vector((4, 4)) == WORKED
    c = cone_coords(WORKED)
    assert c.bias.delta == (1, 1) and c.bias.offset == (0, 0) and c.t == (4, 2)
    assert from_cone_coords(AbacusCoords(base_bias(3), (4, 2))) == WORKED


def test_unsorted_rejected():
    with pytest.raises(AffinePermutationError):
        gap_vector(make_affine([2, 1, 3], 3))


def test_gap_vector_validation():
    with pytest.raises(ValueError):
        GapVector(3, (1, -1))
    with pytest.raises(ValueError):
        GapVector(3, (1,))


class TestLengthFromGaps:
    def test_examples(self):
        assert length_from_gaps((0, 3, 3, 2, 3)) == 28
        assert length_from_gaps((0, 0, 0)) == 0
        for n in range(2, 7):
            assert length_from_gaps((1,) + (0,) * (n - 2)) == n - 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_agrees_with_inversions(self, n):
        for w, _ in elements_by_bfs(n, 12):
            u, _ = parabolic_decompose(w)
            assert length_from_gaps(gap_vector(u)) == coxeter_length(u)


class TestBiases:
    def test_counts(self):
        assert [len(enumerate_biases(n)) for n in range(2, 7)] == [1, 2, 6, 24, 120]

    def test_n3(self):
        got = [(b.delta, b.offset) for b in enumerate_biases(3)]
        assert got == [((1, 1), (0, 0)), ((2, 2), (0, 1))]

    def test_lexicographic_and_in_range(self):
        for n in (3, 4, 5):
            deltas = [b.delta for b in enumerate_biases(n)]
            assert deltas == sorted(deltas)
            assert all(1 <= d <= n - 1 for delta in deltas for d in delta)

    def test_floor_table(self):
        for n in (3, 4, 5):
            for b in enumerate_biases(n):
                for i, j in itertools.combinations(range(1, n + 1), 2):
                    assert b.floor(i, j) == sum(b.delta[i - 1 : j - 1]) // n

    def test_minimal_abacus_has_zero_t(self):
        for n in (3, 4, 5):
            for b in enumerate_biases(n):
                u = from_cone_coords(AbacusCoords(b, (0,) * (n - 1)))
                assert gap_vector(u).gaps == b.offset
                assert coxeter_length(u) == b.weight

    def test_bad_delta(self):
        with pytest.raises(ValueError):
            bias_from_delta((1, 2), 3)

    def test_second_n3_bias_gaps(self):
        u = from_cone_coords(AbacusCoords(bias_from_delta((2, 2), 3), (0, 0)))
        assert gap_vector(u).gaps == (0, 1)


@pytest.mark.parametrize("n", [3, 4])
def test_cone_partition(n):
    seen = {}
    for g in itertools.product(range(9), repeat=n - 1):
        u = from_gap_vector(g)
        c = cone_coords(u)
        assert c.gaps() == g
        assert from_cone_coords(c) == u
        assert u.window not in seen
        seen[u.window] = c


@pytest.mark.parametrize("n", [3, 4])
def test_cone_round_trip(n):
    for b in enumerate_biases(n):
        for t in itertools.product(range(6), repeat=n - 1):
            c = AbacusCoords(b, t)
            assert cone_coords(from_cone_coords(c)) == c


@given(st.lists(st.integers(0, 12), min_size=1, max_size=5))
def test_gap_round_trip(gaps):
    u = from_gap_vector(gaps)
    assert sum(u.window) == len(u.window) * (len(u.window) + 1) // 2
    assert gap_vector(u).gaps == tuple(gaps)
    assert coxeter_length(u) == length_from_gaps(gaps)


def test_window_boundary_counts_match_t():
    for w, _ in elements_by_bfs(3, 12):
        u, _ = parabolic_decompose(w)
        assert window_boundary_counts(u) == cone_coords(u).t


class TestBott:
    def test_coset_n3(self):
        assert expand(bott_series(3, coset_only=True), 6) == [1, 1, 2, 2, 3, 3, 4]

    def test_full_small(self):
        assert expand(bott_series(2), 4) == [1, 2, 2, 2, 2]
        assert expand(bott_series(3), 4) == [1, 3, 6, 9, 12]

    def test_full_is_coset_times_finite(self):
        from affine_avoid.abacus import bott_numerator
        from affine_avoid.series import RationalFunction

        assert bott_series(3) == bott_series(3, coset_only=True) * RationalFunction.make(bott_numerator(3))

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_graded_cells_reproduce_coset_series(self, n):
        L = 20
        counts = [0] * (L + 1)
        w = coset_weights(n)
        for b in enumerate_biases(n):
            for t in itertools.product(*(range(L // wi + 1) for wi in w)):
                ell = sum(a * x for a, x in zip(w, t)) + b.weight
                if ell <= L:
                    counts[ell] += 1
        assert expand(bott_series(n, coset_only=True), L) == counts

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            bott_series(1)
