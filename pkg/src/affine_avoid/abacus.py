"""Abacus coordinates for minimal length coset representatives.

Diagrams are never drawn; every quantity is computed from the sorted base
window.  For a sorted window ``u`` with consecutive differences ``delta``:

* the bias is the minimal abacus with differences ``delta mod n``;
* ``t_i = delta_i // n`` locates ``u`` inside the shifted dilated cone of its
  bias, and the gap vector is ``g_i = i * t_i + offset_i``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .affine_core import AffinePermutation, AffinePermutationError
from .series import ONE, Polynomial, RationalFunction, product


@dataclass(frozen=True)
class GapVector:
    n: int
    gaps: Tuple[int, ...]

    def __post_init__(self):
        if len(self.gaps) != self.n - 1:
            raise ValueError(f"gap vector for n={self.n} needs {self.n - 1} entries")
        if any(g < 0 for g in self.gaps):
            raise ValueError(f"gap entries must be nonnegative: {self.gaps}")


@dataclass(frozen=True)
class Bias:
    n: int
    delta: Tuple[int, ...]
    offset: Tuple[int, ...]
    floor_table: Dict[Tuple[int, int], int] = field(compare=False, hash=False, repr=False)

    def floor(self, i: int, j: int) -> int:
        """``floor((delta_i + ... + delta_{j-1}) / n)`` for strands ``i < j``."""
        return self.floor_table[(i, j)]

    @property
    def name(self) -> str:
        return "".join(str(d) for d in self.delta) if self.n <= 10 else ",".join(map(str, self.delta))

    @property
    def weight(self) -> int:
        """Coxeter length of the minimal abacus itself."""
        return sum((self.n - i) * g for i, g in enumerate(self.offset, start=1))


@dataclass(frozen=True)
class AbacusCoords:
    bias: Bias
    t: Tuple[int, ...]

    def gaps(self) -> Tuple[int, ...]:
        return tuple(i * ti + o for i, (ti, o) in enumerate(zip(self.t, self.bias.offset), start=1))


def _require_sorted(u: AffinePermutation):
    if not u.is_sorted:
        raise AffinePermutationError(f"{u} is not a minimal length coset representative")


def _balance(window: List[int], n: int) -> AffinePermutation:
    # any common shift preserves the gap structure; exactly one fixes the sum
    excess = n * (n + 1) // 2 - sum(window)
    assert excess % n == 0
    shift = excess // n
    out = AffinePermutation(n, tuple(x + shift for x in window))
    assert sum(out.window) == n * (n + 1) // 2
    return out


def delta_vector(u: AffinePermutation) -> Tuple[int, ...]:
    _require_sorted(u)
    return tuple(b - a for a, b in zip(u.window, u.window[1:]))


def gap_vector(u: AffinePermutation) -> GapVector:
    """Gaps between consecutive defining beads.

    Entries strictly between ``u_r`` and ``u_{r+1}`` in the columns of
    ``u_1..u_r`` sit above their defining bead, hence are gaps; the other
    columns hold beads there.
    """
    _require_sorted(u)
    n, win = u.n, u.window
    gaps = []
    for r in range(1, n):
        lo, hi = win[r - 1], win[r]
        count = 0
        for s in range(r):
            us = win[s]
            count += (hi - 1 - us) // n - (lo - us) // n
        gaps.append(count)
    return GapVector(n, tuple(gaps))


def from_gap_vector(g) -> AffinePermutation:
    """The unique minimal length coset representative with gap vector ``g``."""
    if not isinstance(g, GapVector):
        g = GapVector(len(g) + 1, tuple(g))
    n = g.n
    window = [0] * n
    upper = {0}
    for r in range(n - 2, -1, -1):
        # walk down from the bead above, skipping entries in occupied columns
        x = window[r + 1]
        skipped = 0
        while True:
            x -= 1
            if x % n in upper:
                continue
            if skipped == g.gaps[r]:
                break
            skipped += 1
        window[r] = x
        upper.add(x % n)
    return _balance(window, n)


def length_from_gaps(g) -> int:
    gaps = g.gaps if isinstance(g, GapVector) else tuple(g)
    n = len(gaps) + 1
    return sum((n - i) * gi for i, gi in enumerate(gaps, start=1))


def _window_from_delta(delta: Sequence[int], n: int) -> AffinePermutation:
    window = [0]
    for d in delta:
        window.append(window[-1] + d)
    return _balance(window, n)


def _make_bias(delta: Tuple[int, ...], n: int) -> Bias:
    u = _window_from_delta(delta, n)
    table = {}
    for i in range(1, n + 1):
        acc = 0
        for j in range(i + 1, n + 1):
            acc += delta[j - 2]
            table[(i, j)] = acc // n
    return Bias(n, delta, gap_vector(u).gaps, table)


@lru_cache(maxsize=None)
def enumerate_biases(n: int) -> Tuple[Bias, ...]:
    """All ``(n-1)!`` minimal abaci, lexicographic by delta vector."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = []
    for delta in itertools.product(range(1, n), repeat=n - 1):
        partial = list(itertools.accumulate(delta, initial=0))
        if len({x % n for x in partial}) == n:
            out.append(_make_bias(delta, n))
    assert len(out) == math.factorial(n - 1)
    return tuple(out)


@lru_cache(maxsize=None)
def _bias_index(n: int) -> Dict[Tuple[int, ...], Bias]:
    return {b.delta: b for b in enumerate_biases(n)}


def base_bias(n: int) -> Bias:
    """The bias with zero offset (all deltas equal to 1)."""
    return _bias_index(n)[(1,) * (n - 1)]


def bias_from_delta(delta: Sequence[int], n: int) -> Bias:
    try:
        return _bias_index(n)[tuple(delta)]
    except KeyError:
        raise ValueError(f"{tuple(delta)} is not the delta vector of a minimal abacus") from None


def bias_of(u: AffinePermutation) -> Bias:
    return bias_from_delta(tuple(d % u.n for d in delta_vector(u)), u.n)


def cone_coords(u: AffinePermutation) -> AbacusCoords:
    return AbacusCoords(bias_of(u), tuple(d // u.n for d in delta_vector(u)))


def from_cone_coords(c: AbacusCoords) -> AffinePermutation:
    n = c.bias.n
    if len(c.t) != n - 1 or any(ti < 0 for ti in c.t):
        raise ValueError(f"invalid t-coordinates {c.t}")
    return _window_from_delta([b + n * ti for b, ti in zip(c.bias.delta, c.t)], n)


def window_boundary_counts(u: AffinePermutation) -> Tuple[int, ...]:
    """``t_i`` read off the Z-notation: for maximal ``j >= 0`` with
    ``w(i+1) > w(i + j*n)``, the window boundaries between those positions.

    Only ``j = 0`` qualifying counts as zero boundaries.
    """
    _require_sorted(u)
    n = u.n
    out = []
    for i in range(1, n):
        j = 0
        while u(i + 1) > u(i + (j + 1) * n):
            j += 1
        if j == 0:
            out.append(0)
        else:
            # window index of a position p is (p - 1) // n
            out.append((i + j * n - 1) // n - (i + 1 - 1) // n)
    return tuple(out)


def coset_weights(n: int) -> Tuple[int, ...]:
    """Coxeter length contributed by one unit of each ``t_i``: ``i * (n - i)``."""
    return tuple(i * (n - i) for i in range(1, n))


def bott_numerator(n: int) -> Polynomial:
    """Length generating polynomial of the finite symmetric group."""
    return product(Polynomial([1] * j) for j in range(1, n + 1))


def bott_denominator(n: int) -> Polynomial:
    return product(Polynomial.one_minus_x_power(i) for i in range(1, n))


def bott_series(n: int, coset_only: bool = False) -> RationalFunction:
    if n < 2:
        raise ValueError("n must be at least 2")
    num = ONE if coset_only else bott_numerator(n)
    return RationalFunction.make(num, bott_denominator(n))
