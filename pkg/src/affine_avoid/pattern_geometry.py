"""Strand assignments, shifts and the (t, c) inequality systems.

For a pattern ``p``, a strand assignment ``pi`` sends entry ``i`` to the
``pi[i]``-th smallest value of the base window; the window assignment ``c``
counts window boundaries between consecutive entries of an occurrence.  Inside
one cell (bias ``b``, flattening ``v``) the occurrences using ``pi`` are the
integer ``(t, c)`` solutions of:

* ``c_i >= 0`` if strand ``pi(i)`` sits left of strand ``pi(i+1)`` in the base
  window of ``w`` (that is ``v^-1(pi(i)) < v^-1(pi(i+1))``), else ``c_i >= 1``;
* per upshift ``(j < i)``:
  ``t[pi(i)..pi(j)-1] + floor_b(pi(i), pi(j)) >= c[j..i-1]``;
* per downshift ``(i < j)``:
  ``t[pi(j)..pi(i)-1] + floor_b(pi(j), pi(i)) <= c[i..j-1] - 1``;
* ``t >= 0``.

Every c-row is an interval sum, so with ``t`` fixed the system is a set of
difference constraints on the prefix sums ``S_m = c_1 + ... + c_m``.  That
makes the c-matrix totally unimodular and lets :func:`window_witness` decide
integer membership exactly by shortest paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .abacus import AbacusCoords, Bias, base_bias
from .affine_core import (
    MAX_PATTERN_SIZE,
    Pattern,
    PatternError,
    identity_pattern,
    normalize_pattern,
)
from .polyhedra import Polyhedron, eliminate_many, format_row, remove_redundant

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class StrandAssignment:
    n: int
    pi: Tuple[int, ...]

    def __len__(self):
        return len(self.pi)

    def __getitem__(self, i):
        return self.pi[i]

    def __str__(self):
        return "[" + ",".join(map(str, self.pi)) + "]"


@dataclass(frozen=True)
class Shift:
    kind: str
    earlier: int  # 1-based pattern positions
    later: int

    def __str__(self):
        return f"{self.kind}({self.earlier}<{self.later})"


@dataclass(frozen=True)
class InequalitySystem:
    n: int
    k: int
    polyhedron: Polyhedron

    @property
    def names(self) -> List[str]:
        return variable_names(self.n, self.k)

    @property
    def t_dim(self) -> int:
        return self.n - 1

    def to_text(self) -> str:
        return self.polyhedron.to_text(self.names)

    def lines(self) -> List[str]:
        return [format_row(a, b, self.names) for a, b in self.polyhedron.rows]


def variable_names(n: int, k: int) -> List[str]:
    return [f"t{i}" for i in range(1, n)] + [f"c{i}" for i in range(1, k)]


def _as_pi(pi, n: int) -> StrandAssignment:
    if isinstance(pi, StrandAssignment):
        return pi
    return StrandAssignment(n, tuple(pi))


def is_valid_assignment(p: Pattern, pi: Sequence[int], n: int) -> bool:
    if len(pi) != p.k or any(not 1 <= x <= n for x in pi):
        return False
    return all(pi[i] > pi[j] for i, j in p.inversions())


def strand_assignments(p, n: int, max_k: int = MAX_PATTERN_SIZE) -> List[StrandAssignment]:
    """Maps ``1..k -> 1..n`` that are strict on every inversion, in lex order."""
    p = normalize_pattern(p)
    if n < 2:
        raise ValueError("n must be at least 2")
    if p.k > max_k:
        raise PatternError(f"pattern size {p.k} exceeds the guard {max_k}")
    vals = p.values
    out: List[StrandAssignment] = []
    pi = [0] * p.k

    def extend(m: int):
        if m == p.k:
            out.append(StrandAssignment(n, tuple(pi)))
            return
        # strictly below every earlier, larger entry
        cap = n
        for a in range(m):
            if vals[a] > vals[m]:
                cap = min(cap, pi[a] - 1)
        for s in range(1, cap + 1):
            pi[m] = s
            extend(m + 1)

    extend(0)
    return out


def shifts(p, pi) -> List[Shift]:
    """Upshifts and downshifts over consecutive values, in order of value."""
    p = normalize_pattern(p)
    pi = tuple(pi.pi if isinstance(pi, StrandAssignment) else pi)
    pos = p.inverse()
    out = []
    for a in range(1, p.k):
        lo, hi = pos[a - 1], pos[a]  # positions of values a and a+1
        if hi < lo and pi[hi - 1] > pi[lo - 1]:
            out.append(Shift(UP, hi, lo))
        elif lo < hi and pi[lo - 1] > pi[hi - 1]:
            out.append(Shift(DOWN, lo, hi))
    return out


def _lower_bounds(pi: Tuple[int, ...], v: Pattern) -> Tuple[int, ...]:
    vinv = v.inverse()
    return tuple(0 if vinv[pi[i] - 1] < vinv[pi[i + 1] - 1] else 1 for i in range(len(pi) - 1))


def _shift_terms(sh: Shift, pi: Tuple[int, ...], bias: Bias):
    """(strand interval [lo, hi), c interval [start, end), bias constant)."""
    a, b = pi[sh.earlier - 1], pi[sh.later - 1]
    lo, hi = min(a, b), max(a, b)
    return lo, hi, sh.earlier, sh.later, bias.floor(lo, hi)


def _rows(p: Pattern, pi: Tuple[int, ...], bias: Bias, v: Pattern, n: int):
    k = p.k
    dim = n - 1 + k - 1
    rows = []
    for sh in shifts(p, pi):
        lo, hi, start, end, const = _shift_terms(sh, pi, bias)
        coeffs = [0] * dim
        for r in range(lo, hi):
            coeffs[r - 1] = 1
        for m in range(start, end):
            coeffs[n - 1 + m - 1] = -1
        if sh.kind == UP:
            rows.append((tuple(coeffs), -const))
        else:
            rows.append((tuple(-c for c in coeffs), const + 1))
    for m, lb in enumerate(_lower_bounds(pi, v), start=1):
        coeffs = [0] * dim
        coeffs[n - 1 + m - 1] = 1
        rows.append((tuple(coeffs), lb))
    for r in range(n - 1):
        coeffs = [0] * dim
        coeffs[r] = 1
        rows.append((tuple(coeffs), 0))
    return dim, rows


def build_system(p, pi, b: Bias, v, n: int) -> InequalitySystem:
    p = normalize_pattern(p)
    v = normalize_pattern(v)
    pi = _as_pi(pi, n).pi
    if not is_valid_assignment(p, pi, n):
        raise ValueError(f"{pi} is not a strand assignment for {p} in n={n}")
    if v.k != n or b.n != n:
        raise ValueError("bias and flattening must have size n")
    dim, rows = _rows(p, pi, b, v, n)
    return InequalitySystem(n, p.k, Polyhedron.make(dim, rows))


def _signature(p: Pattern, pi: Tuple[int, ...], bias: Bias, v: Pattern):
    consts = tuple(_shift_terms(sh, pi, bias)[4] for sh in shifts(p, pi))
    return consts, _lower_bounds(pi, v)


@lru_cache(maxsize=65536)
def _projected_cached(p: Pattern, pi: Tuple[int, ...], n: int, consts, lows) -> Polyhedron:
    k = p.k
    dim = n - 1 + k - 1
    rows = []
    for sh, const in zip(shifts(p, pi), consts):
        a, b = pi[sh.earlier - 1], pi[sh.later - 1]
        lo, hi = min(a, b), max(a, b)
        coeffs = [0] * dim
        for r in range(lo, hi):
            coeffs[r - 1] = 1
        for m in range(sh.earlier, sh.later):
            coeffs[n - 1 + m - 1] = -1
        if sh.kind == UP:
            rows.append((tuple(coeffs), -const))
        else:
            rows.append((tuple(-c for c in coeffs), const + 1))
    for m, lb in enumerate(lows, start=1):
        coeffs = [0] * dim
        coeffs[n - 1 + m - 1] = 1
        rows.append((tuple(coeffs), lb))
    for r in range(n - 1):
        coeffs = [0] * dim
        coeffs[r] = 1
        rows.append((tuple(coeffs), 0))
    P = Polyhedron.make(dim, rows)
    return remove_redundant(eliminate_many(P, range(n - 1, dim)))


def projected_system(p, pi, b: Optional[Bias] = None, v=None, n: Optional[int] = None) -> Polyhedron:
    """The t-polyhedron of ``(p, pi)`` in the cell ``(b, v)``.

    Defaults to the zero-offset bias and identity flattening.
    """
    p = normalize_pattern(p)
    if isinstance(pi, StrandAssignment):
        n = pi.n if n is None else n
        pi = pi.pi
    pi = tuple(pi)
    if n is None:
        raise ValueError("n is required")
    b = base_bias(n) if b is None else b
    v = identity_pattern(n) if v is None else normalize_pattern(v)
    if not is_valid_assignment(p, pi, n):
        raise ValueError(f"{pi} is not a strand assignment for {p} in n={n}")
    consts, lows = _signature(p, pi, b, v)
    return _projected_cached(p, pi, n, consts, lows)


def recession_system(p, pi, n: int) -> Polyhedron:
    """Homogeneous version of the projected system; its cone does not depend
    on the cell."""
    return _recession(normalize_pattern(p), tuple(_as_pi(pi, n).pi), n)


@lru_cache(maxsize=4096)
def _recession(p: Pattern, pi: Tuple[int, ...], n: int) -> Polyhedron:
    k = p.k
    dim = n - 1 + k - 1
    _, rows = _rows(p, pi, base_bias(n), identity_pattern(n), n)
    P = Polyhedron.make(dim, [(a, 0) for a, _ in rows])
    return remove_redundant(eliminate_many(P, range(n - 1, dim)))


def _difference_edges(p: Pattern, pi: Tuple[int, ...], bias: Bias, v: Pattern, t: Sequence[int]):
    """Edges ``(a, b, w)`` meaning ``S_b - S_a <= w`` over nodes ``0..k-1``."""
    edges = []
    for sh in shifts(p, pi):
        lo, hi, start, end, const = _shift_terms(sh, pi, bias)
        tsum = sum(t[r - 1] for r in range(lo, hi)) + const
        # c_start + ... + c_{end-1} = S_{end-1} - S_{start-1}
        if sh.kind == UP:
            edges.append((start - 1, end - 1, tsum))
        else:
            edges.append((end - 1, start - 1, -(tsum + 1)))
    for m, lb in enumerate(_lower_bounds(pi, v), start=1):
        edges.append((m, m - 1, -lb))
    return edges


def window_witness(coords: AbacusCoords, p, pi, v) -> Optional[Tuple[int, ...]]:
    """An integer window assignment ``c`` realizing ``(p, pi)`` at ``coords``.

    Bellman-Ford on the difference constraints: a solution exists iff there is
    no negative cycle, and shortest distances are then an integral solution.
    """
    p = normalize_pattern(p)
    v = normalize_pattern(v)
    bias = coords.bias
    n = bias.n
    pi = _as_pi(pi, n).pi
    k = p.k
    if k == 1:
        return ()
    edges = _difference_edges(p, pi, bias, v, coords.t)
    dist = [0] * k
    for _ in range(k):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            break
    else:
        return None
    return tuple(dist[m] - dist[m - 1] for m in range(1, k))


def member(coords: AbacusCoords, p, pi, v) -> bool:
    return window_witness(coords, p, pi, v) is not None


def satisfies(system: InequalitySystem, t: Sequence[int], c: Sequence[int]) -> bool:
    return system.polyhedron.contains(tuple(t) + tuple(c))
