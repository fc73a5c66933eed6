"""Exact rational H-polyhedra.

A polyhedron is a list of rows ``a . x >= b`` with integer ``a`` (divided by
the gcd of its entries) and rational ``b``.  Everything here is exact; the
dimensions of interest are small (at most ~15 variables), so plain
Fourier-Motzkin elimination and subset-based vertex enumeration are adequate.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

Row = Tuple[Tuple[int, ...], Fraction]


class NotPointedError(ValueError):
    """The polyhedron contains a line."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def normalize_row(coeffs: Sequence, const) -> Optional[Row]:
    """Divide by the gcd of the coefficients.

    Returns ``None`` for a trivially true row and ``((0,...,0), 1)`` for a
    contradiction.
    """
    const = _frac(const)
    coeffs = [_frac(c) for c in coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    const = const * den
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        if const <= 0:
            return None
        return (tuple(0 for _ in ints), Fraction(1))
    return (tuple(c // g for c in ints), const / g)


@dataclass(frozen=True)
class Polyhedron:
    dim: int
    rows: Tuple[Row, ...]

    @classmethod
    def make(cls, dim: int, rows: Iterable[Tuple[Sequence, object]]) -> "Polyhedron":
        best: Dict[Tuple[int, ...], Fraction] = {}
        for coeffs, const in rows:
            if len(coeffs) != dim:
                raise ValueError(f"row {coeffs} does not have {dim} coefficients")
            row = normalize_row(coeffs, const)
            if row is None:
                continue
            a, b = row
            if not any(a):
                return cls.empty(dim)
            if a not in best or b > best[a]:
                best[a] = b
        return cls(dim, tuple(sorted(best.items())))

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(dim, (((0,) * dim, Fraction(1)),))

    @classmethod
    def orthant(cls, dim: int) -> "Polyhedron":
        return cls.make(dim, [(unit(dim, i), 0) for i in range(dim)])

    @property
    def is_trivially_empty(self) -> bool:
        return any(not any(a) for a, _ in self.rows)

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return Polyhedron.make(self.dim, self.rows + other.rows)

    def add_rows(self, rows) -> "Polyhedron":
        return Polyhedron.make(self.dim, list(self.rows) + list(rows))

    def contains(self, point: Sequence) -> bool:
        return all(sum(a * x for a, x in zip(coeffs, point)) >= b for coeffs, b in self.rows)

    def homogenized(self) -> "Polyhedron":
        """The recession cone ``{x : a . x >= 0}`` (ignores emptiness)."""
        return Polyhedron.make(self.dim, [(a, 0) for a, _ in self.rows if any(a)])

    def substitute(self, index: int, value) -> "Polyhedron":
        """Fix variable ``index`` and drop it."""
        rows = []
        for a, b in self.rows:
            rows.append((a[:index] + a[index + 1:], b - a[index] * value))
        return Polyhedron.make(self.dim - 1, rows)

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or default_names(self.dim)
        return "\n".join(format_row(a, b, names) for a, b in self.rows)


def unit(dim: int, i: int) -> Tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(dim))


def default_names(dim: int) -> List[str]:
    return [f"x{i + 1}" for i in range(dim)]


def format_row(coeffs: Sequence[int], const, names: Sequence[str]) -> str:
    """``<coeff>*<var> [+ ...] >= <const>``; a zero row prints as ``0 >= b``."""
    terms = [f"{c}*{v}" for c, v in zip(coeffs, names) if c != 0]
    lhs = " + ".join(terms) if terms else "0"
    const = _frac(const)
    rhs = str(const.numerator) if const.denominator == 1 else str(const)
    return f"{lhs} >= {rhs}"


def parse_row(text: str, names: Sequence[str]) -> Row:
    lhs, rhs = text.split(">=")
    coeffs = [0] * len(names)
    index = {v: i for i, v in enumerate(names)}
    lhs = lhs.strip()
    if lhs != "0":
        for term in lhs.split(" + "):
            c, v = term.strip().split("*")
            coeffs[index[v]] += int(c)
    return tuple(coeffs), Fraction(rhs.strip())


def eliminate(P: Polyhedron, var: int) -> Polyhedron:
    """Fourier-Motzkin projection along ``var`` (the column is dropped)."""
    if P.is_trivially_empty:
        return Polyhedron.empty(P.dim - 1)
    pos, neg, rest = [], [], []
    for a, b in P.rows:
        c = a[var]
        if c > 0:
            pos.append((a, b))
        elif c < 0:
            neg.append((a, b))
        else:
            rest.append((a[:var] + a[var + 1:], b))
    for (a1, b1), (a2, b2) in itertools.product(pos, neg):
        m1, m2 = -a2[var], a1[var]
        combo = tuple(m1 * x + m2 * y for x, y in zip(a1, a2))
        rest.append((combo[:var] + combo[var + 1:], m1 * b1 + m2 * b2))
    return Polyhedron.make(P.dim - 1, rest)


def eliminate_many(P: Polyhedron, variables: Iterable[int]) -> Polyhedron:
    """Eliminate several variables (indices refer to ``P``)."""
    order = sorted(set(variables), reverse=True)
    for v in order:
        P = eliminate(P, v)
    return P


def project(P: Polyhedron, keep: int) -> Polyhedron:
    """Project onto the first ``keep`` coordinates."""
    return eliminate_many(P, range(keep, P.dim))


def is_feasible(P: Polyhedron) -> bool:
    """Rational feasibility."""
    return not eliminate_many(P, range(P.dim)).is_trivially_empty


def bounds(P: Polyhedron, objective: Sequence) -> Optional[Tuple[Optional[Fraction], Optional[Fraction]]]:
    """Exact ``(min, max)`` of ``objective . x`` over ``P``; ``None`` entries
    mean unbounded, and ``None`` overall means ``P`` is empty."""
    rows = [((0,) + a, b) for a, b in P.rows]
    obj = tuple(_frac(c) for c in objective)
    rows.append(((1,) + tuple(-c for c in obj), 0))
    rows.append(((-1,) + obj, 0))
    Q = Polyhedron.make(P.dim + 1, rows)
    Q = eliminate_many(Q, range(1, P.dim + 1))
    if Q.is_trivially_empty:
        return None
    lo = hi = None
    for (c,), b in Q.rows:
        if c > 0:
            v = b / c
            lo = v if lo is None else max(lo, v)
        elif c < 0:
            v = b / c
            hi = v if hi is None else min(hi, v)
    return lo, hi


def remove_redundant(P: Polyhedron) -> Polyhedron:
    """Drop every row implied by the remaining ones (exact)."""
    if P.is_trivially_empty:
        return P
    if not is_feasible(P):
        return Polyhedron.empty(P.dim)
    rows = list(P.rows)
    i = 0
    while i < len(rows):
        a, b = rows[i]
        others = Polyhedron(P.dim, tuple(rows[:i] + rows[i + 1:]))
        rng = bounds(others, a)
        if rng is not None and rng[0] is not None and rng[0] >= b:
            rows.pop(i)
        else:
            i += 1
    return Polyhedron(P.dim, tuple(rows))


# exact linear algebra -------------------------------------------------------

def _rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(_rref([[Fraction(x) for x in v] for v in vectors])[1])


def _solve_square(A: Sequence[Sequence], b: Sequence) -> Optional[Tuple[Fraction, ...]]:
    d = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    red, pivots = _rref(aug)
    if pivots != list(range(d)):
        return None
    return tuple(red[i][d] for i in range(d))


def _nullspace_line(A: Sequence[Sequence], dim: int) -> Optional[Tuple[Fraction, ...]]:
    """A spanning vector of the nullspace when it is one-dimensional."""
    if not A:
        return (Fraction(1),) if dim == 1 else None
    red, pivots = _rref([[Fraction(x) for x in row] for row in A])
    free = [c for c in range(dim) if c not in pivots]
    if len(free) != 1:
        return None
    f = free[0]
    vec = [Fraction(0)] * dim
    vec[f] = Fraction(1)
    for row, c in zip(red, pivots):
        vec[c] = -row[f]
    return tuple(vec)


def primitive_vector(v: Sequence) -> Tuple[int, ...]:
    v = [_frac(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


@dataclass(frozen=True)
class Generator:
    kind: str  # "vertex" or "ray"
    coords: Tuple

    def to_json(self):
        return {"kind": self.kind, "coords": [str(_frac(c)) if _frac(c).denominator != 1 else int(c) for c in self.coords]}


def _check_pointed(P: Polyhedron):
    if rank([a for a, _ in P.rows]) < P.dim:
        raise NotPointedError("polyhedron has a nontrivial lineality space")


def recession_rays(P: Polyhedron) -> List[Tuple[int, ...]]:
    """Extreme rays of ``{x : a . x >= 0}``, primitive and sorted."""
    if P.dim == 0:
        return []
    normals = sorted({a for a, _ in P.rows if any(a)})
    _check_pointed(Polyhedron(P.dim, tuple((a, Fraction(0)) for a in normals)))
    found = set()
    for subset in itertools.combinations(normals, P.dim - 1):
        line = _nullspace_line(list(subset), P.dim)
        if line is None:
            continue
        for sign in (1, -1):
            r = tuple(sign * x for x in line)
            if all(sum(a * x for a, x in zip(n, r)) >= 0 for n in normals):
                found.add(primitive_vector(r))
    return sorted(found, reverse=True)


def vertices(P: Polyhedron) -> List[Tuple[Fraction, ...]]:
    if P.is_trivially_empty:
        return []
    _check_pointed(P)
    found = set()
    for subset in itertools.combinations(P.rows, P.dim):
        pt = _solve_square([a for a, _ in subset], [b for _, b in subset])
        if pt is not None and P.contains(pt):
            found.add(pt)
    return sorted(found)


def vertices_and_rays(P: Polyhedron) -> List[Generator]:
    """V-representation of a pointed polyhedron (empty list if ``P`` is empty)."""
    verts = vertices(P)
    if not verts:
        return []
    out = [Generator("vertex", v) for v in verts]
    out += [Generator("ray", r) for r in recession_rays(P)]
    return out


def generators_to_json(gens: Sequence[Generator]) -> str:
    return json.dumps([g.to_json() for g in gens], sort_keys=True)


def find_integer_point(P: Polyhedron) -> Optional[Tuple[int, ...]]:
    """An integer point of ``P`` or ``None``.

    Unbounded polyhedra are first cut down to a box: any integer point
    ``q + sum(l_r * r)`` (``q`` in the convex hull of the vertices) can be
    moved to ``q + sum(frac(l_r) * r)``, still integral and inside ``P``.
    Then each variable in turn is bounded by projection and branched on.
    """
    if P.is_trivially_empty or not is_feasible(P):
        return None
    if P.dim == 0:
        return ()
    gens = vertices_and_rays(P)
    verts = [g.coords for g in gens if g.kind == "vertex"]
    rays = [g.coords for g in gens if g.kind == "ray"]
    box = []
    for i in range(P.dim):
        lo = min(v[i] for v in verts) + sum(min(0, r[i]) for r in rays)
        hi = max(v[i] for v in verts) + sum(max(0, r[i]) for r in rays)
        box.append((unit(P.dim, i), math.floor(lo)))
        box.append((tuple(-x for x in unit(P.dim, i)), -math.ceil(hi)))
    return _branch(P.add_rows(box))


def _branch(P: Polyhedron) -> Optional[Tuple[int, ...]]:
    if P.is_trivially_empty:
        return None
    if P.dim == 0:
        return ()
    rng = bounds(P, unit(P.dim, 0))
    if rng is None:
        return None
    lo, hi = rng
    if lo is None or hi is None:
        raise ValueError("branching requires a bounded polyhedron")
    for z in range(math.ceil(lo), math.floor(hi) + 1):
        sub = _branch(P.substitute(0, z))
        if sub is not None:
            return (z,) + sub
    return None


def integer_point_exists(P: Polyhedron) -> bool:
    return find_integer_point(P) is not None


def has_ray_direction(P: Polyhedron, direction: int) -> bool:
    """``P`` has an integer point and ``e_direction`` is in its recession cone."""
    if not all(a[direction] >= 0 for a, _ in P.rows):
        return False
    return integer_point_exists(P)


@dataclass(frozen=True)
class Grading:
    weights: Tuple[int, ...]
    constant: int = 0

    def __post_init__(self):
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"grading weights must be positive: {self.weights}")


def lattice_points_below(lower: Sequence[int], weights: Sequence[int], budget: int) -> np.ndarray:
    """All integer points ``x >= lower`` with ``sum(w * (x - lower)) <= budget``.

    Returned as an ``(m, d)`` int64 array.
    """
    d = len(weights)
    pts = np.zeros((1, 0), dtype=np.int64)
    spent = np.zeros(1, dtype=np.int64)
    if budget < 0:
        return np.zeros((0, d), dtype=np.int64)
    for i in range(d):
        w = weights[i]
        cols, spend = [], []
        for step in range(budget // w + 1):
            keep = spent + step * w <= budget
            if not keep.any():
                break
            cols.append(np.column_stack([pts[keep], np.full(int(keep.sum()), lower[i] + step, dtype=np.int64)]))
            spend.append(spent[keep] + step * w)
        pts = np.concatenate(cols)
        spent = np.concatenate(spend)
    return pts


def integer_mask(rows: Sequence[Row], pts: np.ndarray) -> np.ndarray:
    """Rows of ``pts`` satisfying every ``a . x >= b`` (``b`` rounded up)."""
    mask = np.ones(len(pts), dtype=bool)
    if not rows:
        return mask
    A = np.array([a for a, _ in rows], dtype=np.int64)
    b = np.array([math.ceil(c) for _, c in rows], dtype=np.int64)
    return mask & (pts @ A.T >= b).all(axis=1)


def count_by_weight(P: Polyhedron, grading: Grading, L: int) -> List[int]:
    """Number of integer points of ``P`` at each weight ``0..L``."""
    if len(grading.weights) != P.dim:
        raise ValueError("grading dimension mismatch")
    if P.is_trivially_empty or not is_feasible(P):
        return [0] * (L + 1)
    lower = []
    for i in range(P.dim):
        rng = bounds(P, unit(P.dim, i))
        if rng is None:
            return [0] * (L + 1)
        if rng[0] is None:
            raise ValueError(f"variable {i} is unbounded below; weights cannot be finite")
        lower.append(math.ceil(rng[0]))
    base = grading.constant + sum(w * lo for w, lo in zip(grading.weights, lower))
    pts = lattice_points_below(lower, grading.weights, L - base)
    pts = pts[integer_mask(P.rows, pts)]
    weights = pts @ np.array(grading.weights, dtype=np.int64) + grading.constant
    weights = weights[weights >= 0]
    return np.bincount(weights, minlength=L + 1)[: L + 1].tolist()
