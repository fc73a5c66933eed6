"""Container and avoider series, and the two classifiers.

The affine symmetric group is the disjoint union of cone cells ``C(b, v)``:
one per bias ``b`` and flattening ``v``.  Inside a cell, an element with
t-coordinates ``t`` has length ``sum(i(n-i) t_i) + weight(b) + inv(v)``, and
it contains ``p`` iff ``t`` lies in the projected polyhedron of some strand
assignment.  Counting that union pointwise per length gives exact container
counts; a denominator bound assembled from recession rays then turns a prefix
of counts into a certified rational function.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .abacus import (
    Bias,
    bias_from_delta,
    bott_series,
    coset_weights,
    enumerate_biases,
    from_gap_vector,
)
from .affine_core import (
    Pattern,
    all_patterns,
    compose_flattening,
    contains_pattern,
    inversion_count,
    normalize_pattern,
    strand_count,
)
from .pattern_geometry import (
    StrandAssignment,
    projected_system,
    recession_system,
    strand_assignments,
)
from .polyhedra import (
    _nullspace_line,
    integer_mask,
    integer_point_exists,
    lattice_points_below,
    primitive_vector,
    unit,
)
from .series import (
    EVENTUALLY_PERIODIC,
    EVENTUALLY_ZERO,
    FitError,
    Polynomial,
    RationalFunction,
    classify_behavior,
    cyclotomic,
    expand,
    fit_rational,
)

FINITE = "FinitelyEnumerated"
PERIODIC = "Periodic"
UNBOUNDED = "Unbounded"

_KIND_OF_BEHAVIOR = {EVENTUALLY_ZERO: FINITE, EVENTUALLY_PERIODIC: PERIODIC}

MapFn = Callable  # map-like: (function, iterable) -> iterable


@dataclass(frozen=True)
class CellKey:
    bias: Bias
    flattening: Pattern

    @property
    def constant(self) -> int:
        """Length of the cell's apex element."""
        return self.bias.weight + inversion_count(self.flattening)

    @property
    def name(self) -> str:
        return f"{self.bias.name}/{self.flattening}"


def iter_cells(n: int) -> Iterator[CellKey]:
    """All ``(n-1)! * n!`` cells, biases outer, flattenings lexicographic."""
    for b in enumerate_biases(n):
        for v in all_patterns(n):
            yield CellKey(b, v)


# ---------------------------------------------------------------------------
# counting


def _cell_union_counts(args) -> List[int]:
    p, n, L, delta, v = args
    cell = CellKey(bias_from_delta(delta, n), v)
    budget = L - cell.constant
    if budget < 0:
        return [0] * (L + 1)
    weights = coset_weights(n)
    pts = lattice_points_below([0] * (n - 1), weights, budget)
    mask = np.zeros(len(pts), dtype=bool)
    for pi in strand_assignments(p, n):
        P = projected_system(p, pi, cell.bias, v, n)
        if P.is_trivially_empty:
            continue
        todo = ~mask
        if not todo.any():
            break
        mask[todo] = integer_mask(P.rows, pts[todo])
    lengths = pts[mask] @ np.array(weights, dtype=np.int64) + cell.constant
    return np.bincount(lengths, minlength=L + 1)[: L + 1].tolist()


def container_counts(p, n: int, L: int, map_fn: MapFn = map) -> List[int]:
    """Number of elements of each length ``0..L`` that contain ``p``.

    ``map_fn`` lets callers fan the cells out to a worker pool; the result
    does not depend on it.
    """
    p = normalize_pattern(p)
    if n < 2:
        raise ValueError("n must be at least 2")
    if L < 0:
        raise ValueError("L must be nonnegative")
    jobs = [(p, n, L, c.bias.delta, c.flattening) for c in iter_cells(n)]
    total = np.zeros(L + 1, dtype=object)
    for counts in map_fn(_cell_union_counts, jobs):
        total += np.array(counts, dtype=object)
    return [int(x) for x in total]


def bott_counts(n: int, L: int) -> List[int]:
    return [int(x) for x in expand(bott_series(n), L)]


def oracle_counts(p, n: int, L: int) -> Tuple[List[int], List[int]]:
    """``(containers, all elements)`` per length by direct Z-notation search.

    Walks gap vectors and flattenings, so it shares nothing with the
    polyhedral path beyond the gap-vector bijection.
    """
    p = normalize_pattern(p)
    contain = [0] * (L + 1)
    every = [0] * (L + 1)
    weights = [n - i for i in range(1, n)]
    for v in all_patterns(n):
        base = inversion_count(v)
        if base > L:
            continue
        for gaps in _gap_vectors(weights, L - base):
            u = from_gap_vector(gaps)
            ell = base + sum(w * g for w, g in zip(weights, gaps))
            every[ell] += 1
            if contains_pattern(compose_flattening(u, v), p) is not None:
                contain[ell] += 1
    return contain, every


def _gap_vectors(weights: Sequence[int], budget: int) -> Iterator[Tuple[int, ...]]:
    if not weights:
        yield ()
        return
    w = weights[0]
    for g in range(budget // w + 1):
        for rest in _gap_vectors(weights[1:], budget - g * w):
            yield (g,) + rest


# ---------------------------------------------------------------------------
# denominator bound and fitting


def candidate_rays(p, n: int) -> List[Tuple[int, ...]]:
    """Every possible extreme ray of any intersection of recession cones.

    Rays of an intersection of cones lie on ``d - 1`` facet hyperplanes of the
    cones involved (``d = n - 1``), so intersecting every ``(d-1)``-subset of
    facet normals, coordinate hyperplanes included, and keeping the
    nonnegative directions covers them all.
    """
    p = normalize_pattern(p)
    d = n - 1
    normals = {unit(d, i) for i in range(d)}
    for pi in strand_assignments(p, n):
        normals.update(a for a, _ in recession_system(p, pi, n).rows if any(a))
    normals = sorted(normals)
    found = set()
    for subset in itertools.combinations(normals, d - 1):
        line = _nullspace_line(list(subset), d)
        if line is None:
            continue
        for sign in (1, -1):
            r = primitive_vector([sign * x for x in line])
            if all(x >= 0 for x in r) and any(r):
                found.add(r)
    return sorted(found)


def ray_weight(r: Sequence[int], n: int) -> int:
    return sum(w * x for w, x in zip(coset_weights(n), r))


def denominator_bound(p, n: int) -> Polynomial:
    """A polynomial that every container series denominator divides.

    Each cell contributes lattice-point series of intersections of rational
    polyhedra; a triangulation of each recession cone uses at most ``n - 1``
    of the candidate rays per simplicial piece, each giving a factor
    ``1 - x^weight``.  Taking every cyclotomic factor to the largest power
    any such product can reach bounds their lcm.
    """
    d = n - 1
    weights = [ray_weight(r, n) for r in candidate_rays(p, n)]
    orders = sorted({k for w in weights for k in range(1, w + 1) if w % k == 0})
    out = Polynomial([1])
    for k in orders:
        mult = min(d, sum(1 for w in weights if w % k == 0))
        out = out * cyclotomic(k) ** mult
    if out[0] != 1:
        out = -out
    return out


@dataclass(frozen=True)
class PatternSeries:
    pattern: Pattern
    n: int
    containers: RationalFunction
    avoiders: RationalFunction
    verified_to: int
    bound: Polynomial
    counts: Tuple[int, ...] = field(repr=False, default=())


def pattern_series(
    p,
    n: int,
    margin: Optional[int] = None,
    min_length: int = 0,
    map_fn: MapFn = map,
    retries: int = 5,
) -> PatternSeries:
    """Container and avoider series of ``p`` in size ``n``, with certification.

    The fit uses ``margin`` held-out coefficients (default ``deg(bound) + 8``).
    The numerator degree is not known in advance, so the prefix grows until
    the held-out coefficients agree; ``FitError`` is raised after ``retries``
    doublings.
    """
    p = normalize_pattern(p)
    bound = denominator_bound(p, n)
    deg = bound.degree
    margin = deg + 8 if margin is None else margin
    slack = deg + 8
    last: Optional[FitError] = None
    for _ in range(retries + 1):
        L = max(min_length, deg + margin + slack)
        counts = container_counts(p, n, L, map_fn)
        try:
            containers = fit_rational(counts, bound, margin)
        except FitError as exc:
            last = exc
            slack *= 2
            continue
        avoiders = bott_series(n) - containers
        return PatternSeries(p, n, containers, avoiders, L, bound, tuple(counts))
    raise FitError(f"no certified fit for {p} at n={n} up to length {L}: {last}")


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    kind: str
    evidence: dict

    def to_json(self) -> dict:
        return {"kind": self.kind, "evidence": self.evidence}


def classify_series(p, n: int, series: Optional[PatternSeries] = None, **kw) -> Classification:
    p = normalize_pattern(p)
    series = pattern_series(p, n, **kw) if series is None else series
    report = classify_behavior(series.avoiders)
    kind = _KIND_OF_BEHAVIOR.get(report.kind, UNBOUNDED)
    return Classification(
        kind,
        {
            "method": "series",
            "behavior": report.to_json(),
            "avoiders": series.avoiders.to_json(),
            "verified_to": series.verified_to,
        },
    )


@dataclass(frozen=True)
class CornerReport:
    pair: Tuple[int, int]
    witness: int
    chain_kind: str
    chain: Tuple[int, ...]
    links: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "witness": self.witness,
            "chain_kind": self.chain_kind,
            "chain": list(self.chain),
            "links": list(self.links),
        }


BELOW = "below"
ABOVE = "above"

# Which strand the enclosed entry must sit on for each kind of chain.  The
# oriented reading pairs a strand-3 witness with a chain below (this blocks the
# t_2 ray) and a strand-1 witness with a chain above (blocks t_1).  The
# literal reading accepts either witness with either chain.
ORIENTED_READING = {BELOW: (3,), ABOVE: (1,)}
LITERAL_READING = {BELOW: (1, 3), ABOVE: (1, 3)}


def _link(p: Pattern, pi: Sequence[int], a: int, b: int, kind: str) -> Optional[int]:
    """0-based index of an entry linking strand-2 entries ``a < b``."""
    vals = p.values
    lo, hi = min(vals[a], vals[b]), max(vals[a], vals[b])
    for x in range(p.k):
        if kind == BELOW and pi[x] == 1 and x > b and vals[x] < lo:
            return x
        if kind == ABOVE and pi[x] == 3 and x < a and vals[x] > hi:
            return x
    return None


def tight_corner_exists(p, pi, reading: Optional[Dict[str, Tuple[int, ...]]] = None) -> Optional[CornerReport]:
    """A tight corner of ``(p, pi)`` in 3 strands, reported 1-based, or None."""
    p = normalize_pattern(p)
    pi = tuple(pi.pi if isinstance(pi, StrandAssignment) else pi)
    reading = ORIENTED_READING if reading is None else reading
    vals = p.values
    second = [i for i in range(p.k) if pi[i] == 2]
    for s, t in itertools.combinations(range(len(second)), 2):
        i, j = second[s], second[t]
        lo, hi = min(vals[i], vals[j]), max(vals[i], vals[j])
        chain = second[s : t + 1]
        for kind in (BELOW, ABOVE):
            inside = [
                x
                for x in range(i + 1, j)
                if pi[x] in reading[kind] and lo < vals[x] < hi
            ]
            if not inside:
                continue
            links = [_link(p, pi, a, b, kind) for a, b in zip(chain, chain[1:])]
            if all(x is not None for x in links):
                return CornerReport(
                    (i + 1, j + 1),
                    inside[0] + 1,
                    kind,
                    tuple(x + 1 for x in chain),
                    tuple(x + 1 for x in links),
                )
    return None


@lru_cache(maxsize=4096)
def _feasible_cached(p: Pattern, pi: Tuple[int, ...], n: int) -> bool:
    for cell in iter_cells(n):
        if integer_point_exists(projected_system(p, pi, cell.bias, cell.flattening, n)):
            return True
    return False


def is_feasible_assignment(p, pi, n: int = 3) -> bool:
    """Whether some cell holds an integer point for ``(p, pi)``."""
    p = normalize_pattern(p)
    pi = tuple(pi.pi if isinstance(pi, StrandAssignment) else pi)
    return _feasible_cached(p, pi, n)


def classify_combinatorial(p, n: int, reading=None, **series_kw) -> Classification:
    """Strand counting, then tight corners at n = 3, transferred to larger n."""
    p = normalize_pattern(p)
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return classify_series(p, n, **series_kw)
    m = strand_count(p)
    if m < 3:
        return Classification(FINITE, {"method": "strands", "strands": m})
    if m >= 4:
        return Classification(UNBOUNDED, {"method": "strands", "strands": m})
    rows = []
    for pi in strand_assignments(p, 3):
        feasible = is_feasible_assignment(p, pi, 3)
        corner = tight_corner_exists(p, pi, reading) if feasible else None
        rows.append((pi, feasible, corner))
        if feasible and corner is None:
            return Classification(
                PERIODIC,
                {"method": "tight-corner", "strands": 3, "witness": list(pi.pi), "from_n": 3},
            )
    feasible = [(pi, c) for pi, f, c in rows if f]
    evidence = {
        "method": "tight-corner",
        "strands": 3,
        "from_n": 3,
        "feasible": len(feasible),
        "assignments": len(rows),
    }
    if feasible:
        evidence["corners"] = {str(pi): c.to_json() for pi, c in feasible}
    return Classification(UNBOUNDED, evidence)


# ---------------------------------------------------------------------------
# experimental: convexity of the union of strand-assignment regions


@dataclass(frozen=True)
class ConvexityReport:
    pattern: Pattern
    n: int
    box: int
    method: str
    cells: int
    violations: Tuple[Tuple[str, Tuple[int, ...]], ...]

    def to_json(self) -> dict:
        return {
            "pattern": str(self.pattern),
            "n": self.n,
            "box": self.box,
            "method": self.method,
            "cells": self.cells,
            "convex": not self.violations,
            "violations": [{"cell": c, "point": list(pt)} for c, pt in self.violations],
        }


def _union_points(p: Pattern, n: int, cell: CellKey, box: int) -> Tuple[np.ndarray, np.ndarray]:
    grid = np.array(list(itertools.product(range(box + 1), repeat=n - 1)), dtype=np.int64)
    mask = np.zeros(len(grid), dtype=bool)
    for pi in strand_assignments(p, n):
        mask |= integer_mask(projected_system(p, pi, cell.bias, cell.flattening, n).rows, grid)
    return grid, mask


def _hull_2d(points: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for q in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= 0:
            lower.pop()
        lower.append(q)
    for q in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= 0:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def _in_hull_2d(hull: List[Tuple[int, int]], q: Tuple[int, int]) -> bool:
    if len(hull) == 1:
        return hull[0] == tuple(q)
    if len(hull) == 2:
        (ax, ay), (bx, by) = hull
        cr = (bx - ax) * (q[1] - ay) - (by - ay) * (q[0] - ax)
        return cr == 0 and min(ax, bx) <= q[0] <= max(ax, bx) and min(ay, by) <= q[1] <= max(ay, by)
    for a, b in zip(hull, hull[1:] + hull[:1]):
        if (b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]) < 0:
            return False
    return True


def _segment_gaps(members: set, pts: List[Tuple[int, ...]]) -> Optional[Tuple[int, ...]]:
    for a, b in itertools.combinations(pts, 2):
        diff = [y - x for x, y in zip(a, b)]
        g = 0
        for x in diff:
            g = math.gcd(g, x)
        for s in range(1, g):
            q = tuple(x + s * dx // g for x, dx in zip(a, diff))
            if q not in members:
                return q
    return None


def probe_union_convexity(p, n: int, box: int) -> ConvexityReport:
    """Scan each cell's union region inside ``{0..box}^(n-1)`` for
    non-convexity.  Exact hull test in two dimensions; lattice-segment test
    otherwise.  Experimental and never used by the classifiers."""
    p = normalize_pattern(p)
    violations = []
    cells = 0
    method = "hull" if n == 3 else "segments"
    for cell in iter_cells(n):
        cells += 1
        grid, mask = _union_points(p, n, cell, box)
        inside = [tuple(int(x) for x in row) for row in grid[mask]]
        if not inside:
            continue
        if n == 3:
            hull = _hull_2d(inside)
            for row in grid[~mask]:
                q = (int(row[0]), int(row[1]))
                if _in_hull_2d(hull, q):
                    violations.append((cell.name, q))
                    break
        elif n > 3:
            q = _segment_gaps(set(inside), inside)
            if q is not None:
                violations.append((cell.name, q))
        else:
            # one dimension: the region must be an interval
            xs = sorted(x[0] for x in inside)
            if xs[-1] - xs[0] + 1 != len(xs):
                violations.append((cell.name, (xs[0],)))
    return ConvexityReport(p, n, box, method, cells, tuple(violations))


# ---------------------------------------------------------------------------
# a single strand assignment over selected cells


def assignment_avoider_counts(p, pi, n: int, L: int, flattening=None) -> List[int]:
    """Per-length count of cell points outside the region of one assignment.

    Restricted to the flattening ``flattening`` (all biases) when given,
    otherwise taken over every cell.
    """
    p = normalize_pattern(p)
    pi = tuple(pi.pi if isinstance(pi, StrandAssignment) else pi)
    v = None if flattening is None else normalize_pattern(flattening)
    weights = np.array(coset_weights(n), dtype=np.int64)
    total = np.zeros(L + 1, dtype=np.int64)
    for cell in iter_cells(n):
        if v is not None and cell.flattening != v:
            continue
        pts = lattice_points_below([0] * (n - 1), coset_weights(n), L - cell.constant)
        P = projected_system(p, pi, cell.bias, cell.flattening, n)
        outside = pts[~integer_mask(P.rows, pts)]
        total += np.bincount(outside @ weights + cell.constant, minlength=L + 1)[: L + 1]
    return [int(x) for x in total]


def assignment_avoider_series(p, pi, n: int, flattening=None, margin: Optional[int] = None) -> RationalFunction:
    """Certified series of :func:`assignment_avoider_counts`."""
    bound = denominator_bound(p, n)
    margin = bound.degree + 8 if margin is None else margin
    slack = bound.degree + 8
    for _ in range(6):
        L = bound.degree + margin + slack
        try:
            return fit_rational(assignment_avoider_counts(p, pi, n, L, flattening), bound, margin)
        except FitError:
            slack *= 2
    raise FitError(f"no certified fit for assignment {pi} of {p}")
