"""Affine permutations, Coxeter length, patterns and direct containment.

An affine permutation of size ``n`` is stored by its base window
``[w(1), ..., w(n)]``; every other value follows from ``w(i + n) = w(i) + n``.
Patterns are ordinary permutations in one-line notation, always normalized to
the values ``1..k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

# strand-assignment enumeration is exponential in the pattern size
MAX_PATTERN_SIZE = 12


class PatternError(ValueError):
    """Raised for malformed pattern input."""


class AffinePermutationError(ValueError):
    """Raised when a window does not define an affine permutation."""


@dataclass(frozen=True)
class Pattern:
    values: Tuple[int, ...]

    def __post_init__(self):
        k = len(self.values)
        if k == 0:
            raise PatternError("pattern must be nonempty")
        if sorted(self.values) != list(range(1, k + 1)):
            raise PatternError(f"{self.values} is not a permutation of 1..{k}")

    @property
    def k(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __str__(self):
        if self.k <= 9:
            return "".join(str(x) for x in self.values)
        return ",".join(str(x) for x in self.values)

    def inverse(self) -> Tuple[int, ...]:
        inv = [0] * self.k
        for i, x in enumerate(self.values, start=1):
            inv[x - 1] = i
        return tuple(inv)

    def inversions(self) -> Iterator[Tuple[int, int]]:
        """0-based position pairs ``i < j`` with ``p[i] > p[j]``."""
        vals = self.values
        for i in range(self.k):
            for j in range(i + 1, self.k):
                if vals[i] > vals[j]:
                    yield i, j


@dataclass(frozen=True)
class PatternInstance:
    positions: Tuple[int, ...]
    values: Tuple[int, ...]


def normalize_pattern(raw) -> Pattern:
    """Return the rank sequence of ``raw`` as a :class:`Pattern`.

    ``raw`` may be a sequence of distinct integers, a digit string such as
    ``"24351"`` or a comma separated string such as ``"7,1,0,4"``.
    """
    if isinstance(raw, Pattern):
        return raw
    if isinstance(raw, str):
        text = raw.strip().strip("[]")
        if not text:
            raise PatternError("empty pattern")
        try:
            if "," in text or " " in text:
                raw = [int(tok) for tok in text.replace(",", " ").split()]
            else:
                raw = [int(ch) for ch in text]
        except ValueError as exc:
            raise PatternError(f"cannot parse pattern {raw!r}") from exc
    raw = list(raw)
    if not raw:
        raise PatternError("empty pattern")
    if len(set(raw)) != len(raw):
        raise PatternError(f"pattern entries must be distinct: {raw}")
    order = sorted(raw)
    rank = {x: r for r, x in enumerate(order, start=1)}
    return Pattern(tuple(rank[x] for x in raw))


def identity_pattern(k: int) -> Pattern:
    return Pattern(tuple(range(1, k + 1)))


def inversion_count(p: Pattern) -> int:
    return sum(1 for _ in p.inversions())


def strand_count(p: Pattern) -> int:
    """Length of the longest strictly decreasing subsequence of ``p``."""
    vals = p.values
    best = [1] * len(vals)
    for j in range(len(vals)):
        for i in range(j):
            if vals[i] > vals[j] and best[i] + 1 > best[j]:
                best[j] = best[i] + 1
    return max(best)


@dataclass(frozen=True)
class AffinePermutation:
    n: int
    window: Tuple[int, ...]

    def __call__(self, i: int) -> int:
        return value_at(self, i)

    def __str__(self):
        return "[" + ", ".join(str(x) for x in self.window) + "]"

    @property
    def is_sorted(self) -> bool:
        return all(a < b for a, b in zip(self.window, self.window[1:]))

    def displacement_spread(self) -> int:
        """``max(w(i) - i) - min(w(i) - i)`` over the base window."""
        d = [x - i for i, x in enumerate(self.window, start=1)]
        return max(d) - min(d)


def make_affine(base_window: Sequence[int], n: Optional[int] = None) -> AffinePermutation:
    window = tuple(int(x) for x in base_window)
    if n is None:
        n = len(window)
    if n < 2:
        raise AffinePermutationError(f"size must be at least 2, got {n}")
    if len(window) != n:
        raise AffinePermutationError(f"window has {len(window)} entries, expected {n}")
    target = n * (n + 1) // 2
    if sum(window) != target:
        raise AffinePermutationError(f"window sum {sum(window)} != {target}")
    if len({x % n for x in window}) != n:
        raise AffinePermutationError(f"residues of {window} modulo {n} clash")
    return AffinePermutation(n, window)


def identity(n: int) -> AffinePermutation:
    return AffinePermutation(n, tuple(range(1, n + 1)))


def value_at(w: AffinePermutation, i: int) -> int:
    q, r = divmod(i - 1, w.n)
    return w.window[r] + q * w.n


def coxeter_length(w: AffinePermutation) -> int:
    """Number of inversions ``(i, j)`` with ``1 <= i <= n`` and ``i < j``.

    Each inversion class has exactly one representative whose first index
    lies in the base window.  Since ``w(j) - w(i) >= (j - i) - s`` with ``s``
    the displacement spread, no inversion spans more than ``s`` positions.
    """
    n = w.n
    s = w.displacement_spread()
    count = 0
    for i in range(1, n + 1):
        wi = w.window[i - 1]
        for j in range(i + 1, i + s + 1):
            if wi > value_at(w, j):
                count += 1
    return count


def flattening(w: AffinePermutation) -> Pattern:
    return normalize_pattern(w.window)


def sorted_part(w: AffinePermutation) -> AffinePermutation:
    return AffinePermutation(w.n, tuple(sorted(w.window)))


def parabolic_decompose(w: AffinePermutation) -> Tuple[AffinePermutation, Pattern]:
    """Split ``w`` into its minimal length coset representative and flattening.

    ``w(i) = u(v(i))`` with ``u`` sorted, and ``l(w) = l(u) + inv(v)``.
    """
    return sorted_part(w), flattening(w)


def compose_flattening(u: AffinePermutation, v: Pattern) -> AffinePermutation:
    """Inverse of :func:`parabolic_decompose`: window ``[u(v(1)), ..., u(v(n))]``."""
    if not u.is_sorted:
        raise AffinePermutationError("u must have a sorted base window")
    if v.k != u.n:
        raise AffinePermutationError("flattening size must equal n")
    return AffinePermutation(u.n, tuple(u.window[x - 1] for x in v.values))


def contains_pattern(w: AffinePermutation, p) -> Optional[PatternInstance]:
    """Search the Z-notation of ``w`` for an occurrence of ``p``.

    Returns a witness with ``1 <= positions[0] <= n`` or ``None``.

    Search bound: let ``s`` be the displacement spread of ``w``.  If two
    consecutive chosen positions are more than ``s + n`` apart, every cross
    pair ``x < y`` (x before the gap, y after) has ``w(y) - w(x) >= y - x - s
    > n``, so it is ascending, and stays ascending after moving the whole
    suffix left by ``n``.  Repeating the move gives an occurrence with every
    gap at most ``s + n``; translating by a multiple of ``n`` then puts the
    first position in the base window.  Hence the bounded search is complete.
    """
    p = normalize_pattern(p)
    n, k = w.n, p.k
    vals = p.values
    max_gap = w.displacement_spread() + n

    # for entry m: earlier index holding the nearest smaller / larger pattern value
    below, above = [], []
    for m in range(k):
        lo = hi = None
        for a in range(m):
            if vals[a] < vals[m] and (lo is None or vals[a] > vals[lo]):
                lo = a
            if vals[a] > vals[m] and (hi is None or vals[a] < vals[hi]):
                hi = a
        below.append(lo)
        above.append(hi)

    positions = [0] * k
    values = [0] * k

    def extend(m: int) -> bool:
        if m == k:
            return True
        prev = positions[m - 1]
        lo = values[below[m]] if below[m] is not None else None
        hi = values[above[m]] if above[m] is not None else None
        for j in range(prev + 1, prev + max_gap + 1):
            x = value_at(w, j)
            if (lo is None or x > lo) and (hi is None or x < hi):
                positions[m] = j
                values[m] = x
                if extend(m + 1):
                    return True
        return False

    for start in range(1, n + 1):
        positions[0] = start
        values[0] = value_at(w, start)
        if extend(1):
            return PatternInstance(tuple(positions), tuple(values))
    return None


def is_instance(w: AffinePermutation, p, positions: Sequence[int]) -> bool:
    """Check that ``positions`` carry an occurrence of ``p`` in ``w``."""
    p = normalize_pattern(p)
    if len(positions) != p.k or any(a >= b for a, b in zip(positions, positions[1:])):
        return False
    return normalize_pattern([value_at(w, i) for i in positions]) == p


def simple_reflection(w: AffinePermutation, i: int) -> AffinePermutation:
    """Right multiplication by ``s_i``: swap positions ``i`` and ``i + 1``."""
    n = w.n
    i %= n
    win = list(w.window)
    if i == 0:
        win[0], win[n - 1] = w.window[n - 1] - n, w.window[0] + n
    else:
        win[i - 1], win[i] = win[i], win[i - 1]
    return AffinePermutation(n, tuple(win))


def elements_by_bfs(n: int, max_length: int) -> Iterator[Tuple[AffinePermutation, int]]:
    """Breadth-first walk of the Cayley graph; yields ``(w, word length)``.

    Independent of every inversion or abacus formula, so it serves as a
    ground-truth oracle for Coxeter length on small cases.
    """
    start = identity(n)
    seen = {start.window}
    frontier = [start]
    yield start, 0
    for dist in range(1, max_length + 1):
        nxt = []
        for w in frontier:
            for i in range(n):
                u = simple_reflection(w, i)
                if u.window not in seen:
                    seen.add(u.window)
                    nxt.append(u)
                    yield u, dist
        frontier = nxt


def all_patterns(k: int) -> Iterable[Pattern]:
    from itertools import permutations

    for perm in permutations(range(1, k + 1)):
        yield Pattern(perm)
