"""Exact univariate polynomials and rational functions.

Coefficients are Python integers or :class:`fractions.Fraction`; nothing is
ever converted to floating point.  Rational functions are kept reduced with
``denominator(0) == 1`` so that they expand as power series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

EVENTUALLY_ZERO = "EventuallyZero"
EVENTUALLY_PERIODIC = "EventuallyPeriodic"
UNBOUNDED = "Unbounded"


class FitError(ArithmeticError):
    """Coefficients are inconsistent with the proposed denominator bound."""


def _clean(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Dense polynomial, ``coeffs[i]`` is the coefficient of ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_clean(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_power(cls, d: int, c=1) -> "Polynomial":
        return cls([0] * d + [c])

    @classmethod
    def one_minus_x_power(cls, d: int) -> "Polynomial":
        return cls([1] + [0] * (d - 1) + [-1]) if d > 0 else cls()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms).replace("+ -", "- ")

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.coeffs[-1])
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        for i in range(dq, -1, -1):
            q = rem[i + other.degree] / lead
            quot[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other) -> bool:
        return divmod(_as_poly(other), self)[1].is_zero()

    def content(self):
        """Rational content: ``self == content * primitive`` with integer primitive."""
        if not self.coeffs:
            return Fraction(0)
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, int(c * den))
        return Fraction(g, den)

    def primitive(self) -> "Polynomial":
        """Integer primitive part with positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return Polynomial([x / c for x in self.coeffs])

    def truncate(self, length: int) -> "Polynomial":
        return Polynomial(self.coeffs[:length])


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial([x])


ONE = Polynomial([1])


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor as a primitive integer polynomial (primitive PRS)."""
    a, b = a.primitive(), b.primitive()
    if a.is_zero():
        return b
    while not b.is_zero():
        _, r = divmod(a, b)
        a, b = b, r.primitive()
    return a.primitive()


def product(polys) -> Polynomial:
    out = ONE
    for p in polys:
        out = out * p
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Polynomial:
    """The cyclotomic polynomial of order ``d``."""
    q = Polynomial.one_minus_x_power(d) * -1
    for e in range(1, d):
        if d % e == 0:
            q = q.exact_div(cyclotomic(e))
    return q


@lru_cache(maxsize=None)
def _phi_table(limit: int) -> Tuple[int, ...]:
    phi = list(range(limit + 1))
    for i in range(2, limit + 1):
        if phi[i] == i:
            for j in range(i, limit + 1, i):
                phi[j] -= phi[j] // i
    return tuple(phi)


def euler_phi(d: int) -> int:
    return _phi_table(max(d, 64))[d]


def _divmod_monic(coeffs: List[int], divisor: Tuple[int, ...]):
    rem = list(coeffs)
    dd = len(divisor) - 1
    quot = [0] * max(len(rem) - dd, 0)
    for i in range(len(rem) - 1 - dd, -1, -1):
        q = rem[i + dd]
        if q:
            quot[i] = q
            for j, b in enumerate(divisor):
                rem[i + j] -= q * b
    return quot, rem[:dd]


def cyclotomic_factorization(p: Polynomial) -> Tuple[Dict[int, int], Polynomial]:
    """Strip cyclotomic factors off ``p``.

    Returns ``(multiplicities, cofactor)`` with ``p = cofactor * prod(Phi_d**m_d)``.
    Only orders with ``phi(d) <= deg`` can occur; ``phi(d) >= sqrt(d / 2)``
    bounds the search.
    """
    mult: Dict[int, int] = {}
    scale = p.content() if p.coeffs else Fraction(1)
    rest = [int(c / scale) for c in p.coeffs]
    deg = len(rest) - 1
    if deg < 1:
        return mult, p
    phi = _phi_table(2 * deg * deg + 2)
    d = 1
    while len(rest) > 1 and d < len(phi):
        if phi[d] <= len(rest) - 1:
            divisor = cyclotomic(d).coeffs
            while len(rest) - 1 >= len(divisor) - 1:
                q, r = _divmod_monic(rest, divisor)
                if any(r):
                    break
                rest = q
                mult[d] = mult.get(d, 0) + 1
        d += 1
    return mult, Polynomial([c * scale for c in rest])


@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial

    @classmethod
    def make(cls, num, den=ONE) -> "RationalFunction":
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(Polynomial(), ONE)
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        c0 = den[0]
        if c0 == 0:
            raise ValueError("denominator vanishes at 0; not a power series")
        num = Polynomial([Fraction(c) / c0 for c in num.coeffs])
        den = Polynomial([Fraction(c) / c0 for c in den.coeffs])
        return cls(num, den)

    @classmethod
    def polynomial(cls, coeffs) -> "RationalFunction":
        return cls.make(Polynomial(coeffs))

    def __add__(self, other):
        other = _as_rf(other)
        return RationalFunction.make(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        other = _as_rf(other)
        return RationalFunction.make(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def expand(self, length: int) -> List:
        return expand(self, length)

    def to_json(self) -> dict:
        return {
            "numerator": [_json_coeff(c) for c in self.numerator.coeffs],
            "denominator": [_json_coeff(c) for c in self.denominator.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls.make(
            Polynomial([Fraction(c) for c in data["numerator"]]),
            Polynomial([Fraction(c) for c in data["denominator"]]),
        )

    def __str__(self):
        if self.is_polynomial():
            return str(self.numerator)
        return f"({self.numerator}) / ({self.denominator})"


def _json_coeff(c):
    c = _clean(c)
    return c if isinstance(c, int) else str(c)


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.make(_as_poly(x))


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def expand(r: RationalFunction, length: int) -> List:
    """First ``length + 1`` power series coefficients of ``r``."""
    num, den = r.numerator, r.denominator
    if den[0] != 1:
        raise ValueError("denominator must be normalized to 1 at x = 0")
    out: List = []
    dcs = den.coeffs
    for m in range(length + 1):
        acc = num[m]
        for j in range(1, min(m, den.degree) + 1):
            if dcs[j]:
                acc -= dcs[j] * out[m - j]
        out.append(_clean(acc))
    return out


def fit_rational(
    coeffs: Sequence[int], denominator_bound: Polynomial, margin: int
) -> RationalFunction:
    """Recover ``N / D`` from a coefficient prefix and a denominator bound ``D``.

    The numerator is the product ``coeffs * D`` truncated to degree
    ``len(coeffs) - margin - 1``; the remaining ``margin`` product coefficients
    must vanish, otherwise :class:`FitError` is raised.
    """
    bound = _as_poly(denominator_bound)
    if bound[0] == 0:
        raise ValueError("denominator bound must not vanish at 0")
    length = len(coeffs)
    if margin < 1 or length < bound.degree + margin + 1:
        raise ValueError(
            f"need at least deg(bound) + margin + 1 = {bound.degree + margin + 1} "
            f"coefficients, got {length}"
        )
    prod = [0] * length
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        for j in range(min(bound.degree, length - 1 - i) + 1):
            prod[i + j] += a * bound[j]
    cap = length - margin
    bad = [i for i in range(cap, length) if prod[i] != 0]
    if bad:
        raise FitError(
            f"coefficients disagree with the denominator bound at degree {bad[0]}; "
            "raise the length or the margin"
        )
    return RationalFunction.make(Polynomial(prod[:cap]), bound)


@dataclass(frozen=True)
class BehaviorReport:
    """Long-run behaviour of a coefficient sequence.

    For periodic reports ``a[i + period] == a[i]`` for every ``i >= preperiod``
    and ``repeating_values == a[preperiod : preperiod + period]``.  For
    eventually-zero reports ``preperiod`` is the index of the first vanishing
    tail term.
    """

    kind: str
    period: Optional[int] = None
    preperiod: int = 0
    repeating_values: Tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "period": self.period,
            "preperiod": self.preperiod,
            "repeating_values": list(self.repeating_values),
        }


def classify_behavior(r: RationalFunction) -> BehaviorReport:
    """Eventually zero, eventually periodic, or unbounded.

    Periodic exactly when the reduced denominator is a product of distinct
    cyclotomic polynomials; the period is the lcm of their orders.
    """
    if r.is_polynomial():
        return BehaviorReport(EVENTUALLY_ZERO, None, r.numerator.degree + 1, ())
    mult, rest = cyclotomic_factorization(r.denominator)
    if rest.degree > 0 or any(m > 1 for m in mult.values()):
        return BehaviorReport(UNBOUNDED)
    period = 1
    for d in mult:
        period = period * d // math.gcd(period, d)
    tail = (r.numerator * Polynomial.one_minus_x_power(period)).exact_div(r.denominator)
    start = max(0, tail.degree + 1 - period)
    values = expand(r, start + period - 1)[start:]
    return BehaviorReport(EVENTUALLY_PERIODIC, period, start, tuple(values))
