"""Exact rational arithmetic, dense univariate polynomials, interpolation
and Sturm-sequence root isolation.

Scalars are :class:`fractions.Fraction` throughout; nothing in here ever
touches a float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import (
    InconsistentSamples,
    InsufficientSamples,
    OrderOutOfRange,
    ZeroDenominator,
)

Rational = Fraction
RationalLike = Union[int, Fraction, str]

#: Degree of the zero polynomial.
NEG_INF = -math.inf


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or exact string ("7/2", "-3") to a Fraction.

    Floats and decimal strings are refused so that nothing inexact leaks in.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(ch in text for ch in ".eE_"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"not an exact rational literal: {value!r}") from None
        if d == 0:
            raise ZeroDenominator(f"zero denominator in {value!r}")
        return Fraction(n, d)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Polynomial:
    """Immutable dense univariate polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``; trailing zeros are
    stripped, so the zero polynomial has no coefficients and degree
    :data:`NEG_INF`.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs: Iterable[RationalLike] = (), var: str = "k"):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)
        self.var = var

    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1, var: str = "k") -> "Polynomial":
        return cls([0] * degree + [coeff], var)

    @classmethod
    def constant(cls, value: RationalLike, var: str = "k") -> "Polynomial":
        return cls([value], var)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int | float:
        return len(self._c) - 1 if self._c else NEG_INF

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def top(self, count: int, degree: int) -> tuple[Fraction, ...]:
        """Coefficients of ``var**degree``, ``var**(degree-1)``, ... (``count`` of them)."""
        return tuple(self.coeff(degree - i) for i in range(count))

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        acc = Fraction(0)
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def _wrap(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other], self.var)

    def __add__(self, other) -> "Polynomial":
        other = self._wrap(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Polynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial([-x for x in self._c], self.var)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._wrap(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._wrap(other)
        if not self._c or not other._c:
            return Polynomial([], self.var)
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, x in enumerate(self._c):
            if x:
                for j, y in enumerate(other._c):
                    out[i + j] += x * y
        return Polynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        other = self._wrap(other)
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        rem = list(self._c)
        dd = len(other._c) - 1
        lead = other._c[-1]
        if len(rem) - 1 < dd:
            return Polynomial([], self.var), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] / lead
            if q:
                quot[i - dd] = q
                for j, y in enumerate(other._c):
                    rem[i - dd + j] -= q * y
        return Polynomial(quot, self.var), Polynomial(rem[:dd], self.var)

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        return Polynomial([i * a for i, a in enumerate(self._c)][1:], self.var)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Polynomial([other])._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Polynomial({[format_rational(a) for a in self._c]!r}, var={self.var!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for i in range(len(self._c) - 1, -1, -1):
            a = self._c[i]
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if i == 0:
                body = format_rational(mag)
            else:
                power = self.var if i == 1 else f"{self.var}^{i}"
                body = power if mag == 1 else f"{format_rational(mag)}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    g = poly_gcd(p, p.derivative())
    return p // g


@dataclass(frozen=True)
class SampleSeries:
    """Exact samples ``(k, value)`` with strictly increasing positive ``k``."""

    points: tuple[tuple[int, Fraction], ...]

    def __init__(self, points: Iterable[tuple[int, RationalLike]]):
        pts = tuple((int(k), as_rational(v)) for k, v in points)
        for k, _ in pts:
            if k <= 0:
                raise ValueError(f"sample abscissa must be positive, got {k}")
        for (k0, _), (k1, _) in zip(pts, pts[1:]):
            if k1 <= k0:
                raise ValueError("sample abscissae must be strictly increasing")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)


def _newton_coefficients(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    # In-place divided-difference table; returns the top diagonal.
    table = list(ys)
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - j])
    return table


def interpolate(samples: SampleSeries, max_degree: int, var: str = "k") -> Polynomial:
    """Polynomial of degree <= ``max_degree`` through the first ``max_degree + 1``
    samples, checked exactly against every remaining sample.

    Raises :class:`InconsistentSamples` naming the first point that is off the
    curve, and :class:`InsufficientSamples` when there are too few points.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    pts = samples.points
    if len(pts) < max_degree + 1:
        raise InsufficientSamples(
            f"need {max_degree + 1} samples for degree {max_degree}, got {len(pts)}"
        )
    xs = [Fraction(k) for k, _ in pts[: max_degree + 1]]
    ys = [v for _, v in pts[: max_degree + 1]]
    dd = _newton_coefficients(xs, ys)

    # Expand the Newton form by Horner's rule in the monomial basis.
    result = Polynomial([dd[-1]], var)
    for i in range(len(dd) - 2, -1, -1):
        result = result * Polynomial([-xs[i], 1], var) + dd[i]

    for k, v in pts[max_degree + 1:]:
        got = result(k)
        if got != v:
            raise InconsistentSamples(
                f"sample at k={k} is {v}, fitted degree-{max_degree} polynomial gives {got}"
            )
    return result


def asymptotic_quotient_coefficient(numer: Polynomial, denom: Polynomial, order: int) -> Fraction:
    """Coefficient of ``k**order`` in the large-``k`` expansion of numer/denom.

    ``order`` may be negative; the Laurent tail is obtained by shifting the
    numerator up before doing ordinary polynomial long division.
    """
    if denom.is_zero():
        raise ZeroDenominator("denominator polynomial is zero")
    top = numer.degree - denom.degree
    if order > top:
        raise OrderOutOfRange(
            f"order {order} exceeds degree difference {top} of the quotient"
        )
    shift = max(0, -order)
    if shift:
        numer = numer * Polynomial.monomial(shift, 1, numer.var)
    quotient = numer // denom
    return quotient.coeff(order + shift)


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def sign_variations(seq: Sequence[Polynomial], x: Fraction) -> int:
    signs = [s for s in (q(x) for q in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def count_real_roots(p: Polynomial, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (lo, hi]."""
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    seq = sturm_sequence(squarefree_part(p))
    return sign_variations(seq, as_rational(lo)) - sign_variations(seq, as_rational(hi))


def isolate_real_roots(
    p: Polynomial, lo: RationalLike, hi: RationalLike
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct real roots of ``p`` in (lo, hi].

    Each interval ``(a, b)`` holds exactly one root, with ``a < root < b``;
    a rational root hit exactly during bisection comes back as ``(r, r)``.
    Intervals are sorted left to right.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    q = squarefree_part(p)
    seq = sturm_sequence(q)

    out: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi, sign_variations(seq, lo), sign_variations(seq, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            if q(b) == 0:
                out.append((b, b))
                continue
            # Keep endpoints off neighbouring roots so the sign change is strict.
            while q(a) == 0:
                mid = (a + b) / 2
                vm = sign_variations(seq, mid)
                if vm - vb == 1:
                    a, va = mid, vm
                elif q(mid) == 0:
                    a, b = mid, mid
                    break
                else:
                    b, vb = mid, vm
            out.append((a, b))
            continue
        mid = (a + b) / 2
        vm = sign_variations(seq, mid)
        stack.append((a, mid, va, vm))
        stack.append((mid, b, vm, vb))
    out.sort()
    return out


def refine_root(
    p: Polynomial, interval: tuple[RationalLike, RationalLike], width: RationalLike
) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval of a simple root down to ``width``."""
    a, b = as_rational(interval[0]), as_rational(interval[1])
    width = as_rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    q = squarefree_part(p)
    if a == b:
        return a, b
    if q(b) == 0:
        return b, b
    sb = q(b) > 0
    while b - a > width:
        mid = (a + b) / 2
        v = q(mid)
        if v == 0:
            return mid, mid
        if (v > 0) == sb:
            b = mid
        else:
            a = mid
    return a, b


def root_bound(p: Polynomial) -> Fraction:
    """Cauchy bound: every real root has absolute value below the result."""
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(abs(a) / lead for a in p.coeffs[:-1])
