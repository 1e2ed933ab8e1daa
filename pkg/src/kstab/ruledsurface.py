"""Deformation to the normal cone of the infinity section on P(O + M).

The base is a curve of genus ``g >= 2`` and ``M`` a line bundle of degree
``d >= 1``; the polarisation is ``C + m S_0``.  Blowing up the infinity
section in the central fibre with parameter ``c`` (``0 < c < m``, the
Seshadri constant being ``m``) gives a test-configuration whose central
fibre splits the sections of ``L^k`` into graded pieces indexed by
``l = 0..mk``.  The torus action ``beta`` has weight ``l`` on piece ``l``;
the configuration action ``alpha`` has weight ``-(ck - l)`` on the pieces
with ``l < ck`` (those carry a factor ``t^(ck - l)``) and zero elsewhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InvalidConfig, UnsupportedParameters
from .exactalg import (
    Polynomial,
    RationalLike,
    as_rational,
    isolate_real_roots,
    refine_root,
    root_bound,
)
from .invariants import WeightBlock, WeightSystem

STRICT = "strictly_destabilized"
BOUNDARY = "boundary_destabilized"
NO_WITNESS = "no_witness_found"


@dataclass(frozen=True)
class RuledSurfaceConfig:
    genus: int = 2
    degree: int = 1
    m: Fraction = Fraction(2)
    c: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "m", as_rational(self.m))
        object.__setattr__(self, "c", as_rational(self.c))
        if self.genus < 2:
            raise InvalidConfig(f"genus must be >= 2, got {self.genus}")
        if self.degree < 1:
            raise InvalidConfig(f"degree must be >= 1, got {self.degree}")
        if self.m <= 0:
            raise InvalidConfig(f"m must be positive, got {self.m}")
        if not 0 < self.c < self.m:
            raise InvalidConfig(f"need 0 < c < m, got c={self.c}, m={self.m}")

    @property
    def stride(self) -> int:
        return math.lcm(self.m.denominator, self.c.denominator)

    @property
    def k_min(self) -> int:
        # Riemann-Roch on the base needs k > 2g - 2 already for the l = 0 piece.
        lower = 2 * self.genus - 1
        q = self.stride
        return -(-lower // q) * q

    def piece_dimension(self, k: int, l: int) -> int:
        return k + l * self.degree + 1 - self.genus


def build_weight_system(cfg: RuledSurfaceConfig) -> WeightSystem:
    def blocks(k: int) -> list[WeightBlock]:
        mk = cfg.m * k
        ck = cfg.c * k
        if mk.denominator != 1 or ck.denominator != 1:
            raise InvalidConfig(f"mk and ck must be integers at k={k}")
        mk, ck = int(mk), int(ck)
        return [
            WeightBlock(-max(ck - l, 0), (l,), cfg.piece_dimension(k, l))
            for l in range(mk + 1)
        ]

    return WeightSystem(n=2, torus_rank=1, stride=cfg.stride, k_min=cfg.k_min, blocks_at=blocks)


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Top coefficients of d_k, Tr(A), Tr(B) (two each) and Tr(AB), Tr(BB) (one each)."""

    d: tuple[Fraction, Fraction]
    tr_a: tuple[Fraction, Fraction]
    tr_b: tuple[Fraction, Fraction]
    tr_ab: tuple[Fraction]
    tr_bb: tuple[Fraction]


def _require_base_case(genus: int, degree: int) -> None:
    if (genus, degree) != (2, 1):
        raise UnsupportedParameters(
            f"closed forms are only known for genus 2, degree 1 (got g={genus}, d={degree})"
        )


def paper_expansion_coefficients(m: RationalLike, c: RationalLike, genus: int = 2, degree: int = 1) -> ExpansionCoefficients:
    _require_base_case(genus, degree)
    m, c = as_rational(m), as_rational(c)
    return ExpansionCoefficients(
        d=((m**2 + 2 * m) / 2, (2 - m) / 2),
        tr_a=(-(c**3 + 3 * c**2) / 6, (c**2 - c) / 2),
        tr_b=((2 * m**3 + 3 * m**2) / 6, m / 2),
        tr_ab=(-(c**4 + 2 * c**3) / 12,),
        tr_bb=((3 * m**4 + 4 * m**3) / 12,),
    )


def stability_quadratic(m: RationalLike) -> Polynomial:
    """(2m+2)c^2 - (m^2-4m-6)c + m^2+6m+6 as a polynomial in c."""
    m = as_rational(m)
    if m <= 0:
        raise ValueError("m must be positive")
    return Polynomial([m**2 + 6 * m + 6, -(m**2 - 4 * m - 6), 2 * m + 2], var="c")


def closed_form_relative_futaki(m: RationalLike, c: RationalLike, genus: int = 2, degree: int = 1) -> Fraction:
    _require_base_case(genus, degree)
    m, c = as_rational(m), as_rational(c)
    if not 0 < c < m:
        raise InvalidConfig(f"need 0 < c < m, got c={c}, m={m}")
    prefactor = c * (m - c) * (m + 2) / (4 * (m**2 + 6 * m + 6))
    return prefactor * stability_quadratic(m)(c)


def discriminant_polynomial() -> Polynomial:
    """Discriminant in c of the stability quadratic, as a polynomial in m."""
    m = Polynomial([0, 1], var="m")
    b = m * m - 4 * m - 6
    return b * b - 4 * (2 * m + 2) * (m * m + 6 * m + 6)


@dataclass(frozen=True)
class StabilityVerdict:
    kind: str
    witness_c: Optional[Fraction] = None
    value: Optional[Fraction] = None
    # True when root isolation shows there is no witness at any denominator.
    certified: bool = False
    root_intervals: tuple[tuple[Fraction, Fraction], ...] = field(default=())


def _stern_brocot_witness(q: Polynomial, lo: Fraction, hi: Fraction, bound: int,
                          window: tuple[Fraction, Fraction]) -> Optional[Fraction]:
    # Smallest denominator first, then smallest numerator; only the window
    # between the outermost root intervals can hold a nonpositive value.
    a, b = window
    for den in range(1, bound + 1):
        first = max(math.floor(a * den), math.floor(lo * den) + 1)
        last = min(math.ceil(b * den), math.ceil(hi * den) - 1)
        for num in range(first, last + 1):
            if math.gcd(num, den) != 1:
                continue
            c = Fraction(num, den)
            if lo < c < hi and q(c) <= 0:
                return c
    return None


def search_nonpositive(q: Polynomial, lo: RationalLike, hi: RationalLike, denominator_bound: int) -> StabilityVerdict:
    """Look for a rational in (lo, hi) where a polynomial with positive
    leading coefficient is nonpositive.

    The verdict's ``value`` is the polynomial value at the witness; callers
    that want a different value (e.g. the relative Futaki invariant) rebuild
    the verdict.
    """
    lo, hi = as_rational(lo), as_rational(hi)
    if denominator_bound < 1:
        raise ValueError("denominator_bound must be >= 1")
    if q.leading <= 0:
        raise ValueError("expected a polynomial with positive leading coefficient")
    # isolate_real_roots works on (lo, hi]; drop a root sitting exactly at hi.
    roots = [iv for iv in isolate_real_roots(q, lo, hi) if not iv[0] == iv[1] == hi]
    if not roots:
        # No sign change inside; positive leading term and q(mid) decide everywhere.
        if q((lo + hi) / 2) > 0:
            return StabilityVerdict(NO_WITNESS, certified=True)
    window = (roots[0][0], roots[-1][1]) if roots else (lo, hi)
    c = _stern_brocot_witness(q, lo, hi, denominator_bound, window)
    if c is None:
        return StabilityVerdict(NO_WITNESS, root_intervals=tuple(roots))
    v = q(c)
    return StabilityVerdict(STRICT if v < 0 else BOUNDARY, c, v, root_intervals=tuple(roots))


def find_destabilizer(m: RationalLike, denominator_bound: int = 50) -> StabilityVerdict:
    """Smallest-complexity rational c in (0, m) with a nonpositive relative
    Futaki invariant, or a certificate that none exists.
    """
    m = as_rational(m)
    q = stability_quadratic(m)
    v = search_nonpositive(q, 0, m, denominator_bound)
    if v.witness_c is None:
        return v
    return StabilityVerdict(
        v.kind, v.witness_c, closed_form_relative_futaki(m, v.witness_c),
        root_intervals=v.root_intervals,
    )


def _has_root_inside(m_lo: Fraction, m_hi: Fraction) -> bool:
    # Both roots of the quadratic lie in (0, m) once they are real and
    # m^2 - 4m - 6 > 0 (positive sum of roots, positive value at 0 and m).
    side = Polynomial([-6, -4, 1], var="m")
    return side(m_lo) > 0 and side(m_hi) > 0


def critical_parameter(precision: RationalLike) -> tuple[Fraction, Fraction]:
    """Interval of width <= precision around the least m > 0 beyond which the
    stability quadratic has a root in (0, m).
    """
    precision = as_rational(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    disc = discriminant_polynomial()
    for a, b in isolate_real_roots(disc, 0, root_bound(disc)):
        # Sign of the side condition is constant on a narrow enough interval.
        a, b = refine_root(disc, (a, b), min(precision, Fraction(1, 16)))
        if _has_root_inside(a, b):
            return refine_root(disc, (a, b), precision)
    raise RuntimeError("discriminant has no admissible positive root")


def tf_bracket(m: RationalLike) -> Polynomial:
    """The quadratic factor of the Tonnesen-Friedman polynomial after
    k = m + 1 and gamma = a(1 + c), scaled by 2k / a^2 (``a`` cancels because
    the bracket is homogeneous of degree two in gamma and a).
    """
    m = as_rational(m)
    k = m + 1
    one_plus_c = Polynomial([1, 1], var="c")
    return 2 * k * one_plus_c**2 + (-k**2 + 2 * k + 1) * one_plus_c + 2 * k**2


@dataclass(frozen=True)
class TFReport:
    m: Fraction
    tf_k: Fraction
    exists: bool
    brackets_agree: bool
    destabilizing_intervals: tuple[tuple[Fraction, Fraction], ...]
    substitution: str = "k = m + 1, gamma = a(1 + c)"


def tf_equivalence_check(m: RationalLike) -> TFReport:
    """Whether the extremal metric exists for this polarisation, read off from
    positivity of the shared quadratic on (0, m).
    """
    m = as_rational(m)
    if m <= 0:
        raise ValueError("m must be positive")
    q = stability_quadratic(m)
    roots = tuple(isolate_real_roots(q, 0, m))
    roots = tuple(iv for iv in roots if not (iv[0] == iv[1] == m))
    exists = not roots and q(m / 2) > 0
    return TFReport(
        m=m,
        tf_k=m + 1,
        exists=exists,
        brackets_agree=tf_bracket(m).coeffs == q.coeffs,
        destabilizing_intervals=roots,
    )
