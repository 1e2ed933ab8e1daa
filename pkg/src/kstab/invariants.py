"""Futaki invariants, inner products and extremal actions of weight systems.

A test-configuration is handed to us as a :class:`WeightSystem`: for every
admissible exponent ``k`` a list of weight blocks diagonalising the actions
on the space of sections of the ``k``-th power.  Action 0 is the
configuration action; actions ``1..r`` generate the torus.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InadmissibleK, SingularGram
from .exactalg import Polynomial, SampleSeries, asymptotic_quotient_coefficient, interpolate

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class WeightBlock:
    alpha_weight: int
    torus_weights: tuple[int, ...]
    multiplicity: int

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"block multiplicity must be >= 1, got {self.multiplicity}")
        object.__setattr__(self, "torus_weights", tuple(self.torus_weights))

    @property
    def weights(self) -> tuple[int, ...]:
        return (self.alpha_weight,) + self.torus_weights


@dataclass(frozen=True)
class WeightSystem:
    """Weight data of a polarised scheme of dimension ``n`` with ``torus_rank``
    torus generators, available at ``k = k_min, k_min + stride, ...``
    (every such ``k`` must be a multiple of ``stride``).
    """

    n: int
    torus_rank: int
    stride: int
    k_min: int
    blocks_at: Callable[[int], Sequence[WeightBlock]] = field(compare=False)

    def __post_init__(self):
        if self.stride < 1 or self.k_min < 1:
            raise ValueError("stride and k_min must be positive")
        if self.k_min % self.stride:
            raise ValueError(f"k_min={self.k_min} is not a multiple of stride={self.stride}")
        if self.torus_rank < 0 or self.n < 0:
            raise ValueError("n and torus_rank must be nonnegative")

    @property
    def num_actions(self) -> int:
        return 1 + self.torus_rank

    def admissible(self, count: int) -> list[int]:
        return [self.k_min + i * self.stride for i in range(count)]

    def check_k(self, k: int) -> None:
        if k < self.k_min or k % self.stride:
            raise InadmissibleK(
                f"k={k} is not admissible (need a multiple of {self.stride} that is >= {self.k_min})"
            )


def tabulate(system: WeightSystem, k: int) -> tuple[Fraction, list[Fraction], Matrix]:
    """Exact dimension, traces and pairwise trace products at one ``k``."""
    system.check_k(k)
    r = system.num_actions
    dim = 0
    tr = [0] * r
    pair = [[0] * r for _ in range(r)]
    for block in system.blocks_at(k):
        w = block.weights
        if len(w) != r:
            raise ValueError(f"block {block} has {len(w)} weights, expected {r}")
        mult = block.multiplicity
        dim += mult
        for i in range(r):
            mw = mult * w[i]
            tr[i] += mw
            row = pair[i]
            for j in range(i, r):
                row[j] += mw * w[j]
    for i in range(r):
        for j in range(i):
            pair[i][j] = pair[j][i]
    return (
        Fraction(dim),
        [Fraction(t) for t in tr],
        [[Fraction(x) for x in row] for row in pair],
    )


def shifted(system: WeightSystem, lams: Sequence[int]) -> WeightSystem:
    """Replace the weight of action ``i`` by ``weight + lams[i] * k`` on every block.

    This is the ambiguity in lifting an action to the polarising line bundle;
    Futaki invariants and inner products do not see it.
    """
    lams = tuple(lams)
    if len(lams) != system.num_actions:
        raise ValueError("one shift per action required")

    def blocks(k: int) -> list[WeightBlock]:
        out = []
        for b in system.blocks_at(k):
            w = [x + lam * k for x, lam in zip(b.weights, lams)]
            out.append(WeightBlock(w[0], tuple(w[1:]), b.multiplicity))
        return out

    return WeightSystem(system.n, system.torus_rank, system.stride, system.k_min, blocks)


def with_combination(system: WeightSystem, coeffs: Sequence[int]) -> WeightSystem:
    """Append a torus action whose weights are ``sum(coeffs[i] * weight_i)``."""
    coeffs = tuple(coeffs)
    if len(coeffs) != system.num_actions:
        raise ValueError("one coefficient per action required")

    def blocks(k: int) -> list[WeightBlock]:
        out = []
        for b in system.blocks_at(k):
            extra = sum(c * x for c, x in zip(coeffs, b.weights))
            out.append(WeightBlock(b.alpha_weight, b.torus_weights + (extra,), b.multiplicity))
        return out

    return WeightSystem(system.n, system.torus_rank + 1, system.stride, system.k_min, blocks)


@dataclass(frozen=True)
class HilbertData:
    n: int
    d: Polynomial
    w: tuple[Polynomial, ...]
    pair: tuple[tuple[Polynomial, ...], ...]
    ks: tuple[int, ...] = ()

    def __post_init__(self):
        if self.d.degree != self.n or self.d.leading <= 0:
            raise ValueError(
                f"dimension polynomial {self.d} must have degree {self.n} and positive leading term"
            )

    @property
    def c0(self) -> Fraction:
        return self.d.coeff(self.n)

    @property
    def c1(self) -> Fraction:
        return self.d.coeff(self.n - 1)

    @property
    def a0(self) -> tuple[Fraction, ...]:
        return tuple(p.coeff(self.n + 1) for p in self.w)

    @property
    def a1(self) -> tuple[Fraction, ...]:
        return tuple(p.coeff(self.n) for p in self.w)

    @property
    def num_actions(self) -> int:
        return len(self.w)


def fit_hilbert_data(system: WeightSystem, extra_points: int = 2) -> HilbertData:
    """Interpolate the dimension, weight and trace-product polynomials.

    Degree bounds are n, n+1 and n+2.  Each fit uses ``extra_points`` held-out
    samples beyond the minimum, and those must match exactly.
    """
    if extra_points < 0:
        raise ValueError("extra_points must be nonnegative")
    n = system.n
    r = system.num_actions
    ks = system.admissible(n + 3 + extra_points)
    rows = [tabulate(system, k) for k in ks]

    def fit(values: list[Fraction], degree: int) -> Polynomial:
        m = degree + 1 + extra_points
        return interpolate(SampleSeries(zip(ks[:m], values[:m])), degree)

    d = fit([row[0] for row in rows], n)
    w = tuple(fit([row[1][i] for row in rows], n + 1) for i in range(r))
    pair = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            pair[i][j] = pair[j][i] = fit([row[2][i][j] for row in rows], n + 2)
    return HilbertData(n, d, w, tuple(tuple(row) for row in pair), tuple(ks))


def futaki(hd: HilbertData, i: int) -> Fraction:
    return hd.a0[i] * hd.c1 - hd.a1[i] * hd.c0


def inner_product(hd: HilbertData, i: int, j: int) -> Fraction:
    """Leading coefficient of Tr(A_k B_k) - w_k(A) w_k(B) / d_k at order k^(n+2)."""
    numer = hd.pair[i][j] * hd.d - hd.w[i] * hd.w[j]
    if numer.degree - hd.d.degree < hd.n + 2:
        return Fraction(0)
    return asymptotic_quotient_coefficient(numer, hd.d, hd.n + 2)


def gram_matrix(hd: HilbertData, indices: Sequence[int]) -> Matrix:
    return [[inner_product(hd, i, j) for j in indices] for i in indices]


def extremal_coeffs(gram: Sequence[Sequence[Fraction]], futaki_vec: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``gram @ x = futaki_vec`` exactly.

    Elimination runs without pivoting, so the pivots are the ratios of
    consecutive leading principal minors; a nonpositive pivot means the
    matrix is not positive definite and raises :class:`SingularGram`.
    """
    r = len(gram)
    if len(futaki_vec) != r or any(len(row) != r for row in gram):
        raise ValueError("shape mismatch between Gram matrix and right-hand side")
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(gram, futaki_vec)]
    for i in range(r):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise SingularGram("Gram matrix is not symmetric")
    for col in range(r):
        piv = a[col][col]
        if piv <= 0:
            raise SingularGram(
                f"leading principal minor of order {col + 1} is not positive"
            )
        for row in range(col + 1, r):
            f = a[row][col] / piv
            if f:
                for j in range(col, r + 1):
                    a[row][j] -= f * a[col][j]
    x = [Fraction(0)] * r
    for i in range(r - 1, -1, -1):
        s = a[i][r] - sum(a[i][j] * x[j] for j in range(i + 1, r))
        x[i] = s / a[i][i]
    return x


def project_orthogonal(hd: HilbertData, alpha_index: int, torus_indices: Sequence[int]) -> list[Fraction]:
    """Coefficients ``t`` with ``alpha - sum t_j beta_j`` orthogonal to every ``beta_i``."""
    gram = gram_matrix(hd, torus_indices)
    rhs = [inner_product(hd, alpha_index, j) for j in torus_indices]
    return extremal_coeffs(gram, rhs)


def relative_futaki(hd: HilbertData, alpha_index: int, torus_indices: Sequence[int]) -> Fraction:
    """F(alpha) - <alpha, chi> with chi the extremal element of the torus."""
    chi = extremal_coeffs(
        gram_matrix(hd, torus_indices), [futaki(hd, j) for j in torus_indices]
    )
    return futaki(hd, alpha_index) - sum(
        (x * inner_product(hd, alpha_index, j) for x, j in zip(chi, torus_indices)),
        Fraction(0),
    )


@dataclass(frozen=True)
class InvariantReport:
    futaki: tuple[Fraction, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    chi_coeffs: tuple[Fraction, ...]
    chi_norm_sq: Fraction
    relative_futaki: Fraction


def invariant_report(hd: HilbertData, alpha_index: int = 0, torus_indices: Sequence[int] | None = None) -> InvariantReport:
    """Everything at once: ``gram`` is over all actions, ``chi`` over the torus ones."""
    if torus_indices is None:
        torus_indices = [i for i in range(hd.num_actions) if i != alpha_index]
    r = hd.num_actions
    full = [[inner_product(hd, i, j) for j in range(r)] for i in range(r)]
    fut = [futaki(hd, i) for i in range(r)]
    sub = [[full[i][j] for j in torus_indices] for i in torus_indices]
    chi = extremal_coeffs(sub, [fut[j] for j in torus_indices])
    chi_norm_sq = sum(
        (chi[a] * chi[b] * sub[a][b] for a in range(len(chi)) for b in range(len(chi))),
        Fraction(0),
    )
    rel = fut[alpha_index] - sum(
        (x * full[alpha_index][j] for x, j in zip(chi, torus_indices)), Fraction(0)
    )
    return InvariantReport(
        futaki=tuple(fut),
        gram=tuple(tuple(row) for row in full),
        chi_coeffs=tuple(chi),
        chi_norm_sq=chi_norm_sq,
        relative_futaki=rel,
    )
