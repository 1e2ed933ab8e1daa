import random
from fractions import Fraction as F

import pytest
import sympy

from kstab.errors import InvalidConfig, UnsupportedParameters
from kstab.exactalg import Polynomial
from kstab.invariants import extremal_coeffs, fit_hilbert_data, futaki, inner_product, relative_futaki, tabulate
from kstab.ruledsurface import (
    BOUNDARY,
    NO_WITNESS,
    STRICT,
    RuledSurfaceConfig,
    build_weight_system,
    closed_form_relative_futaki,
    critical_parameter,
    discriminant_polynomial,
    find_destabilizer,
    paper_expansion_coefficients,
    search_nonpositive,
    stability_quadratic,
    tf_bracket,
    tf_equivalence_check,
)
from kstab.verification import fitted_expansions, random_pair


# -- configuration -----------------------------------------------------------

@pytest.mark.parametrize("g, d, m, c", [
    (2, 1, 2, 2), (2, 1, 2, 3), (2, 1, 2, 0), (2, 1, 2, -1),
    (1, 1, 2, 1), (2, 0, 2, 1), (2, 1, 0, F(-1)),
])
def test_invalid_configs(g, d, m, c):
    with pytest.raises(InvalidConfig):
        RuledSurfaceConfig(g, d, m, c)


def test_stride_and_k_min():
    cfg = RuledSurfaceConfig(2, 1, F(5, 2), F(1, 3))
    assert cfg.stride == 6 and cfg.k_min == 6
    assert RuledSurfaceConfig(2, 1, 2, 1).k_min == 3
    assert RuledSurfaceConfig(4, 2, 5, F(5, 2)).k_min == 8


# -- weight system -----------------------------------------------------------

def test_blocks_base_case_k3():
    blocks = build_weight_system(RuledSurfaceConfig(2, 1, 2, 1)).blocks_at(3)
    assert [b.multiplicity for b in blocks] == [2, 3, 4, 5, 6, 7, 8]
    assert [b.torus_weights for b in blocks] == [(l,) for l in range(7)]
    assert [b.alpha_weight for b in blocks] == [-3, -2, -1, 0, 0, 0, 0]
    assert sum(b.multiplicity for b in blocks) == 35 == 4 * 9 - 1


def test_blocks_extension_k4():
    blocks = build_weight_system(RuledSurfaceConfig(3, 2, 1, F(1, 2))).blocks_at(4)
    assert [b.multiplicity for b in blocks] == [2 * l + 2 for l in range(5)]
    assert [b.alpha_weight for b in blocks] == [-2, -1, 0, 0, 0]


@pytest.mark.parametrize("g, d", [(3, 1), (3, 2), (4, 2), (5, 3)])
@pytest.mark.parametrize("m", [2, 5, F(3, 2)])
def test_extension_dimension_matches_block_sum(g, d, m):
    m = F(m)
    cfg = RuledSurfaceConfig(g, d, m, m / 2)
    system = build_weight_system(cfg)
    hd = fit_hilbert_data(system)
    assert hd.d.degree == 2
    # sum_{l=0}^{mk} (k + l d + 1 - g) = (mk + 1)(k + 1 - g) + d mk (mk + 1) / 2
    assert hd.c0 == m + d * m * m / 2
    assert hd.c1 == m * (1 - g) + 1 + d * m / 2
    for k in system.admissible(len(hd.ks) + 2)[-2:]:
        assert hd.d(k) == tabulate(system, k)[0]
    assert isinstance(relative_futaki(hd, 0, [1]), F)


# -- closed forms ------------------------------------------------------------

def test_paper_expansions_m2_c1():
    e = paper_expansion_coefficients(2, 1)
    assert e.d == (4, 0)
    assert e.tr_a == (F(-2, 3), 0)
    assert e.tr_b == (F(14, 3), 1)
    assert e.tr_ab == (F(-1, 4),)
    assert e.tr_bb == (F(20, 3),)


def test_paper_expansions_small_c():
    assert paper_expansion_coefficients(1, F(1, 2)).tr_a[0] == F(-7, 48)
    e = paper_expansion_coefficients(3, 0)
    assert e.tr_a == (0, 0) and e.tr_ab == (0,)


def test_closed_forms_only_for_base_case():
    with pytest.raises(UnsupportedParameters):
        paper_expansion_coefficients(2, 1, genus=3)
    with pytest.raises(UnsupportedParameters):
        closed_form_relative_futaki(2, 1, degree=2)


def test_closed_form_values():
    assert closed_form_relative_futaki(2, 1) == F(1 * 1 * 4, 4 * 22) * (6 + 10 + 22) == F(19, 11)
    assert closed_form_relative_futaki(19, F(7, 2)) == F(-50127, 15392)
    assert stability_quadratic(19)(F(7, 2)) == F(-11, 2)


def test_closed_form_vanishes_at_seshadri_boundary():
    m = F(7, 3)
    values = [abs(closed_form_relative_futaki(m, m - F(1, n))) for n in (10, 100, 1000, 10000)]
    assert values == sorted(values, reverse=True)
    assert values[-1] < F(1, 1000)
    with pytest.raises(InvalidConfig):
        closed_form_relative_futaki(m, m)
    with pytest.raises(InvalidConfig):
        RuledSurfaceConfig(2, 1, m, m)


@pytest.mark.parametrize("m, coeffs", [
    (2, [22, 10, 6]),
    (19, [481, -279, 40]),
    (1, [13, 9, 4]),
])
def test_stability_quadratic(m, coeffs):
    assert stability_quadratic(m) == Polynomial(coeffs, var="c")


def test_pipeline_matches_closed_form_on_random_pairs():
    rng = random.Random(2024)
    for _ in range(10):
        m, c = random_pair(rng, max_m=10)
        hd = fit_hilbert_data(build_weight_system(RuledSurfaceConfig(2, 1, m, c)))
        fchi = relative_futaki(hd, 0, [1])
        assert fchi == closed_form_relative_futaki(m, c)
        # Sign coherence with the quadratic factor.
        q = stability_quadratic(m)(c)
        assert (fchi > 0) == (q > 0) and (fchi == 0) == (q == 0)
        # chi = F(beta) / <beta, beta> beta on the rank-one torus.
        assert extremal_coeffs([[inner_product(hd, 1, 1)]], [futaki(hd, 1)]) == [futaki(hd, 1) / inner_product(hd, 1, 1)]
        printed = paper_expansion_coefficients(m, c)
        assert fitted_expansions(hd) == {k: getattr(printed, k) for k in fitted_expansions(hd)}


def test_closed_form_matches_symbolic_composition():
    # Independent route: compose F(alpha) - <alpha,beta> F(beta) / <beta,beta>
    # symbolically from the printed expansions and compare with the printed
    # factorised closed form.
    m, c = sympy.symbols("m c", positive=True)
    c0, c1 = (m**2 + 2 * m) / 2, (2 - m) / 2
    a0, a1 = -(c**3 + 3 * c**2) / 6, (c**2 - c) / 2
    b0, b1 = (2 * m**3 + 3 * m**2) / 6, m / 2
    ab, bb = -(c**4 + 2 * c**3) / 12, (3 * m**4 + 4 * m**3) / 12
    fa, fb = a0 * c1 - a1 * c0, b0 * c1 - b1 * c0
    ip_ab, ip_bb = ab - a0 * b0 / c0, bb - b0**2 / c0
    composed = fa - ip_ab / ip_bb * fb
    printed = c * (m - c) * (m + 2) / (4 * (m**2 + 6 * m + 6)) * (
        (2 * m + 2) * c**2 - (m**2 - 4 * m - 6) * c + m**2 + 6 * m + 6)
    assert sympy.simplify(composed - printed) == 0


# -- destabilizers -----------------------------------------------------------

def test_no_destabilizer_for_m2():
    v = find_destabilizer(2, 50)
    assert v.kind == NO_WITNESS and v.certified and v.witness_c is None


def test_destabilizer_for_m19():
    v = find_destabilizer(19, 50)
    assert v.kind == STRICT
    assert v.witness_c == F(7, 2)
    assert v.value == F(-50127, 15392)
    assert len(v.root_intervals) == 2
    lo, hi = v.root_intervals[0][0], v.root_intervals[1][1]
    assert lo < v.witness_c < hi


def test_destabilizer_bound_too_small():
    # The root interval (3.117, 3.858) contains no integer.
    v = find_destabilizer(19, 1)
    assert v.kind == NO_WITNESS and not v.certified and v.root_intervals


def test_boundary_classification():
    # Rational double root at 3/2 inside (0, 4).
    q = Polynomial([-3, 2], var="c") ** 2
    v = search_nonpositive(q, 0, 4, 10)
    assert v.kind == BOUNDARY and v.witness_c == F(3, 2) and v.value == 0


def brute_force_witness(m, bound):
    q = stability_quadratic(m)
    cands = sorted(
        {F(p, d) for d in range(1, bound + 1) for p in range(1, int(m * d) + 1) if F(p, d) < m},
        key=lambda x: (x.denominator, x.numerator),
    )
    return next((x for x in cands if q(x) <= 0), None)


@pytest.mark.parametrize("m", [19, 20, 23, 30, F(39, 2)])
def test_witness_order_matches_brute_force(m):
    assert find_destabilizer(m, 12).witness_c == brute_force_witness(m, 12)


def test_verdicts_monotone_over_integers():
    kinds = [find_destabilizer(m, 50).kind for m in range(1, 31)]
    assert kinds == [NO_WITNESS] * 18 + [STRICT] * 12


# -- critical parameter ------------------------------------------------------

def test_discriminant_polynomial_against_sympy():
    m, c = sympy.symbols("m c")
    quad = (2 * m + 2) * c**2 - (m**2 - 4 * m - 6) * c + m**2 + 6 * m + 6
    expected = sympy.Poly(sympy.discriminant(quad, c), m).all_coeffs()
    assert [int(x) for x in reversed(expected)] == list(discriminant_polynomial().coeffs)
    assert discriminant_polynomial() == Polynomial([-12, -48, -52, -16, 1], var="m")


def test_discriminant_sign_change():
    D = discriminant_polynomial()
    assert D(18) == 104976 - 93312 - 16848 - 864 - 12 < 0
    assert D(19) == 881 > 0


@pytest.mark.parametrize("precision", [F(1), F(1, 1000), F(1, 10**9)])
def test_critical_parameter(precision):
    lo, hi = critical_parameter(precision)
    assert 18 <= lo <= hi <= 19
    assert hi - lo <= precision
    D = discriminant_polynomial()
    assert lo == hi or D(lo) * D(hi) < 0


def test_critical_parameter_bad_precision():
    with pytest.raises(ValueError):
        critical_parameter(0)


# -- Tonnesen-Friedman comparison ---------------------------------------------

@pytest.mark.parametrize("m, exists", [(2, True), (18, True), (19, False), (1, True), (30, False)])
def test_tf_equivalence(m, exists):
    rep = tf_equivalence_check(m)
    assert rep.exists is exists
    assert rep.brackets_agree
    assert rep.tf_k == m + 1
    assert bool(rep.destabilizing_intervals) is not exists


def test_tf_bracket_symbolic():
    # Substitute k = m + 1 and gamma = a(1 + c) into the TF bracket directly.
    m, c, a = sympy.symbols("m c a", positive=True)
    k = m + 1
    gamma = a * (1 + c)
    bracket = gamma**2 + a * ((-k**2 + 2 * k + 1) / (2 * k)) * gamma + k * a**2
    ours = (2 * m + 2) * c**2 - (m**2 - 4 * m - 6) * c + m**2 + 6 * m + 6
    assert sympy.simplify(bracket * 2 * k / a**2 - ours) == 0
    # The TF prefactor (ka - gamma)(gamma - a) becomes a^2 (m - c) c.
    assert sympy.expand((k * a - gamma) * (gamma - a) - a**2 * (m - c) * c) == 0


def test_tf_bracket_polynomial():
    for m in (F(1), F(7, 3), F(19)):
        assert tf_bracket(m) == stability_quadratic(m)
