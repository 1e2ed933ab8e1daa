"""Seeded property checks tying the weight-system pipeline to the closed forms.

Used by ``kstab verify`` and by the acceptance tests.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .invariants import (
    fit_hilbert_data,
    futaki,
    inner_product,
    extremal_coeffs,
    project_orthogonal,
    relative_futaki,
    shifted,
    tabulate,
)
from .ruledsurface import (
    RuledSurfaceConfig,
    build_weight_system,
    closed_form_relative_futaki,
    paper_expansion_coefficients,
    stability_quadratic,
)


def random_pair(rng: random.Random, max_den: int = 12, max_m: int = 6) -> tuple[Fraction, Fraction]:
    """Rationals 0 < c < m with both denominators at most ``max_den``."""
    while True:
        dm = rng.randint(1, max_den)
        m = Fraction(rng.randint(1, max_m * dm), dm)
        dc = rng.randint(1, max_den)
        top = math.ceil(m * dc) - 1  # largest numerator with nc/dc < m
        if top >= 1:
            return m, Fraction(rng.randint(1, top), dc)


def fitted_expansions(hd) -> dict[str, tuple[Fraction, ...]]:
    return {
        "d": hd.d.top(2, 2),
        "tr_a": hd.w[0].top(2, 3),
        "tr_b": hd.w[1].top(2, 3),
        "tr_ab": hd.pair[0][1].top(1, 4),
        "tr_bb": hd.pair[1][1].top(1, 4),
    }


def check_case(m: Fraction, c: Fraction, rng: random.Random) -> dict[str, bool]:
    """Run every property on one (m, c); returns property name -> passed."""
    cfg = RuledSurfaceConfig(2, 1, m, c)
    system = build_weight_system(cfg)
    out: dict[str, bool] = {}

    try:
        hd = fit_hilbert_data(system, extra_points=2)
    except ValueError:
        return {"interpolation_residuals": False}

    # Two further admissible k beyond the fitting window.
    far = system.admissible(len(hd.ks) + 2)[-2:]
    ok = True
    for k in far:
        dim, tr, pair = tabulate(system, k)
        ok &= hd.d(k) == dim
        ok &= all(hd.w[i](k) == tr[i] for i in range(2))
        ok &= all(hd.pair[i][j](k) == pair[i][j] for i in range(2) for j in range(2))
    out["interpolation_residuals"] = ok

    printed = paper_expansion_coefficients(m, c)
    fitted = fitted_expansions(hd)
    out["expansions_match"] = all(fitted[name] == getattr(printed, name) for name in fitted)

    fchi = relative_futaki(hd, 0, [1])
    out["pipeline_vs_closed_form"] = fchi == closed_form_relative_futaki(m, c)

    lams = (rng.randint(-3, 3), rng.randint(-3, 3))
    hd_s = fit_hilbert_data(shifted(system, lams))
    out["shift_invariance"] = all(
        futaki(hd_s, i) == futaki(hd, i) for i in range(2)
    ) and all(
        inner_product(hd_s, i, j) == inner_product(hd, i, j) for i in range(2) for j in range(2)
    )

    g = [[inner_product(hd, i, j) for j in range(2)] for i in range(2)]
    out["cauchy_schwarz"] = g[0][1] ** 2 <= g[0][0] * g[1][1] and g[0][1] == g[1][0]

    out["torus_relative_futaki_zero"] = relative_futaki(hd, 1, [1]) == 0

    chi = extremal_coeffs([[g[1][1]]], [futaki(hd, 1)])
    out["chi_proportional"] = chi == [futaki(hd, 1) / g[1][1]]

    t = project_orthogonal(hd, 0, [1])
    out["projection_identity"] = fchi == futaki(hd, 0) - t[0] * futaki(hd, 1)

    q = stability_quadratic(m)(c)
    out["sign_coherence"] = (fchi > 0) == (q > 0) and (fchi < 0) == (q < 0)
    return out


PROPERTIES = (
    "interpolation_residuals",
    "expansions_match",
    "pipeline_vs_closed_form",
    "shift_invariance",
    "cauchy_schwarz",
    "torus_relative_futaki_zero",
    "chi_proportional",
    "projection_identity",
    "sign_coherence",
)


@dataclass
class PropertyTally:
    name: str
    passed: int = 0
    failed: int = 0


def run_properties(trials: int, seed: int,
                   on_case: Callable[[Fraction, Fraction, dict], None] | None = None) -> list[PropertyTally]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    tallies = {name: PropertyTally(name) for name in PROPERTIES}
    for _ in range(trials):
        m, c = random_pair(rng)
        result = check_case(m, c, rng)
        for name in PROPERTIES:
            # A property that never ran because fitting failed counts as failed.
            if result.get(name, False):
                tallies[name].passed += 1
            else:
                tallies[name].failed += 1
        if on_case is not None:
            on_case(m, c, result)
    return list(tallies.values())
