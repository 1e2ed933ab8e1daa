"""
Higher genus and degree
=======================

The same construction over a curve of genus g with a line bundle of degree
d: graded pieces have dimension k + l d + 1 - g.  There is no printed
closed form here, so we only report what the pipeline finds.
"""
from fractions import Fraction

from kstab import RuledSurfaceConfig, build_weight_system, fit_hilbert_data, invariant_report

for g, d in [(2, 1), (3, 1), (3, 2), (4, 2)]:
    for m in (Fraction(2), Fraction(5)):
        cfg = RuledSurfaceConfig(g, d, m, m / 2)
        hd = fit_hilbert_data(build_weight_system(cfg))
        rep = invariant_report(hd)
        print(f"g={g} d={d} m={m}: d_k = {hd.d};  relative Futaki = {rep.relative_futaki}")
