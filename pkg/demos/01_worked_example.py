"""
The ruled surface at m = 2, c = 1
=================================

Builds the weight system of the deformation to the normal cone, fits the
asymptotic polynomials and walks through every invariant that goes into
the relative Futaki invariant.
"""
from fractions import Fraction

from kstab import (
    RuledSurfaceConfig,
    build_weight_system,
    closed_form_relative_futaki,
    fit_hilbert_data,
    futaki,
    inner_product,
    relative_futaki,
    tabulate,
)

cfg = RuledSurfaceConfig(genus=2, degree=1, m=2, c=1)
system = build_weight_system(cfg)

# At k = 3 the sections split into pieces l = 0..6 of dimension l + 2.
for block in system.blocks_at(3):
    print(block)
dim, traces, pairs = tabulate(system, 3)
print("d_3 =", dim, " Tr(A_3) =", traces[0], " Tr(B_3) =", traces[1])

# Exact interpolation over k = 3, 4, 5, ... recovers the polynomials.
hd = fit_hilbert_data(system)
print("d_k      =", hd.d)
print("Tr(A_k)  =", hd.w[0])
print("Tr(B_k)  =", hd.w[1])
print("Tr(AB_k) =", hd.pair[0][1])

# Action 0 is the configuration action, action 1 the torus.
print("F(alpha) =", futaki(hd, 0))
print("F(beta)  =", futaki(hd, 1))
print("<alpha, beta> =", inner_product(hd, 0, 1))
print("<beta, beta>  =", inner_product(hd, 1, 1))

value = relative_futaki(hd, 0, [1])
print("relative Futaki invariant =", value)
assert value == closed_form_relative_futaki(2, 1) == Fraction(19, 11)
