"""
A rank-two torus: the projective plane
======================================

Weight systems are not tied to the ruled surface.  Here the sections of
O(k) on P^2 are the monomials x^a y^b z^(k-a-b); the torus acts with
weights (a, b) and the configuration degenerates to the normal cone of a
line.  The torus is Futaki-free, so the extremal element vanishes.
"""
from kstab import WeightBlock, WeightSystem, fit_hilbert_data, invariant_report
from kstab.invariants import shifted


def blocks(k):
    return [
        WeightBlock(-max(k // 2 - b, 0), (a, b), 1)
        for a in range(k + 1) for b in range(k + 1 - a)
    ]


plane = WeightSystem(n=2, torus_rank=2, stride=2, k_min=2, blocks_at=blocks)
report = invariant_report(fit_hilbert_data(plane))
print("Futaki invariants:", report.futaki)
print("Gram matrix:", report.gram)
print("chi:", report.chi_coeffs, "relative Futaki:", report.relative_futaki)

# Changing the lift of each action by a multiple of k changes nothing.
again = invariant_report(fit_hilbert_data(shifted(plane, [2, -1, 3])))
assert again == report
print("lift-shift invariant: ok")
