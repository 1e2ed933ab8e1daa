"""
Where the ruled surface becomes unstable
========================================

The relative Futaki invariant has the sign of a quadratic in c.  For each
polarisation parameter m we look for a rational c in (0, m) that makes it
nonpositive, then pin down the threshold in m from the discriminant.
"""
from fractions import Fraction

from kstab import critical_parameter, find_destabilizer, stability_quadratic, tf_equivalence_check
from kstab.ruledsurface import discriminant_polynomial

for m in range(15, 24):
    v = find_destabilizer(m, denominator_bound=50)
    print(f"m={m:3d}  {v.kind:24s}  c={v.witness_c}  value={v.value}")

print("quadratic at m=19:", stability_quadratic(19))

D = discriminant_polynomial()
print("discriminant:", D, "| D(18) =", D(18), "| D(19) =", D(19))
lo, hi = critical_parameter(Fraction(1, 10**6))
print(f"threshold in [{lo}, {hi}] ~ {float(lo):.6f}")

# The extremal metrics of the known family exist exactly on the stable side.
for m in (2, 18, 19):
    rep = tf_equivalence_check(m)
    print(f"m={m}: metric exists={rep.exists}, same quadratic={rep.brackets_agree}")
