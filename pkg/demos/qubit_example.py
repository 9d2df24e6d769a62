"""
Qubit Z and X
=============

No qubit state is sharply localized for both Z and X: the two largest
outcome probabilities add up to at most 1 + 1/sqrt(2).
"""

import math

import numpy as np

from jointloc import scenarios as sc
from jointloc.verification import covariant_circle

z, x = sc.qubit_observables()
bundle = sc.qubit_scenario(n_states=5000, n_family=33)
print(f"largest sum over random pure states: {bundle.summary['sweep_max']:.8f}")
print(f"Bloch direction (1,0,1)/sqrt2:         {bundle.summary['bloch_sum']:.16f}")
print(f"bound 1 + 1/sqrt2:                    {sc.QUBIT_BOUND:.16f}")

# the same bound on the measurement side, along the covariant family
for theta in np.linspace(0, math.pi / 2, 5):
    s1, s2 = sc.measurement_sum(covariant_circle(theta), z, x)
    print(f"theta={theta:.3f}: worst Z fidelity {s1:.4f} + worst X fidelity {s2:.4f} = {s1 + s2:.4f}")

print("all checks passed:", bundle.passed)
tight = bundle.tightest("theorem2_measurability")
print("tightest ball-product check:", tight.lhs, ">=", round(tight.rhs, 6), tight.witness)
