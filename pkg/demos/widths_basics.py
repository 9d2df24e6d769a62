"""
Overall width and error-bar width
=================================

How tightly a distribution concentrates on a metric space, and how far an
approximate measurement can smear a sharp one.
"""

import math

import numpy as np

from jointloc import metric_space as ms
from jointloc import observables as ob
from jointloc.widths import errorbar_width, localization_error, overall_width

# four points on a circle, spaced pi/2 apart
circle = ms.cyclic(4)
print("circular distances from point 0:", np.round(circle.dist[0], 4))

# most of the mass sits on point 0, with a little on each neighbour
p = ob.ProbabilityDistribution(circle, [0.6, 0.2, 0.0, 0.2])
for eps in (0.0, 0.25, 0.4):
    res = overall_width(p, eps)
    print(f"W_{eps}(p) = {res.width:.4f}  (ball centred on {res.achieving_outcome}, mass {res.worst_case_probability:.2f})")
print("localization error:", localization_error(p))

# a qubit measured with a coin flip instead of the X measurement
x = ob.hadamard_pvm(1)
coin = ob.Povm(x.space, np.array([np.eye(2) / 2] * 2))
for eps in (0.25, 0.6):
    print(f"error-bar width of a coin flip vs X at eps={eps}: {errorbar_width(coin, x, eps).width}")

# error-bar widths along the covariant family: sharper Z, blurrier X
z = ob.computational_pvm(2)
for lam in np.linspace(0, 1, 5):
    mu = math.sqrt(1 - lam**2)
    m1, m2 = ob.family_qubit_covariant(lam, mu).marginals()
    print(f"lam={lam:.2f}: W(M1,Z)={errorbar_width(m1, z, 0.1).width}  W(M2,X)={errorbar_width(m2, x, 0.1).width}")
