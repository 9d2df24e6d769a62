"""
Werner distance and l-infinity distance
=======================================

The Werner distance maximizes over 1-Lipschitz functions of the outcome,
so it sees the geometry of the outcome space; the l-infinity distance
compares effects one outcome at a time.
"""

import math

import numpy as np

from jointloc import metric_space as ms
from jointloc import observables as ob
from jointloc.distances import kantorovich_value, linf_distance, lipschitz_vertices, werner_distance

# optimal transport on the circle: move one unit of mass half way round
val, f = kantorovich_value([1, 0, -1, 0], ms.cyclic(4))
print(f"transport cost {val:.6f} (pi = {math.pi:.6f}), dual potential {np.round(f, 4)}")

# the pinned Lipschitz polytope of three equidistant points is a hexagon
print("vertices on discrete(3):")
print(lipschitz_vertices(ms.discrete(3)))

z, x = ob.computational_pvm(2), ob.hadamard_pvm(1)
coin = ob.Povm(x.space, np.array([np.eye(2) / 2] * 2))
print("D_W(coin, X) =", werner_distance(coin, x).value)
print("D_inf(Z, X) =", linf_distance(z, x).value)

# on a line the two distances part ways: far outcomes cost more under D_W
line = ms.line([0.0, 1.0, 5.0])
f1 = ob.computational_pvm(3, line)
f2 = ob.pvm_from_basis(ob.fourier_basis(3), line)
exact = werner_distance(f1, f2)
alt = werner_distance(f1, f2, method="alternating", seed=1)
print(f"D_W exact {exact.value:.8f}, alternating {alt.value:.8f} (gap {alt.gap_bound:.1e})")
print(f"D_inf {linf_distance(f1, f2).value:.8f}")
