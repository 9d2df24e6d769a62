"""
Posterior witness states
========================

Measure a joint POVM on half of a maximally entangled pair, then pull the
posterior state of the other half back to the system.  For an approximate
joint measurement of Z and X the resulting state cannot be sharp for both.
"""

import numpy as np

from jointloc import observables as ob
from jointloc import witnesses as wt

z, x = ob.computational_pvm(2), ob.hadamard_pvm(1)
res = wt.maximally_entangled(2)

# remote preparation: conditioning on Z outcomes leaves the basis states behind
for k, p, rho in wt.preparation_ensemble(z, res):
    print(f"outcome {k}: probability {p:.3f}, state diag {np.round(np.diag(rho).real, 3)}")

# an unbiased covariant joint measurement
s = 2**-0.5
m = ob.family_qubit_covariant(s, s)
for rec in wt.posterior_records(m, res, z, x):
    print(f"(x', y') = {rec.outcome}: p = {rec.probability:.3f}, "
          f"posterior Z {np.round(rec.posterior_a, 3)}, posterior X {np.round(rec.posterior_b, 3)}")

w = wt.theorem1_witness(z, x, m, 0.1, 0.1)
pz, px = wt.witness_distributions(w.state, z, x)
print("selected outcome:", w.record.outcome, "error-bar widths:", (w.width_a, w.width_b))
print("ball-posterior sum:", round(w.ball_sum, 6), ">= 2 - 0.2")
print("witness Z statistics:", np.round(pz.weights, 4), "X statistics:", np.round(px.weights, 4))
