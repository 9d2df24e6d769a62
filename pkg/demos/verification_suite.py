"""
Random-instance verification
============================

Draw random PVM pairs and joint POVMs, run every inequality, and look at
which ones come closest to equality.
"""

import math
from collections import defaultdict

import numpy as np

from jointloc import scenarios as sc
from jointloc import verification as vf

reports = vf.run_suite(seed=42, dims=(2, 3), instances=10)
by_name = defaultdict(list)
for r in reports:
    by_name[r.name].append(r)

print(f"{len(reports)} reports, all passed: {vf.all_passed(reports)}")
for name, rs in sorted(by_name.items()):
    tight = min(rs, key=lambda r: r.margin)
    print(f"{name:26s} n={len(rs):4d}  min margin {tight.margin: .3e}  {tight.witness}")

# corollary vs commutator bound along the covariant family
z, x = sc.qubit_observables()
for row in vf.compare_bounds(z, x, vf.covariant_circle, np.linspace(0, math.pi / 2, 7)):
    print(f"theta={row.parameter:.3f}  corollary slack {row.corollary_slack:.4f}  "
          f"commutator slack {row.miyah_slack:.4f}  tighter: {row.tighter}")
