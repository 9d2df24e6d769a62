"""
Torus, N qubits and a three-level pair
======================================

Finite stand-ins for position and momentum: clock and shift on Z_N with the
circular metric, product Z and X bases on N qubits with a rescaled Hamming
metric, and a pair on C^3 that shares an eigenvector.
"""

from jointloc import scenarios as sc

for n in (4, 6, 8):
    b = sc.torus_scenario(n, n_states=200)
    loc = b.tightest("torus_localization")
    printed = b.summary["printed_constant_failures"], b.summary["printed_constant_checks"]
    print(f"torus N={n}: passed={b.passed}, tightest margin {loc.margin:.4f} ({loc.witness}), "
          f"1/N offset fails {printed[0]} of {printed[1]}")

for n in (2, 3):
    b = sc.nqubit_scenario(n, n_states=200)
    t = b.tightest("nqubit_entropy")
    print(f"{n} qubits: passed={b.passed}, tightest entropy margin {t.margin:.4f} on {t.witness}")

c3 = sc.c3_scenario()
print("C^3 pair localizable together:", c3.passed, c3.summary)
