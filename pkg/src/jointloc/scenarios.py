"""
Worked examples: qubit, lattice torus, N qubits, and a three-level pair.

Each runner returns a :class:`ScenarioBundle` of check reports plus a few
scalar summaries (tightest margins and where they occur).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import metric_space as ms
from . import observables as ob
from . import operator_core as oc
from .errors import DimensionTooLarge
from .observables import Pvm, induced_distribution
from .verification import (
    DEFAULT_TOL,
    CheckReport,
    covariant_circle,
    eps_pairs,
    landau_pollak_check,
    make_report,
    theorem2_localizability_check,
    theorem2_measurability_check,
)
from .widths import binary_entropy, errorbar_width, overall_width

QUBIT_BOUND = 1 + 1 / math.sqrt(2)


@dataclass
class ScenarioBundle:
    name: str
    reports: list[CheckReport] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports if not r.informational)

    def tightest(self, name: str) -> CheckReport | None:
        rs = [r for r in self.reports if r.name == name]
        return min(rs, key=lambda r: r.margin) if rs else None


# -- qubit ----------------------------------------------------------------


def qubit_observables() -> tuple[Pvm, Pvm]:
    """``Z`` (computational) and ``X`` (conjugate) PVMs on the two-point space."""
    return ob.computational_pvm(2), ob.hadamard_pvm(1)


def bloch_state(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1.0, -1.0]).astype(complex)
    return 0.5 * (np.eye(2) + r[0] * sx + r[1] * sy + r[2] * sz)


def localization_sum(rho, z: Pvm, x: Pvm) -> float:
    """``max_z rho^Z(z) + max_x rho^X(x)``."""
    return float(induced_distribution(rho, z).weights.max() + induced_distribution(rho, x).weights.max())


def measurement_sum(m: ob.JointPovm, z: Pvm, x: Pvm) -> tuple[float, float]:
    """``(min_z tr(Z_z M1_z), min_x tr(X_x M2_x))`` for a joint POVM on two bits."""
    m1, m2 = m.marginals()
    s1 = min(np.trace(z[k] @ m1[k]).real for k in range(2))
    s2 = min(np.trace(x[k] @ m2[k]).real for k in range(2))
    return float(s1), float(s2)


def qubit_scenario(
    eps_grid: Sequence[float] = (0.0, 0.1, 0.25),
    n_states: int = 10_000,
    n_family: int = 64,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    extra_povms: Sequence[ob.JointPovm] = (),
) -> ScenarioBundle:
    z, x = qubit_observables()
    bundle = ScenarioBundle("qubit")
    rng = np.random.default_rng(seed)

    # sweep of pure states against 1 + 1/sqrt(2)
    vecs = rng.standard_normal((n_states, 2)) + 1j * rng.standard_normal((n_states, 2))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    pz = np.abs(vecs) ** 2
    px = np.abs(vecs @ ob.hadamard_basis(1).conj()) ** 2
    sums = pz.max(axis=1) + px.max(axis=1)
    k = int(np.argmax(sums))
    bundle.reports.append(make_report("qubit_localization_sweep", QUBIT_BOUND, sums[k], tol, f"state#{k}", n=n_states))
    best = bloch_state(np.array([1.0, 0.0, 1.0]) / math.sqrt(2))
    s = localization_sum(best, z, x)
    bundle.reports.append(make_report("qubit_localization_bloch", QUBIT_BOUND, s, tol, "bloch=(1,0,1)/sqrt2"))
    bundle.reports.append(make_report("qubit_localization_attained", s, QUBIT_BOUND, tol, "bloch=(1,0,1)/sqrt2"))
    bundle.summary["sweep_max"] = float(sums[k])
    bundle.summary["bloch_sum"] = s

    # ball-product bound 2(1 - e1 - e2)^2 on a subsample of states and the bloch state
    pairs = eps_pairs(eps_grid)
    probe = [best] + [np.outer(v, v.conj()) for v in vecs[:200]]
    for rho in probe:
        for e1, e2 in pairs:
            bundle.reports.append(theorem2_localizability_check(rho, z, x, e1, e2, tol))

    # measurement analogue over the covariant family, with the epsilon-choice rule
    thetas = np.linspace(0, math.pi / 2, n_family)
    family = [covariant_circle(t) for t in thetas] + list(extra_povms)
    worst = -np.inf
    for i, m in enumerate(family):
        s1, s2 = measurement_sum(m, z, x)
        worst = max(worst, s1 + s2)
        bundle.reports.append(make_report("qubit_measurement_sum", QUBIT_BOUND, s1 + s2, tol, f"family#{i}"))
        e1, e2 = 1 - s1, 1 - s2
        m1, m2 = m.marginals()
        card = (
            z.space.max_ball_cardinality(errorbar_width(m1, z, e1).width)
            * x.space.max_ball_cardinality(errorbar_width(m2, x, e2).width)
        )
        # with this choice of epsilons both error-bar balls are single points
        bundle.reports.append(make_report("qubit_eps_rule_sharp", 1.0, card, tol, f"family#{i}"))
        if e1 + e2 <= 1:
            bundle.reports.append(theorem2_measurability_check(m, z, x, e1, e2, tol))
        for e1, e2 in pairs:
            bundle.reports.append(theorem2_measurability_check(m, z, x, e1, e2, tol))
    bundle.summary["measurement_max"] = float(worst)
    bundle.summary["bound"] = QUBIT_BOUND
    return bundle


# -- torus ---------------------------------------------------------------------


def weyl_pair(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Clock ``u|m> = e^{2 pi i m/n}|m>`` and shift ``v|m> = |m+1>``."""
    u = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    v = np.roll(np.eye(n, dtype=complex), 1, axis=0)
    return u, v


def torus_observables(n: int) -> tuple[Pvm, Pvm]:
    space = ms.cyclic(n)
    return ob.computational_pvm(n, space), ob.pvm_from_basis(ob.fourier_basis(n), space)


def torus_lhs(wq: float, wp: float, n: int, offset: float) -> float:
    return (wq + offset) * (wp + offset)


def torus_rhs(n: int, e1: float, e2: float) -> float:
    return 4 * math.pi**2 / n * (1 - e1 - e2) ** 2


def torus_scenario(
    n: int,
    eps_grid: Sequence[float] = (0.0, 0.1, 0.25),
    n_states: int = 1000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    extra_povms: Sequence[ob.JointPovm] = (),
) -> ScenarioBundle:
    """Lattice position/momentum on ``Z_n`` with the circular metric.

    The width product is checked with the additive constant ``2 pi / n``
    that the ball-counting bound produces; the constant ``1 / n`` is also
    evaluated and reported as informational.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    q, p = torus_observables(n)
    bundle = ScenarioBundle(f"torus{n}")
    hbar = 2 * math.pi / n
    u, v = weyl_pair(n)
    weyl_err = float(np.max(np.abs(u @ v - np.exp(1j * hbar) * v @ u)))
    unit_err = float(max(np.max(np.abs(u.conj().T @ u - np.eye(n))), np.max(np.abs(v.conj().T @ v - np.eye(n)))))
    bundle.reports.append(make_report("weyl_relation", 1e-10, weyl_err, 0.0, "uv = e^{i hbar} vu"))
    bundle.reports.append(make_report("weyl_unitary", 1e-10, unit_err, 0.0))
    overlaps = np.abs(ob.fourier_basis(n)) ** 2
    mub_err = float(np.max(np.abs(overlaps - 1 / n)))
    bundle.reports.append(make_report("mutually_unbiased", 1e-12, mub_err, 0.0))
    bundle.summary["max_pairwise_trace"] = ob.max_pairwise_trace(q, p)

    pairs = eps_pairs(eps_grid)
    rng = np.random.default_rng(seed)
    states = [oc.pure_state(np.eye(n)[0]), oc.pure_state(ob.fourier_basis(n)[:, 0])]
    states += [ob.random_state(n, rng, rank=int(rng.integers(1, n + 1))) for _ in range(n_states)]

    def width_reports(wq, wp, e1, e2, tag, kind):
        rhs = torus_rhs(n, e1, e2)
        bundle.reports.append(
            make_report(f"torus_{kind}", torus_lhs(wq, wp, n, hbar), rhs, tol, tag, eps1=e1, eps2=e2, n=n)
        )
        bundle.reports.append(
            make_report(
                f"torus_{kind}_printed_constant",
                torus_lhs(wq, wp, n, 1 / n),
                rhs,
                tol,
                tag,
                informational=True,
                eps1=e1,
                eps2=e2,
                n=n,
            )
        )

    for i, rho in enumerate(states):
        dq, dp = induced_distribution(rho, q), induced_distribution(rho, p)
        for e1, e2 in pairs:
            width_reports(overall_width(dq, e1).width, overall_width(dp, e2).width, e1, e2, f"state#{i}", "localization")

    uniform = ob.ProbabilityDistribution(p.space, np.full(n, 1 / n))
    families = {
        "trivial": ob.family_trivial(q, uniform),
        "smeared": ob.family_smeared(q, p),
        "smeared_pq": ob.family_smeared(p, q),
    }
    for k, m in enumerate(extra_povms):
        families[f"extra{k}"] = m
    for name, m in families.items():
        if name == "smeared_pq":
            # outcomes of this family are ordered (momentum, position)
            m = ob.JointPovm(q.space, p.space, m.elements.transpose(1, 0, 2, 3))
        m1, m2 = m.marginals()
        for e1, e2 in pairs:
            wq = errorbar_width(m1, q, e1).width
            wp = errorbar_width(m2, p, e2).width
            width_reports(wq, wp, e1, e2, name, "errorbar")
    printed = [r for r in bundle.reports if r.name.endswith("printed_constant")]
    bundle.summary["printed_constant_failures"] = sum(not r.passed for r in printed)
    bundle.summary["printed_constant_checks"] = len(printed)
    return bundle


# -- N qubits ------------------------------------------------------------------


def nqubit_observables(n: int) -> tuple[Pvm, Pvm]:
    space = ms.hamming_rescaled(n)
    return ob.computational_pvm(2**n, space), ob.hadamard_pvm(n, space)


def clamped_entropy(w: float) -> float:
    """Binary entropy with the argument capped at 1/2, where ball counting stays valid."""
    return binary_entropy(min(w, 0.5))


def entropy_rhs(n: int, e1: float, e2: float) -> float:
    s = 1 - e1 - e2
    return -math.inf if s <= 0 else 1 + 2 / n * math.log2(s)


def ghz_state(n: int) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1
    return oc.pure_state(v)


def nqubit_scenario(
    n: int,
    eps_grid: Sequence[float] = (0.0, 0.1, 0.25),
    n_states: int = 1000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    allow_large: bool = False,
) -> ScenarioBundle:
    if n > 3 and not allow_large:
        raise DimensionTooLarge(f"{n} qubits exceeds the default limit of 3")
    z, x = nqubit_observables(n)
    dim = 2**n
    bundle = ScenarioBundle(f"nqubit{n}")
    bundle.summary["max_pairwise_trace"] = ob.max_pairwise_trace(z, x)
    pairs = [(e1, e2) for e1, e2 in eps_pairs(eps_grid) if e1 + e2 < 1]
    rng = np.random.default_rng(seed)
    states = [
        ("zero", oc.pure_state(np.eye(dim)[0])),
        ("plus", oc.pure_state(ob.hadamard_basis(n)[:, 0])),
        ("ghz", ghz_state(n)),
        ("uniform_mixed", np.eye(dim, dtype=complex) / dim),
    ]
    states += [(f"state#{i}", ob.random_state(dim, rng, rank=int(rng.integers(1, dim + 1)))) for i in range(n_states)]
    for tag, rho in states:
        dz, dx = induced_distribution(rho, z), induced_distribution(rho, x)
        for e1, e2 in pairs:
            lhs = clamped_entropy(overall_width(dz, e1).width) + clamped_entropy(overall_width(dx, e2).width)
            bundle.reports.append(make_report("nqubit_entropy", lhs, entropy_rhs(n, e1, e2), tol, tag, eps1=e1, eps2=e2, n=n))
    uniform = ob.ProbabilityDistribution(x.space, np.full(dim, 1 / dim))
    for name, m in {"trivial": ob.family_trivial(z, uniform), "smeared": ob.family_smeared(z, x)}.items():
        m1, m2 = m.marginals()
        for e1, e2 in pairs:
            lhs = clamped_entropy(errorbar_width(m1, z, e1).width) + clamped_entropy(errorbar_width(m2, x, e2).width)
            bundle.reports.append(make_report("nqubit_entropy_errorbar", lhs, entropy_rhs(n, e1, e2), tol, name, eps1=e1, eps2=e2, n=n))
    return bundle


# -- three-level pair -----------------------------------------------------------------


def c3_observables() -> tuple[Pvm, Pvm]:
    """``A = {1_C + 0, |0><0|, |1><1|}``, ``B = {1_C + 0, |0bar><0bar|, |1bar><1bar|}``
    on ``C (+) C^2`` (basis order: the ``C`` summand first)."""
    a = ob.computational_pvm(3)
    b = np.zeros((3, 3, 3), dtype=complex)
    b[0, 0, 0] = 1.0
    b[1:, 1:, 1:] = ob.hadamard_pvm(1).elements
    return a, ob.pvm_from_projectors(b)


def c3_scenario(tol: float = DEFAULT_TOL) -> ScenarioBundle:
    a, b = c3_observables()
    bundle = ScenarioBundle("c3")
    rho = oc.pure_state([1, 0, 0])
    wa = overall_width(induced_distribution(rho, a), 0.0).width
    wb = overall_width(induced_distribution(rho, b), 0.0).width
    bundle.reports.append(make_report("c3_localizable_a", 0.0, wa, tol, "rho=|c><c|"))
    bundle.reports.append(make_report("c3_localizable_b", 0.0, wb, tol, "rho=|c><c|"))
    block = max(np.trace(a[i] @ b[j]).real for i in (1, 2) for j in (1, 2))
    low = min(np.trace(a[i] @ b[j]).real for i in (1, 2) for j in (1, 2))
    bundle.summary["block_overlap_max"] = float(block)
    bundle.summary["block_overlap_min"] = float(low)
    bundle.summary["norm_A0B0"] = oc.operator_norm(a[0] @ b[0])
    bundle.reports.append(landau_pollak_check(rho, a, [0], b, [0], tol))
    return bundle
