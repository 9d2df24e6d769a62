"""
Executable checks of the uncertainty inequalities.

Every check returns a :class:`CheckReport` oriented so that the inequality
holds exactly when ``margin = lhs - rhs >= -tol``.  ``run_suite`` builds
seeded random instances and runs the whole battery on them.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import metric_space as ms
from . import observables as ob
from . import operator_core as oc
from .distances import MAX_EXACT_OUTCOMES, linf_distance, werner_distance
from .observables import JointPovm, Povm, Pvm, induced_distribution
from .widths import errorbar_width, localization_error, overall_width
from .witnesses import Theorem1Witness, maximally_entangled, posterior_records, theorem1_witness

DEFAULT_TOL = 1e-9
EPS_GRID = (0.0, 0.1, 0.25)


@dataclass
class CheckReport:
    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    tol: float = DEFAULT_TOL
    witness: str = ""
    params: dict = field(default_factory=dict)
    informational: bool = False
    error: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def make_report(name, lhs, rhs, tol=DEFAULT_TOL, witness="", informational=False, **params) -> CheckReport:
    lhs, rhs = float(lhs), float(rhs)
    margin = lhs - rhs
    return CheckReport(name, lhs, rhs, margin, bool(margin >= -tol), tol, witness, params, informational)


def error_report(name: str, exc: Exception, **params) -> CheckReport:
    return CheckReport(name, math.nan, math.nan, math.nan, False, DEFAULT_TOL, "", params, False, repr(exc))


def _eps_ok(eps1, eps2):
    if min(eps1, eps2) < 0 or eps1 + eps2 > 1 + 1e-12:
        raise ValueError(f"need eps1, eps2 >= 0 and eps1 + eps2 <= 1, got {eps1}, {eps2}")


# -- joint localizability ---------------------------------------------------


def landau_pollak_check(rho, a: Povm, delta_a, b: Povm, delta_b, tol=DEFAULT_TOL) -> CheckReport:
    """``tr(rho A(Da)) + tr(rho B(Db)) <= 1 + ||A(Da) B(Db)||``."""
    pa, pb = a.effect(delta_a), b.effect(delta_b)
    rho = oc.as_operator(rho)
    total = np.trace(rho @ pa).real + np.trace(rho @ pb).real
    bound = 1.0 + oc.operator_norm(pa @ pb)
    return make_report("landau_pollak", bound, total, tol, f"Da={list(delta_a)} Db={list(delta_b)}")


def _ball_product(space_a, wa, space_b, wb) -> int:
    return space_a.max_ball_cardinality(wa) * space_b.max_ball_cardinality(wb)


def theorem2_localizability_check(rho, a: Pvm, b: Pvm, eps1, eps2, tol=DEFAULT_TOL) -> CheckReport:
    _eps_ok(eps1, eps2)
    wa = overall_width(induced_distribution(rho, a), eps1).width
    wb = overall_width(induced_distribution(rho, b), eps2).width
    lhs = _ball_product(a.space, wa, b.space, wb)
    rhs = (1 - eps1 - eps2) ** 2 / ob.max_pairwise_trace(a, b)
    return make_report("theorem2_localizability", lhs, rhs, tol, f"W=({wa:.6g},{wb:.6g})", eps1=eps1, eps2=eps2)


def theorem2_measurability_check(m: JointPovm, a: Pvm, b: Pvm, eps1, eps2, tol=DEFAULT_TOL) -> CheckReport:
    _eps_ok(eps1, eps2)
    m1, m2 = m.marginals()
    wa = errorbar_width(m1, a, eps1).width
    wb = errorbar_width(m2, b, eps2).width
    lhs = _ball_product(a.space, wa, b.space, wb)
    rhs = (1 - eps1 - eps2) ** 2 / ob.max_pairwise_trace(a, b)
    return make_report("theorem2_measurability", lhs, rhs, tol, f"W=({wa:.6g},{wb:.6g})", eps1=eps1, eps2=eps2)


# -- error-bar widths versus witness overall widths -----------------------------


def _witness_label(w: Theorem1Witness) -> str:
    x, y = w.record.outcome
    return f"(x',y')=({x},{y})"


def theorem1_check(
    a: Pvm, b: Pvm, m: JointPovm, eps1, eps2, tol=DEFAULT_TOL, witness: Theorem1Witness | None = None
) -> tuple[CheckReport, CheckReport]:
    """Error-bar widths bound the overall widths of the constructed witness."""
    _eps_ok(eps1, eps2)
    if witness is None:
        witness = theorem1_witness(a, b, m, eps1, eps2)
    e = min(eps1 + eps2, 1.0)
    wa = overall_width(induced_distribution(witness.state, a), e).width
    wb = overall_width(induced_distribution(witness.state, b), e).width
    label = _witness_label(witness)
    return (
        make_report("theorem1_a", witness.width_a, wa, tol, label, eps1=eps1, eps2=eps2),
        make_report("theorem1_b", witness.width_b, wb, tol, label, eps1=eps1, eps2=eps2),
    )


def key_inequality_check(a: Pvm, b: Pvm, witness: Theorem1Witness, eps1, eps2, tol=DEFAULT_TOL) -> CheckReport:
    """Ball probabilities of the witness add up to at least ``2 - eps1 - eps2``."""
    x, y = witness.record.outcome
    pa = a.effect(a.space.ball_masks(witness.width_a)[x])
    pb = b.effect(b.space.ball_masks(witness.width_b)[y])
    total = np.trace(witness.state @ pa).real + np.trace(witness.state @ pb).real
    return make_report("key_inequality", total, 2 - eps1 - eps2, tol, _witness_label(witness), eps1=eps1, eps2=eps2)


# -- Werner distance ------------------------------------------------------------


def _werner(f1: Povm, f2: Povm) -> float:
    if f1.space.size <= MAX_EXACT_OUTCOMES:
        return werner_distance(f1, f2, "exact").value
    # a lower bound still certifies any inequality of the form D_W >= ...
    return werner_distance(f1, f2, "alternating").value


def proposition_bp_check(e1: Povm, e: Pvm, eps, tol=DEFAULT_TOL, dw: float | None = None) -> CheckReport:
    """``errorbar_width(E1, E, eps) <= (2 / eps) D_W(E1, E)``."""
    if not 0 < eps <= 1:
        raise ValueError("need eps in (0, 1]")
    if dw is None:
        dw = _werner(e1, e)
    w = errorbar_width(e1, e, eps).width
    return make_report("proposition_bp", 2.0 / eps * dw, w, tol, f"D_W={dw:.6g}", eps=eps)


def theorem3_check(
    a: Pvm,
    b: Pvm,
    m: JointPovm,
    eps1,
    eps2,
    tol=DEFAULT_TOL,
    witness: Theorem1Witness | None = None,
    dw: tuple[float, float] | None = None,
) -> tuple[CheckReport, CheckReport]:
    """Werner distances of the marginals bound the witness overall widths."""
    if not (0 < eps1 < 1 and 0 < eps2 < 1 and eps1 + eps2 < 1):
        raise ValueError("need eps1, eps2 in (0, 1) with eps1 + eps2 < 1")
    if witness is None:
        witness = theorem1_witness(a, b, m, eps1, eps2)
    m1, m2 = m.marginals()
    if dw is None:
        dw = (_werner(m1, a), _werner(m2, b))
    e = eps1 + eps2
    wa = overall_width(induced_distribution(witness.state, a), e).width
    wb = overall_width(induced_distribution(witness.state, b), e).width
    label = _witness_label(witness)
    return (
        make_report("theorem3_a", dw[0], eps1 / 2 * wa, tol, label, eps1=eps1, eps2=eps2),
        make_report("theorem3_b", dw[1], eps2 / 2 * wb, tol, label, eps1=eps1, eps2=eps2),
    )


# -- l-infinity distance ---------------------------------------------------------


def _linf_pair(a, b, m):
    m1, m2 = m.marginals()
    return linf_distance(m1, a).value, linf_distance(m2, b).value


def theorem4_check(a: Pvm, b: Pvm, m: JointPovm, tol=DEFAULT_TOL) -> CheckReport:
    """Some posterior witness has localization errors within the D_inf sum.

    Records are scanned in descending order of their localization-error sum
    and the first one satisfying the bound is reported.
    """
    d1, d2 = _linf_pair(a, b, m)
    scored = []
    for rec in posterior_records(m, maximally_entangled(m.dim)):
        le = localization_error(induced_distribution(rec.witness, a)) + localization_error(
            induced_distribution(rec.witness, b)
        )
        scored.append((-le, rec.outcome, le))
    scored.sort()
    chosen = next((s for s in scored if d1 + d2 - s[2] >= -tol), None)
    if chosen is None:
        chosen = scored[-1]
    _, outcome, le = chosen
    return make_report("theorem4", d1 + d2, le, tol, f"(x',y')={outcome}")


def corollary_check(a: Pvm, b: Pvm, m: JointPovm, tol=DEFAULT_TOL) -> CheckReport:
    d1, d2 = _linf_pair(a, b, m)
    return make_report("corollary", d1 + d2, 1 - ob.max_pairwise_norm(a, b), tol, f"D=({d1:.6g},{d2:.6g})")


def miyah_lhs(d1: float, d2: float) -> float:
    return 2 * d1 * d2 + d1 + d2 + 4 * math.sqrt(d1 * d2)


def miyah_check(a: Pvm, b: Pvm, m: JointPovm, tol=DEFAULT_TOL) -> CheckReport:
    d1, d2 = _linf_pair(a, b, m)
    return make_report("miyah", miyah_lhs(d1, d2), ob.max_commutator_norm(a, b), tol, f"D=({d1:.6g},{d2:.6g})")


@dataclass(frozen=True)
class BoundComparison:
    parameter: float
    d1: float
    d2: float
    corollary_slack: float
    miyah_slack: float

    @property
    def tighter(self) -> str:
        if abs(self.corollary_slack - self.miyah_slack) <= 1e-12:
            return "tie"
        return "corollary" if self.corollary_slack < self.miyah_slack else "miyah"


def compare_bounds(a: Pvm, b: Pvm, family: Callable[[float], JointPovm], grid: Iterable[float]) -> list[BoundComparison]:
    """Slack of the corollary and of the commutator bound along a family."""
    cor_rhs = 1 - ob.max_pairwise_norm(a, b)
    mi_rhs = ob.max_commutator_norm(a, b)
    rows = []
    for t in grid:
        d1, d2 = _linf_pair(a, b, family(t))
        rows.append(BoundComparison(float(t), d1, d2, d1 + d2 - cor_rhs, miyah_lhs(d1, d2) - mi_rhs))
    return rows


def covariant_circle(theta: float) -> JointPovm:
    """Covariant qubit family on the boundary ``lam = cos(theta), mu = sin(theta)``."""
    c, s = math.cos(theta), math.sin(theta)
    # keep lam^2 + mu^2 <= 1 against rounding
    r = math.hypot(c, s)
    return ob.family_qubit_covariant(c / r, s / r)


# -- random instances and the full battery ------------------------------------


@dataclass(frozen=True, eq=False)
class Instance:
    a: Pvm
    b: Pvm
    m: JointPovm
    label: str


def _random_space(n: int, rng) -> ms.FiniteMetricSpace:
    kind = rng.integers(4)
    if kind == 0 or n == 1:
        return ms.discrete(n)
    if kind == 1 and n >= 2:
        return ms.cyclic(n)
    if kind == 2:
        return ms.line(np.sort(rng.uniform(0, 3, n)) + np.arange(n) * 0.05)
    return ms.random_space(n, rng)


def random_instance(dim: int, rng, kind: str | None = None, label: str = "") -> Instance:
    """Random PVM pair and joint POVM of one of four kinds.

    ``random``: Gram-normalized random POVM; ``smeared``: sequential ``A`` then
    ``B``; ``mixed``: smeared mixed with a random POVM; ``trivial``: sharp ``A``
    with uniform noise for ``B``.
    """
    rng = np.random.default_rng(rng)
    na = int(rng.integers(2, dim + 1))
    nb = int(rng.integers(2, dim + 1))
    a = ob.random_pvm(dim, na, rng, _random_space(na, rng))
    b = ob.random_pvm(dim, nb, rng, _random_space(nb, rng))
    if kind is None:
        kind = ("random", "smeared", "mixed", "trivial")[int(rng.integers(4))]
    if kind == "random":
        m = ob.random_joint_povm(dim, a.space, b.space, rng)
    elif kind == "smeared":
        m = ob.family_smeared(a, b)
    elif kind == "mixed":
        t = float(rng.uniform(0.3, 0.95))
        m = ob.mix_joint(ob.family_smeared(a, b), ob.random_joint_povm(dim, a.space, b.space, rng), t)
    elif kind == "trivial":
        q = ob.ProbabilityDistribution(b.space, np.full(nb, 1.0 / nb))
        m = ob.family_trivial(a, q)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return Instance(a, b, m, label or f"d{dim}-{kind}")


def instance_rng(seed: int, dim: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, dim, index])


def eps_pairs(grid: Sequence[float] = EPS_GRID) -> list[tuple[float, float]]:
    return [(e1, e2) for e1 in grid for e2 in grid if e1 + e2 <= 1]


def instance_checks(
    inst: Instance,
    eps_list: Sequence[tuple[float, float]],
    tol: float = DEFAULT_TOL,
    state_seed=None,
    checks: Sequence[str] | None = None,
) -> list[CheckReport]:
    """Run every requested check on one instance across the epsilon pairs."""
    want = set(checks) if checks else None

    def on(name):
        return want is None or name in want

    a, b, m = inst.a, inst.b, inst.m
    m1, m2 = m.marginals()
    reports: list[CheckReport] = []
    rho = ob.random_state(a.dim, state_seed)
    dw = None
    if on("theorem3") or on("proposition_bp"):
        dw = (_werner(m1, a), _werner(m2, b))

    def guard(name, fn, **params):
        try:
            out = fn()
        except Exception as exc:  # numerical failures become ERROR rows
            reports.append(error_report(name, exc, **params))
            return
        reports.extend(out if isinstance(out, tuple) else (out,))

    for e1, e2 in eps_list:
        wit = None
        if on("theorem1") or on("key_inequality") or on("theorem3"):
            try:
                wit = theorem1_witness(a, b, m, e1, e2)
            except Exception:
                # dependent checks rebuild the witness inside their guard and
                # report the failure as ERROR rows
                wit = None
        if on("theorem1"):
            guard("theorem1", lambda: theorem1_check(a, b, m, e1, e2, tol, wit), eps1=e1, eps2=e2)
        if on("key_inequality"):
            guard(
                "key_inequality",
                lambda: key_inequality_check(a, b, wit or theorem1_witness(a, b, m, e1, e2), e1, e2, tol),
                eps1=e1,
                eps2=e2,
            )
        if on("theorem2"):
            guard("theorem2", lambda: theorem2_localizability_check(rho, a, b, e1, e2, tol), eps1=e1, eps2=e2)
            guard("theorem2", lambda: theorem2_measurability_check(m, a, b, e1, e2, tol), eps1=e1, eps2=e2)
        if on("theorem3") and 0 < e1 < 1 and 0 < e2 < 1 and e1 + e2 < 1:
            guard("theorem3", lambda: theorem3_check(a, b, m, e1, e2, tol, wit, dw), eps1=e1, eps2=e2)
    if on("proposition_bp"):
        for eps in (0.1, 0.25, 0.5):
            guard("proposition_bp", lambda: proposition_bp_check(m1, a, eps, tol, dw[0]), eps=eps)
            guard("proposition_bp", lambda: proposition_bp_check(m2, b, eps, tol, dw[1]), eps=eps)
    if on("landau_pollak"):
        guard("landau_pollak", lambda: landau_pollak_check(rho, a, [0], b, [0], tol))
    if on("theorem4"):
        guard("theorem4", lambda: theorem4_check(a, b, m, tol))
    if on("corollary"):
        guard("corollary", lambda: corollary_check(a, b, m, tol))
    if on("miyah"):
        guard("miyah", lambda: miyah_check(a, b, m, tol))
    for r in reports:
        r.params.setdefault("dim", a.dim)
        r.witness = f"{inst.label} {r.witness}".strip()
    return reports


def _suite_job(job):
    seed, dim, index, eps_list, tol, checks = job
    rng = instance_rng(seed, dim, index)
    inst = random_instance(dim, rng, label=f"d{dim}#{index}")
    reports = instance_checks(inst, eps_list, tol, rng, checks)
    for r in reports:
        r.params["seed"] = seed
        r.params["instance"] = index
    return reports


def run_suite(
    seed: int = 0,
    dims: Sequence[int] = (2, 3, 4, 5),
    instances: int = 100,
    eps_list: Sequence[tuple[float, float]] | None = None,
    tol: float = DEFAULT_TOL,
    parallel: int = 1,
    checks: Sequence[str] | None = None,
) -> list[CheckReport]:
    """Full battery over ``instances`` seeded random instances per dimension.

    Instance ``i`` of dimension ``d`` draws from ``default_rng([seed, d, i])``,
    so results do not depend on ``parallel``.
    """
    if eps_list is None:
        eps_list = eps_pairs()
    jobs = [(seed, d, i, tuple(eps_list), tol, tuple(checks) if checks else None) for d in dims for i in range(instances)]
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(_suite_job, jobs, chunksize=8))
    else:
        chunks = [_suite_job(j) for j in jobs]
    return [r for chunk in chunks for r in chunk]


def all_passed(reports: Iterable[CheckReport]) -> bool:
    return all(r.passed for r in reports if not r.informational)
