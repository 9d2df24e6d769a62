"""
Witness states from remote state preparation on a maximally entangled pair.

The auxiliary copy ``H_aux`` carries the basis ``a_i`` and the system the
basis ``e_i``; ``Phi0 = N^{-1/2} sum_i a_i (x) e_i`` with the auxiliary factor
first.  The correspondence ``X -> gamma(X)`` with
``gamma(X) = sum_ij (e_j, X e_i) |a_i><a_j|`` is the transpose in these
bases, and so is its dual on states.

Measuring a joint POVM ``M`` on the system half and obtaining ``(x', y')``
leaves the auxiliary half in ``Theta_{x'y'}``; pulling it back with
``gamma*`` gives a system state whose ``A``/``B`` statistics equal the Bayes
posteriors over the prepared ensembles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import operator_core as oc
from .errors import DimensionMismatch
from .observables import JointPovm, Povm, Pvm, induced_distribution
from .widths import errorbar_width

P_MIN = 1e-12


@dataclass(frozen=True)
class EntangledResource:
    dim: int
    vector: np.ndarray = field(repr=False)

    @property
    def projector(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


def maximally_entangled(dim: int) -> EntangledResource:
    v = np.eye(dim, dtype=complex).ravel() / np.sqrt(dim)
    return EntangledResource(dim, v)


def gamma(x) -> np.ndarray:
    """Transfer a system operator to the auxiliary space (basis transpose)."""
    return oc.as_operator(x).T.copy()


def gamma_star(rho) -> np.ndarray:
    """Dual of :func:`gamma`: ``tr(rho gamma(X)) = tr(gamma_star(rho) X)``."""
    return oc.as_operator(rho).T.copy()


def _on_system(resource: EntangledResource, op: np.ndarray) -> np.ndarray:
    if op.shape[0] != resource.dim:
        raise DimensionMismatch(f"operator on {op.shape[0]} dims vs resource on {resource.dim}")
    return oc.tensor(np.eye(resource.dim), op)


def _expect(resource: EntangledResource, big: np.ndarray) -> float:
    v = resource.vector
    return float(np.vdot(v, big @ v).real)


def preparation_ensemble(f: Pvm, resource: EntangledResource) -> list[tuple[int, float, np.ndarray]]:
    """Remote preparation of states localized on each outcome of ``f``.

    Returns ``(x, p(x), rho_x)`` for every outcome with ``F_x != 0``, where
    ``p(x) = <Phi0|1 (x) F_x|Phi0>`` and ``rho_x`` is the normalized partial
    trace over the auxiliary factor of ``(1 (x) F_x)|Phi0><Phi0|(1 (x) F_x)``.
    """
    n = resource.dim
    out = []
    for x, fx in enumerate(f.elements):
        big = _on_system(resource, fx)
        p = _expect(resource, big)
        if p <= P_MIN:
            continue
        post = big @ resource.projector @ big
        rho = oc.partial_trace_first(post, n, n) / p
        out.append((x, p, oc.hermitian_part(rho)))
    return out


@dataclass(frozen=True)
class PosteriorRecord:
    outcome: tuple[int, int]
    probability: float
    theta: np.ndarray = field(repr=False)
    witness: np.ndarray = field(repr=False)
    posterior_a: np.ndarray = field(repr=False)
    posterior_b: np.ndarray = field(repr=False)


def posterior_records(
    m: JointPovm, resource: EntangledResource, a: Povm | None = None, b: Povm | None = None
) -> list[PosteriorRecord]:
    """One record per joint outcome with nonzero probability on ``Phi0``.

    ``posterior_a``/``posterior_b`` are filled when the target observables
    are supplied, as ``tr(Theta gamma(A_x))`` and ``tr(Theta gamma(B_y))``.
    """
    n = resource.dim
    records = []
    for x, y in m.outcomes():
        mxy = m.elements[x, y]
        p = _expect(resource, _on_system(resource, mxy))
        if p <= P_MIN:
            continue
        root = _on_system(resource, oc.psd_sqrt(mxy))
        theta = oc.hermitian_part(oc.partial_trace_second(root @ resource.projector @ root, n, n) / p)
        pa = pb = None
        if a is not None:
            pa = np.array([np.trace(theta @ gamma(ax)).real for ax in a.elements])
        if b is not None:
            pb = np.array([np.trace(theta @ gamma(by)).real for by in b.elements])
        records.append(PosteriorRecord((x, y), p, theta, gamma_star(theta), pa, pb))
    return records


@dataclass(frozen=True)
class Theorem1Witness:
    state: np.ndarray = field(repr=False)
    record: PosteriorRecord = field(repr=False)
    width_a: float = 0.0
    width_b: float = 0.0
    ball_sum: float = 0.0


def theorem1_witness(
    a: Pvm, b: Pvm, m: JointPovm, eps1: float, eps2: float
) -> Theorem1Witness:
    """Witness state for the error-bar / overall-width comparison.

    With ``w1, w2`` the error-bar widths of the marginals of ``m`` against
    ``a`` and ``b``, picks the posterior record maximizing the posterior mass
    of ``a`` in ``ball(x', w1)`` plus that of ``b`` in ``ball(y', w2)``; ties
    go to the first outcome in lexicographic order.
    """
    if eps1 + eps2 > 1 + 1e-12:
        raise ValueError("need eps1 + eps2 <= 1")
    if not (a.dim == b.dim == m.dim):
        raise DimensionMismatch("observables act on different spaces")
    m1, m2 = m.marginals()
    w1 = errorbar_width(m1, a, eps1).width
    w2 = errorbar_width(m2, b, eps2).width
    masks_a = a.space.ball_masks(w1)
    masks_b = b.space.ball_masks(w2)
    best, best_sum = None, -np.inf
    for rec in posterior_records(m, maximally_entangled(m.dim), a, b):
        x, y = rec.outcome
        s = rec.posterior_a[masks_a[x]].sum() + rec.posterior_b[masks_b[y]].sum()
        if s > best_sum + 1e-14:
            best, best_sum = rec, s
    return Theorem1Witness(best.witness, best, w1, w2, float(best_sum))


def witness_distributions(state, a: Povm, b: Povm):
    return induced_distribution(state, a), induced_distribution(state, b)
