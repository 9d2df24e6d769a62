"""
Observables with finitely many outcomes.

A :class:`Povm` stores its effects as one ``(n_outcomes, dim, dim)`` complex
array aligned with the outcome order of its :class:`FiniteMetricSpace`.
:class:`Pvm` adds the projection checks.  A :class:`JointPovm` is stored
densely with shape ``(|Omega_A|, |Omega_B|, dim, dim)``.
"""

from __future__ import annotations

import itertools

from dataclasses import dataclass, field

import numpy as np

from . import operator_core as oc
from .errors import DimensionMismatch, InvalidPovm, NotPositive
from .metric_space import FiniteMetricSpace, discrete

POVM_TOL = 1e-9
PVM_TOL = 1e-8


def _as_effects(elements) -> np.ndarray:
    e = np.array(elements, dtype=complex)
    if e.ndim != 3 or e.shape[1] != e.shape[2]:
        raise DimensionMismatch(f"expected a stack of square matrices, got shape {e.shape}")
    return e


def _check_povm_effects(e: np.ndarray, tol: float) -> None:
    dim = e.shape[-1]
    for k, op in enumerate(e.reshape(-1, dim, dim)):
        if oc.hermiticity_error(op) > oc.HERM_TOL:
            raise InvalidPovm(f"effect {k} is not Hermitian")
        lam = oc.min_eigenvalue(op)
        if lam < -tol:
            raise InvalidPovm(f"effect {k} is not positive (eigenvalue {lam:.3g})")
    total = e.reshape(-1, dim, dim).sum(axis=0)
    dev = np.max(np.abs(total - np.eye(dim)))
    if dev > tol:
        raise InvalidPovm(f"effects do not sum to the identity (deviation {dev:.3g})")


@dataclass(frozen=True, eq=False)
class Povm:
    space: FiniteMetricSpace
    elements: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = _as_effects(self.elements)
        if e.shape[0] != self.space.size:
            raise DimensionMismatch(
                f"{e.shape[0]} effects for an outcome space of size {self.space.size}"
            )
        _check_povm_effects(e, POVM_TOL)
        e = 0.5 * (e + e.conj().transpose(0, 2, 1))
        e.setflags(write=False)
        object.__setattr__(self, "elements", e)

    @property
    def dim(self) -> int:
        return self.elements.shape[-1]

    def __len__(self):
        return self.elements.shape[0]

    def __getitem__(self, x) -> np.ndarray:
        return self.elements[x]

    def effect(self, outcomes) -> np.ndarray:
        """Effect of an outcome subset, given as indices or a boolean mask."""
        idx = np.asarray(outcomes)
        if idx.dtype == bool:
            return self.elements[idx].sum(axis=0)
        if idx.size == 0:
            return np.zeros((self.dim, self.dim), dtype=complex)
        return self.elements[idx.astype(int)].sum(axis=0)

    def smear(self, f) -> np.ndarray:
        """``F(f) = sum_x f(x) F_x`` for a real function given per outcome."""
        f = np.asarray(f, dtype=float)
        return np.tensordot(f, self.elements, axes=1)


class Pvm(Povm):
    """POVM whose effects are mutually orthogonal projections.

    Effects may be degenerate (rank > 1) and some may be zero.
    """

    def __post_init__(self):
        super().__post_init__()
        e = self.elements
        for x in range(len(e)):
            if np.max(np.abs(e[x] @ e[x] - e[x])) > PVM_TOL:
                raise InvalidPovm(f"effect {x} is not idempotent")
            for y in range(x + 1, len(e)):
                if np.max(np.abs(e[x] @ e[y])) > PVM_TOL:
                    raise InvalidPovm(f"effects {x} and {y} are not orthogonal")

    def range_basis(self, x: int) -> np.ndarray:
        """Orthonormal columns spanning the range of the projection ``E_x``."""
        spec = oc.hermitian_eigensystem(self.elements[x])
        return spec.eigenvectors[:, spec.eigenvalues > 0.5]


@dataclass(frozen=True, eq=False)
class JointPovm:
    space_a: FiniteMetricSpace
    space_b: FiniteMetricSpace
    elements: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.array(self.elements, dtype=complex)
        na, nb = self.space_a.size, self.space_b.size
        if e.ndim != 4 or e.shape[:2] != (na, nb) or e.shape[2] != e.shape[3]:
            raise DimensionMismatch(
                f"joint effects need shape ({na}, {nb}, d, d), got {e.shape}"
            )
        _check_povm_effects(e, POVM_TOL)
        e = 0.5 * (e + e.conj().transpose(0, 1, 3, 2))
        e.setflags(write=False)
        object.__setattr__(self, "elements", e)

    @property
    def dim(self) -> int:
        return self.elements.shape[-1]

    def marginals(self) -> tuple[Povm, Povm]:
        return Povm(self.space_a, self.elements.sum(axis=1)), Povm(
            self.space_b, self.elements.sum(axis=0)
        )

    def outcomes(self):
        na, nb = self.elements.shape[:2]
        for x in range(na):
            for y in range(nb):
                yield x, y


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    space: FiniteMetricSpace
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.shape != (self.space.size,):
            raise DimensionMismatch("weight vector does not match the outcome space")
        if np.any(w < -POVM_TOL) or abs(w.sum() - 1.0) > POVM_TOL:
            raise ValueError("weights must be non-negative and sum to 1")
        w = np.clip(w, 0.0, None)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def mass(self, outcomes) -> float:
        return float(self.weights[np.asarray(outcomes)].sum())


def marginals(m: JointPovm) -> tuple[Povm, Povm]:
    return m.marginals()


def induced_distribution(rho, f: Povm) -> ProbabilityDistribution:
    """Outcome distribution ``x -> tr(rho F_x)``."""
    rho = oc.as_operator(rho)
    if rho.shape[0] != f.dim:
        raise DimensionMismatch(f"state of dimension {rho.shape[0]} vs POVM on {f.dim}")
    w = np.einsum("ij,xji->x", rho, f.elements).real
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if abs(total - 1.0) > 1e-10:
        w = w / total
    return ProbabilityDistribution(f.space, w)


# -- standard observables -------------------------------------------------


def pvm_from_basis(vectors, space: FiniteMetricSpace | None = None) -> Pvm:
    """Rank-one PVM ``{|v_k><v_k|}`` from the columns of a unitary matrix."""
    v = np.asarray(vectors, dtype=complex)
    n = v.shape[1]
    if space is None:
        space = discrete(n)
    return Pvm(space, np.einsum("ik,jk->kij", v, v.conj()))


def pvm_from_projectors(projectors, space: FiniteMetricSpace | None = None) -> Pvm:
    p = _as_effects(projectors)
    if space is None:
        space = discrete(p.shape[0])
    return Pvm(space, p)


def computational_pvm(dim: int, space: FiniteMetricSpace | None = None) -> Pvm:
    return pvm_from_basis(np.eye(dim), space)


def hadamard_basis(n_qubits: int = 1) -> np.ndarray:
    """Columns ``|x_bar>``: tensor products of ``(|0> +- |1>)/sqrt(2)``."""
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n_qubits):
        out = np.kron(out, h)
    return out


def hadamard_pvm(n_qubits: int = 1, space: FiniteMetricSpace | None = None) -> Pvm:
    """Conjugate-basis PVM built from ``(1 +- sigma_x) / 2`` factors.

    Same projectors as ``pvm_from_basis(hadamard_basis(n))`` but with every
    entry an exact dyadic rational, so overlaps with the computational basis
    come out as exactly ``2^-n``.
    """
    plus = np.array([[1, 1], [1, 1]], dtype=complex) / 2
    minus = np.array([[1, -1], [-1, 1]], dtype=complex) / 2
    effects = []
    for bits in itertools.product((plus, minus), repeat=n_qubits):
        e = np.ones((1, 1), dtype=complex)
        for f in bits:
            e = np.kron(e, f)
        effects.append(e)
    return pvm_from_projectors(np.array(effects), space)


def fourier_basis(n: int) -> np.ndarray:
    """Columns ``|k_bar> = n^{-1/2} sum_m exp(-2 pi i k m / n) |m>``."""
    m = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(m, m) / n) / np.sqrt(n)


# -- joint measurement families -------------------------------------------


def family_trivial(a: Povm, q: ProbabilityDistribution) -> JointPovm:
    """``M_xy = q(y) A_x``: sharp first marginal, noise-only second marginal."""
    e = np.einsum("y,xij->xyij", q.weights, a.elements)
    return JointPovm(a.space, q.space, e)


def family_smeared(a: Pvm, b: Povm) -> JointPovm:
    """Measure ``A`` first, then ``B``: ``M_xy = A_x^{1/2} B_y A_x^{1/2}``."""
    if a.dim != b.dim:
        raise DimensionMismatch("observables act on different spaces")
    roots = [oc.psd_sqrt(ax) for ax in a.elements]
    e = np.array([[r @ by @ r for by in b.elements] for r in roots])
    return JointPovm(a.space, b.space, e)


def family_qubit_covariant(lam: float, mu: float) -> JointPovm:
    """``M_zx = (1 + (-1)^z lam sigma_z + (-1)^x mu sigma_x) / 4`` on two bits."""
    sz = np.diag([1.0, -1.0]).astype(complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    e = np.empty((2, 2, 2, 2), dtype=complex)
    for z in range(2):
        for x in range(2):
            e[z, x] = 0.25 * (np.eye(2) + (-1) ** z * lam * sz + (-1) ** x * mu * sx)
    worst = min(oc.min_eigenvalue(op) for op in e.reshape(4, 2, 2))
    if worst < -POVM_TOL:
        raise NotPositive(
            f"lam={lam}, mu={mu} gives a negative effect (need lam^2 + mu^2 <= 1)"
        )
    return JointPovm(discrete(2), discrete(2), e)


def family_explicit(operators, space_a: FiniteMetricSpace, space_b: FiniteMetricSpace) -> JointPovm:
    return JointPovm(space_a, space_b, operators)


def mix_joint(m1: JointPovm, m2: JointPovm, t: float) -> JointPovm:
    """Convex combination ``t*M1 + (1-t)*M2`` on identical outcome spaces."""
    return JointPovm(m1.space_a, m1.space_b, t * m1.elements + (1 - t) * m2.elements)


# -- noncommutativity functionals ------------------------------------------


def max_pairwise_trace(a: Povm, b: Povm) -> float:
    return float(np.einsum("xij,yji->xy", a.elements, b.elements).real.max())


def max_pairwise_norm(a: Povm, b: Povm) -> float:
    return max(oc.operator_norm(ax @ by) for ax in a.elements for by in b.elements)


def max_commutator_norm(a: Povm, b: Povm) -> float:
    return max(
        oc.operator_norm(oc.commutator(ax, by)) for ax in a.elements for by in b.elements
    )


# -- random instances ------------------------------------------------------


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pvm(
    dim: int, n_outcomes: int, seed=None, space: FiniteMetricSpace | None = None
) -> Pvm:
    """PVM from the columns of a random unitary.

    Outcomes ``0..n-2`` get one column each; the last outcome takes the rest.
    """
    if not 1 <= n_outcomes <= dim:
        raise ValueError(f"cannot split dimension {dim} into {n_outcomes} nonzero projections")
    u = random_unitary(dim, seed)
    effects = []
    for k in range(n_outcomes):
        cols = u[:, k : k + 1] if k < n_outcomes - 1 else u[:, k:]
        effects.append(cols @ cols.conj().T)
    return Pvm(space if space is not None else discrete(n_outcomes), np.array(effects))


def random_joint_povm(
    dim: int, space_a: FiniteMetricSpace, space_b: FiniteMetricSpace, seed=None
) -> JointPovm:
    """Random joint POVM ``M_i = S^{-1/2} G_i G_i^* S^{-1/2}``, ``S = sum_i G_i G_i^*``."""
    rng = np.random.default_rng(seed)
    n = space_a.size * space_b.size
    g = rng.standard_normal((n, dim, dim)) + 1j * rng.standard_normal((n, dim, dim))
    gg = g @ g.conj().transpose(0, 2, 1)
    s_inv = oc.inv_psd_sqrt(gg.sum(axis=0))
    e = s_inv @ gg @ s_inv
    return JointPovm(space_a, space_b, e.reshape(space_a.size, space_b.size, dim, dim))


def random_state(dim: int, seed=None, rank: int | None = None) -> np.ndarray:
    """Random density matrix ``G G^* / tr(G G^*)`` with ``G`` of shape ``(dim, rank)``."""
    rng = np.random.default_rng(seed)
    r = dim if rank is None else rank
    g = rng.standard_normal((dim, r)) + 1j * rng.standard_normal((dim, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(dim: int, seed=None) -> np.ndarray:
    return random_state(dim, seed, rank=1)


def random_unit_vector(dim: int, seed=None) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)
