"""
Dense complex linear algebra on small Hermitian matrices.

Operators are plain ``numpy.ndarray`` objects of shape ``(n, n)`` and dtype
``complex128``.  The helpers here validate Hermiticity/positivity and wrap
the few decompositions the rest of the package needs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeEigenvalue,
    NoConvergence,
    NonHermitian,
    NotPositive,
)

HERM_TOL = 1e-9
PSD_TOL = 1e-9
TRACE_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_operator(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_error(h: np.ndarray) -> float:
    """Max-entry deviation from Hermiticity, relative to the largest entry."""
    scale = max(float(np.max(np.abs(h))), 1.0) if h.size else 1.0
    return float(np.max(np.abs(h - h.conj().T))) / scale if h.size else 0.0


def check_hermitian(h, tol: float = HERM_TOL) -> np.ndarray:
    m = as_operator(h)
    err = hermiticity_error(m)
    if err > tol:
        raise NonHermitian(f"matrix is not Hermitian (relative deviation {err:.3g})")
    return m


def hermitian_part(h) -> np.ndarray:
    m = as_operator(h)
    return 0.5 * (m + m.conj().T)


def _fix_phases(v: np.ndarray) -> np.ndarray:
    # first non-negligible component of each column made real positive
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        k = int(np.argmax(np.abs(col) > 1e-12))
        c = col[k]
        if abs(c) > 0:
            v[:, j] = col * (abs(c) / c)
    return v


def hermitian_eigensystem(h) -> Spectrum:
    """Eigen-decomposition of a Hermitian matrix.

    Eigenvalues are returned in ascending order; every eigenvector column has
    its first non-negligible component real and positive so the output is
    deterministic for a given input.
    """
    m = hermitian_part(check_hermitian(h))
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return Spectrum(w, _fix_phases(v))


def eigenvalues(h) -> np.ndarray:
    m = hermitian_part(check_hermitian(h))
    try:
        return np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def min_eigenvalue(h) -> float:
    return float(eigenvalues(h)[0])


def max_eigenvalue(h) -> float:
    return float(eigenvalues(h)[-1])


def operator_norm(a) -> float:
    """Largest singular value of a square (not necessarily Hermitian) matrix."""
    m = as_operator(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, ord=2))


def psd_sqrt(p, tol: float = PSD_TOL) -> np.ndarray:
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-tol, 0)`` are clamped to zero; anything more negative
    raises :class:`NegativeEigenvalue`.
    """
    spec = hermitian_eigensystem(p)
    lam = spec.eigenvalues
    if lam.size and lam[0] < -tol:
        raise NegativeEigenvalue(f"smallest eigenvalue {lam[0]:.3g} < -{tol}")
    root = np.sqrt(np.clip(lam, 0.0, None))
    v = spec.eigenvectors
    r = (v * root) @ v.conj().T
    return hermitian_part(r)


def inv_psd_sqrt(p, tol: float = 1e-12) -> np.ndarray:
    """Inverse square root of a positive definite matrix."""
    spec = hermitian_eigensystem(p)
    lam = spec.eigenvalues
    if lam[0] <= tol:
        raise NotPositive(f"matrix is singular (smallest eigenvalue {lam[0]:.3g})")
    v = spec.eigenvectors
    return hermitian_part((v / np.sqrt(lam)) @ v.conj().T)


def is_psd(p, tol: float = PSD_TOL) -> bool:
    return min_eigenvalue(p) >= -tol


def check_density(rho, tol: float = TRACE_TOL) -> np.ndarray:
    """Validate a density operator and return it as a complex array."""
    m = check_hermitian(rho)
    lam = eigenvalues(m)
    if lam[0] < -PSD_TOL:
        raise NotPositive(f"state has negative eigenvalue {lam[0]:.3g}")
    tr = np.trace(m).real
    if abs(tr - 1.0) > tol:
        raise NotPositive(f"state trace {tr!r} differs from 1")
    return m


def pure_state(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex).ravel()
    nrm = np.linalg.norm(v)
    if nrm == 0:
        raise ValueError("zero vector")
    v = v / nrm
    return np.outer(v, v.conj())


def tensor(a, b) -> np.ndarray:
    return np.kron(as_operator(a), as_operator(b))


def _split(t, dim_a: int, dim_b: int) -> np.ndarray:
    m = as_operator(t)
    if m.shape[0] != dim_a * dim_b:
        raise DimensionMismatch(
            f"operator of size {m.shape[0]} is not on a {dim_a}x{dim_b} product space"
        )
    return m.reshape(dim_a, dim_b, dim_a, dim_b)


def partial_trace_first(t, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the first tensor factor; the result acts on the second."""
    return np.einsum("ijik->jk", _split(t, dim_a, dim_b))


def partial_trace_second(t, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the second tensor factor; the result acts on the first."""
    return np.einsum("ijkj->ik", _split(t, dim_a, dim_b))


def commutator(a, b) -> np.ndarray:
    a, b = as_operator(a), as_operator(b)
    return a @ b - b @ a
