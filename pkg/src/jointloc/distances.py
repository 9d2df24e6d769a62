"""
Distances between POVMs on a common finite metric space.

``linf_distance`` is the largest effect-wise operator-norm difference.
``werner_distance`` is the Monge-type distance

    D_W(F1, F2) = sup_{f 1-Lipschitz} || sum_x f(x) (F1_x - F2_x) ||.

Because both arguments sum to the identity, adding a constant to ``f``
changes nothing, so ``f`` is pinned to 0 at the first outcome.  The pinned
Lipschitz ball is then a bounded polytope and the norm is convex in ``f``;
the supremum sits at a vertex.  ``method="exact"`` enumerates the vertices;
``method="alternating"`` alternates a top-eigenvector step with an exact
Kantorovich-Rubinstein step (a linear program over the Lipschitz ball).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import linprog

from . import operator_core as oc
from .errors import IncompatibleSpaces, UnbalancedMeasure, VertexEnumerationTooLarge
from .metric_space import FiniteMetricSpace
from .observables import Povm

MAX_EXACT_OUTCOMES = 6
LIP_TOL = 1e-12


@dataclass(frozen=True)
class DistanceResult:
    """Distance value with a certificate ``(function, vector)``.

    ``function`` is the real function on outcomes and ``vector`` the unit
    vector for which ``<vector|(F1 - F2)(function)|vector>`` reproduces
    ``value``.  ``gap_bound`` is 0 for exact results, the observed gap to the
    exact value for certified heuristic runs, and ``None`` when uncertified.
    """

    value: float
    method: str
    function: np.ndarray
    vector: np.ndarray
    gap_bound: float | None = 0.0
    outcome: int | None = None

    def certificate_value(self, f1: Povm, f2: Povm) -> float:
        d = f1.smear(self.function) - f2.smear(self.function)
        v = self.vector
        return float(abs(np.vdot(v, d @ v)))


def _check_pair(f1: Povm, f2: Povm) -> None:
    if f1.space != f2.space:
        raise IncompatibleSpaces("POVMs live on different outcome spaces")
    if f1.dim != f2.dim:
        raise IncompatibleSpaces(f"POVM dimensions differ: {f1.dim} vs {f2.dim}")


def linf_distance(f1: Povm, f2: Povm) -> DistanceResult:
    _check_pair(f1, f2)
    best = (-1.0, 0, None)
    for x, diff in enumerate(f1.elements - f2.elements):
        spec = oc.hermitian_eigensystem(diff)
        lam = spec.eigenvalues
        k = 0 if abs(lam[0]) > abs(lam[-1]) else -1
        if abs(lam[k]) > best[0]:
            best = (abs(float(lam[k])), x, spec.eigenvectors[:, k])
    value, x, vec = best
    indicator = np.zeros(f1.space.size)
    indicator[x] = 1.0
    return DistanceResult(value, "exact", indicator, vec, 0.0, x)


# -- Kantorovich-Rubinstein step ------------------------------------------


def is_lipschitz(f, space: FiniteMetricSpace, tol: float = LIP_TOL) -> bool:
    f = np.asarray(f, dtype=float)
    return bool(np.all(np.abs(f[:, None] - f[None, :]) <= space.dist + tol))


def _snap_to_tight_tree(f: np.ndarray, space: FiniteMetricSpace) -> np.ndarray:
    """Recompute ``f`` exactly from distance sums along its tight constraints."""
    d = space.dist
    n = len(f)
    diff = f[:, None] - f[None, :]
    tight_up = np.abs(diff - d) <= 1e-9  # f_i - f_j = d_ij
    snapped = np.array(f)
    snapped[0] = 0.0
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j in seen:
                continue
            if tight_up[j, i]:
                snapped[j] = snapped[i] + d[j, i]
            elif tight_up[i, j]:
                snapped[j] = snapped[i] - d[i, j]
            else:
                continue
            seen.add(j)
            queue.append(j)
    if len(seen) == n and is_lipschitz(snapped, space):
        return snapped
    return f


def kantorovich_value(mu, space: FiniteMetricSpace) -> tuple[float, np.ndarray]:
    """Maximize ``sum_x f(x) mu(x)`` over 1-Lipschitz ``f`` with ``f(x0) = 0``.

    ``mu`` must have zero total mass; the optimum equals the optimal
    transport cost between its positive and negative parts.
    """
    mu = np.asarray(mu, dtype=float)
    n = space.size
    if mu.shape != (n,):
        raise IncompatibleSpaces("measure does not match the outcome space")
    if abs(mu.sum()) > 1e-10:
        raise UnbalancedMeasure(f"signed measure has total mass {mu.sum():.3g}")
    mu = mu - mu.mean()
    if n == 1 or not np.any(mu):
        return 0.0, np.zeros(n)
    rows, rhs = [], []
    for i, j in itertools.permutations(range(n), 2):
        row = np.zeros(n)
        row[i], row[j] = 1.0, -1.0
        rows.append(row)
        rhs.append(space.dist[i, j])
    bounds = [(0.0, 0.0)] + [(None, None)] * (n - 1)
    res = linprog(
        -mu, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds, method="highs-ds"
    )
    if res.status != 0:
        raise RuntimeError(f"Kantorovich LP failed: {res.message}")
    f = _snap_to_tight_tree(np.asarray(res.x, dtype=float), space)
    return float(mu @ f), f


# -- vertices of the pinned Lipschitz polytope -----------------------------


def _prufer_trees(n: int):
    """All labelled spanning trees of K_n as edge lists (Cayley: n^(n-2))."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for s in seq:
            degree[s] += 1
        edges = []
        for s in seq:
            leaf = degree.index(1)
            edges.append((leaf, s))
            degree[leaf] -= 1
            degree[s] -= 1
        u, v = [i for i in range(n) if degree[i] == 1]
        edges.append((u, v))
        yield edges


@lru_cache(maxsize=64)
def lipschitz_vertices(space: FiniteMetricSpace) -> np.ndarray:
    """Vertices of ``{f : f(x0) = 0, |f(x) - f(y)| <= d(x, y)}``.

    A vertex has ``n - 1`` independent tight constraints ``f(x) - f(y) =
    +-d(x, y)``, i.e. a spanning tree of tight edges with orientations.  Every
    tree and sign pattern is expanded and the feasible results kept.
    """
    n = space.size
    if n > MAX_EXACT_OUTCOMES:
        raise VertexEnumerationTooLarge(
            f"vertex enumeration limited to {MAX_EXACT_OUTCOMES} outcomes, got {n}"
        )
    d = space.dist
    if n == 1:
        return np.zeros((1, 1))
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=n - 1)))
    found = []
    for edges in _prufer_trees(n):
        adj = {i: [] for i in range(n)}
        for k, (u, v) in enumerate(edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        f = np.zeros((len(signs), n))
        seen = {0}
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j, k in adj[i]:
                if j not in seen:
                    f[:, j] = f[:, i] + signs[:, k] * d[i, j]
                    seen.add(j)
                    queue.append(j)
        gaps = np.abs(f[:, :, None] - f[:, None, :]) - d[None]
        found.append(f[np.all(gaps <= LIP_TOL, axis=(1, 2))])
    verts = np.concatenate(found)
    _, idx = np.unique(np.round(verts / 1e-9).astype(np.int64), axis=0, return_index=True)
    out = verts[np.sort(idx)]
    out.setflags(write=False)
    return out


def _top_eig(h: np.ndarray) -> tuple[float, np.ndarray]:
    spec = oc.hermitian_eigensystem(h)
    return float(spec.eigenvalues[-1]), spec.eigenvectors[:, -1]


def _werner_exact(diff: np.ndarray, space: FiniteMetricSpace) -> DistanceResult:
    verts = lipschitz_vertices(space)
    smeared = np.tensordot(verts, diff, axes=1)
    smeared = 0.5 * (smeared + smeared.conj().transpose(0, 2, 1))
    top = np.linalg.eigvalsh(smeared)[:, -1]
    k = int(np.argmax(top))
    # the vertex set is symmetric under f -> -f, so the largest top eigenvalue
    # is the largest absolute eigenvalue
    f = np.array(verts[k])
    value, vec = _top_eig(np.tensordot(f, diff, axes=1))
    return DistanceResult(value, "exact", f, vec, 0.0)


def _werner_alternating(
    diff: np.ndarray,
    space: FiniteMetricSpace,
    seed,
    restarts: int,
    max_iter: int,
    tol: float,
) -> DistanceResult:
    rng = np.random.default_rng(seed)
    dim = diff.shape[-1]
    best = None
    for _ in range(restarts):
        psi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        psi /= np.linalg.norm(psi)
        prev = -np.inf
        for _ in range(max_iter):
            mu = np.einsum("i,xij,j->x", psi.conj(), diff, psi).real
            _, f = kantorovich_value(mu - mu.mean(), space)
            value, psi = _top_eig(np.tensordot(f, diff, axes=1))
            if value - prev < tol:
                break
            prev = value
        if best is None or value > best[0]:
            best = (value, f, psi)
    value, f, psi = best
    return DistanceResult(float(value), "alternating", f, psi, None)


def werner_distance(
    f1: Povm,
    f2: Povm,
    method: str = "exact",
    seed=0,
    restarts: int = 20,
    max_iter: int = 500,
    tol: float = 1e-10,
) -> DistanceResult:
    """Werner's geometric distance between two POVMs.

    ``method="exact"`` requires at most six outcomes.  ``method="alternating"``
    returns a lower bound; when the space is small enough for the exact
    method, ``gap_bound`` records ``exact - value``.
    """
    _check_pair(f1, f2)
    diff = f1.elements - f2.elements
    space = f1.space
    if method == "exact":
        return _werner_exact(diff, space)
    if method != "alternating":
        raise ValueError(f"unknown method {method!r}")
    res = _werner_alternating(diff, space, seed, restarts, max_iter, tol)
    if space.size <= MAX_EXACT_OUTCOMES:
        exact = _werner_exact(diff, space).value
        res = DistanceResult(
            res.value, res.method, res.function, res.vector, max(exact - res.value, 0.0)
        )
    return res
