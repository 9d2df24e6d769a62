"""
Overall width, error-bar width, localization error and binary entropy.

Both width functionals are infima over ``w > 0`` of conditions that are
monotone in ``w``; on a finite space the infimum is attained on the grid
``space.candidate_widths()``, so they are evaluated by scanning that grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import operator_core as oc
from .errors import IncompatibleSpaces
from .observables import Povm, ProbabilityDistribution, Pvm

CONF_SLACK = 1e-12


@dataclass(frozen=True)
class WidthResult:
    width: float
    epsilon: float
    achieving_outcome: int | None
    worst_case_probability: float

    def __float__(self):
        return self.width


def _check_eps(eps: float) -> None:
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {eps}")


def overall_width(p: ProbabilityDistribution, eps: float) -> WidthResult:
    """Smallest width of a ball carrying probability at least ``1 - eps``.

    ``achieving_outcome`` is the centre of the first such ball and
    ``worst_case_probability`` the mass it carries.
    """
    _check_eps(eps)
    space = p.space
    target = 1.0 - eps - CONF_SLACK
    for w in space.candidate_widths():
        masses = space.ball_masks(w).astype(float) @ p.weights
        x = int(np.argmax(masses))
        if masses[x] >= target:
            return WidthResult(float(w), eps, x, float(masses[x]))
    # unreachable: the widest ball is the whole space
    raise AssertionError("no ball reaches the requested confidence")


def worst_case_mass(m1: Povm, e: Pvm, x: int, w: float) -> float:
    """Minimum of ``tr(rho M1(ball(x, w)))`` over states supported in range(E_x)."""
    v = e.range_basis(x)
    if v.shape[1] == 0:
        return 1.0
    mask = m1.space.ball_mask(x, w)
    comp = v.conj().T @ m1.effect(mask) @ v
    return oc.min_eigenvalue(oc.hermitian_part(comp))


def errorbar_width(m1: Povm, e: Pvm, eps: float) -> WidthResult:
    """Error-bar width of ``m1`` relative to the sharp observable ``e``.

    For every outcome ``x`` with ``E_x != 0``, finds the smallest grid width
    ``w`` such that every state localized on ``x`` by ``e`` gives ``m1``
    probability at least ``1 - eps`` inside ``ball(x, w)``; the result is the
    maximum over ``x``.  The worst state is the bottom eigenvector of the
    compression of ``M1(ball(x, w))`` to range(E_x).
    """
    _check_eps(eps)
    if m1.space != e.space:
        raise IncompatibleSpaces("approximating and target observables use different outcome spaces")
    if m1.dim != e.dim:
        raise IncompatibleSpaces(f"POVM dimensions differ: {m1.dim} vs {e.dim}")
    space = e.space
    grid = space.candidate_widths()
    target = 1.0 - eps - CONF_SLACK
    best = WidthResult(0.0, eps, None, 1.0)
    for x in range(space.size):
        v = e.range_basis(x)
        if v.shape[1] == 0:
            continue
        for w in grid:
            comp = v.conj().T @ m1.effect(space.ball_mask(x, w)) @ v
            q = oc.min_eigenvalue(oc.hermitian_part(comp))
            if q >= target:
                break
        if best.achieving_outcome is None or w > best.width:
            best = WidthResult(float(w), eps, x, float(q))
    return best


def localization_error(p: ProbabilityDistribution) -> float:
    return float(1.0 - p.weights.max())


def binary_entropy(w: float) -> float:
    """Base-2 binary entropy with ``h(0) = h(1) = 0``."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"binary entropy needs w in [0, 1], got {w}")
    if w == 0.0 or w == 1.0:
        return 0.0
    return -w * math.log2(w) - (1 - w) * math.log2(1 - w)
