"""
Finite metric spaces of measurement outcomes.

A ball of *width* ``w`` around ``x`` is the set of outcomes within distance
``w / 2`` of ``x`` (widths are diameters, not radii).  Every width functional
in this package takes values on the finite grid returned by
:meth:`FiniteMetricSpace.candidate_widths`.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InvalidMetric, UnknownOutcome

BALL_SLACK = 1e-12
METRIC_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    labels: tuple
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = np.array(self.dist, dtype=float)
        n = len(self.labels)
        if d.shape != (n, n):
            raise InvalidMetric(f"distance matrix shape {d.shape} does not match {n} labels")
        if len(set(self.labels)) != n:
            raise InvalidMetric("outcome labels must be distinct")
        if n == 0:
            raise InvalidMetric("outcome set is empty")
        if not np.all(np.isfinite(d)):
            raise InvalidMetric("distances must be finite")
        if np.any(np.abs(np.diag(d)) > 0):
            raise InvalidMetric("d(x, x) must be 0")
        if np.any(np.abs(d - d.T) > METRIC_TOL):
            raise InvalidMetric("distance matrix is not symmetric")
        off = d[~np.eye(n, dtype=bool)]
        if np.any(off <= 0):
            raise InvalidMetric("distinct outcomes must have positive distance")
        # d[x, z] <= d[x, y] + d[y, z] for all triples
        via = d[:, :, None] + d[None, :, :]
        if np.any(d[:, None, :] > via + METRIC_TOL):
            raise InvalidMetric("triangle inequality violated")
        d = 0.5 * (d + d.T)
        d.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "dist", d)

    def __len__(self):
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.labels, self.dist.tobytes()))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def diameter(self) -> float:
        return float(self.dist.max())

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownOutcome(f"unknown outcome {label!r}") from None

    def _check_index(self, x: int) -> int:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.size:
            raise UnknownOutcome(f"outcome index {x!r} outside 0..{self.size - 1}")
        return int(x)

    def ball_mask(self, x: int, w: float) -> np.ndarray:
        x = self._check_index(x)
        if w < 0:
            raise ValueError("width must be non-negative")
        return self.dist[x] <= w / 2 + BALL_SLACK

    def ball(self, x: int, w: float) -> tuple[int, ...]:
        """Indices ``y`` with ``d(x, y) <= w / 2``."""
        return tuple(int(i) for i in np.flatnonzero(self.ball_mask(x, w)))

    def ball_masks(self, w: float) -> np.ndarray:
        """Boolean matrix whose row ``x`` is the ball of width ``w`` around ``x``."""
        if w < 0:
            raise ValueError("width must be non-negative")
        return self.dist <= w / 2 + BALL_SLACK

    def max_ball_cardinality(self, w: float) -> int:
        return int(self.ball_masks(w).sum(axis=1).max())

    def candidate_widths(self) -> np.ndarray:
        """Sorted distinct values ``{0} U {2 d(x, y)}``."""
        vals = np.unique(np.concatenate([[0.0], 2.0 * self.dist.ravel()]))
        keep = [vals[0]]
        for v in vals[1:]:
            if v - keep[-1] > BALL_SLACK * max(1.0, v):
                keep.append(v)
        return np.array(keep)


def explicit(matrix, labels: Sequence | None = None) -> FiniteMetricSpace:
    d = np.asarray(matrix, dtype=float)
    if labels is None:
        labels = tuple(range(d.shape[0]))
    return FiniteMetricSpace(tuple(labels), d)


def discrete(n: int) -> FiniteMetricSpace:
    if n < 1:
        raise InvalidMetric("need at least one outcome")
    return explicit(1.0 - np.eye(n))


def cyclic(n: int, scale: float = None) -> FiniteMetricSpace:
    """Points ``0..n-1`` on a circle; ``d(m, k) = scale * min(|m-k|, n-|m-k|)``.

    The default scale ``2*pi/n`` gives the torus lattice metric.
    """
    if n < 2:
        raise InvalidMetric("cyclic space needs n >= 2")
    if scale is None:
        scale = 2 * math.pi / n
    if scale <= 0:
        raise InvalidMetric("scale must be positive")
    i = np.arange(n)
    diff = np.abs(i[:, None] - i[None, :])
    steps = np.minimum(diff, n - diff)
    return explicit(scale * steps)


def hamming_rescaled(n: int) -> FiniteMetricSpace:
    """Bit strings of length ``n`` with ``d = d_Hamming / (2 n)``."""
    if n < 1:
        raise InvalidMetric("need at least one bit")
    words = list(itertools.product((0, 1), repeat=n))
    a = np.array(words)
    dh = (a[:, None, :] != a[None, :, :]).sum(axis=2)
    labels = tuple("".join(map(str, w)) for w in words)
    return explicit(dh / (2.0 * n), labels)


def line(points: Sequence[float]) -> FiniteMetricSpace:
    p = np.asarray(points, dtype=float)
    return explicit(np.abs(p[:, None] - p[None, :]))


def random_space(n: int, seed=None) -> FiniteMetricSpace:
    """Random metric on ``n`` points: shortest-path closure of random edge weights."""
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.2, 2.0, size=(n, n))
    d = np.triu(w, 1)
    d = d + d.T
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    np.fill_diagonal(d, 0.0)
    return explicit(d)
