"""Lazy random-walk steps, exact (dense) and mass-thresholded (sparse).

One step of the lazy walk keeps half the mass at each vertex and splits the
other half equally among its neighbors. The sparse variant zeroes any vertex
whose incoming mass falls strictly below threshold * degree after the step,
which keeps the support volume at most 1/threshold and makes per-step work
proportional to the volume of the current support.

The sparse step accumulates contributions per target vertex in the same
(ascending-neighbor) order as the dense step; skipped terms are exact zeros,
so as long as no truncation has fired the two paths agree bit for bit and
the thresholded walk never exceeds the exact one even in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .graph import Graph

__all__ = [
    "SparseDistribution",
    "WalkSchedule",
    "WalkTrace",
    "lazy_step",
    "truncated_step",
    "run_walk",
]


@dataclass(eq=False)
class SparseDistribution:
    """Walk state carrying only the vertices with surviving mass.

    ``support`` is sorted and unique; ``mass`` holds the matching positive
    values. ``size`` is the ambient vertex count.
    """

    support: np.ndarray
    mass: np.ndarray
    size: int

    def __post_init__(self) -> None:
        self.support = np.asarray(self.support, dtype=np.int64)
        self.mass = np.asarray(self.mass, dtype=np.float64)
        if self.support.shape != self.mass.shape:
            raise ValueError("support and mass lengths differ")

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "SparseDistribution":
        dense = np.asarray(dense, dtype=np.float64)
        support = np.flatnonzero(dense)
        return cls(support=support, mass=dense[support], size=dense.size)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.float64)
        out[self.support] = self.mass
        return out

    def total(self) -> float:
        return float(self.mass.sum())

    def support_volume(self, g: Graph) -> int:
        return int(g.degrees[self.support].sum())


@dataclass(frozen=True)
class WalkSchedule:
    """Horizon and truncation threshold for a walk; threshold 0 means exact."""

    horizon: int
    truncation: float = 0.0

    def __post_init__(self) -> None:
        if self.horizon < 0:
            raise ValueError("horizon must be nonnegative")
        if self.truncation < 0:
            raise ValueError("truncation threshold must be nonnegative")


def lazy_step(g: Graph, p: np.ndarray) -> np.ndarray:
    """One exact lazy step: result = p * W with W = (I + D^-1 A) / 2.

    Total mass is preserved up to roundoff. Vertices of degree zero keep all
    their mass.
    """
    p = np.asarray(p, dtype=np.float64)
    if p.shape != (g.vertex_count,):
        raise ValueError("distribution length does not match vertex count")
    rates = np.divide(p, g.degrees, out=np.zeros_like(p), where=g.degrees > 0)
    contrib = 0.5 * rates
    spread = np.bincount(
        g.indices,
        weights=np.repeat(contrib, g.degrees),
        minlength=g.vertex_count,
    )
    out = 0.5 * p + spread
    isolated = g.degrees == 0
    if isolated.any():
        out[isolated] += 0.5 * p[isolated]
    return out


def _gather_rows(g: Graph, vertices: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of the given vertices, in vertex order."""
    deg = g.degrees[vertices]
    total = int(deg.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offsets = np.zeros(vertices.size, dtype=np.int64)
    np.cumsum(deg[:-1], out=offsets[1:])
    pos = np.arange(total, dtype=np.int64) - np.repeat(offsets, deg)
    return g.indices[np.repeat(g.indptr[vertices], deg) + pos]


def truncated_step(
    g: Graph, dist: SparseDistribution, threshold: float
) -> tuple[SparseDistribution, SparseDistribution]:
    """One sparse lazy step followed by mass thresholding.

    Returns (stepped, kept): ``stepped`` is dist * W restricted to the
    support and its neighbors; ``kept`` zeroes every vertex whose stepped
    mass is strictly below threshold * degree (mass exactly at the threshold
    survives). Work is proportional to the volume of the support.
    Threshold 0 keeps everything, matching the exact step.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    sup = dist.support
    mass = dist.mass
    deg = g.degrees[sup]
    rates = np.divide(mass, deg, out=np.zeros_like(mass), where=deg > 0)
    contrib = 0.5 * rates
    targets = _gather_rows(g, sup)
    weights = np.repeat(contrib, deg)
    if targets.size:
        # bincount accumulates sequentially in arc order (ascending source),
        # exactly like the dense step's bincount; skipped sources contribute
        # exact zeros there, so untruncated walks agree bit for bit
        uniq, inverse = np.unique(targets, return_inverse=True)
        sums = np.bincount(inverse, weights=weights, minlength=uniq.size)
    else:
        uniq = np.empty(0, dtype=np.int64)
        sums = np.empty(0, dtype=np.float64)
    out_support = np.union1d(sup, uniq)
    out_mass = np.zeros(out_support.size, dtype=np.float64)
    # keep term first, then incoming sums: same add order as lazy_step
    keep_pos = np.searchsorted(out_support, sup)
    out_mass[keep_pos] = 0.5 * mass
    in_pos = np.searchsorted(out_support, uniq)
    out_mass[in_pos] += sums
    isolated = deg == 0
    if isolated.any():
        out_mass[keep_pos[isolated]] += 0.5 * mass[isolated]
    stepped = SparseDistribution(out_support, out_mass, dist.size)
    keep = out_mass >= threshold * g.degrees[out_support]
    kept = SparseDistribution(out_support[keep], out_mass[keep], dist.size)
    return stepped, kept


@dataclass(eq=False)
class WalkTrace:
    """Distributions p_0..p_T of one walk plus per-step work accounting.

    ``touched_volume[t-1]`` is the support volume that step t had to touch.
    Iterating or indexing the trace yields the distributions.
    """

    seed: int
    schedule: WalkSchedule
    distributions: list = field(default_factory=list)
    touched_volume: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.distributions)

    def __getitem__(self, t):
        return self.distributions[t]

    def __iter__(self) -> Iterator:
        return iter(self.distributions)

    @property
    def total_work(self) -> int:
        return int(sum(self.touched_volume))


def run_walk(g: Graph, seed: int, schedule: WalkSchedule) -> WalkTrace:
    """Walk from a single-vertex start for the scheduled number of steps.

    With truncation 0 the trace holds dense arrays and the walk is exact;
    otherwise it holds SparseDistributions with the threshold applied after
    every step (including to the start distribution).
    """
    if not (0 <= seed < g.vertex_count):
        raise ValueError("seed out of range")
    trace = WalkTrace(seed=seed, schedule=schedule)
    if schedule.truncation == 0.0:
        p = np.zeros(g.vertex_count, dtype=np.float64)
        p[seed] = 1.0
        trace.distributions.append(p)
        for _ in range(schedule.horizon):
            prev = trace.distributions[-1]
            trace.touched_volume.append(int(g.degrees[prev > 0].sum()))
            trace.distributions.append(lazy_step(g, prev))
        return trace
    start = SparseDistribution(
        np.array([seed], dtype=np.int64), np.array([1.0]), g.vertex_count
    )
    if 1.0 < schedule.truncation * g.degree(seed):
        start = SparseDistribution(
            np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64), g.vertex_count
        )
    trace.distributions.append(start)
    for _ in range(schedule.horizon):
        prev = trace.distributions[-1]
        trace.touched_volume.append(prev.support_volume(g))
        _, kept = truncated_step(g, prev, schedule.truncation)
        trace.distributions.append(kept)
    return trace
