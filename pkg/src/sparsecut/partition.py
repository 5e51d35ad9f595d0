"""Sweep cuts over walk trajectories: global bicriteria and local drivers.

The global driver runs an exact walk from every vertex and keeps the lowest
conductance level set under a volume cap of k^(1+eps); the local driver runs
one thresholded walk from a given seed, keeps level sets under 5*k^(1+eps),
and reports not-found when nothing beats the acceptance threshold
8*sqrt(phi/eps). All tie-breaking is total, so identical inputs always
return the identical outcome, including under parallel seed fan-out.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .curve import build_curve, evaluate
from .graph import Cut, Graph, cut_of, prefix_cut_profile
from .spectral import best_seed_vertex
from .walk import WalkSchedule, run_walk

__all__ = [
    "GlobalParams",
    "LocalParams",
    "Origin",
    "SweepOutcome",
    "sweep",
    "global_sparsest_cut",
    "global_sparsest_cut_tight_volume",
    "tight_volume_exponent",
    "local_partition",
    "find_local_seed",
]


@dataclass(frozen=True)
class GlobalParams:
    """Volume budget k, tradeoff exponent, and optional horizon override.

    The exponent is clamped to 0.01 for all derived quantities (cap and
    horizon); larger requests only tighten the returned volume, at the price
    of a constant factor in the conductance guarantee.
    """

    k: int
    epsilon: float
    horizon_override: int | None = None

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in (0, 1]")
        if self.horizon_override is not None and self.horizon_override < 0:
            raise ValueError("horizon_override must be nonnegative")

    @property
    def epsilon_effective(self) -> float:
        return min(self.epsilon, 0.01)

    @property
    def horizon(self) -> int:
        if self.horizon_override is not None:
            return self.horizon_override
        e = self.epsilon_effective
        return math.ceil(e * self.k**2 * math.log(self.k) / 4.0)

    @property
    def volume_cap(self) -> float:
        return float(self.k) ** (1.0 + self.epsilon_effective)


@dataclass(frozen=True)
class LocalParams:
    """Seed, budget k, conductance target phi, and tradeoff exponent eps.

    Derived: horizon ceil(eps * ln k / (2 phi)), walk threshold
    k^(-1-eps) / (20 * horizon), volume cap 5 * k^(1+eps), and acceptance
    threshold 8 * sqrt(phi / eps). The analysis regime is phi < 0.01, but
    any phi in (0, 1] is accepted and simply run.
    """

    seed: int
    k: int
    phi: float
    epsilon: float

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 0.0 < self.phi <= 1.0:
            raise ValueError("phi must lie in (0, 1]")
        if self.epsilon <= 2.0 / self.k:
            raise ValueError("epsilon must exceed 2/k")

    @property
    def horizon(self) -> int:
        return math.ceil(self.epsilon * math.log(self.k) / (2.0 * self.phi))

    @property
    def truncation(self) -> float:
        return float(self.k) ** (-1.0 - self.epsilon) / (20.0 * self.horizon)

    @property
    def volume_cap(self) -> float:
        return 5.0 * float(self.k) ** (1.0 + self.epsilon)

    @property
    def conductance_threshold(self) -> float:
        return 8.0 * math.sqrt(self.phi / self.epsilon)


@dataclass(frozen=True)
class Origin:
    """Where a sweep winner came from: start vertex, step, prefix length."""

    seed: int | None
    step: int
    prefix: int


@dataclass(eq=False)
class SweepOutcome:
    """Best cut of a sweep plus provenance and work accounting.

    ``best`` is None when no prefix fit the cap (or, for local runs, when
    nothing met the acceptance threshold) - a legitimate outcome, not an
    error. ``step_min_cut[t]`` records the (boundary, volume) pair of the
    lowest-conductance prefix under the cap at step t, for envelope
    instrumentation; ``curve_trace[t]`` the curve value at the traced x.
    """

    best: Cut | None
    origin: Origin | None
    work: int
    curve_trace: list[float] | None = None
    step_min_cut: list[tuple[int, int] | None] | None = None

    @property
    def found(self) -> bool:
        return self.best is not None


def _exact_le(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] * b[1] <= b[0] * a[1]


def _exact_lt(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] * b[1] < b[0] * a[1]


def _step_best(
    volumes: np.ndarray, boundaries: np.ndarray, vol_cap: float
) -> tuple[tuple[int, int], int] | None:
    """Lowest-conductance prefix under the cap: ((boundary, volume), j)."""
    within = volumes <= vol_cap
    if not within.any():
        return None
    vols = volumes[within]
    bnds = boundaries[within]
    phi = bnds / vols
    lead = float(phi.min())
    # floats pick a window of near-minimal prefixes, exact integer
    # comparison settles the order inside it
    close = np.flatnonzero(phi <= lead * (1.0 + 1e-12) + 1e-300)
    best = None
    for idx in close:
        cand = (int(bnds[idx]), int(vols[idx]))
        if best is None:
            best = (cand, int(idx))
            continue
        if _exact_lt(cand, best[0]) or (
            not _exact_lt(best[0], cand) and cand[1] < best[0][1]
        ):
            best = (cand, int(idx))
    pair, idx = best
    return pair, idx + 1


def sweep(
    g: Graph,
    trajectory: Sequence,
    vol_cap: float,
    *,
    trace_x: float | None = None,
) -> SweepOutcome:
    """Lowest-conductance level set across all steps of a trajectory.

    Ties break toward smaller volume, then earlier step, then shorter
    prefix. Work is taken from the trajectory when it carries accounting
    (a WalkTrace); the outcome records per-step minima and, if trace_x is
    given, the curve value there at every step.
    """
    if vol_cap < 1:
        raise ValueError("vol_cap must be at least 1")
    distributions = list(trajectory)
    if not distributions:
        raise ValueError("trajectory must be nonempty")
    work = int(getattr(trajectory, "total_work", 0))
    best_key: tuple[Fraction, int, int, int] | None = None
    step_min: list[tuple[int, int] | None] = []
    trace: list[float] | None = [] if trace_x is not None else None
    for t, dist in enumerate(distributions):
        curve = build_curve(g, dist)
        if trace is not None:
            trace.append(evaluate(curve, trace_x))
        volumes, boundaries = prefix_cut_profile(g, curve.vertex_order)
        found = _step_best(volumes, boundaries, vol_cap)
        if found is None:
            step_min.append(None)
            continue
        (bd, vol), j = found
        step_min.append((bd, vol))
        key = (Fraction(bd, vol), vol, t, j)
        if best_key is None or key < best_key:
            best_key = key
    if best_key is None:
        return SweepOutcome(
            best=None, origin=None, work=work, curve_trace=trace, step_min_cut=step_min
        )
    _, _, t, j = best_key
    order = build_curve(g, distributions[t]).vertex_order
    best = cut_of(g, order[:j])
    return SweepOutcome(
        best=best,
        origin=Origin(seed=None, step=t, prefix=j),
        work=work,
        curve_trace=trace,
        step_min_cut=step_min,
    )


def _candidate_key(outcome: SweepOutcome, seed: int):
    assert outcome.best is not None and outcome.origin is not None
    c = outcome.best
    return (c.exact, c.volume, outcome.origin.step, outcome.origin.prefix, seed)


def _global_seed_block(
    g: Graph, seeds: Sequence[int], horizon: int, cap: float
) -> tuple[tuple | None, Cut | None, Origin | None, int]:
    """Best candidate over a block of start vertices (worker task)."""
    schedule = WalkSchedule(horizon=horizon, truncation=0.0)
    best_key = None
    best_cut = None
    best_origin = None
    work = 0
    for seed in seeds:
        trace = run_walk(g, seed, schedule)
        outcome = sweep(g, trace, cap)
        work += outcome.work
        if not outcome.found:
            continue
        key = _candidate_key(outcome, seed)
        if best_key is None or key < best_key:
            best_key = key
            best_cut = outcome.best
            best_origin = replace(outcome.origin, seed=seed)
    return best_key, best_cut, best_origin, work


def global_sparsest_cut(
    g: Graph, params: GlobalParams, *, workers: int = 1
) -> SweepOutcome:
    """Exact-walk sweep from every start vertex under cap k^(1+eps).

    Whenever some set of volume at most k has conductance phi_k below the
    (effective) exponent, the winner satisfies
    conductance <= 4 * sqrt(phi_k / eps); the volume cap holds always.
    The per-seed reduction is order-insensitive, so worker count does not
    change the result.
    """
    if params.k > g.total_volume:
        raise ValueError("k exceeds the total volume")
    n = g.vertex_count
    horizon = params.horizon
    cap = params.volume_cap
    seeds = list(range(n))
    if workers <= 1 or n <= 1:
        blocks = [_global_seed_block(g, seeds, horizon, cap)]
    else:
        chunk = max(1, math.ceil(n / workers))
        parts = [seeds[i : i + chunk] for i in range(0, n, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(
                pool.map(
                    _global_seed_block,
                    [g] * len(parts),
                    parts,
                    [horizon] * len(parts),
                    [cap] * len(parts),
                )
            )
    best_key = None
    best_cut = None
    best_origin = None
    work = 0
    for key, cut, origin, block_work in blocks:
        work += block_work
        if key is not None and (best_key is None or key < best_key):
            best_key, best_cut, best_origin = key, cut, origin
    return SweepOutcome(best=best_cut, origin=best_origin, work=work)


def tight_volume_exponent(k: int, epsilon: float) -> float:
    """Reduced exponent eps / (2 ln k); makes k^(1+exponent) <= (1+eps)*k."""
    return epsilon / (2.0 * math.log(k))


def global_sparsest_cut_tight_volume(
    g: Graph, k: int, epsilon: float, *, workers: int = 1
) -> SweepOutcome:
    """Volume-tight variant: cap at most (1+eps)*k.

    Requires eps > 2 ln k / k and delegates to the main driver with the
    reduced exponent; the conductance guarantee relaxes to
    O(sqrt(phi_k * ln k / eps)).
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if epsilon <= 2.0 * math.log(k) / k:
        raise ValueError("epsilon must exceed 2 ln(k)/k")
    params = GlobalParams(k=k, epsilon=tight_volume_exponent(k, epsilon))
    return global_sparsest_cut(g, params, workers=workers)


def local_partition(g: Graph, params: LocalParams) -> SweepOutcome:
    """Thresholded walk from one seed; sweep under cap 5*k^(1+eps).

    Returns the best level set if its conductance is at most
    8*sqrt(phi/eps), else a not-found outcome (best None) that still carries
    the work done. Only the existence of a good seed is guaranteed; an
    arbitrary seed may legitimately come up empty.
    """
    if params.seed >= g.vertex_count:
        raise ValueError("seed out of range")
    schedule = WalkSchedule(horizon=params.horizon, truncation=params.truncation)
    trace = run_walk(g, params.seed, schedule)
    outcome = sweep(g, trace, params.volume_cap, trace_x=float(params.k))
    if outcome.found:
        outcome.origin = replace(outcome.origin, seed=params.seed)
        if outcome.best.conductance <= params.conductance_threshold:
            return outcome
    return SweepOutcome(
        best=None,
        origin=None,
        work=outcome.work,
        curve_trace=outcome.curve_trace,
        step_min_cut=outcome.step_min_cut,
    )


def find_local_seed(g: Graph, members, params: LocalParams) -> int:
    """Start vertex inside a known sparse set that makes the local run work.

    The set must be induced-connected with volume at most k and conductance
    at most phi; the returned vertex is the best retaining start at the
    local horizon.
    """
    target = cut_of(g, members)
    if target.volume > params.k:
        raise ValueError("set volume exceeds the budget k")
    if target.conductance > params.phi:
        raise ValueError("set conductance exceeds the target phi")
    vertex, _ = best_seed_vertex(g, members, params.horizon)
    return vertex
