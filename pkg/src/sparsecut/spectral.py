"""Restricted-walk eigenpairs and the retention certificates they imply.

For a connected vertex set S, the walk restricted to S has a positive
principal eigenvector. Writing lambda_S = 2 * (1 - spectral_radius), the
degree-weighted eigenvector yields a start distribution whose mass inside S
decays no faster than (1 - lambda_S/2)^t, and lambda_S never exceeds the
conductance of S. Both facts are checked here numerically, and the best
single-vertex start can be located by exhausting S.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, cut_of
from .walk import lazy_step

__all__ = [
    "LocalEigenpair",
    "CertificateReport",
    "ConvergenceError",
    "CertificateViolation",
    "restricted_eigenpair",
    "certify_lower_bound",
    "best_seed_vertex",
]


class ConvergenceError(RuntimeError):
    """Power iteration hit its iteration cap; carries the best estimate."""

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


class CertificateViolation(RuntimeError):
    """A certified inequality failed; indicates an implementation bug."""


@dataclass(eq=False)
class LocalEigenpair:
    """Smallest restricted-Laplacian eigenvalue with its walk seed.

    ``vector`` is the positive unit eigenvector over ``subset`` (sorted);
    ``seed_distribution`` is sqrt(degree) * vector normalized to sum 1.
    """

    subset: np.ndarray
    value: float
    vector: np.ndarray
    seed_distribution: np.ndarray


def _restricted_adjacency(g: Graph, subset) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    members = np.unique(np.asarray(list(subset), dtype=np.int64))
    if members.size == 0:
        raise ValueError("subset must be nonempty")
    if members[0] < 0 or members[-1] >= g.vertex_count:
        raise ValueError("vertex id out of range")
    if np.any(g.degrees[members] == 0):
        raise ValueError("zero-degree vertex: restricted walk matrix undefined")
    local = np.full(g.vertex_count, -1, dtype=np.int64)
    local[members] = np.arange(members.size)
    rows: list[np.ndarray] = []
    counts = np.zeros(members.size, dtype=np.int64)
    for i, v in enumerate(members):
        nb = local[g.neighbors(v)]
        nb = nb[nb >= 0]
        rows.append(nb)
        counts[i] = nb.size
    indptr = np.zeros(members.size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    indices = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
    return members, indptr, indices


def _induced_connected(size: int, indptr: np.ndarray, indices: np.ndarray) -> bool:
    if size <= 1:
        return True
    seen = np.zeros(size, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        for w in indices[indptr[v] : indptr[v + 1]]:
            if not seen[w]:
                seen[w] = True
                stack.append(int(w))
    return bool(seen.all())


def restricted_eigenpair(
    g: Graph,
    subset,
    tol: float = 1e-10,
    max_iterations: int = 1_000_000,
) -> LocalEigenpair:
    """Principal eigenpair of the walk restricted to a connected subset.

    Power iteration on the symmetrized restricted walk operator
    N = (I + D^-1/2 A_S D^-1/2) / 2, which shares eigenvectors with the
    restricted normalized Laplacian. Converges when successive Rayleigh
    quotients move by less than tol (relatively) and the residual infinity
    norm is below tol. Starting from the degree-square-root vector makes the
    Rayleigh quotient start at 1 - conductance(S)/2 and increase monotonely,
    so the reported value never exceeds conductance(S) + tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    members, indptr, indices = _restricted_adjacency(g, subset)
    if not _induced_connected(members.size, indptr, indices):
        raise ValueError(
            "subset induces a disconnected subgraph; "
            "compute one eigenpair per component instead"
        )
    deg = g.degrees[members].astype(np.float64)
    inv_sqrt = 1.0 / np.sqrt(deg)
    row_of_arc = np.repeat(np.arange(members.size), np.diff(indptr))

    def operator(vec: np.ndarray) -> np.ndarray:
        scaled = vec * inv_sqrt
        if indices.size:
            incoming = np.bincount(
                row_of_arc, weights=scaled[indices], minlength=members.size
            )
        else:
            incoming = np.zeros(members.size)
        return 0.5 * vec + 0.5 * (inv_sqrt * incoming)

    y = np.sqrt(deg)
    y /= np.linalg.norm(y)
    rho_prev = -np.inf
    rho = 0.0
    for _ in range(max_iterations):
        z = operator(y)
        rho = float(y @ z)
        residual = float(np.max(np.abs(z - rho * y)))
        if abs(rho - rho_prev) < tol * max(1.0, abs(rho)) and residual < tol:
            break
        rho_prev = rho
        norm = np.linalg.norm(z)
        if norm == 0.0:
            raise ConvergenceError("iterate collapsed to zero", 2.0 * (1.0 - rho))
        y = z / norm
    else:
        raise ConvergenceError(
            f"no convergence within {max_iterations} iterations",
            2.0 * (1.0 - rho),
        )
    if np.any(y <= 0):
        raise ConvergenceError("eigenvector lost positivity", 2.0 * (1.0 - rho))
    lam = 2.0 * (1.0 - rho)
    seed = y * np.sqrt(deg)
    seed /= seed.sum()
    return LocalEigenpair(subset=members, value=lam, vector=y, seed_distribution=seed)


@dataclass(eq=False)
class CertificateReport:
    """Per-step slack of the retention lower bound, nonnegative up to tol.

    ``mass_margins[t]`` = mass(S at step t) - (1 - lambda/2)^t.
    ``component_margins[t]`` = min over v in S of
    p_t(v) - (1 - lambda/2)^t * p_0(v).
    """

    eigenpair: LocalEigenpair
    conductance: float
    horizon: int
    mass_margins: np.ndarray
    component_margins: np.ndarray


def certify_lower_bound(
    g: Graph, subset, horizon: int, tol: float = 1e-10
) -> CertificateReport:
    """Run the exact walk from the eigenvector seed and check retention.

    Asserts, for every t <= horizon, that the mass kept inside the subset is
    at least (1 - lambda/2)^t - tol, componentwise and in aggregate. A
    failure raises CertificateViolation: the inequality is unconditional, so
    it can only mean a bug.
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    # eigenpair residual enters the margins scaled by roughly horizon, so
    # solve it well below the reporting tolerance
    pair = restricted_eigenpair(g, subset, tol=min(1e-13, tol / 100))
    members = pair.subset
    phi = cut_of(g, members).conductance
    p = np.zeros(g.vertex_count, dtype=np.float64)
    p[members] = pair.seed_distribution
    decay = 1.0 - pair.value / 2.0
    mass_margins = np.empty(horizon + 1)
    component_margins = np.empty(horizon + 1)
    factor = 1.0
    for t in range(horizon + 1):
        inside = p[members]
        mass_margins[t] = inside.sum() - factor
        component_margins[t] = float(np.min(inside - factor * pair.seed_distribution))
        if t < horizon:
            p = lazy_step(g, p)
            factor *= decay
    worst = min(mass_margins.min(), component_margins.min())
    if worst < -tol:
        raise CertificateViolation(
            f"retention bound violated by {-worst:.3e} (tol {tol:.1e})"
        )
    return CertificateReport(
        eigenpair=pair,
        conductance=phi,
        horizon=horizon,
        mass_margins=mass_margins,
        component_margins=component_margins,
    )


def best_seed_vertex(g: Graph, subset, horizon: int) -> tuple[int, float]:
    """Single start vertex in the subset retaining the most mass at horizon.

    Tries every vertex of the subset with an exact walk and returns the
    maximizer (smallest id on ties) with the retained mass. The maximizer is
    guaranteed at least (1 - conductance(S)/2)^horizon, which is asserted.
    """
    members, indptr, indices = _restricted_adjacency(g, subset)
    if not _induced_connected(members.size, indptr, indices):
        raise ValueError("subset induces a disconnected subgraph")
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    best_vertex = -1
    best_value = -1.0
    for v in members:
        p = np.zeros(g.vertex_count, dtype=np.float64)
        p[v] = 1.0
        for _ in range(horizon):
            p = lazy_step(g, p)
        value = float(p[members].sum())
        if value > best_value:
            best_vertex, best_value = int(v), value
    phi = cut_of(g, members).conductance
    bound = (1.0 - phi / 2.0) ** horizon
    if best_value < bound - max(1e-12, 1e-9 * bound):
        raise CertificateViolation(
            f"best start retains {best_value:.6e} < guaranteed {bound:.6e}"
        )
    return best_vertex, best_value
