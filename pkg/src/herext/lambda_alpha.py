"""The generalised spectral parameter of a single graph.

For alpha >= 1, the parameter is the maximum of x^T A x over nonnegative
vectors with sum(x_u^alpha) = 1.  At alpha = 1 the maximum is attained on a
maximum clique and equals 1 - 1/omega, computed exactly; at alpha = 2 it is
the adjacency spectral radius.  For general alpha the value comes from
projected-ascent restarts; first-order residuals certify stationarity.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from herext import kernels
from herext.graphs import Graph, maximum_clique

DEFAULT_SEED = 1729
DEFAULT_RESTARTS = 16
DEFAULT_MAX_ITER = 100_000
KKT_TOL = 1e-8

_ALPHA_SNAP = 1e-9
_INDICATOR_SMOOTHING = 1e-3


@dataclass(frozen=True)
class AlphaWeightVector:
    """A nonnegative weighting with sum of alpha-th powers equal to 1."""

    entries: tuple[float, ...]
    alpha: float

    def norm_defect(self) -> float:
        return abs(sum(abs(x) ** self.alpha for x in self.entries) - 1.0)


@dataclass(frozen=True)
class LambdaResult:
    """Outcome of one parameter computation.

    ``kkt_residual`` is the largest first-order stationarity violation over
    the support of ``vector``; ``converged`` means it is within tolerance.
    ``value_exact`` is set only on the exact alpha = 1 route.
    """

    value: float
    vector: AlphaWeightVector
    kkt_residual: float
    restarts_used: int
    iterations: int
    converged: bool
    value_exact: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        exact = self.value_exact
        return {
            "value": self.value,
            "vector": list(self.vector.entries),
            "alpha": self.vector.alpha,
            "kkt_residual": self.kkt_residual,
            "restarts_used": self.restarts_used,
            "iterations": self.iterations,
            "converged": self.converged,
            "value_exact": None if exact is None else f"{exact.numerator}/{exact.denominator}",
        }


def _check_alpha(alpha: float) -> None:
    if not np.isfinite(alpha) or alpha < 1.0:
        raise ValueError(f"alpha must be a finite real >= 1, got {alpha}")


def lambda_one(g: Graph, cross_check: bool = False) -> LambdaResult:
    """Exact alpha = 1 value: 1 - 1/omega, witnessed by a uniform clique.

    With ``cross_check`` the numerical optimiser is run just above alpha = 1
    and must agree loosely; disagreement would mean an internal bug, so it
    raises rather than returning.
    """
    if g.n == 0:
        return LambdaResult(0.0, AlphaWeightVector((), 1.0), 0.0, 0, 0, True, Fraction(0))
    clique = maximum_clique(g)
    w = len(clique)
    exact = Fraction(w - 1, w)
    if cross_check:
        near = lambda_alpha(g, 1.0 + 1e-6)
        if abs(near.value - float(exact)) > 1e-2:
            raise ArithmeticError(
                f"clique value {float(exact)} and optimiser value {near.value} disagree"
            )
    entries = [0.0] * g.n
    for u in clique:
        entries[u] = 1.0 / w
    # First-order check at this witness: on the support, each (Ax)_u equals
    # (w-1)/w, which is the value itself, so the residual is exactly 0.
    return LambdaResult(
        value=float(exact),
        vector=AlphaWeightVector(tuple(entries), 1.0),
        kkt_residual=0.0,
        restarts_used=0,
        iterations=0,
        converged=True,
        value_exact=exact,
    )


def _starting_points(g: Graph, restarts: int, seed: int) -> list[np.ndarray]:
    """Deterministic ascent starts: uniform, one per vertex, then random."""
    n = g.n
    isolated = g.isolated_mask()
    active = np.array([not (isolated >> u & 1) for u in range(n)], dtype=bool)
    starts = [active.astype(np.float64)]
    for v in range(n):
        if not active[v]:
            continue
        x = np.where(active, _INDICATOR_SMOOTHING, 0.0)
        x[v] = 1.0
        starts.append(x)
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        x = rng.random(n) + 1e-6
        x[~active] = 0.0
        starts.append(x)
    return starts


def lambda_alpha(
    g: Graph,
    alpha: float,
    *,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = DEFAULT_SEED,
    max_iter: int = DEFAULT_MAX_ITER,
    kkt_tol: float = KKT_TOL,
    threads: int = 1,
) -> LambdaResult:
    """Best value over multi-start projected ascent.

    The run is deterministic for fixed arguments: the start list depends only
    on the graph, ``restarts`` and ``seed``, and ties between starts keep the
    earliest.  ``threads`` only parallelises independent starts.
    """
    _check_alpha(alpha)
    if restarts < 0:
        raise ValueError("restarts must be >= 0")
    if abs(alpha - 1.0) <= _ALPHA_SNAP:
        return lambda_one(g)
    if abs(alpha - 2.0) <= _ALPHA_SNAP:
        alpha = 2.0
    if g.n == 0:
        return LambdaResult(0.0, AlphaWeightVector((), alpha), 0.0, 0, 0, True)
    if g.edge_count() == 0:
        x = np.full(g.n, g.n ** (-1.0 / alpha))
        return LambdaResult(0.0, AlphaWeightVector(tuple(x), alpha), 0.0, 0, 0, True)

    adj = g.adjacency_matrix()
    starts = _starting_points(g, restarts, seed)

    def run(x0: np.ndarray):
        return kernels.ascent(adj, alpha, x0, max_iter=max_iter, kkt_tol=kkt_tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = [run(x0) for x0 in starts]

    best = max(range(len(outcomes)), key=lambda i: outcomes[i][0])
    value, x, kkt, _, converged = outcomes[best]
    total_iters = sum(o[3] for o in outcomes)
    return LambdaResult(
        value=float(value),
        vector=AlphaWeightVector(tuple(float(t) for t in x), alpha),
        kkt_residual=float(kkt),
        restarts_used=len(starts),
        iterations=int(total_iters),
        converged=bool(converged),
    )


def lambda_lower_bound(g: Graph, alpha: float) -> float:
    """2 e(G) / n^(2/alpha): the value of the uniform weighting."""
    _check_alpha(alpha)
    if g.n == 0:
        raise ValueError("lower bound needs at least one vertex")
    return 2.0 * g.edge_count() / g.n ** (2.0 / alpha)


def spectral_radius(g: Graph, tol: float = 1e-10) -> float:
    """Adjacency spectral radius by shifted power iteration.

    Independent of the ascent optimiser; used to cross-check alpha = 2.
    """
    if g.n == 0:
        return 0.0
    if g.edge_count() == 0:
        return 0.0
    return kernels.power_iteration(g.adjacency_matrix(), tol=tol)
