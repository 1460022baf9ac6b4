"""Pure-Python kernels: canonical labeling, induced-subgraph search, maximum
clique, the alpha-sphere ascent loop and adjacency power iteration.

This module is the fallback backend; `herext._ckernel` is the compiled twin
with identical semantics.  Graphs enter as bitset adjacency rows (``rows[u]``
has bit ``v`` set iff ``uv`` is an edge), numeric kernels take dense float64
adjacency matrices.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

_SUPPORT_EPS = 1e-12
_TRUNCATE_EPS = 1e-11


def canonical_rows(rows: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Adjacency rows of the lexicographically minimal relabeling of the graph.

    Minimality is over the column-major upper-triangle bit string, i.e. the
    same bit order used by the graph6 encoding, so equal outputs certify
    isomorphism.  Exhaustive branch-and-bound over vertex orderings, pruned by
    prefix comparison against the incumbent and by skipping twin vertices
    (swapping twins is an automorphism).
    """
    if n <= 1:
        return (0,) * n
    best_col: list[int | None] = [None] * n
    best_perm: list[int] | None = None
    perm = [0] * n
    used = [False] * n

    def twins(u: int, v: int) -> bool:
        return (rows[u] & ~(1 << v)) == (rows[v] & ~(1 << u))

    def search(k: int) -> None:
        nonlocal best_perm
        if k == n:
            best_perm = perm.copy()
            return
        cand = []
        for v in range(n):
            if used[v]:
                continue
            c = 0
            for i in range(k):
                c = (c << 1) | ((rows[perm[i]] >> v) & 1)
            cand.append((c, v))
        cand.sort()
        tried: list[tuple[int, int]] = []
        for c, v in cand:
            bk = best_col[k]
            if bk is not None and c > bk:
                break
            skip = False
            for cu, u in tried:
                if cu == c and twins(u, v):
                    skip = True
                    break
            if skip:
                continue
            if bk is None or c < bk:
                best_col[k] = c
                for j in range(k + 1, n):
                    best_col[j] = None
            used[v] = True
            perm[k] = v
            search(k + 1)
            used[v] = False
            tried.append((c, v))

    search(0)
    assert best_perm is not None
    out = [0] * n
    for i in range(n):
        ri = rows[best_perm[i]]
        m = 0
        for j in range(n):
            if (ri >> best_perm[j]) & 1:
                m |= 1 << j
        out[i] = m
    return tuple(out)


def contains_induced(
    grows: tuple[int, ...],
    gn: int,
    hrows: tuple[int, ...],
    hn: int,
    forced: int = -1,
) -> bool:
    """True iff some vertex subset of g induces a copy of h.

    Backtracking over injective maps h -> g; a partial map survives only if
    adjacency AND non-adjacency are both preserved (induced embedding).  With
    ``forced >= 0`` the image must contain that g-vertex, which is what the
    enumeration engine needs when only the freshly added vertex can create a
    new forbidden copy.
    """
    if hn == 0:
        return True
    if hn > gn:
        return False
    gdeg = [grows[v].bit_count() for v in range(gn)]
    hdeg = [hrows[u].bit_count() for u in range(hn)]

    def order_from(u0: int) -> list[int]:
        order = [u0]
        placed = 1 << u0
        while len(order) < hn:
            bestu, bestkey = -1, (-1, -1)
            for u in range(hn):
                if (placed >> u) & 1:
                    continue
                key = ((hrows[u] & placed).bit_count(), hdeg[u])
                if key > bestkey:
                    bestkey, bestu = key, u
            order.append(bestu)
            placed |= 1 << bestu
        return order

    def embed(order: list[int], img0: int) -> bool:
        img = [0] * hn

        def rec(t: int, used_g: int) -> bool:
            if t == hn:
                return True
            u = order[t]
            ru = hrows[u]
            if t == 0 and img0 >= 0:
                cands = (img0,)
            else:
                cands = range(gn)
            for v in cands:
                if (used_g >> v) & 1 or gdeg[v] < hdeg[u]:
                    continue
                ok = True
                rv = grows[v]
                for s in range(t):
                    if ((ru >> order[s]) & 1) != ((rv >> img[s]) & 1):
                        ok = False
                        break
                if ok:
                    img[t] = v
                    if rec(t + 1, used_g | (1 << v)):
                        return True
            return False

        return rec(0, 0)

    if forced < 0:
        u0 = max(range(hn), key=lambda u: hdeg[u])
        return embed(order_from(u0), -1)
    return any(embed(order_from(u0), forced) for u0 in range(hn))


def max_clique(rows: tuple[int, ...], n: int) -> tuple[int, int]:
    """Exact maximum clique: returns (size, bitmask of one maximum clique).

    Branch and bound with a greedy pivot (Bron-Kerbosch style: branch only on
    candidates outside the pivot's neighborhood).
    """
    if n == 0:
        return 0, 0
    best_size = 0
    best_mask = 0

    def expand(rmask: int, rsize: int, p: int) -> None:
        nonlocal best_size, best_mask
        if p == 0:
            if rsize > best_size:
                best_size, best_mask = rsize, rmask
            return
        if rsize + p.bit_count() <= best_size:
            return
        pivot, bestcnt = -1, -1
        m = p
        while m:
            u = (m & -m).bit_length() - 1
            c = (p & rows[u]).bit_count()
            if c > bestcnt:
                bestcnt, pivot = c, u
            m &= m - 1
        ext = p & ~rows[pivot]
        while ext:
            v = (ext & -ext).bit_length() - 1
            expand(rmask | (1 << v), rsize + 1, p & rows[v])
            p &= ~(1 << v)
            ext &= ext - 1

    expand(0, 0, (1 << n) - 1)
    return best_size, best_mask


def _proj(x: np.ndarray, alpha: float) -> np.ndarray:
    if alpha == 2.0:
        s = math.sqrt(float(x @ x))
    else:
        s = float(np.sum(x**alpha)) ** (1.0 / alpha)
    return x / s


def _kkt_residual(x: np.ndarray, ax: np.ndarray, f: float, alpha: float) -> float:
    sup = x > _SUPPORT_EPS
    if not sup.any():
        return 0.0
    if alpha == 2.0:
        pw = x[sup]
    else:
        pw = x[sup] ** (alpha - 1.0)
    return float(np.abs(2.0 * ax[sup] - 2.0 * f * pw).max())


def _tangent_gradient(x: np.ndarray, ax: np.ndarray, f: float, alpha: float) -> np.ndarray:
    """Gradient of the objective projected along the constraint normal.

    The direction 2(Ax - f x^(alpha-1)) has first-order effect ||r||^2 on the
    rescaled objective, so it is an ascent direction everywhere off
    stationarity; the raw gradient 2Ax is not (its retraction derivative is
    <g, r>, which can vanish or go negative at non-stationary points).
    """
    pw = x if alpha == 2.0 else x ** (alpha - 1.0)
    return 2.0 * (ax - f * pw)


def _ascent_loop(
    adj: np.ndarray,
    alpha: float,
    x: np.ndarray,
    max_iter: int,
    kkt_tol: float,
) -> tuple[np.ndarray, np.ndarray, float, float, int, bool]:
    ax = adj @ x
    f = float(x @ ax)
    kkt = _kkt_residual(x, ax, f, alpha)
    if kkt <= kkt_tol:
        return x, ax, f, kkt, 0, True
    row_scale = float(adj.sum(axis=1).max())
    eta = 0.5 / max(1.0, row_scale)
    it = 0
    converged = False
    while it < max_iter:
        g = _tangent_gradient(x, ax, f, alpha)
        e = eta
        accepted = False
        y = x
        ay = ax
        fy = f
        for _ in range(64):
            y = np.maximum(x + e * g, 0.0)
            if y.any():
                y = _proj(y, alpha)
                ay = adj @ y
                fy = float(y @ ay)
                if fy > f + 1e-15 * (1.0 + abs(f)):
                    accepted = True
                    break
            e *= 0.5
        if not accepted:
            break
        gain = fy - f
        x, ax, f = y, ay, fy
        eta = min(e * 1.3, 1e8)
        it += 1
        if gain < 1e-12 * (1.0 + abs(f)):
            break
        if it % 8 == 0:
            kkt = _kkt_residual(x, ax, f, alpha)
            if kkt <= kkt_tol:
                converged = True
                break
    kkt = _kkt_residual(x, ax, f, alpha)
    converged = kkt <= kkt_tol
    return x, ax, f, kkt, it, converged


def _residual_squeeze(
    adj: np.ndarray,
    alpha: float,
    x: np.ndarray,
    ax: np.ndarray,
    f: float,
    kkt: float,
    max_iter: int,
    kkt_tol: float,
) -> tuple[np.ndarray, np.ndarray, float, float, int, bool]:
    """Drive the stationarity residual down once objective gains are below
    float resolution.

    Near a maximum each gradient step improves the objective by O(residual^2),
    which under-flows the improvement test long before the residual meets the
    certificate.  The residual itself stays measurable, so this phase steps
    without an improvement gate, keeps the lowest-residual iterate, and halves
    the step after sustained non-improvement.
    """
    row_scale = float(adj.sum(axis=1).max())
    eta = 0.25 / max(1.0, row_scale)
    best = (kkt, x, ax, f)
    since = 0
    it = 0
    while it < max_iter and best[0] > kkt_tol:
        g = _tangent_gradient(x, ax, f, alpha)
        y = np.maximum(x + eta * g, 0.0)
        if not y.any():
            eta *= 0.5
            _, x, ax, f = best
            continue
        x = _proj(y, alpha)
        ax = adj @ x
        f = float(x @ ax)
        kkt = _kkt_residual(x, ax, f, alpha)
        it += 1
        if kkt < best[0]:
            best = (kkt, x, ax, f)
            since = 0
        else:
            since += 1
            if since >= 64:
                eta *= 0.5
                _, x, ax, f = best
                since = 0
                if eta < 1e-12:
                    break
    kkt, x, ax, f = best
    return x, ax, f, kkt, it, kkt <= kkt_tol


def _fixed_point_polish(
    adj: np.ndarray,
    alpha: float,
    x: np.ndarray,
    ax: np.ndarray,
    f: float,
    kkt: float,
    max_iter: int,
    kkt_tol: float,
) -> tuple[np.ndarray, np.ndarray, float, float, int, bool]:
    """Damped iteration of a map whose fixed points are the KKT points.

    For alpha <= 2 the map is x <- normalize(x^(2-alpha) * Ax), interpolating
    replicator dynamics (alpha=1) and power iteration (alpha=2); for
    alpha >= 2 it is x <- normalize((Ax)^(1/(alpha-1))).  Either way the fixed
    points satisfy x^(alpha-1) proportional to Ax.  Gradient steps stall on
    coordinates with tiny equilibrium weight (curvature grows like
    x^(alpha-2)), while this map corrects their logarithms at a geometric
    rate.  Keeps the lowest-residual iterate; damps on sustained
    non-improvement.
    """
    best = (kkt, x, ax, f)
    theta = 1.0
    since = 0
    it = 0
    while it < max_iter and best[0] > kkt_tol:
        if alpha <= 2.0:
            m = x ** (2.0 - alpha) * ax
        else:
            m = ax ** (1.0 / (alpha - 1.0))
        if theta != 1.0:
            y = np.zeros_like(x)
            pos = m > 0.0
            y[pos] = x[pos] ** (1.0 - theta) * m[pos] ** theta
        else:
            y = m
        if not y.any():
            break
        x = _proj(y, alpha)
        ax = adj @ x
        f = float(x @ ax)
        kkt = _kkt_residual(x, ax, f, alpha)
        it += 1
        if kkt < best[0]:
            best = (kkt, x, ax, f)
            since = 0
        else:
            since += 1
            if since >= 32:
                theta *= 0.5
                _, x, ax, f = best
                since = 0
                if theta < 1e-3:
                    break
    kkt, x, ax, f = best
    return x, ax, f, kkt, it, kkt <= kkt_tol


def _support_components(adj: np.ndarray, sup: np.ndarray) -> list[np.ndarray]:
    """Connected components of the subgraph induced on the supported indices."""
    idx = np.flatnonzero(sup)
    seen = np.zeros(adj.shape[0], dtype=bool)
    comps = []
    for s in idx:
        if seen[s]:
            continue
        comp = [int(s)]
        seen[s] = True
        head = 0
        while head < len(comp):
            u = comp[head]
            head += 1
            for v in idx:
                if not seen[v] and adj[u, v] > 0.0:
                    seen[v] = True
                    comp.append(int(v))
        comps.append(np.array(comp))
    return comps


def _polish_candidates(adj: np.ndarray, alpha: float, x: np.ndarray) -> list[np.ndarray]:
    """Restart points that resolve cross-component mass deadlocks.

    The objective splits over connected components of the support, and giving
    a component mass t scales its contribution by t^(2/alpha): for alpha < 2
    the optimum puts all mass on one component, for alpha > 2 it splits with
    weights proportional to value^(alpha/(alpha-2)).  A stalled ascent sits
    between those attractors; these candidates jump straight to them.
    """
    out = []
    trunc = x.copy()
    trunc[trunc < _TRUNCATE_EPS] = 0.0
    if not trunc.any():
        return out
    if (trunc != x).any():
        out.append(_proj(trunc, alpha))
    comps = _support_components(adj, trunc > 0.0)
    if len(comps) < 2:
        return out
    parts = []
    for comp in comps:
        y = np.zeros_like(x)
        y[comp] = trunc[comp]
        y = _proj(y, alpha)
        val = float(y @ (adj @ y))
        if val > 0.0:
            parts.append((val, y))
    if not parts:
        return out
    parts.sort(key=lambda p: -p[0])
    if alpha <= 2.0:
        # At alpha = 2 a single best component is one of the optima; below 2
        # it is the only kind.
        out.extend(y for _, y in parts[:4])
    else:
        weights = np.array([v ** (alpha / (alpha - 2.0)) for v, _ in parts])
        weights /= weights.sum()
        z = np.zeros_like(x)
        for w, (_, y) in zip(weights, parts):
            z += w ** (1.0 / alpha) * y
        out.append(z)
    return out


def ascent(
    adj: np.ndarray,
    alpha: float,
    x0: np.ndarray,
    max_iter: int = 100_000,
    kkt_tol: float = 1e-8,
) -> tuple[float, np.ndarray, float, int, bool]:
    """Projected-gradient ascent of x^T A x on the nonnegative alpha-sphere.

    Backtracking line search, projection by positive rescaling.  Stops when
    the stationarity residual max_u |2(Ax)_u - 2 f(x) x_u^(alpha-1)| over the
    support drops below ``kkt_tol``, when no improving step exists, or at
    ``max_iter``.  A run that stalls uncertified is refined in stages: a
    fixed-point polish (see _fixed_point_polish), a residual squeeze (see
    _residual_squeeze) and, if the stall is a cross-component mass deadlock,
    re-seeding at the per-component allocations optimal for a separable
    objective.  Refinements are adopted only when they certify without losing
    objective value.

    Returns (value, x, kkt_residual, iterations, converged).
    """
    x = np.maximum(x0.astype(np.float64, copy=True), 0.0)
    x = _proj(x, alpha)
    x, ax, f, kkt, it, converged = _ascent_loop(adj, alpha, x, max_iter, kkt_tol)
    refine_budget = min(4000, max_iter)
    if not converged:
        x2, ax2, f2, kkt2, it2, conv2 = _fixed_point_polish(
            adj, alpha, x, ax, f, kkt, refine_budget, kkt_tol
        )
        it += it2
        if f2 >= f - 1e-9 and kkt2 < kkt:
            x, ax, f, kkt, converged = x2, ax2, f2, kkt2, conv2
    if not converged:
        x2, ax2, f2, kkt2, it2, conv2 = _residual_squeeze(
            adj, alpha, x, ax, f, kkt, refine_budget, kkt_tol
        )
        it += it2
        if f2 >= f - 1e-9 and kkt2 < kkt:
            x, ax, f, kkt, converged = x2, ax2, f2, kkt2, conv2
    if converged:
        return f, x, kkt, it, True
    best_f, best_x, best_kkt, best_conv = f, x, kkt, False
    budget = min(20_000, max_iter)
    for cand in _polish_candidates(adj, alpha, x):
        x2, ax2, f2, kkt2, it2, conv2 = _ascent_loop(adj, alpha, cand, budget, kkt_tol)
        it += it2
        if not conv2:
            x2, ax2, f2, kkt2, it3, conv2 = _fixed_point_polish(
                adj, alpha, x2, ax2, f2, kkt2, refine_budget, kkt_tol
            )
            it += it3
        if not conv2:
            x2, ax2, f2, kkt2, it3, conv2 = _residual_squeeze(
                adj, alpha, x2, ax2, f2, kkt2, refine_budget, kkt_tol
            )
            it += it3
        if conv2 and f2 >= f - 1e-9 and (not best_conv or f2 > best_f):
            best_f, best_x, best_kkt, best_conv = f2, x2, kkt2, True
    return best_f, best_x, best_kkt, it, best_conv


def power_iteration(adj: np.ndarray, tol: float = 1e-10, max_iter: int = 500_000) -> float:
    """Largest adjacency eigenvalue by shifted power iteration.

    Iterates x <- normalize((A + I) x) from the uniform positive vector; the
    +I shift keeps the dominant eigenvalue strictly largest in modulus on
    bipartite graphs.  Stops when the Rayleigh residual ||Ax - rho x||_inf
    falls below ``tol * max(1, rho)``.
    """
    n = adj.shape[0]
    if n == 0:
        return 0.0
    x = np.full(n, 1.0 / math.sqrt(n))
    rho = 0.0
    for _ in range(max_iter):
        ax = adj @ x
        rho = float(x @ ax)
        r = ax - rho * x
        if float(np.abs(r).max()) <= tol * max(1.0, abs(rho)):
            break
        y = ax + x
        x = y / float(np.linalg.norm(y))
    return rho
