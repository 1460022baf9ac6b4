# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: canonical labeling, induced-subgraph search, maximum
clique, the alpha-sphere ascent loop and adjacency power iteration.

Twin of ``herext._kernel`` with identical semantics for graphs within the
64-vertex cap; bitsets live in single machine words and the numeric loops run
on raw float64 buffers.
"""

from libc.math cimport fabs, pow, sqrt

import numpy as np

cdef extern from *:
    """
    #define herext_popcountll __builtin_popcountll
    #define herext_ctzll __builtin_ctzll
    """
    int herext_popcountll(unsigned long long) nogil
    int herext_ctzll(unsigned long long) nogil

BACKEND = "c"

_SUPPORT_EPS = 1e-12
_TRUNCATE_EPS = 1e-11

cdef unsigned long long ONE = 1


# ---------------------------------------------------------------------------
# canonical labeling

cdef struct _CanonSt:
    int n
    bint have_best
    unsigned long long r[64]
    unsigned long long best_col[64]
    char best_set[64]
    char used[64]
    int perm[64]
    int best_perm[64]


cdef bint _twins(_CanonSt* st, int u, int v) noexcept nogil:
    return (st.r[u] & ~(ONE << v)) == (st.r[v] & ~(ONE << u))


cdef void _canon_search(_CanonSt* st, int k) noexcept nogil:
    cdef int n = st.n
    cdef int v, i, j, t, nc, tn
    cdef unsigned long long c
    cdef unsigned long long cand_c[64]
    cdef unsigned long long tried_c[64]
    cdef int cand_v[64]
    cdef int tried_v[64]
    cdef bint skip
    if k == n:
        for i in range(n):
            st.best_perm[i] = st.perm[i]
        st.have_best = True
        return
    nc = 0
    for v in range(n):
        if st.used[v]:
            continue
        c = 0
        for i in range(k):
            c = (c << 1) | ((st.r[st.perm[i]] >> v) & 1)
        cand_c[nc] = c
        cand_v[nc] = v
        nc += 1
    # stable insertion sort on c keeps v ascending within ties, which is the
    # (c, v) tuple order of the fallback
    for i in range(1, nc):
        c = cand_c[i]
        v = cand_v[i]
        j = i - 1
        while j >= 0 and cand_c[j] > c:
            cand_c[j + 1] = cand_c[j]
            cand_v[j + 1] = cand_v[j]
            j -= 1
        cand_c[j + 1] = c
        cand_v[j + 1] = v
    tn = 0
    for t in range(nc):
        c = cand_c[t]
        v = cand_v[t]
        if st.best_set[k] and c > st.best_col[k]:
            break
        skip = False
        for i in range(tn):
            if tried_c[i] == c and _twins(st, tried_v[i], v):
                skip = True
                break
        if skip:
            continue
        if (not st.best_set[k]) or c < st.best_col[k]:
            st.best_col[k] = c
            st.best_set[k] = 1
            for j in range(k + 1, n):
                st.best_set[j] = 0
        st.used[v] = 1
        st.perm[k] = v
        _canon_search(st, k + 1)
        st.used[v] = 0
        tried_c[tn] = c
        tried_v[tn] = v
        tn += 1


def canonical_rows(rows, int n):
    """Adjacency rows of the lexicographically minimal relabeling of the graph.

    Minimality is over the column-major upper-triangle bit string, i.e. the
    same bit order used by the graph6 encoding, so equal outputs certify
    isomorphism.  Exhaustive branch-and-bound over vertex orderings, pruned by
    prefix comparison against the incumbent and by skipping twin vertices
    (swapping twins is an automorphism).
    """
    if n <= 1:
        return (0,) * n
    if n > 64:
        raise ValueError("bitset kernels support at most 64 vertices")
    cdef _CanonSt st
    cdef int i, j
    st.n = n
    st.have_best = False
    for i in range(n):
        st.r[i] = rows[i]
        st.best_set[i] = 0
        st.used[i] = 0
    _canon_search(&st, 0)
    cdef unsigned long long ri, m
    out = []
    for i in range(n):
        ri = st.r[st.best_perm[i]]
        m = 0
        for j in range(n):
            if (ri >> st.best_perm[j]) & 1:
                m |= ONE << j
        out.append(int(m))
    return tuple(out)


# ---------------------------------------------------------------------------
# induced subgraph containment

cdef struct _EmbSt:
    int gn, hn, img0
    unsigned long long gr[64]
    unsigned long long hr[64]
    int gdeg[64]
    int hdeg[64]
    int order[64]
    int img[64]


cdef void _emb_order(_EmbSt* st, int u0) noexcept nogil:
    cdef unsigned long long placed = ONE << u0
    cdef int cnt = 1, u, bestu, k1, k2, b1, b2
    st.order[0] = u0
    while cnt < st.hn:
        bestu = -1
        b1 = -1
        b2 = -1
        for u in range(st.hn):
            if (placed >> u) & 1:
                continue
            k1 = herext_popcountll(st.hr[u] & placed)
            k2 = st.hdeg[u]
            if k1 > b1 or (k1 == b1 and k2 > b2):
                b1 = k1
                b2 = k2
                bestu = u
        st.order[cnt] = bestu
        placed |= ONE << bestu
        cnt += 1


cdef bint _emb_rec(_EmbSt* st, int t, unsigned long long used_g) noexcept nogil:
    if t == st.hn:
        return True
    cdef int u = st.order[t]
    cdef unsigned long long ru = st.hr[u]
    cdef unsigned long long rv
    cdef int v, s, v0, v1
    cdef bint ok
    v0 = 0
    v1 = st.gn
    if t == 0 and st.img0 >= 0:
        v0 = st.img0
        v1 = st.img0 + 1
    for v in range(v0, v1):
        if (used_g >> v) & 1:
            continue
        if st.gdeg[v] < st.hdeg[u]:
            continue
        ok = True
        rv = st.gr[v]
        for s in range(t):
            if ((ru >> st.order[s]) & 1) != ((rv >> st.img[s]) & 1):
                ok = False
                break
        if ok:
            st.img[t] = v
            if _emb_rec(st, t + 1, used_g | (ONE << v)):
                return True
    return False


def contains_induced(grows, int gn, hrows, int hn, int forced=-1):
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
    if gn > 64:
        raise ValueError("bitset kernels support at most 64 vertices")
    cdef _EmbSt st
    cdef int u, u0
    st.gn = gn
    st.hn = hn
    for u in range(gn):
        st.gr[u] = grows[u]
        st.gdeg[u] = herext_popcountll(st.gr[u])
    for u in range(hn):
        st.hr[u] = hrows[u]
        st.hdeg[u] = herext_popcountll(st.hr[u])
    if forced < 0:
        u0 = 0
        for u in range(1, hn):
            if st.hdeg[u] > st.hdeg[u0]:
                u0 = u
        st.img0 = -1
        _emb_order(&st, u0)
        return bool(_emb_rec(&st, 0, 0))
    st.img0 = forced
    for u0 in range(hn):
        _emb_order(&st, u0)
        if _emb_rec(&st, 0, 0):
            return True
    return False


# ---------------------------------------------------------------------------
# maximum clique

cdef struct _CliqSt:
    int best_size
    unsigned long long best_mask
    unsigned long long r[64]


cdef void _cliq_expand(_CliqSt* st, unsigned long long rmask, int rsize,
                       unsigned long long p) noexcept nogil:
    cdef int pivot, bestcnt, u, c, v
    cdef unsigned long long m, ext
    if p == 0:
        if rsize > st.best_size:
            st.best_size = rsize
            st.best_mask = rmask
        return
    if rsize + herext_popcountll(p) <= st.best_size:
        return
    pivot = -1
    bestcnt = -1
    m = p
    while m:
        u = herext_ctzll(m)
        c = herext_popcountll(p & st.r[u])
        if c > bestcnt:
            bestcnt = c
            pivot = u
        m &= m - 1
    ext = p & ~st.r[pivot]
    while ext:
        v = herext_ctzll(ext)
        _cliq_expand(st, rmask | (ONE << v), rsize + 1, p & st.r[v])
        p &= ~(ONE << v)
        ext &= ext - 1


def max_clique(rows, int n):
    """Exact maximum clique: returns (size, bitmask of one maximum clique).

    Branch and bound with a greedy pivot (Bron-Kerbosch style: branch only on
    candidates outside the pivot's neighborhood).
    """
    if n == 0:
        return 0, 0
    if n > 64:
        raise ValueError("bitset kernels support at most 64 vertices")
    cdef _CliqSt st
    cdef int i
    st.best_size = 0
    st.best_mask = 0
    for i in range(n):
        st.r[i] = rows[i]
    cdef unsigned long long full
    if n == 64:
        full = ~(<unsigned long long>0)
    else:
        full = (ONE << n) - 1
    _cliq_expand(&st, 0, 0, full)
    return st.best_size, int(st.best_mask)


# ---------------------------------------------------------------------------
# numeric kernels

cdef double _dot_c(const double* a, const double* b, int n) noexcept nogil:
    cdef double s = 0.0
    cdef int i
    for i in range(n):
        s += a[i] * b[i]
    return s


cdef void _matvec_c(const double* adj, const double* x, double* out, int n) noexcept nogil:
    cdef double s
    cdef int i, j
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += adj[i * n + j] * x[j]
        out[i] = s


cdef void _proj_c(double* x, int n, double alpha) noexcept nogil:
    cdef double s = 0.0
    cdef int i
    if alpha == 2.0:
        s = sqrt(_dot_c(x, x, n))
    else:
        for i in range(n):
            s += pow(x[i], alpha)
        s = pow(s, 1.0 / alpha)
    for i in range(n):
        x[i] /= s


cdef double _kkt_c(const double* x, const double* ax, double f, double alpha,
                   int n) noexcept nogil:
    cdef double best = 0.0, pw, r
    cdef int i
    for i in range(n):
        if x[i] > 1e-12:
            pw = x[i] if alpha == 2.0 else pow(x[i], alpha - 1.0)
            r = fabs(2.0 * ax[i] - 2.0 * f * pw)
            if r > best:
                best = r
    return best


cdef void _tangent_c(const double* x, const double* ax, double f, double alpha,
                     double* g, int n) noexcept nogil:
    # gradient projected along the constraint normal; see the fallback for why
    # the raw gradient is not an ascent direction off alpha = 2
    cdef double pw
    cdef int i
    for i in range(n):
        pw = x[i] if alpha == 2.0 else pow(x[i], alpha - 1.0)
        g[i] = 2.0 * (ax[i] - f * pw)


cdef double _row_scale_c(const double* adj, int n) noexcept nogil:
    cdef double best = 0.0, row
    cdef int i, j
    for i in range(n):
        row = 0.0
        for j in range(n):
            row += adj[i * n + j]
        if row > best:
            best = row
    return best


cdef long _ascent_loop_c(const double* adj, double alpha, double* x, double* ax,
                         double* f, double* kkt, bint* conv, int n,
                         long max_iter, double kkt_tol,
                         double* g, double* y, double* ay) noexcept nogil:
    cdef long it = 0
    cdef int i, h
    cdef double row_scale, eta, e, fy, f0, gain
    cdef bint accepted, anynz
    _matvec_c(adj, x, ax, n)
    f0 = _dot_c(x, ax, n)
    f[0] = f0
    kkt[0] = _kkt_c(x, ax, f0, alpha, n)
    if kkt[0] <= kkt_tol:
        conv[0] = True
        return 0
    row_scale = _row_scale_c(adj, n)
    eta = 0.5 / (row_scale if row_scale > 1.0 else 1.0)
    fy = f0
    while it < max_iter:
        _tangent_c(x, ax, f0, alpha, g, n)
        e = eta
        accepted = False
        for h in range(64):
            anynz = False
            for i in range(n):
                y[i] = x[i] + e * g[i]
                if y[i] < 0.0:
                    y[i] = 0.0
                elif y[i] > 0.0:
                    anynz = True
            if anynz:
                _proj_c(y, n, alpha)
                _matvec_c(adj, y, ay, n)
                fy = _dot_c(y, ay, n)
                if fy > f0 + 1e-15 * (1.0 + fabs(f0)):
                    accepted = True
                    break
            e *= 0.5
        if not accepted:
            break
        gain = fy - f0
        for i in range(n):
            x[i] = y[i]
            ax[i] = ay[i]
        f0 = fy
        eta = e * 1.3
        if eta > 1e8:
            eta = 1e8
        it += 1
        if gain < 1e-12 * (1.0 + fabs(f0)):
            break
        if it % 8 == 0:
            kkt[0] = _kkt_c(x, ax, f0, alpha, n)
            if kkt[0] <= kkt_tol:
                break
    kkt[0] = _kkt_c(x, ax, f0, alpha, n)
    f[0] = f0
    conv[0] = kkt[0] <= kkt_tol
    return it


cdef long _squeeze_c(const double* adj, double alpha, double* x, double* ax,
                     double* f, double* kkt, bint* conv, int n,
                     long max_iter, double kkt_tol,
                     double* g, double* bx, double* bax) noexcept nogil:
    cdef long it = 0
    cdef int i, since = 0
    cdef double row_scale, eta, f0, k0, bf, bk
    cdef bint anynz
    row_scale = _row_scale_c(adj, n)
    eta = 0.25 / (row_scale if row_scale > 1.0 else 1.0)
    f0 = f[0]
    bf = f0
    bk = kkt[0]
    for i in range(n):
        bx[i] = x[i]
        bax[i] = ax[i]
    while it < max_iter and bk > kkt_tol:
        _tangent_c(x, ax, f0, alpha, g, n)
        anynz = False
        for i in range(n):
            g[i] = x[i] + eta * g[i]
            if g[i] < 0.0:
                g[i] = 0.0
            elif g[i] > 0.0:
                anynz = True
        if not anynz:
            eta *= 0.5
            for i in range(n):
                x[i] = bx[i]
                ax[i] = bax[i]
            f0 = bf
            continue
        for i in range(n):
            x[i] = g[i]
        _proj_c(x, n, alpha)
        _matvec_c(adj, x, ax, n)
        f0 = _dot_c(x, ax, n)
        k0 = _kkt_c(x, ax, f0, alpha, n)
        it += 1
        if k0 < bk:
            bk = k0
            bf = f0
            for i in range(n):
                bx[i] = x[i]
                bax[i] = ax[i]
            since = 0
        else:
            since += 1
            if since >= 64:
                eta *= 0.5
                for i in range(n):
                    x[i] = bx[i]
                    ax[i] = bax[i]
                f0 = bf
                since = 0
                if eta < 1e-12:
                    break
    for i in range(n):
        x[i] = bx[i]
        ax[i] = bax[i]
    f[0] = bf
    kkt[0] = bk
    conv[0] = bk <= kkt_tol
    return it


cdef long _fp_polish_c(const double* adj, double alpha, double* x, double* ax,
                       double* f, double* kkt, bint* conv, int n,
                       long max_iter, double kkt_tol,
                       double* m, double* bx, double* bax) noexcept nogil:
    cdef long it = 0
    cdef int i, since = 0
    cdef double theta = 1.0
    cdef double f0 = f[0], k0, bf = f[0], bk = kkt[0]
    cdef double ex
    cdef bint anynz
    for i in range(n):
        bx[i] = x[i]
        bax[i] = ax[i]
    while it < max_iter and bk > kkt_tol:
        if alpha <= 2.0:
            ex = 2.0 - alpha
            for i in range(n):
                m[i] = pow(x[i], ex) * ax[i]
        else:
            ex = 1.0 / (alpha - 1.0)
            for i in range(n):
                m[i] = pow(ax[i], ex)
        if theta != 1.0:
            for i in range(n):
                if m[i] > 0.0:
                    m[i] = pow(x[i], 1.0 - theta) * pow(m[i], theta)
                else:
                    m[i] = 0.0
        anynz = False
        for i in range(n):
            if m[i] != 0.0:
                anynz = True
                break
        if not anynz:
            break
        for i in range(n):
            x[i] = m[i]
        _proj_c(x, n, alpha)
        _matvec_c(adj, x, ax, n)
        f0 = _dot_c(x, ax, n)
        k0 = _kkt_c(x, ax, f0, alpha, n)
        it += 1
        if k0 < bk:
            bk = k0
            bf = f0
            for i in range(n):
                bx[i] = x[i]
                bax[i] = ax[i]
            since = 0
        else:
            since += 1
            if since >= 32:
                theta *= 0.5
                for i in range(n):
                    x[i] = bx[i]
                    ax[i] = bax[i]
                f0 = bf
                since = 0
                if theta < 1e-3:
                    break
    for i in range(n):
        x[i] = bx[i]
        ax[i] = bax[i]
    f[0] = bf
    kkt[0] = bk
    conv[0] = bk <= kkt_tol
    return it


def _ascent_loop(adj, double alpha, x, long max_iter, double kkt_tol):
    cdef double[:, ::1] A = np.ascontiguousarray(adj, dtype=np.float64)
    xx = np.array(x, dtype=np.float64)
    cdef double[::1] xv = xx
    cdef int n = A.shape[0]
    if n == 0:
        return xx, np.zeros(0), 0.0, 0.0, 0, True
    axn = np.empty(n)
    g = np.empty(n)
    y = np.empty(n)
    ay = np.empty(n)
    cdef double[::1] axv = axn
    cdef double[::1] gv = g
    cdef double[::1] yv = y
    cdef double[::1] ayv = ay
    cdef double f = 0.0, kkt = 0.0
    cdef bint conv = False
    cdef long it
    it = _ascent_loop_c(&A[0, 0], alpha, &xv[0], &axv[0], &f, &kkt, &conv, n,
                        max_iter, kkt_tol, &gv[0], &yv[0], &ayv[0])
    return xx, axn, f, kkt, it, bool(conv)


def _residual_squeeze(adj, double alpha, x, ax, double f, double kkt,
                      long max_iter, double kkt_tol):
    """Drive the stationarity residual down once objective gains are below
    float resolution.

    Near a maximum each gradient step improves the objective by O(residual^2),
    which under-flows the improvement test long before the residual meets the
    certificate.  The residual itself stays measurable, so this phase steps
    without an improvement gate, keeps the lowest-residual iterate, and halves
    the step after sustained non-improvement.
    """
    cdef double[:, ::1] A = np.ascontiguousarray(adj, dtype=np.float64)
    xx = np.array(x, dtype=np.float64)
    axn = np.array(ax, dtype=np.float64)
    cdef double[::1] xv = xx
    cdef double[::1] axv = axn
    cdef int n = A.shape[0]
    if n == 0:
        return xx, axn, f, kkt, 0, kkt <= kkt_tol
    g = np.empty(n)
    bx = np.empty(n)
    bax = np.empty(n)
    cdef double[::1] gv = g
    cdef double[::1] bxv = bx
    cdef double[::1] baxv = bax
    cdef double ff = f, kk = kkt
    cdef bint conv = False
    cdef long it
    it = _squeeze_c(&A[0, 0], alpha, &xv[0], &axv[0], &ff, &kk, &conv, n,
                    max_iter, kkt_tol, &gv[0], &bxv[0], &baxv[0])
    return xx, axn, ff, kk, it, bool(conv)


def _proj(x, alpha):
    if alpha == 2.0:
        s = float(np.sqrt(x @ x))
    else:
        s = float(np.sum(x**alpha)) ** (1.0 / alpha)
    return x / s


def _kkt_py(x, ax, double f, double alpha):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] axv = np.ascontiguousarray(ax, dtype=np.float64)
    cdef int n = xv.shape[0]
    if n == 0:
        return 0.0
    return _kkt_c(&xv[0], &axv[0], f, alpha, n)


def _fixed_point_polish(adj, double alpha, x, ax, double f, double kkt,
                        long max_iter, double kkt_tol):
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
    cdef double[:, ::1] A = np.ascontiguousarray(adj, dtype=np.float64)
    xx = np.array(x, dtype=np.float64)
    axn = np.array(ax, dtype=np.float64)
    cdef double[::1] xv = xx
    cdef double[::1] axv = axn
    cdef int n = A.shape[0]
    if n == 0:
        return xx, axn, f, kkt, 0, kkt <= kkt_tol
    m = np.empty(n)
    bx = np.empty(n)
    bax = np.empty(n)
    cdef double[::1] mv = m
    cdef double[::1] bxv = bx
    cdef double[::1] baxv = bax
    cdef double ff = f, kk = kkt
    cdef bint conv = False
    cdef long it
    it = _fp_polish_c(&A[0, 0], alpha, &xv[0], &axv[0], &ff, &kk, &conv, n,
                      max_iter, kkt_tol, &mv[0], &bxv[0], &baxv[0])
    return xx, axn, ff, kk, it, bool(conv)


def _support_components(adj, sup):
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


def _polish_candidates(adj, alpha, x):
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


def ascent(adj, double alpha, x0, long max_iter=100_000, double kkt_tol=1e-8):
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
    x = np.maximum(np.asarray(x0, dtype=np.float64), 0.0)
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


cdef double _power_c(const double* adj, int n, double tol, long max_iter,
                     double* x, double* ax) noexcept nogil:
    cdef double rho = 0.0, nrm, rmax, r
    cdef long k
    cdef int i
    for i in range(n):
        x[i] = 1.0 / sqrt(<double>n)
    for k in range(max_iter):
        _matvec_c(adj, x, ax, n)
        rho = _dot_c(x, ax, n)
        rmax = 0.0
        for i in range(n):
            r = fabs(ax[i] - rho * x[i])
            if r > rmax:
                rmax = r
        if rmax <= tol * (1.0 if fabs(rho) < 1.0 else fabs(rho)):
            break
        for i in range(n):
            ax[i] += x[i]
        nrm = sqrt(_dot_c(ax, ax, n))
        for i in range(n):
            x[i] = ax[i] / nrm
    return rho


def power_iteration(adj, double tol=1e-10, long max_iter=500_000):
    """Largest adjacency eigenvalue by shifted power iteration.

    Iterates x <- normalize((A + I) x) from the uniform positive vector; the
    +I shift keeps the dominant eigenvalue strictly largest in modulus on
    bipartite graphs.  Stops when the Rayleigh residual ||Ax - rho x||_inf
    falls below ``tol * max(1, rho)``.
    """
    cdef double[:, ::1] A = np.ascontiguousarray(adj, dtype=np.float64)
    cdef int n = A.shape[0]
    if n == 0:
        return 0.0
    x = np.empty(n)
    ax = np.empty(n)
    cdef double[::1] xv = x
    cdef double[::1] axv = ax
    return _power_c(&A[0, 0], n, tol, max_iter, &xv[0], &axv[0])
