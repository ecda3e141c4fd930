"""Hot inner loops, each in a numba flavour (``_nb_*``) and a numpy flavour (``_np_*``).

The public wrappers at the bottom dispatch on :data:`HAS_NUMBA`. Both flavours
implement the same algorithm step for step, so they agree to rounding and the
benchmark in ``benchmarks/`` can compare them directly.

Kernels:

* phase-one simplex for convex-hull membership (one small LP per query point)
* exact Rademacher moment ``E|sum a_j eps_j|^p`` by meet-in-the-middle enumeration
* projected (sub)gradient search on the unit sphere, the zero-sum sphere and
  the manifold of orthonormal pairs
"""
import numpy as np

from ._backend import HAS_NUMBA, njit

# Phase-one pivoting tolerance; coordinates are O(1) everywhere in this package.
PIVOT_EPS = 1e-12

# status codes returned by the membership kernels
LP_OK = 0
LP_ITERATION_LIMIT = 1

# numeric-search objective codes
OBJ_L1 = 0
OBJ_FP = 1
OBJ_WIDTH = 2
OBJ_MINOR_SUM = 3

# numeric-search constraint codes
CON_SPHERE = 0
CON_ZERO_SUM = 1
CON_PAIR = 2


# ---------------------------------------------------------------------------
# convex-hull membership: min sum(r) s.t. [P^T; 1^T] lam + r = [q; 1], lam, r >= 0
# ---------------------------------------------------------------------------


def _phase_one_tableau(points, q):
    npts, k = points.shape
    rows = k + 1
    T = np.empty((rows, npts + 1))
    T[:k, :npts] = points.T
    T[:k, npts] = q
    T[k, :npts] = 1.0
    T[k, npts] = 1.0
    neg = T[:, npts] < 0.0
    T[neg] *= -1.0
    return T


@njit
def _nb_hull_residual_one(points, q, max_iter):
    npts, k = points.shape
    rows = k + 1
    T = np.empty((rows, npts + 1))
    for i in range(k):
        for j in range(npts):
            T[i, j] = points[j, i]
        T[i, npts] = q[i]
    for j in range(npts):
        T[k, j] = 1.0
    T[k, npts] = 1.0
    for i in range(rows):
        if T[i, npts] < 0.0:
            for j in range(npts + 1):
                T[i, j] = -T[i, j]
    basis = np.empty(rows, dtype=np.int64)
    for i in range(rows):
        basis[i] = npts + i

    status = LP_ITERATION_LIMIT
    for _ in range(max_iter):
        # Bland's rule: first column with negative reduced cost
        enter = -1
        for j in range(npts):
            d = 0.0
            for i in range(rows):
                if basis[i] >= npts:
                    d -= T[i, j]
            if d < -PIVOT_EPS:
                enter = j
                break
        if enter < 0:
            status = LP_OK
            break
        leave = -1
        best = np.inf
        for i in range(rows):
            c = T[i, enter]
            if c > PIVOT_EPS:
                r = T[i, npts] / c
                if r < best - 1e-15:
                    best = r
                    leave = i
                elif r <= best + 1e-15 and basis[i] < basis[leave]:
                    leave = i
        piv = T[leave, enter]
        for j in range(npts + 1):
            T[leave, j] /= piv
        for i in range(rows):
            if i != leave:
                f = T[i, enter]
                if f != 0.0:
                    for j in range(npts + 1):
                        T[i, j] -= f * T[leave, j]
        basis[leave] = enter

    res = 0.0
    for i in range(rows):
        if basis[i] >= npts:
            res += T[i, npts]
    return res, status


@njit
def _nb_hull_residuals(points, queries, max_iter):
    m = queries.shape[0]
    out = np.empty(m)
    status = np.zeros(m, dtype=np.int64)
    for b in range(m):
        out[b], status[b] = _nb_hull_residual_one(points, queries[b], max_iter)
    return out, status


def _np_hull_residuals(points, queries, max_iter, chunk=4096):
    points = np.asarray(points, dtype=float)
    queries = np.atleast_2d(np.asarray(queries, dtype=float))
    npts, k = points.shape
    rows = k + 1
    out = np.empty(len(queries))
    status = np.zeros(len(queries), dtype=np.int64)
    for start in range(0, len(queries), chunk):
        Q = queries[start:start + chunk]
        B = len(Q)
        T = np.empty((B, rows, npts + 1))
        T[:, :k, :npts] = points.T
        T[:, :k, npts] = Q
        T[:, k, :npts] = 1.0
        T[:, k, npts] = 1.0
        T *= np.where(T[:, :, npts] < 0.0, -1.0, 1.0)[:, :, None]
        basis = np.broadcast_to(np.arange(npts, npts + rows), (B, rows)).copy()
        live = np.arange(B)
        it = 0
        while live.size and it < max_iter:
            Tl = T[live]
            bl = basis[live]
            art = bl >= npts
            d = -(Tl[:, :, :npts] * art[:, :, None]).sum(axis=1)
            neg = d < -PIVOT_EPS
            moving = neg.any(axis=1)
            live = live[moving]
            if not live.size:
                break
            Tl, bl, neg = Tl[moving], bl[moving], neg[moving]
            enter = neg.argmax(axis=1)
            L = len(live)
            col = Tl[np.arange(L), :, enter]
            rhs = Tl[:, :, npts]
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(col > PIVOT_EPS, rhs / col, np.inf)
            best = ratio.min(axis=1, keepdims=True)
            tied = ratio <= best + 1e-15
            leave = np.where(tied, bl, np.iinfo(np.int64).max).argmin(axis=1)
            prow = Tl[np.arange(L), leave] / col[np.arange(L), leave][:, None]
            Tl = Tl - col[:, :, None] * prow[:, None, :]
            Tl[np.arange(L), leave] = prow
            bl[np.arange(L), leave] = enter
            T[live] = Tl
            basis[live] = bl
            it += 1
        status[start + live] = LP_ITERATION_LIMIT if live.size else LP_OK
        art = basis >= npts
        out[start:start + B] = (T[:, :, npts] * art).sum(axis=1)
    return out, status


# ---------------------------------------------------------------------------
# exact Rademacher moments
# ---------------------------------------------------------------------------


def _sign_table(n):
    """All 2**n sign vectors as rows, bit j of the row index flipping coordinate j."""
    idx = np.arange(2 ** n)[:, None]
    bits = (idx >> np.arange(n)) & 1
    return 1.0 - 2.0 * bits


@njit
def _nb_sign_moment_exact(a, p):
    n = a.shape[0]
    # eps -> -eps leaves |sum| unchanged, so pin the last sign to +1
    free = n - 1
    low = min(free, 12)
    high = free - low
    nlow = 1 << low
    lowsum = np.empty(nlow)
    for s in range(nlow):
        acc = 0.0
        for j in range(low):
            if (s >> j) & 1:
                acc -= a[j]
            else:
                acc += a[j]
        lowsum[s] = acc
    total = 0.0
    for h in range(1 << high):
        base = a[n - 1]
        for j in range(high):
            if (h >> j) & 1:
                base -= a[low + j]
            else:
                base += a[low + j]
        part = 0.0
        for s in range(nlow):
            part += abs(base + lowsum[s]) ** p
        total += part
    return total / (1 << free)


def _np_sign_moment_exact(a, p):
    a = np.asarray(a, dtype=float)
    n = a.size
    free = n - 1
    low = min(free, 12)
    high = free - low
    lowsum = _sign_table(low) @ a[:low] if low else np.zeros(1)
    highsum = a[n - 1] + (_sign_table(high) @ a[low:free] if high else np.zeros(1))
    total = 0.0
    for base in highsum:
        total += np.sum(np.abs(base + lowsum) ** p)
    return total / 2.0 ** free


# ---------------------------------------------------------------------------
# projected (sub)gradient search
# ---------------------------------------------------------------------------


@njit
def _nb_objective(x, obj, m, param):
    if obj == OBJ_L1:
        return np.sum(np.abs(x))
    if obj == OBJ_FP:
        return np.sum(np.abs(x) ** param)
    if obj == OBJ_WIDTH:
        return np.max(x) - np.min(x)
    total = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            total += abs(x[i] * x[m + j] - x[j] * x[m + i])
    return total


@njit
def _nb_gradient(x, obj, m, param):
    g = np.zeros_like(x)
    if obj == OBJ_L1:
        for i in range(m):
            g[i] = np.sign(x[i])
    elif obj == OBJ_FP:
        for i in range(m):
            g[i] = param * abs(x[i]) ** (param - 1.0) * np.sign(x[i])
    elif obj == OBJ_WIDTH:
        g[np.argmax(x)] += 1.0
        g[np.argmin(x)] -= 1.0
    else:
        for i in range(m):
            for j in range(m):
                s = np.sign(x[i] * x[m + j] - x[j] * x[m + i])
                g[i] += s * x[m + j]
                g[m + i] -= s * x[j]
    return g


@njit
def _nb_project(x, con, m):
    y = x.copy()
    if con == CON_PAIR:
        u = y[:m]
        v = y[m:]
        u /= np.sqrt(np.sum(u * u))
        v -= np.sum(u * v) * u
        v /= np.sqrt(np.sum(v * v))
        return y
    if con == CON_ZERO_SUM:
        y -= np.mean(y)
    y /= np.sqrt(np.sum(y * y))
    return y


@njit
def _nb_search(starts, obj, con, m, sense, param, step0, grow, min_step, max_iter):
    R = starts.shape[0]
    values = np.empty(R)
    points = np.empty_like(starts)
    iters = np.zeros(R, dtype=np.int64)
    for r in range(R):
        x = _nb_project(starts[r], con, m)
        f = _nb_objective(x, obj, m, param)
        step = step0
        it = 0
        while it < max_iter and step >= min_step:
            g = _nb_gradient(x, obj, m, param)
            y = _nb_project(x + sense * step * g, con, m)
            fy = _nb_objective(y, obj, m, param)
            if sense * (fy - f) > 0.0:
                x = y
                f = fy
                step *= grow
            else:
                step *= 0.5
            it += 1
        values[r] = f
        points[r] = x
        iters[r] = it
    return values, points, iters


def _np_objective(X, obj, m, param):
    if obj == OBJ_L1:
        return np.abs(X).sum(axis=1)
    if obj == OBJ_FP:
        return (np.abs(X) ** param).sum(axis=1)
    if obj == OBJ_WIDTH:
        return X.max(axis=1) - X.min(axis=1)
    U, V = X[:, :m], X[:, m:]
    M = U[:, :, None] * V[:, None, :] - U[:, None, :] * V[:, :, None]
    return np.abs(np.triu(M, 1)).sum(axis=(1, 2))


def _np_gradient(X, obj, m, param):
    if obj == OBJ_L1:
        return np.sign(X)
    if obj == OBJ_FP:
        return param * np.abs(X) ** (param - 1.0) * np.sign(X)
    if obj == OBJ_WIDTH:
        G = np.zeros_like(X)
        rows = np.arange(len(X))
        G[rows, X.argmax(axis=1)] += 1.0
        G[rows, X.argmin(axis=1)] -= 1.0
        return G
    U, V = X[:, :m], X[:, m:]
    S = np.sign(U[:, :, None] * V[:, None, :] - U[:, None, :] * V[:, :, None])
    return np.concatenate([np.einsum("bij,bj->bi", S, V), -np.einsum("bij,bj->bi", S, U)], axis=1)


def _np_project(X, con, m):
    Y = X.copy()
    if con == CON_PAIR:
        U, V = Y[:, :m], Y[:, m:]
        U /= np.linalg.norm(U, axis=1, keepdims=True)
        V -= (U * V).sum(axis=1, keepdims=True) * U
        V /= np.linalg.norm(V, axis=1, keepdims=True)
        return Y
    if con == CON_ZERO_SUM:
        Y -= Y.mean(axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    return Y


def _np_search(starts, obj, con, m, sense, param, step0, grow, min_step, max_iter):
    X = _np_project(np.asarray(starts, dtype=float), con, m)
    F = _np_objective(X, obj, m, param)
    step = np.full(len(X), float(step0))
    iters = np.zeros(len(X), dtype=np.int64)
    live = np.arange(len(X))
    for _ in range(max_iter):
        live = live[step[live] >= min_step]
        if not live.size:
            break
        Xl = X[live]
        Y = _np_project(Xl + sense * step[live, None] * _np_gradient(Xl, obj, m, param), con, m)
        FY = _np_objective(Y, obj, m, param)
        better = sense * (FY - F[live]) > 0.0
        X[live[better]] = Y[better]
        F[live[better]] = FY[better]
        step[live] = np.where(better, step[live] * grow, step[live] * 0.5)
        iters[live] += 1
    return F, X, iters


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def hull_residuals(points, queries, max_iter=500):
    """Phase-one LP optimum (an l1 residual) for each query; 0 means inside the hull."""
    points = np.ascontiguousarray(points, dtype=float)
    queries = np.ascontiguousarray(np.atleast_2d(queries), dtype=float)
    if HAS_NUMBA:
        return _nb_hull_residuals(points, queries, max_iter)
    return _np_hull_residuals(points, queries, max_iter)


def sign_moment_exact(a, p):
    a = np.ascontiguousarray(a, dtype=float)
    if HAS_NUMBA:
        return float(_nb_sign_moment_exact(a, float(p)))
    return float(_np_sign_moment_exact(a, float(p)))


def projected_search(starts, obj, con, m, sense, param=1.0, step0=0.5, grow=1.5,
                     min_step=1e-10, max_iter=10_000):
    starts = np.ascontiguousarray(starts, dtype=float)
    args = (starts, int(obj), int(con), int(m), float(sense), float(param),
            float(step0), float(grow), float(min_step), int(max_iter))
    if HAS_NUMBA:
        return _nb_search(*args)
    return _np_search(*args)
