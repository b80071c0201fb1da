"""Hot numeric kernels with numba-compiled and pure-numpy implementations.

The brute-force simplex scans are the only interpreter-bound inner loops
in the package; they get @njit kernels.  Set SENSORPATH_NO_NUMBA=1 to
force the vectorized numpy path (used by the benchmark and as a fallback
when numba is unavailable).
"""

from __future__ import annotations

import os

import numpy as np

SR_UPPER, SR_LOWER, FR_UPPER, FR_LOWER = 0, 1, 2, 3


def numba_enabled() -> bool:
    if os.environ.get("SENSORPATH_NO_NUMBA", "").lower() in ("1", "true", "yes"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def bound_tables(params, code):
    """Precomputed per-sensor tables shared by both scan implementations.

    w_m = alpha^2/(1+beta^2) so B = sum w P; s_m = alpha beta/sqrt(1+beta^2)
    so A = sum s sqrt(P); c_frl is the constant factor of the high-rate FR
    lower bound M (prod Lambda gamma')^(1/M).
    """
    from . import rate_distortion as rd

    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    w = alpha ** 2 / (1.0 + beta ** 2)
    s = alpha * beta / np.sqrt(1.0 + beta ** 2)
    sb = float(np.dot(beta, beta))
    m = params.M
    if code == FR_LOWER:
        eig = rd.ru_eigen(beta, gamma)
        c_frl = m * float(np.exp(np.sum(np.log(eig.lambdas * eig.gamma_prime)) / m))
    else:
        c_frl = 0.0
    return w, s, gamma.astype(float), beta.astype(float) ** 2, sb, c_frl


def eval_bounds_batch(code, tables, p_matrix):
    """Vectorized bound evaluation over an (N, M) matrix of power vectors."""
    w, s, gamma, beta2, sb, c_frl = tables
    m = w.size
    sq = np.sqrt(p_matrix)
    b = p_matrix @ w
    a = sq @ s
    g = 1.0 + a * a + b
    if code == SR_UPPER:
        return (1.0 + b) / g
    if code == SR_LOWER:
        return (1.0 + sb / g) / (1.0 + sb)
    if code == FR_UPPER:
        return eval_fr_upper_batch(tables, p_matrix)
    if code == FR_LOWER:
        return c_frl * g ** (-1.0 / m)
    raise ValueError(f"unknown bound code {code}")


def eval_fr_upper_batch(tables, p_matrix):
    # sum gamma_m (c_m + beta_m A)^2 = t1 + 2 A t2 + A^2 sum(gamma beta^2),
    # with t1 = sum gamma c^2 and t2 = sum gamma beta c = sum gamma s sqrt(P).
    w, s, gamma, beta2, sb, _ = tables
    sq = np.sqrt(p_matrix)
    b = p_matrix @ w
    a = sq @ s
    g = 1.0 + a * a + b
    t1 = p_matrix @ (gamma * w)
    t2 = sq @ (gamma * s)
    prior = float(np.dot(gamma, 1.0 + beta2))
    return prior - (t1 + 2.0 * a * t2 + a * a * float(np.dot(gamma, beta2))) / g


def _scan_simplex_numpy(code, tables, r, p_total, n, chunk=200_000):
    """Exhaustive minimum over the r-weighted budget simplex at fraction
    step 1/n, chunked to bound memory."""
    m = r.size
    best_val = np.inf
    best_frac = None
    if m == 1:
        fracs = np.array([[1.0]])
        grids = [fracs]
    elif m == 2:
        f1 = np.linspace(0.0, 1.0, n + 1)
        grids = [np.column_stack([f1, 1.0 - f1])]
    elif m == 3:
        grids = []
        f = np.linspace(0.0, 1.0, n + 1)
        for start in range(0, n + 1, max(1, chunk // (n + 1))):
            stop = min(start + max(1, chunk // (n + 1)), n + 1)
            f1 = np.repeat(f[start:stop], n + 1)
            f2 = np.tile(f, stop - start)
            keep = f1 + f2 <= 1.0 + 1e-12
            grids.append(np.column_stack([f1[keep], f2[keep],
                                          np.clip(1.0 - f1[keep] - f2[keep], 0.0, 1.0)]))
    else:
        raise ValueError("simplex scan supports M <= 3")
    for fr in grids:
        pm = fr * (p_total / r)
        vals = eval_bounds_batch(code, tables, pm)
        k = int(np.argmin(vals))
        if vals[k] < best_val:
            best_val = float(vals[k])
            best_frac = fr[k].copy()
    return best_val, best_frac * (p_total / r)


_NUMBA_KERNELS = {}


def _build_numba_kernels():
    from numba import njit

    @njit(cache=True, fastmath=False)
    def _eval_one(code, w, s, gamma, beta2, sb, c_frl, p):
        m = w.size
        a = 0.0
        b = 0.0
        for i in range(m):
            a += s[i] * np.sqrt(p[i])
            b += w[i] * p[i]
        g = 1.0 + a * a + b
        if code == 0:
            return (1.0 + b) / g
        if code == 1:
            return (1.0 + sb / g) / (1.0 + sb)
        if code == 2:
            t1 = 0.0
            t2 = 0.0
            prior = 0.0
            gb = 0.0
            for i in range(m):
                t1 += gamma[i] * w[i] * p[i]
                t2 += gamma[i] * s[i] * np.sqrt(p[i])
                prior += gamma[i] * (1.0 + beta2[i])
                gb += gamma[i] * beta2[i]
            return prior - (t1 + 2.0 * a * t2 + a * a * gb) / g
        return c_frl * g ** (-1.0 / m)

    @njit(cache=True)
    def _scan2(code, w, s, gamma, beta2, sb, c_frl, r, p_total, n):
        best = np.inf
        bf = 0.0
        p = np.empty(2)
        for i in range(n + 1):
            f1 = i / n
            p[0] = f1 * p_total / r[0]
            p[1] = (1.0 - f1) * p_total / r[1]
            v = _eval_one(code, w, s, gamma, beta2, sb, c_frl, p)
            if v < best:
                best = v
                bf = f1
        return best, bf

    @njit(cache=True)
    def _scan3(code, w, s, gamma, beta2, sb, c_frl, r, p_total, n):
        best = np.inf
        bf1 = 0.0
        bf2 = 0.0
        p = np.empty(3)
        for i in range(n + 1):
            f1 = i / n
            for j in range(n + 1 - i):
                f2 = j / n
                p[0] = f1 * p_total / r[0]
                p[1] = f2 * p_total / r[1]
                p[2] = (1.0 - f1 - f2) * p_total / r[2]
                v = _eval_one(code, w, s, gamma, beta2, sb, c_frl, p)
                if v < best:
                    best = v
                    bf1 = f1
                    bf2 = f2
        return best, bf1, bf2

    return {"scan2": _scan2, "scan3": _scan3}


def scan_simplex(code, tables, r, p_total, n, force_numpy=False):
    """Minimum of a bound family over the budget simplex at fraction step
    1/n.  Returns (best value, best power vector)."""
    r = np.asarray(r, float)
    m = r.size
    if force_numpy or m == 1 or not numba_enabled():
        return _scan_simplex_numpy(code, tables, r, p_total, n)
    if not _NUMBA_KERNELS:
        _NUMBA_KERNELS.update(_build_numba_kernels())
    w, s, gamma, beta2, sb, c_frl = tables
    if m == 2:
        best, f1 = _NUMBA_KERNELS["scan2"](code, w, s, gamma, beta2, sb, c_frl,
                                           r, p_total, n)
        fr = np.array([f1, 1.0 - f1])
    elif m == 3:
        best, f1, f2 = _NUMBA_KERNELS["scan3"](code, w, s, gamma, beta2, sb, c_frl,
                                               r, p_total, n)
        fr = np.array([f1, f2, 1.0 - f1 - f2])
    else:
        raise ValueError("simplex scan supports M <= 3")
    return float(best), fr * (p_total / r)
