"""Independent ground-truth generators.

Monte Carlo simulation of the per-symbol amplify-and-forward scheme,
brute-force searches over the budget simplex and over rate splits, and
the matched/mismatched channel-ordering experiment.  None of these share
code paths with the closed forms they validate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionTooLarge
from .model import NetworkParams, PowerAllocation


@dataclass(frozen=True)
class McConfig:
    """Trial count and master seed for a Monte Carlo run.

    The same seed always yields the bit-identical sample stream: per shard
    the draw order is S (n,), then W (M, n) in row-major order, then Z (n,),
    all from numpy's PCG64 generator.  Shard seeds are spawned from the
    master SeedSequence so serial and parallel runs agree.
    """

    n_samples: int = 100_000
    seed: int = 0
    shards: int = 1


@dataclass(frozen=True)
class McResult:
    sr_mse: float
    sr_se: float
    fr_mse: np.ndarray
    fr_se: np.ndarray
    n_samples: int


def mc_af_mse(params: NetworkParams, p: PowerAllocation, cfg: McConfig) -> McResult:
    """Empirical SR and per-sensor FR MSEs of the AF scheme.

    Each sensor transmits X_m = sqrt(P_m/(1+beta_m^2)) U_m; the receiver
    applies the analytic LMMSE coefficients, and errors are averaged over
    sampled (S, W, Z).  Standard errors come from the sample variance of
    the squared errors.
    """
    alpha, beta = params.alpha, params.beta
    m = params.M
    scale = np.sqrt(p.p / (1.0 + beta ** 2))
    c = alpha * scale
    a_term = float(np.dot(beta, c))
    g = 1.0 + a_term ** 2 + float(np.dot(c, c))
    k_s = a_term / g                       # LMMSE gain for the source
    k_u = (c + beta * a_term) / g          # per-sensor LMMSE gains

    seq = np.random.SeedSequence(cfg.seed)
    shard_seqs = seq.spawn(cfg.shards)
    per_shard = cfg.n_samples // cfg.shards
    counts = [per_shard + (1 if i < cfg.n_samples % cfg.shards else 0)
              for i in range(cfg.shards)]

    sum_e = 0.0
    sum_e2 = 0.0
    fr_sum = np.zeros(m)
    fr_sum2 = np.zeros(m)
    n_total = 0
    for sseq, n in zip(shard_seqs, counts):
        if n == 0:
            continue
        rng = np.random.default_rng(sseq)
        src = rng.standard_normal(n)
        w = rng.standard_normal((m, n))
        z = rng.standard_normal(n)
        u = beta[:, None] * src[None, :] + w
        y = z + (alpha * scale) @ u
        e_sr = (src - k_s * y) ** 2
        sum_e += e_sr.sum()
        sum_e2 += (e_sr ** 2).sum()
        e_fr = (u - k_u[:, None] * y[None, :]) ** 2
        fr_sum += e_fr.sum(axis=1)
        fr_sum2 += (e_fr ** 2).sum(axis=1)
        n_total += n

    sr_mse = sum_e / n_total
    sr_var = max(sum_e2 / n_total - sr_mse ** 2, 0.0)
    fr_mse = fr_sum / n_total
    fr_var = np.maximum(fr_sum2 / n_total - fr_mse ** 2, 0.0)
    return McResult(sr_mse=float(sr_mse), sr_se=float(np.sqrt(sr_var / n_total)),
                    fr_mse=fr_mse, fr_se=np.sqrt(fr_var / n_total),
                    n_samples=n_total)


FAMILY_CODES = {
    "sr-upper": _kernels.SR_UPPER,
    "sr-lower": _kernels.SR_LOWER,
    "fr-upper": _kernels.FR_UPPER,
    "fr-lower": _kernels.FR_LOWER,   # high-rate closed form of the FR lower bound
}


def batch_bound(params: NetworkParams, family: str):
    """Vectorized evaluator of a bound family over an (N, M) power matrix.

    The returned callable carries the precomputed tables so the simplex
    scan can hand the evaluation to the compiled kernel.
    """
    code = FAMILY_CODES[family]
    tables = _kernels.bound_tables(params, code)

    def fn(p_matrix):
        return _kernels.eval_bounds_batch(code, tables, np.atleast_2d(p_matrix))

    fn.kernel_code = code
    fn.kernel_tables = tables
    return fn


def brute_force_power(bound_fn, r, p_total, resolution=1e-3):
    """Exhaustive minimum of a bound over {sum r P = P_T, P >= 0}.

    `resolution` is the step in budget fractions.  bound_fn must either
    map an (N, M) power matrix to (N,) values, or carry kernel attributes
    from batch_bound (which enables the compiled scan).
    Returns (best value, best PowerAllocation).
    """
    r = np.asarray(r, float)
    m = r.size
    if m > 3:
        raise DimensionTooLarge("brute-force power search supports M <= 3")
    n = max(1, int(round(1.0 / resolution)))
    if m == 1:
        p = np.array([p_total / r[0]])
        val = float(np.asarray(bound_fn(p[None, :]))[0])
        return val, PowerAllocation.of(p, r)
    code = getattr(bound_fn, "kernel_code", None)
    if code is not None:
        val, p = _kernels.scan_simplex(code, bound_fn.kernel_tables, r, p_total, n)
        return val, PowerAllocation.of(p, r)
    # Generic callable: chunked numpy scan.
    best = np.inf
    best_p = None
    for fr_chunk in _fraction_chunks(m, n):
        pm = fr_chunk * (p_total / r)
        vals = np.asarray(bound_fn(pm))
        k = int(np.argmin(vals))
        if vals[k] < best:
            best = float(vals[k])
            best_p = pm[k].copy()
    return best, PowerAllocation.of(best_p, r)


def _fraction_chunks(m, n, chunk_rows=256):
    f = np.linspace(0.0, 1.0, n + 1)
    if m == 2:
        yield np.column_stack([f, 1.0 - f])
        return
    for start in range(0, n + 1, chunk_rows):
        stop = min(start + chunk_rows, n + 1)
        f1 = np.repeat(f[start:stop], n + 1)
        f2 = np.tile(f, stop - start)
        keep = f1 + f2 <= 1.0 + 1e-12
        if keep.any():
            yield np.column_stack([f1[keep], f2[keep],
                                   np.clip(1.0 - f1[keep] - f2[keep], 0.0, 1.0)])


def brute_force_waterfill(lambdas, gamma_prime, rate_bits, resolution=1e-3):
    """Minimum weighted distortion over gridded rate splits summing to R.

    Gridding the component rates keeps the total-rate constraint exact;
    D_m = Lambda_m 2^(-2 R_m) parametrizes the admissible distortions.
    """
    lam = np.asarray(lambdas, float)
    gp = np.asarray(gamma_prime, float)
    m = lam.size
    if m > 3:
        raise DimensionTooLarge("brute-force water-filling supports M <= 3")
    if rate_bits == 0:
        return float(np.dot(gp, lam))
    if m == 1:
        return float(gp[0] * lam[0] * 2.0 ** (-2.0 * rate_bits))
    n = max(1, int(round(rate_bits / resolution)))
    rgrid = np.linspace(0.0, rate_bits, n + 1)
    if m == 2:
        d = (gp[0] * lam[0] * 2.0 ** (-2.0 * rgrid)
             + gp[1] * lam[1] * 2.0 ** (-2.0 * (rate_bits - rgrid)))
        return float(d.min())
    best = np.inf
    for r1 in rgrid:
        rest = rate_bits - r1
        k = int(round(rest / (rate_bits / n)))
        r2 = np.linspace(0.0, rest, max(k, 1) + 1)
        d = (gp[0] * lam[0] * 2.0 ** (-2.0 * r1)
             + gp[1] * lam[1] * 2.0 ** (-2.0 * r2)
             + gp[2] * lam[2] * 2.0 ** (-2.0 * (rest - r2)))
        best = min(best, float(d.min()))
    return best


# ---------------------------------------------------------------------------
# Matched / mismatched channel-ordering experiment
# ---------------------------------------------------------------------------

PAIRINGS = ("matched", "mismatched")
FAMILIES = ("sr-upper", "sr-lower", "fr-upper", "fr-lower")

# Power sweep: one decade, log-spaced (the per-sensor power P; the
# optimized runs use the equivalent budget P_T = P * sum(r)).
DEFAULT_SWEEP = tuple(np.logspace(0.0, 1.0, 9))


@dataclass(frozen=True)
class SweepResult:
    sweep: np.ndarray
    power_mode: str
    n_trials: int
    seed: int
    mean: dict      # (pairing, family) -> array over sweep points
    gap: dict       # (pairing, objective) -> array over sweep points

    def rows(self):
        """CSV-friendly rows: (power, pairing, family, mean_mse)."""
        for i, pw in enumerate(self.sweep):
            for pairing in PAIRINGS:
                for fam in FAMILIES:
                    yield (float(pw), pairing, fam, float(self.mean[(pairing, fam)][i]))


def _draw_orderings(m, n_trials, rng):
    """Uniform (0,1] gains, sorted into matched and reverse-ordered pairs."""
    alpha = 1.0 - rng.random((n_trials, m))
    beta = 1.0 - rng.random((n_trials, m))
    alpha_sorted = np.sort(alpha, axis=1)
    beta_sorted = np.sort(beta, axis=1)
    return {
        "matched": (alpha_sorted, beta_sorted),
        "mismatched": (alpha_sorted[:, ::-1].copy(), beta_sorted),
    }


def _fixed_bounds(alpha, beta, p_each):
    """All four bounds (unit gamma) at uniform per-sensor power, vectorized
    over a (T, M) batch of networks."""
    m = alpha.shape[1]
    w = alpha ** 2 / (1.0 + beta ** 2)
    s = alpha * beta / np.sqrt(1.0 + beta ** 2)
    b = p_each * w.sum(axis=1)
    a = np.sqrt(p_each) * s.sum(axis=1)
    sb = (beta ** 2).sum(axis=1)
    g = 1.0 + a * a + b
    return {
        "sr-upper": (1.0 + b) / g,
        "sr-lower": (1.0 + sb / g) / (1.0 + sb),
        "fr-upper": m + sb - (b + (2.0 + sb) * a * a) / g,
        "fr-lower": m * ((1.0 + sb) / g) ** (1.0 / m),
    }


def _lambda_sr_batch(alpha, beta, r, iters=200):
    """Vectorized bisection for the SR multiplier over a (T, M) batch."""
    rb = r * (1.0 + beta ** 2)
    num = alpha ** 2 * beta ** 2
    a2 = alpha ** 2
    hi = (rb / a2).min(axis=1)
    lo = np.zeros_like(hi)
    hi_work = hi * (1.0 - 1e-12)
    for _ in range(iters):
        mid = 0.5 * (lo + hi_work)
        g = mid * np.sum(num / (rb - mid[:, None] * a2), axis=1) - 1.0
        below = g < 0.0
        lo = np.where(below, mid, lo)
        hi_work = np.where(below, hi_work, mid)
    return 0.5 * (lo + hi_work)


def _lambda_fr_batch(alpha, beta, r, p_total, iters=200):
    """Vectorized bisection for the FR-upper multiplier; NaN where the
    fixed point has no root in (0, P_T-scaled bracket)."""
    rb = r * (1.0 + beta ** 2)
    num = alpha ** 2 * beta ** 2
    a2 = alpha ** 2
    sb = (beta ** 2).sum(axis=1)
    lam_star = p_total * (1.0 + sb) / (2.0 + sb)

    def f(lam):
        sigma = np.sum(num / (rb + lam[:, None] * a2), axis=1)
        return (p_total * (1.0 + sb) - lam * (2.0 + sb)) * sigma - 1.0

    lo = np.zeros_like(lam_star)
    hi = lam_star.copy()
    ok = f(lo) > 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        above = f(mid) > 0.0
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    lam1 = 0.5 * (lo + hi)
    return np.where(ok, lam1, np.nan), sb


def _optimized_bounds(alpha, beta, p_each):
    """All four optimized bounds (unit gamma, unit r) for budget
    P_T = M * p_each, vectorized over a (T, M) batch.

    The FR lower value re-evaluates the fixed-power bound at the optimal
    allocation (1 + P_T/lam2 received SNR), which keeps the
    optimized-vs-uniform comparison consistent at all powers.
    """
    t, m = alpha.shape
    r = np.ones_like(alpha)
    p_total = m * p_each
    sb = (beta ** 2).sum(axis=1)

    s_up = np.sum(alpha ** 2 * beta ** 2
                  / (r * (1.0 + beta ** 2) + p_total * alpha ** 2), axis=1)
    sr_u = 1.0 / (1.0 + p_total * s_up)

    lam2 = _lambda_sr_batch(alpha, beta, r)
    sr_l = (1.0 + sb / (1.0 + p_total / lam2)) / (1.0 + sb)
    fr_l = m * ((1.0 + sb) / (1.0 + p_total / lam2)) ** (1.0 / m)

    lam1, _ = _lambda_fr_batch(alpha, beta, r, p_total)
    fr_u = m + sb + p_total / (lam1 - p_total)
    missing = np.isnan(lam1)
    if missing.any():
        from . import power_alloc
        for idx in np.nonzero(missing)[0]:
            params = NetworkParams(alpha=alpha[idx], beta=beta[idx])
            upper, _ = power_alloc.fr_bounds_opt(params, params.r, float(p_total))
            fr_u[idx] = upper.value
    return {"sr-upper": sr_u, "sr-lower": sr_l, "fr-upper": fr_u, "fr-lower": fr_l}


def matched_mismatched_experiment(m, n_trials, seed, power_mode="uniform",
                                  sweep=DEFAULT_SWEEP) -> SweepResult:
    """Mean bounds and upper/lower gaps for matched versus reverse-ordered
    sensing/communication channels, averaged over random networks."""
    if m < 1:
        raise ValueError("need at least one sensor")
    if power_mode not in ("uniform", "optimized"):
        raise ValueError(f"unknown power mode {power_mode!r}")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    orderings = _draw_orderings(m, n_trials, rng)
    sweep = np.asarray(sweep, float)
    mean = {}
    gap = {}
    for pairing, (alpha, beta) in orderings.items():
        per_fam = {fam: np.empty(sweep.size) for fam in FAMILIES}
        for i, p_each in enumerate(sweep):
            vals = (_fixed_bounds(alpha, beta, p_each) if power_mode == "uniform"
                    else _optimized_bounds(alpha, beta, p_each))
            for fam in FAMILIES:
                per_fam[fam][i] = vals[fam].mean()
        for fam in FAMILIES:
            mean[(pairing, fam)] = per_fam[fam]
        gap[(pairing, "sr")] = per_fam["sr-upper"] - per_fam["sr-lower"]
        gap[(pairing, "fr")] = per_fam["fr-upper"] - per_fam["fr-lower"]
    return SweepResult(sweep=sweep, power_mode=power_mode, n_trials=n_trials,
                       seed=seed, mean=mean, gap=gap)
