"""Optimal sensor power allocation under a weighted sum-power constraint.

The four bound families each reduce to a convex program whose KKT system
collapses to one scalar multiplier equation, solved by bisection inside an
analytic bracket.  Every returned allocation is certified by re-evaluating
the fixed-power bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import metrics, rate_distortion as rd
from .errors import BracketFailure, FixedPointDivergence, NonUnitGamma
from .model import NetworkParams, PowerAllocation

_CLAMP = 1e-15     # allocations below this are snapped to exactly zero
_BISECT_ITERS = 200


@dataclass(frozen=True)
class OptResult:
    """Optimized bound value with its certified allocation and multipliers."""

    value: float
    allocation: PowerAllocation
    multipliers: tuple
    residual: float
    family: str
    valid: bool = True
    method: str = "closed-form"
    broadcast: dict = field(default=None, repr=False)


def _bisect_increasing(f, lo, hi, iters=_BISECT_ITERS):
    """Root of a function increasing from f(lo) < 0 to f(hi) > 0."""
    flo = f(lo)
    if flo > 0:
        raise BracketFailure("no sign change at bracket start")
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton_polish(f, df, x, lo, hi, iters=4):
    """Drive |f| to the floating-point floor from a bisection root.

    Steps leaving (lo, hi) or not reducing |f| are rejected, so the
    bisection answer is never made worse.
    """
    fx = f(x)
    for _ in range(iters):
        d = df(x)
        if d == 0.0 or not np.isfinite(d):
            break
        x_new = x - fx / d
        if not (lo < x_new < hi):
            break
        f_new = f(x_new)
        if abs(f_new) >= abs(fx):
            break
        x, fx = x_new, f_new
    return x


def _kkt_powers(alpha, beta, r, lam, sign, p_total):
    """Per-sensor powers of the common KKT shape

        P_m = (lam2^2/4) alpha^2 beta^2 (1+beta^2) / (r(1+beta^2) + sign*lam*alpha^2)^2

    with lam2 normalized so the weighted powers meet the budget exactly.
    Returns (p, lam2_sq, scale) where scale is the post-clamp renormalizer.
    """
    den = r * (1.0 + beta ** 2) + sign * lam * alpha ** 2
    shape = alpha ** 2 * beta ** 2 * (1.0 + beta ** 2) / den ** 2
    tau = float(np.dot(r, shape))
    lam2_sq = 4.0 * p_total / tau
    p = 0.25 * lam2_sq * shape
    p[p < _CLAMP] = 0.0
    scale = p_total / float(np.dot(r, p))
    return p * scale, lam2_sq, scale


def solve_lambda_sr(params: NetworkParams, r=None):
    """Multiplier of the SR-lower (and FR-lower) allocation problem.

    Unique root of  sum alpha^2 beta^2 / (r(1+beta^2) - lam alpha^2) = 1/lam
    inside (0, min_m r_m(1+beta_m^2)/alpha_m^2).  Returns (lam, residual)
    with the residual measured on the lam-cleared form.
    """
    alpha, beta = params.alpha, params.beta
    r = params.r if r is None else np.asarray(r, float)
    a2 = alpha ** 2
    rb = r * (1.0 + beta ** 2)
    hi = float(np.min(rb / a2))
    if not (hi > 0 and np.isfinite(hi)):
        raise BracketFailure(f"empty multiplier bracket (hi={hi})")

    num = a2 * beta ** 2
    # Solve in x = hi - lam, the distance to the nearest denominator pole.
    # The binding denominator is then base + x*a2 with base ~ 0, which
    # avoids the catastrophic cancellation of rb - lam*a2 when the root
    # sits very close to the pole (tiny beta), so the reported residual is
    # meaningful down to the 1e-10 scale.
    base = np.maximum(rb - hi * a2, 0.0)   # exact 0 at the binding pole

    def g(x):
        return (hi - x) * float(np.sum(num / (base + x * a2))) - 1.0

    def dg(x):
        den = base + x * a2
        return (-float(np.sum(num / den))
                - (hi - x) * float(np.sum(num * a2 / den ** 2)))

    x = _bisect_increasing(lambda t: -g(t), hi * 1e-300, hi)
    x = _newton_polish(g, dg, x, 0.0, hi)
    return hi - x, abs(g(x))


def sr_lower_opt(params: NetworkParams, r=None, p_total: float = None) -> OptResult:
    """Optimized SR lower bound (exact closed form) with its allocation."""
    r = params.r if r is None else np.asarray(r, float)
    lam, residual = solve_lambda_sr(params, r)
    sb = float(np.dot(params.beta, params.beta))
    value = (1.0 + sb / (1.0 + p_total / lam)) / (1.0 + sb)
    p, lam2_sq, scale = _kkt_powers(params.alpha, params.beta, r, lam, -1.0, p_total)
    alloc = PowerAllocation.of(p, r)
    return OptResult(
        value=value, allocation=alloc,
        multipliers=(lam, math.sqrt(lam2_sq)), residual=residual,
        family="sr-lower",
        broadcast={"lam": lam, "sign": -1.0, "lam2_sq": lam2_sq, "scale": scale})


def sr_upper_opt(params: NetworkParams, r=None, p_total: float = None) -> OptResult:
    """Optimized SR upper bound.

    The value is closed form; the allocation shares the KKT shape of the
    lower-bound problem with the multiplier pinned at P_T, and is
    certified by re-evaluating the fixed-power bound.
    """
    r = params.r if r is None else np.asarray(r, float)
    alpha, beta = params.alpha, params.beta
    s1 = float(np.sum(alpha ** 2 * beta ** 2
                      / (r * (1.0 + beta ** 2) + p_total * alpha ** 2)))
    value = 1.0 / (1.0 + p_total * s1)
    p, lam2_sq, scale = _kkt_powers(alpha, beta, r, p_total, +1.0, p_total)
    alloc = PowerAllocation.of(p, r)
    residual = abs(metrics.sr_upper(params, alloc).distortion - value)
    return OptResult(
        value=value, allocation=alloc,
        multipliers=(p_total, math.sqrt(lam2_sq)), residual=residual,
        family="sr-upper",
        broadcast={"lam": p_total, "sign": 1.0, "lam2_sq": lam2_sq, "scale": scale})


def _fr_upper_multiplier_terms(params: NetworkParams, r, p_total):
    alpha, beta = params.alpha, params.beta
    sb = float(np.dot(beta, beta))
    num = alpha ** 2 * beta ** 2
    a2 = alpha ** 2
    rb = r * (1.0 + beta ** 2)

    def f(lam1):
        # lam-cleared fixed point induced by the slack-variable KKT system:
        # (P_T(1+sb) - lam1(2+sb)) * sigma(lam1) = 1, strictly decreasing.
        sigma = float(np.sum(num / (rb + lam1 * a2)))
        return (p_total * (1.0 + sb) - lam1 * (2.0 + sb)) * sigma - 1.0

    def df(lam1):
        den = rb + lam1 * a2
        sigma = float(np.sum(num / den))
        dsigma = -float(np.sum(num * a2 / den ** 2))
        return (-(2.0 + sb) * sigma
                + (p_total * (1.0 + sb) - lam1 * (2.0 + sb)) * dsigma)

    lam_star = p_total * (1.0 + sb) / (2.0 + sb)
    return f, df, lam_star


def solve_lambda_fr(params: NetworkParams, r=None, p_total: float = None):
    """Multipliers (lam1, lam2) of the FR power optimization.

    lam2 solves the same equation as the SR multiplier; lam1 is the root
    of the upper-bound fixed point inside (0, P_T).  Raises
    FixedPointDivergence when that root does not exist (low-power regime).
    Returns (lam1, lam2, residual1, residual2).
    """
    r = params.r if r is None else np.asarray(r, float)
    lam2, res2 = solve_lambda_sr(params, r)
    f, df, lam_star = _fr_upper_multiplier_terms(params, r, p_total)
    lo = lam_star * 1e-300
    f_lo = f(lo)
    if f_lo <= 0.0:
        if f_lo > -1e-8:
            return 0.0, lam2, abs(f_lo), res2   # root at the bracket boundary
        raise FixedPointDivergence(
            f"no multiplier root in (0, {p_total}); budget too small for the "
            "high-power fixed point")
    lam1 = _bisect_increasing(lambda x: -f(x), lo, lam_star)
    lam1 = _newton_polish(f, df, lam1, 0.0, lam_star)
    return lam1, lam2, abs(f(lam1)), res2


def _fr_upper_fallback(params: NetworkParams, r, p_total) -> OptResult:
    """Low-power fallback for the optimized FR upper bound.

    The budget-normalized KKT power shape stays optimal with the
    multiplier continued to negative values, so a bounded 1-D search over
    the multiplier replaces the fixed point when it has no positive root.
    """
    from scipy.optimize import minimize_scalar

    alpha, beta = params.alpha, params.beta

    def value_at(lam):
        p, _, _ = _kkt_powers(alpha, beta, r, lam, +1.0, p_total)
        return metrics.fr_upper(params, PowerAllocation.of(p, r)).distortion

    lam_min = -float(np.min(r * (1.0 + beta ** 2) / alpha ** 2))
    res = minimize_scalar(value_at, bounds=(lam_min * (1.0 - 1e-9), 100.0 * p_total),
                          method="bounded", options={"xatol": 1e-12})
    lam = float(res.x)
    p, lam2_sq, scale = _kkt_powers(alpha, beta, r, lam, +1.0, p_total)
    alloc = PowerAllocation.of(p, r)
    return OptResult(
        value=metrics.fr_upper(params, alloc).distortion, allocation=alloc,
        multipliers=(lam, math.sqrt(lam2_sq)), residual=0.0,
        family="fr-upper", method="numeric-fallback",
        broadcast={"lam": lam, "sign": 1.0, "lam2_sq": lam2_sq, "scale": scale})


def fr_lower_opt(params: NetworkParams, r=None, p_total: float = None) -> OptResult:
    """Optimized FR lower bound (all-active closed form), any field weights.

    The inner power problem is the same as the SR one for every gamma —
    the weights only enter through the constant (prod gamma')^(1/M) — so
    the allocation comes from the shared multiplier and the value is the
    fixed-power bound at the optimal received SNR 1 + P_T/lam2.  It is
    flagged invalid whenever it does not improve on the prior field
    variance or the water-filling activity condition fails.
    """
    r = params.r if r is None else np.asarray(r, float)
    alpha, beta = params.alpha, params.beta
    m = params.M
    sb = float(np.dot(beta, beta))
    prior = float(np.dot(params.gamma, 1.0 + beta ** 2))

    lam2, res2 = solve_lambda_sr(params, r)
    if params.unit_gamma:
        prod_gp = 1.0
        min_lg = 1.0 if m > 1 else 1.0 + sb
    else:
        eig = rd.ru_eigen(beta, params.gamma)
        prod_gp = float(np.prod(eig.gamma_prime))
        min_lg = float(np.min(eig.lambdas * eig.gamma_prime))
    low_value = m * ((1.0 + sb) * prod_gp / (1.0 + p_total / lam2)) ** (1.0 / m)
    p_low, lam2_sq_low, scale_low = _kkt_powers(alpha, beta, r, lam2, -1.0, p_total)
    theta = low_value / m
    low_valid = (low_value < prior - 1e-12) and (theta <= min_lg + 1e-15)
    return OptResult(
        value=low_value, allocation=PowerAllocation.of(p_low, r),
        multipliers=(lam2, math.sqrt(lam2_sq_low)), residual=res2,
        family="fr-lower", valid=low_valid,
        broadcast={"lam": lam2, "sign": -1.0, "lam2_sq": lam2_sq_low,
                   "scale": scale_low})


def fr_bounds_opt(params: NetworkParams, r=None, p_total: float = None):
    """Optimized FR bounds (upper, lower) for unit field weights.

    The upper value comes from the closed form in lam1 and its allocation
    from the matching KKT shape; the lower value from fr_lower_opt.
    Non-unit gamma must be folded into beta by the caller.
    """
    if not params.unit_gamma:
        raise NonUnitGamma("FR power optimization assumes unit field weights")
    r = params.r if r is None else np.asarray(r, float)
    alpha, beta = params.alpha, params.beta
    m = params.M
    sb = float(np.dot(beta, beta))
    prior = m + sb

    lower = fr_lower_opt(params, r, p_total)

    # Upper bound.
    try:
        f, df, lam_star = _fr_upper_multiplier_terms(params, r, p_total)
        lo = lam_star * 1e-300
        f_lo = f(lo)
        if f_lo <= 0.0:
            if f_lo <= -1e-8:
                raise FixedPointDivergence("no root")
            lam1, res1 = 0.0, abs(f_lo)
        else:
            lam1 = _bisect_increasing(lambda x: -f(x), lo, lam_star)
            lam1 = _newton_polish(f, df, lam1, 0.0, lam_star)
            res1 = abs(f(lam1))
        up_value = prior + p_total / (lam1 - p_total)
        p_up, lam2_sq_up, scale_up = _kkt_powers(alpha, beta, r, lam1, +1.0, p_total)
        upper = OptResult(
            value=up_value, allocation=PowerAllocation.of(p_up, r),
            multipliers=(lam1, math.sqrt(lam2_sq_up)), residual=res1,
            family="fr-upper",
            broadcast={"lam": lam1, "sign": 1.0, "lam2_sq": lam2_sq_up,
                       "scale": scale_up})
    except FixedPointDivergence:
        upper = _fr_upper_fallback(params, r, p_total)
    return upper, lower


@dataclass(frozen=True)
class BroadcastRecipe:
    """Global constants the collector broadcasts so each sensor can
    recompute its own power from purely local parameters."""

    family: str
    lam: float
    sign: float
    lam2_sq: float
    scale: float

    def power_for(self, alpha_m, beta_m, r_m) -> float:
        den = r_m * (1.0 + beta_m ** 2) + self.sign * self.lam * alpha_m ** 2
        p = 0.25 * self.lam2_sq * alpha_m ** 2 * beta_m ** 2 * (1.0 + beta_m ** 2) / den ** 2
        if p < _CLAMP:
            return 0.0
        return p * self.scale


def allocation_broadcast_view(result: OptResult) -> BroadcastRecipe:
    """Distributed view of an optimized allocation: each sensor recovers
    P_m from (alpha_m, beta_m, r_m) plus the broadcast constants."""
    if result.broadcast is None:
        raise ValueError(f"{result.family} result carries no broadcastable recipe")
    return BroadcastRecipe(family=result.family, **result.broadcast)
