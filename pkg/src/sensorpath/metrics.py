"""Closed-form distortion bounds for a fixed power vector.

Source reconstruction (SR): MSE in estimating the hidden unit-variance
source from the channel output.  Field reconstruction (FR): weighted MSE
in estimating the sensor observations themselves.  Upper bounds come from
the uncoded amplify-and-forward scheme with an LMMSE receiver; lower
bounds from the channel rate combined with the matching rate-distortion
function.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import rate_distortion as rd
from .errors import DomainError
from .model import (EXACT, FIXED, FR, HIGH_RATE, LOWER, OPTIMIZED, SR, UPPER,
                    MetricSpec, NetworkParams, PowerAllocation)


# Fault-injection hook: the received-gain trim is 1.0 in normal operation.
# Setting the environment variable to anything else corrupts the AF gain
# model on purpose, so the validation command can prove it detects a bad
# constant (it must exit non-zero under any trim != 1).
_AF_GAIN_TRIM = float(os.environ.get("SENSORPATH_AF_GAIN_TRIM", "1.0"))


@dataclass(frozen=True)
class BoundValue:
    """A distortion bound, optional per-sensor components (FR upper), and a
    validity flag that goes false when a formula is evaluated outside its
    regime (never an error, so sweeps keep running)."""

    distortion: float
    components: np.ndarray = None
    valid: bool = True


def af_terms(params: NetworkParams, p: PowerAllocation):
    """Coherent and incoherent received-signal terms of the AF scheme.

    Returns (A, B) with A = sum beta_m alpha_m sqrt(P_m/(1+beta_m^2)) and
    B = sum alpha_m^2 P_m/(1+beta_m^2).  The channel-output second moment
    is 1 + A^2 + B and the achievable rate is (1/2) log2(1 + A^2 + B).
    """
    c = _AF_GAIN_TRIM * params.alpha * np.sqrt(p.p / (1.0 + params.beta ** 2))
    a = float(np.dot(params.beta, c))
    b = float(np.dot(c, c))
    return a, b


def af_rate_bits(params: NetworkParams, p: PowerAllocation) -> float:
    a, b = af_terms(params, p)
    return 0.5 * np.log2(1.0 + a * a + b)


def sr_upper(params: NetworkParams, p: PowerAllocation) -> BoundValue:
    """AF-scheme source-reconstruction MSE: (1 + B) / (1 + A^2 + B)."""
    a, b = af_terms(params, p)
    return BoundValue(distortion=(1.0 + b) / (1.0 + a * a + b))


def sr_lower(params: NetworkParams, p: PowerAllocation) -> BoundValue:
    """Converse source-reconstruction MSE: remote rate-distortion function
    evaluated at the channel rate."""
    a, b = af_terms(params, p)
    sb = float(np.dot(params.beta, params.beta))
    d = (1.0 + sb / (1.0 + a * a + b)) / (1.0 + sb)
    return BoundValue(distortion=d)


def fr_upper(params: NetworkParams, p: PowerAllocation) -> BoundValue:
    """AF-scheme field-reconstruction MSE via per-sensor LMMSE distortions.

    J_m = 1 + beta_m^2 - (c_m + beta_m A)^2 / (1 + A^2 + B); the bound is
    the gamma-weighted sum of the J_m.
    """
    c = _AF_GAIN_TRIM * params.alpha * np.sqrt(p.p / (1.0 + params.beta ** 2))
    a = float(np.dot(params.beta, c))
    b = float(np.dot(c, c))
    cross = c + params.beta * a            # E{U_m Y}
    comps = 1.0 + params.beta ** 2 - cross ** 2 / (1.0 + a * a + b)
    return BoundValue(distortion=float(np.dot(params.gamma, comps)),
                      components=comps)


def fr_upper_unit_gamma_closed_form(params: NetworkParams, p: PowerAllocation) -> float:
    """Independent single-expression form of the FR upper bound for unit
    field weights; used to cross-check the per-sensor route."""
    a, b = af_terms(params, p)
    m = params.M
    sb = float(np.dot(params.beta, params.beta))
    return m + sb - (b + (2.0 + sb) * a * a) / (1.0 + a * a + b)


def fr_lower(params: NetworkParams, p: PowerAllocation, mode: str = EXACT) -> BoundValue:
    """Converse field-reconstruction MSE at the channel rate.

    'exact' inverts the water-filling vector rate-distortion function at
    the channel rate (valid at all powers); 'highrate' uses the
    all-components-active closed form and flags valid=False when the
    water-filling activity condition fails.
    """
    rate = af_rate_bits(params, p)
    eig = rd.ru_eigen(params.beta, params.gamma)
    if mode == EXACT:
        return BoundValue(distortion=rd.vector_rd_exact(eig, rate))
    if mode == HIGH_RATE:
        return BoundValue(distortion=rd.vector_rd_highrate(eig, rate),
                          valid=rd.highrate_active(eig, rate))
    raise ValueError(f"unknown fr_lower mode {mode!r}")


def mutual_info_bits(distortion: float) -> float:
    """Bits per sample conveyed about the source at a given SR distortion:
    -(1/2) log2(D)."""
    if not (0.0 < distortion <= 1.0):
        raise DomainError(f"SR distortion must lie in (0, 1], got {distortion}")
    return -0.5 * float(np.log2(distortion))


def evaluate(spec: MetricSpec, params: NetworkParams, power) -> BoundValue:
    """Dispatch a MetricSpec to the matching bound.

    For fixed power, `power` is a PowerAllocation; for optimized power it
    is the total budget P_T and the optimal allocation is solved first.
    """
    if spec.power == FIXED:
        if not isinstance(power, PowerAllocation):
            raise TypeError("fixed-power evaluation needs a PowerAllocation")
        if spec.objective == SR:
            return sr_upper(params, power) if spec.bound == UPPER else sr_lower(params, power)
        if spec.bound == UPPER:
            return fr_upper(params, power)
        return fr_lower(params, power, spec.fr_lower_mode)

    from . import power_alloc  # deferred: power_alloc imports this module
    p_total = float(power)
    if spec.objective == SR:
        res = (power_alloc.sr_upper_opt if spec.bound == UPPER
               else power_alloc.sr_lower_opt)(params, params.r, p_total)
        return BoundValue(distortion=res.value, valid=res.valid)
    if spec.bound == LOWER:
        lower = power_alloc.fr_lower_opt(params, params.r, p_total)
        if spec.fr_lower_mode == EXACT:
            # Same inner optimization either way; re-evaluate the exact
            # water-filling bound at the optimal allocation.
            return fr_lower(params, lower.allocation, EXACT)
        return BoundValue(distortion=lower.value, valid=lower.valid)
    if not params.unit_gamma:
        # Fold the field weights into the sensing gains so the unit-weight
        # optimizer applies.
        params = NetworkParams(alpha=params.alpha,
                               beta=np.sqrt(params.gamma) * params.beta,
                               gamma=np.ones(params.M), r=params.r)
    upper, _ = power_alloc.fr_bounds_opt(params, params.r, p_total)
    return BoundValue(distortion=upper.value, valid=upper.valid)
