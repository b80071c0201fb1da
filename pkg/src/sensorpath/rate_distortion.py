"""Remote (CEO-style) rate-distortion and Gaussian vector source coding.

The remote problem splits the end-to-end MSE into an irreducible
estimation floor plus a classical rate-distortion term on the sufficient
statistic.  The vector problem diagonalizes the observation covariance
I + beta beta^T and reverse water-fills rate across the independent
components under transformed weights.

All rates at public boundaries are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

LOG2 = np.log(2.0)


@dataclass(frozen=True)
class RemoteRdParams:
    """Variance of the sufficient statistic and the estimation floor.

    For a unit-variance source the two always sum to one."""

    sigma_t_sq: float
    d_est: float


def sufficient_stat_params(beta) -> RemoteRdParams:
    """sigma_T^2 = sum(beta^2)/(1+sum(beta^2)), D_est = 1/(1+sum(beta^2))."""
    sb = float(np.sum(np.square(beta)))
    return RemoteRdParams(sigma_t_sq=sb / (1.0 + sb), d_est=1.0 / (1.0 + sb))


def remote_rd_distortion(beta, rate_bits: float) -> float:
    """End-to-end MSE of the remote compression problem at a given rate.

    D(R) = D_est + sigma_T^2 * 2^(-2R); D(0) = 1, D(inf) = D_est.
    """
    if rate_bits < 0:
        raise ValueError("rate must be non-negative")
    p = sufficient_stat_params(beta)
    return p.d_est + p.sigma_t_sq * 2.0 ** (-2.0 * rate_bits)


@dataclass(frozen=True)
class EigenStructure:
    """Deterministic eigen-decomposition of R_U = I + beta beta^T.

    lambdas holds (1, ..., 1, 1 + sum(beta^2)); q satisfies
    R_U = q^T diag(lambdas) q; gamma_prime is the diagonal of
    q^T diag(gamma) q read in the eigenbasis.
    """

    lambdas: np.ndarray
    q: np.ndarray
    gamma_prime: np.ndarray

    @property
    def M(self) -> int:
        return self.lambdas.size


def _householder_to(unit_target: np.ndarray) -> np.ndarray:
    """Symmetric reflector H with H @ e_last = unit_target."""
    m = unit_target.size
    e = np.zeros(m)
    e[-1] = 1.0
    v = e - unit_target
    nv2 = v @ v
    if nv2 < 1e-30:
        return np.eye(m)
    return np.eye(m) - 2.0 * np.outer(v, v) / nv2

def ru_eigen(beta, gamma=None) -> EigenStructure:
    """Eigen-structure of I + beta beta^T with a reproducible basis.

    The basis for the repeated unit eigenvalue is not unique; a fixed
    Householder reflection sending the last coordinate axis to
    beta/||beta|| pins it down so the transformed weights are
    reproducible run to run.
    """
    beta = np.asarray(beta, dtype=float)
    m = beta.size
    gamma = np.ones(m) if gamma is None else np.asarray(gamma, dtype=float)
    if gamma.size != m:
        raise ValueError("gamma and beta must have the same length")
    lambdas = np.ones(m)
    lambdas[-1] = 1.0 + beta @ beta
    h = _householder_to(beta / np.linalg.norm(beta))
    # H is symmetric, so with q = H^T = H we have R_U = q^T diag(lambdas) q.
    gamma_prime = np.einsum("ij,j,ji->i", h, gamma, h)
    return EigenStructure(lambdas=lambdas, q=h, gamma_prime=gamma_prime)


def waterfill_theta(lambdas, gamma_prime, rate_bits: float,
                    rate_tol: float = 1e-12) -> float:
    """Water level theta with sum of (1/2 log2(Lambda_m gamma'_m / theta))^+
    equal to the given total rate.

    Bisection on the monotone theta -> rate map, then an exact polish on
    the resolved active set.
    """
    lg = np.asarray(lambdas, float) * np.asarray(gamma_prime, float)
    if rate_bits <= 0:
        return float(lg.max())

    def total_rate(theta):
        return 0.5 * np.sum(np.maximum(np.log2(lg / theta), 0.0))

    hi = float(lg.max())
    lo = hi * 2.0 ** (-2.0 * rate_bits)   # all-components-active lower bound
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if total_rate(mid) > rate_bits:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rate_tol * hi:
            break
    theta = 0.5 * (lo + hi)
    # Exact solve on the active set the bisection identified.
    active = lg > theta
    if active.any():
        k = int(active.sum())
        log_theta = (np.sum(np.log2(lg[active])) - 2.0 * rate_bits) / k
        theta = float(2.0 ** log_theta)
    return theta


def vector_rd_exact(eig: EigenStructure, rate_bits: float) -> float:
    """Weighted distortion of the vector source at total rate R (bits).

    Reverse water-filling: D_m = min(theta/gamma'_m, Lambda_m) with theta
    set so the component rates sum to R.
    """
    if rate_bits < 0:
        raise ValueError("rate must be non-negative")
    if rate_bits == 0:
        return float(np.dot(eig.gamma_prime, eig.lambdas))
    theta = waterfill_theta(eig.lambdas, eig.gamma_prime, rate_bits)
    d = np.minimum(theta / eig.gamma_prime, eig.lambdas)
    return float(np.dot(eig.gamma_prime, d))


def vector_rd_highrate(eig: EigenStructure, rate_bits: float) -> float:
    """All-components-active closed form: a lower bound on vector_rd_exact,
    tight when the water level keeps every component active."""
    if rate_bits < 0:
        raise ValueError("rate must be non-negative")
    m = eig.M
    log_prod = np.sum(np.log(eig.lambdas * eig.gamma_prime))
    return float(m * np.exp(log_prod / m) * 2.0 ** (-2.0 * rate_bits / m))


def highrate_active(eig: EigenStructure, rate_bits: float) -> bool:
    """Whether the high-rate formula's implied water level keeps all
    components active (theta <= min Lambda_m gamma'_m)."""
    theta = vector_rd_highrate(eig, rate_bits) / eig.M
    return bool(theta <= np.min(eig.lambdas * eig.gamma_prime) + 1e-15)
