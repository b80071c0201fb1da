import numpy as np
import pytest

from sensorpath import rate_distortion as rd
from sensorpath.oracle import brute_force_waterfill


class TestRemoteRd:
    def test_sufficient_stat_unit_beta(self):
        p = rd.sufficient_stat_params([1.0])
        assert p.sigma_t_sq == pytest.approx(0.5)
        assert p.d_est == pytest.approx(0.5)

    def test_sufficient_stat_sums_to_one(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            beta = 1.0 - rng.random(int(rng.integers(1, 6)))
            p = rd.sufficient_stat_params(beta)
            assert p.sigma_t_sq + p.d_est == pytest.approx(1.0, abs=1e-15)

    def test_sufficient_stat_three_betas(self):
        p = rd.sufficient_stat_params([1.0, 1.0, 1.0])
        assert p.sigma_t_sq == pytest.approx(0.75)
        assert p.d_est == pytest.approx(0.25)

    def test_distortion_zero_rate_is_one(self):
        assert rd.remote_rd_distortion([0.3, 1.7], 0.0) == pytest.approx(1.0)

    def test_distortion_half_bit_unit_beta(self):
        assert rd.remote_rd_distortion([1.0], 0.5) == pytest.approx(0.75)

    def test_distortion_decreases_to_floor(self):
        beta = [0.5, 2.0]
        d_est = rd.sufficient_stat_params(beta).d_est
        rates = np.linspace(0.0, 10.0, 41)
        d = [rd.remote_rd_distortion(beta, r) for r in rates]
        assert all(a > b for a, b in zip(d, d[1:]))
        assert d[-1] == pytest.approx(d_est, abs=1e-5)

    def test_negative_rate_rejected(self):
        with pytest.raises(ValueError):
            rd.remote_rd_distortion([1.0], -0.1)


class TestEigen:
    def test_lambdas(self):
        eig = rd.ru_eigen([1.0, 1.0])
        assert np.allclose(sorted(eig.lambdas), [1.0, 3.0])

    def test_unit_gamma_prime_is_ones(self):
        eig = rd.ru_eigen([0.3, 1.2, 0.7])
        assert np.allclose(eig.gamma_prime, 1.0)

    def test_reconstructs_covariance(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            beta = 1.0 - rng.random(int(rng.integers(1, 6)))
            eig = rd.ru_eigen(beta)
            ru = eig.q.T @ np.diag(eig.lambdas) @ eig.q
            assert np.allclose(ru, np.eye(beta.size) + np.outer(beta, beta),
                               atol=1e-12)

    def test_gamma_prime_preserves_trace_and_product(self):
        beta = np.array([3.0, 4.0])
        gamma = np.array([1.0, 2.0])
        eig = rd.ru_eigen(beta, gamma)
        assert eig.gamma_prime.sum() == pytest.approx(gamma.sum())
        # det(Q^T diag(gamma) Q) = prod(gamma); the diagonal of a PSD matrix
        # majorizes its eigenvalues, so the diagonal product can only grow.
        assert np.prod(eig.gamma_prime) >= np.prod(gamma) - 1e-12

    def test_deterministic_basis(self):
        a = rd.ru_eigen([0.2, 0.9, 1.4], [1.0, 2.0, 3.0])
        b = rd.ru_eigen([0.2, 0.9, 1.4], [1.0, 2.0, 3.0])
        assert np.array_equal(a.q, b.q)
        assert np.array_equal(a.gamma_prime, b.gamma_prime)


class TestVectorRd:
    def test_zero_rate_is_prior(self):
        eig = rd.ru_eigen([1.0, 1.0])
        assert rd.vector_rd_exact(eig, 0.0) == pytest.approx(4.0)

    def test_exact_equals_highrate_when_all_active(self):
        # Eigenvalues (1, 3): at R = (1/2)log2(3) the water level sits
        # exactly at the smaller eigenvalue, both components active.
        eig = rd.ru_eigen([1.0, 1.0])
        rate = 0.5 * np.log2(3.0)
        exact = rd.vector_rd_exact(eig, rate)
        hr = rd.vector_rd_highrate(eig, rate)
        assert exact == pytest.approx(2.0, abs=1e-12)
        assert hr == pytest.approx(exact, abs=1e-12)
        assert rd.highrate_active(eig, rate)
        # Deeper into the active region the two stay equal.
        exact2 = rd.vector_rd_exact(eig, 2.0)
        assert rd.vector_rd_highrate(eig, 2.0) == pytest.approx(exact2, abs=1e-12)

    def test_highrate_below_exact_when_inactive(self):
        eig = rd.ru_eigen([1.0, 1.0])
        assert rd.vector_rd_highrate(eig, 0.0) == pytest.approx(2.0 * np.sqrt(3.0))
        assert rd.vector_rd_exact(eig, 0.0) == pytest.approx(4.0)
        assert not rd.highrate_active(eig, 0.0)

    def test_single_sensor_matches_scalar_rd(self):
        eig = rd.ru_eigen([1.0])
        assert rd.vector_rd_exact(eig, 0.5) == pytest.approx(1.0, abs=1e-12)
        assert rd.vector_rd_highrate(eig, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_highrate_never_exceeds_exact(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            m = int(rng.integers(1, 6))
            eig = rd.ru_eigen(1.0 - rng.random(m), 0.5 + rng.random(m))
            rate = 4.0 * rng.random()
            assert (rd.vector_rd_highrate(eig, rate)
                    <= rd.vector_rd_exact(eig, rate) + 1e-9)

    def test_exact_matches_rate_split_search(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            m = int(rng.integers(1, 4))
            eig = rd.ru_eigen(1.0 - rng.random(m), 0.5 + rng.random(m))
            rate = 0.2 + 3.8 * rng.random()
            bf = brute_force_waterfill(eig.lambdas, eig.gamma_prime, rate)
            assert rd.vector_rd_exact(eig, rate) == pytest.approx(bf, abs=1e-3)

    def test_waterfill_rate_consistency(self):
        eig = rd.ru_eigen([0.4, 1.1, 0.8], [1.0, 3.0, 0.5])
        for rate in (0.1, 0.7, 2.5):
            theta = rd.waterfill_theta(eig.lambdas, eig.gamma_prime, rate)
            lg = eig.lambdas * eig.gamma_prime
            total = 0.5 * np.sum(np.maximum(np.log2(lg / theta), 0.0))
            assert total == pytest.approx(rate, abs=1e-10)

    def test_negative_rate_rejected(self):
        eig = rd.ru_eigen([1.0])
        with pytest.raises(ValueError):
            rd.vector_rd_exact(eig, -1.0)
        with pytest.raises(ValueError):
            rd.vector_rd_highrate(eig, -1.0)
