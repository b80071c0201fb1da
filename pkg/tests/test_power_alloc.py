import numpy as np
import pytest

from sensorpath import metrics, oracle, power_alloc
from sensorpath.errors import FixedPointDivergence
from sensorpath.model import NetworkParams, PowerAllocation

UNIT = NetworkParams(alpha=[1.0], beta=[1.0])


def random_params(rng, m=None):
    m = int(rng.integers(1, 6)) if m is None else m
    return NetworkParams(alpha=1.0 - rng.random(m), beta=1.0 - rng.random(m))


class TestMultipliers:
    def test_single_unit_sensor(self):
        lam, res = power_alloc.solve_lambda_sr(UNIT)
        assert lam == pytest.approx(1.0, abs=1e-12)
        assert res <= 1e-12

    def test_symmetric_pair(self):
        params = NetworkParams(alpha=[1.0, 1.0], beta=[1.0, 1.0])
        lam, res = power_alloc.solve_lambda_sr(params)
        assert lam == pytest.approx(2.0 / 3.0, abs=1e-12)
        assert res <= 1e-12

    def test_single_sensor_closed_form(self):
        # M=1 the equation is linear: lam = r(1+b^2)/(a^2(1+b^2)) = r/a^2.
        rng = np.random.default_rng(8)
        for _ in range(100):
            a = float(1.0 - rng.random())
            b = float(1.0 - rng.random())
            params = NetworkParams(alpha=[a], beta=[b])
            lam, _ = power_alloc.solve_lambda_sr(params)
            assert lam == pytest.approx(1.0 / a ** 2, rel=1e-12)

    def test_weight_scaling_homogeneity(self):
        params = NetworkParams(alpha=[0.4, 0.9, 0.6], beta=[0.7, 0.2, 0.5])
        lam1, _ = power_alloc.solve_lambda_sr(params, np.ones(3))
        lam2, _ = power_alloc.solve_lambda_sr(params, 3.0 * np.ones(3))
        assert lam2 == pytest.approx(3.0 * lam1, rel=1e-12)

    def test_residuals_small(self):
        rng = np.random.default_rng(9)
        for _ in range(300):
            params = random_params(rng)
            p_total = float(1.0 + 9.0 * rng.random())
            _, res = power_alloc.solve_lambda_sr(params)
            assert res <= 1e-10
            try:
                _, _, res1, res2 = power_alloc.solve_lambda_fr(
                    params, params.r, p_total)
                assert res1 <= 1e-10 and res2 <= 1e-10
            except FixedPointDivergence:
                pass  # low-power regime: no fixed-point root to check

    def test_fr_low_budget_diverges(self):
        params = NetworkParams(alpha=[0.1, 0.1], beta=[0.1, 0.1])
        with pytest.raises(FixedPointDivergence):
            power_alloc.solve_lambda_fr(params, params.r, 1e-4)


class TestSrOpt:
    def test_unit_sensor_values(self):
        lo = power_alloc.sr_lower_opt(UNIT, p_total=1.0)
        up = power_alloc.sr_upper_opt(UNIT, p_total=1.0)
        assert lo.value == pytest.approx(0.75, abs=1e-12)
        assert up.value == pytest.approx(0.75, abs=1e-12)
        assert np.allclose(lo.allocation.p, [1.0])
        assert np.allclose(up.allocation.p, [1.0])

    def test_symmetric_pair_lower(self):
        params = NetworkParams(alpha=[1.0, 1.0], beta=[1.0, 1.0])
        res = power_alloc.sr_lower_opt(params, p_total=2.0)
        # 1 + P_T/lam = 4 with lam = 2/3 ... D = (1 + 2/4)/3 = 0.5.
        assert res.value == pytest.approx(0.5, abs=1e-12)
        assert np.allclose(res.allocation.p, [1.0, 1.0])

    def test_high_budget_upper_limit(self):
        params = NetworkParams(alpha=[1.0, 1.0], beta=[1.0, 1.0])
        res = power_alloc.sr_upper_opt(params, p_total=1e9)
        assert res.value == pytest.approx(1.0 / 3.0, abs=1e-6)

    def test_matches_brute_force(self):
        params = NetworkParams(alpha=[1.0, 2.0], beta=[2.0, 1.0])
        for family, opt in (("sr-lower", power_alloc.sr_lower_opt),
                            ("sr-upper", power_alloc.sr_upper_opt)):
            res = opt(params, params.r, 10.0)
            bf, _ = oracle.brute_force_power(
                oracle.batch_bound(params, family), params.r, 10.0, 1e-3)
            assert res.value == pytest.approx(bf, abs=1e-3)

    def test_reevaluation_certifies_value(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            params = random_params(rng)
            p_total = float(1.0 + 9.0 * rng.random())
            lo = power_alloc.sr_lower_opt(params, params.r, p_total)
            up = power_alloc.sr_upper_opt(params, params.r, p_total)
            assert metrics.sr_lower(params, lo.allocation).distortion == pytest.approx(
                lo.value, abs=1e-8)
            assert metrics.sr_upper(params, up.allocation).distortion == pytest.approx(
                up.value, abs=1e-6)

    def test_budget_tight(self):
        rng = np.random.default_rng(11)
        for _ in range(200):
            params = random_params(rng)
            r = 0.5 + rng.random(params.M)
            p_total = float(1.0 + 9.0 * rng.random())
            for res in (power_alloc.sr_lower_opt(params, r, p_total),
                        power_alloc.sr_upper_opt(params, r, p_total)):
                assert float(np.dot(r, res.allocation.p)) == pytest.approx(
                    p_total, abs=1e-9 * p_total)

    def test_never_worse_than_uniform(self):
        rng = np.random.default_rng(12)
        for _ in range(1000):
            params = random_params(rng)
            p_total = float(1.0 + 9.0 * rng.random())
            uniform = PowerAllocation.uniform(p_total, params.r)
            lo = power_alloc.sr_lower_opt(params, params.r, p_total)
            up = power_alloc.sr_upper_opt(params, params.r, p_total)
            assert lo.value <= metrics.sr_lower(params, uniform).distortion + 1e-9
            assert up.value <= metrics.sr_upper(params, uniform).distortion + 1e-9

    def test_monotone_in_budget(self):
        params = NetworkParams(alpha=[0.3, 0.8, 0.5], beta=[0.9, 0.4, 0.6])
        budgets = np.linspace(0.5, 50.0, 50)
        lo = [power_alloc.sr_lower_opt(params, params.r, b).value for b in budgets]
        up = [power_alloc.sr_upper_opt(params, params.r, b).value for b in budgets]
        assert all(a > b for a, b in zip(lo, lo[1:]))
        assert all(a > b for a, b in zip(up, up[1:]))


class TestFrOpt:
    def test_unit_sensor_bounds_coincide(self):
        upper, lower = power_alloc.fr_bounds_opt(UNIT, p_total=1.0)
        assert upper.value == pytest.approx(1.0, abs=1e-12)
        assert lower.value == pytest.approx(1.0, abs=1e-12)

    def test_matches_brute_force(self):
        params = NetworkParams(alpha=[1.0, 2.0], beta=[2.0, 1.0])
        upper, lower = power_alloc.fr_bounds_opt(params, params.r, 10.0)
        for family, res in (("fr-upper", upper), ("fr-lower", lower)):
            bf, _ = oracle.brute_force_power(
                oracle.batch_bound(params, family), params.r, 10.0, 1e-3)
            assert res.value == pytest.approx(bf, abs=2e-3)

    def test_upper_reevaluation(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            params = random_params(rng)
            p_total = float(1.0 + 9.0 * rng.random())
            upper, _ = power_alloc.fr_bounds_opt(params, params.r, p_total)
            direct = metrics.fr_upper(params, upper.allocation).distortion
            assert direct == pytest.approx(upper.value, abs=1e-6)

    def test_low_budget_fallback_engages(self):
        params = NetworkParams(alpha=[0.1, 0.1], beta=[0.1, 0.1])
        upper, _ = power_alloc.fr_bounds_opt(params, params.r, 1e-4)
        assert upper.method == "numeric-fallback"
        direct = metrics.fr_upper(params, upper.allocation).distortion
        assert upper.value == pytest.approx(direct, abs=1e-12)
        # Still at least as good as uniform power.
        uniform = PowerAllocation.uniform(1e-4, params.r)
        assert upper.value <= metrics.fr_upper(params, uniform).distortion + 1e-12

    def test_lower_validity_flag(self):
        params = NetworkParams(alpha=[0.5, 0.5], beta=[0.5, 0.5])
        weak = power_alloc.fr_lower_opt(params, params.r, 1e-6)
        assert not weak.valid
        strong = power_alloc.fr_lower_opt(params, params.r, 1e4)
        assert strong.valid

    def test_lower_weighted_matches_search(self):
        # General field weights: compare against a brute-force scan of the
        # exact fixed-power bound over the budget simplex.
        params = NetworkParams(alpha=[0.8, 0.5], beta=[0.9, 0.6],
                               gamma=[1.0, 3.0])
        p_total = 50.0
        res = power_alloc.fr_lower_opt(params, params.r, p_total)
        assert res.valid

        def exact_bound(pm):
            return np.array([
                metrics.fr_lower(params, PowerAllocation.of(row)).distortion
                for row in np.atleast_2d(pm)])

        bf, _ = oracle.brute_force_power(exact_bound, params.r, p_total, 1e-2)
        direct = metrics.fr_lower(params, res.allocation).distortion
        assert direct == pytest.approx(bf, abs=1e-3)
        assert res.value == pytest.approx(bf, abs=1e-3)

    def test_never_worse_than_uniform(self):
        rng = np.random.default_rng(14)
        for _ in range(300):
            params = random_params(rng)
            p_total = float(1.0 + 9.0 * rng.random())
            uniform = PowerAllocation.uniform(p_total, params.r)
            upper, lower = power_alloc.fr_bounds_opt(params, params.r, p_total)
            assert upper.value <= metrics.fr_upper(params, uniform).distortion + 1e-9
            hr = metrics.fr_lower(params, uniform, "highrate").distortion
            assert lower.value <= hr + 1e-9


class TestBroadcast:
    def test_reproduces_allocation(self):
        rng = np.random.default_rng(15)
        for _ in range(200):
            params = random_params(rng)
            p_total = float(1.0 + 9.0 * rng.random())
            results = [power_alloc.sr_lower_opt(params, params.r, p_total),
                       power_alloc.sr_upper_opt(params, params.r, p_total),
                       power_alloc.fr_lower_opt(params, params.r, p_total)]
            upper, _ = power_alloc.fr_bounds_opt(params, params.r, p_total)
            results.append(upper)
            for res in results:
                recipe = power_alloc.allocation_broadcast_view(res)
                local = [recipe.power_for(params.alpha[i], params.beta[i],
                                          params.r[i])
                         for i in range(params.M)]
                assert np.allclose(local, res.allocation.p, atol=1e-12)

    def test_single_sensor_gets_full_budget(self):
        res = power_alloc.sr_lower_opt(UNIT, p_total=7.5)
        recipe = power_alloc.allocation_broadcast_view(res)
        assert recipe.power_for(1.0, 1.0, 1.0) == pytest.approx(7.5)

    def test_permutation_equivariance(self):
        params = NetworkParams(alpha=[0.3, 0.9, 0.6], beta=[0.8, 0.2, 0.5])
        perm = [2, 0, 1]
        swapped = NetworkParams(alpha=params.alpha[perm], beta=params.beta[perm])
        a = power_alloc.sr_lower_opt(params, params.r, 5.0)
        b = power_alloc.sr_lower_opt(swapped, swapped.r, 5.0)
        assert np.allclose(b.allocation.p, a.allocation.p[perm], atol=1e-12)
        assert b.value == pytest.approx(a.value, abs=1e-14)
