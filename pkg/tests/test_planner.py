import numpy as np
import pytest

from sensorpath import metrics, planner
from sensorpath.model import Grid, MetricSpec, Scenario, bundled_scenario

GRID = Grid(-1.5, 2.0, -1.5, 1.5, 0.01)


def make_scenario(sensors, av_start=(-1.0, 0.0), source=(1.5, 0.0),
                  a=1.0, b=1.0, powers=None, grid=GRID):
    powers = np.ones(len(sensors)) if powers is None else np.asarray(powers, float)
    return Scenario(source_pos=source, sensor_pos=tuple(sensors),
                    av_start=av_start, a=a, b=b, grid=grid,
                    per_sensor_power=powers, scenario_id="test")


class TestGreedyPlan:
    def test_costs_never_increase(self):
        sc = make_scenario([(0.5, 0.3), (-0.2, -0.6)])
        for name in ("sr-upper-fixed", "fr-upper-fixed", "sr-lower-opt"):
            res = planner.greedy_plan(sc, MetricSpec.parse(name), steps=15)
            assert all(a >= b for a, b in zip(res.costs, res.costs[1:]))

    def test_zero_steps(self):
        sc = make_scenario([(0.5, 0.0)])
        res = planner.greedy_plan(sc, MetricSpec.parse("sr-upper-fixed"), steps=0)
        assert res.positions == [sc.av_start]
        assert res.moves == []

    def test_negative_steps_rejected(self):
        sc = make_scenario([(0.5, 0.0)])
        with pytest.raises(ValueError):
            planner.greedy_plan(sc, MetricSpec.parse("sr-upper-fixed"), steps=-1)

    def test_moves_toward_single_sensor(self):
        sc = make_scenario([(0.5, 0.0)])
        res = planner.greedy_plan(sc, MetricSpec.parse("sr-upper-fixed"), steps=10)
        assert all(m == "+x" for m in res.moves)
        assert res.final_position == pytest.approx((-0.9, 0.0))

    def test_step_size_matches_grid(self):
        sc = make_scenario([(0.5, 0.4)])
        res = planner.greedy_plan(sc, MetricSpec.parse("sr-upper-fixed"), steps=5)
        for p, q in zip(res.positions, res.positions[1:]):
            d = abs(q[0] - p[0]) + abs(q[1] - p[1])
            assert d == pytest.approx(GRID.step, abs=1e-12) or d == 0.0

    def test_stall_when_cost_flat(self):
        sc = make_scenario([(0.5, 0.0)])
        # A constant cost field leaves the collector where it started.
        res = planner.greedy_plan(sc, MetricSpec.parse("sr-upper-fixed"),
                                  steps=5, cost_fn=lambda s, sp, pos: 1.0)
        assert res.final_position == sc.av_start
        assert res.stall_steps == list(range(5))
        assert res.tie_steps == list(range(5))

    def test_grid_boundary_respected(self):
        tight = Grid(-1.0, -0.8, -0.1, 0.1, 0.01)
        sc = make_scenario([(0.5, 0.0)], grid=tight)
        res = planner.greedy_plan(sc, MetricSpec.parse("sr-upper-fixed"), steps=40)
        for x, y in res.positions:
            assert tight.contains((x, y))
        assert res.final_position[0] == pytest.approx(-0.8)

    def test_mirror_symmetry(self):
        # Reflecting the whole scenario about the x-axis must reflect the
        # path, step for step, as long as no tie-break events occur.
        sensors = [(0.4, 0.5), (-0.3, -0.8)]
        sc = make_scenario(sensors, av_start=(-1.0, 0.25), source=(1.5, 0.3))
        mirrored = make_scenario([(x, -y) for x, y in sensors],
                                 av_start=(-1.0, -0.25), source=(1.5, -0.3))
        for name in ("sr-upper-fixed", "fr-upper-fixed"):
            a = planner.greedy_plan(sc, MetricSpec.parse(name), steps=12)
            b = planner.greedy_plan(mirrored, MetricSpec.parse(name), steps=12)
            assert not a.tie_steps and not b.tie_steps
            for (xa, ya), (xb, yb) in zip(a.positions, b.positions):
                assert xb == pytest.approx(xa, abs=1e-12)
                assert yb == pytest.approx(-ya, abs=1e-12)

    def test_information_descent_equals_sr_descent(self):
        # Maximizing recovered information is the same walk as minimizing
        # the SR distortion, because one is a monotone map of the other.
        sc = make_scenario([(0.5, 0.3), (-0.2, -0.6)], a=2.0, b=2.0)
        spec = MetricSpec.parse("sr-upper-fixed")

        def neg_info(scenario, sp, pos):
            return -metrics.mutual_info_bits(planner.metric_cost(scenario, sp, pos))

        sr_path = planner.greedy_plan(sc, spec, steps=12)
        info_path = planner.greedy_plan(sc, spec, steps=12, cost_fn=neg_info)
        assert info_path.positions == sr_path.positions
        assert info_path.moves == sr_path.moves


class TestCandidateCosts:
    def test_excludes_out_of_grid(self):
        tight = Grid(-1.0, 0.0, -1.0, 1.0, 0.01)
        sc = make_scenario([(0.5, 0.0)], grid=tight, av_start=(-1.0, 0.0))
        labels = [lab for lab, _, _ in planner.candidate_costs(
            sc, MetricSpec.parse("sr-upper-fixed"), (-1.0, 0.0))]
        assert "-x" not in labels
        assert set(labels) == {"stay", "+x", "+y", "-y"}

    def test_matches_metric_cost(self):
        sc = make_scenario([(0.5, 0.2)])
        spec = MetricSpec.parse("fr-lower-fixed")
        for label, pos, cost in planner.candidate_costs(sc, spec, (-0.5, 0.1)):
            assert cost == planner.metric_cost(sc, spec, pos)


class TestComparePaths:
    def test_requires_two_specs(self):
        sc = make_scenario([(0.5, 0.0)])
        with pytest.raises(ValueError):
            planner.compare_paths(sc, [MetricSpec.parse("sr-upper-fixed")])

    def test_identical_lower_bound_paths(self):
        # Every fixed-power lower bound is a monotone transform of the
        # received-signal power, so their greedy paths coincide exactly.
        sc = bundled_scenario("topology1")
        specs = [MetricSpec.parse("sr-lower-fixed"),
                 MetricSpec.parse("fr-lower-fixed")]
        cmp = planner.compare_paths(sc, specs, steps=10)
        assert all(v is None for v in cmp.first_divergence.values())

    def test_divergence_reported(self):
        sc = bundled_scenario("topology1")
        specs = [MetricSpec.parse("sr-lower-fixed"),
                 MetricSpec.parse("fr-upper-fixed")]
        cmp = planner.compare_paths(sc, specs, steps=10)
        (step,) = cmp.first_divergence.values()
        assert step is not None and step >= 1

    def test_final_distances_shape(self):
        sc = bundled_scenario("topology1")
        specs = [MetricSpec.parse("sr-upper-fixed"),
                 MetricSpec.parse("sr-lower-fixed")]
        cmp = planner.compare_paths(sc, specs, steps=5)
        for dists in cmp.final_sensor_dist.values():
            assert dists.shape == (sc.M,)
