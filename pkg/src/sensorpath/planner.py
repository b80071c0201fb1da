"""Greedy grid path planning for the data collector.

At every step the collector evaluates the chosen distortion metric at its
current cell and the four axis neighbours, then moves to the cheapest
candidate.  Staying put is always a candidate, so costs never increase
along a path.  Tie-breaking is deterministic in the fixed candidate order
stay, +x, -x, +y, -y; ties and stalls are reported in the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import metrics
from .model import FIXED, MetricSpec, Scenario, build_network_params

MOVE_ORDER = ("stay", "+x", "-x", "+y", "-y")


@dataclass(frozen=True)
class PathResult:
    positions: list            # (steps+1) coordinates, start first
    costs: list                # metric value at each position
    moves: list                # chosen move label per step
    spec: MetricSpec
    scenario_id: str
    tie_steps: list = field(default_factory=list)    # steps with equal-cost minima
    stall_steps: list = field(default_factory=list)  # steps where "stay" won

    @property
    def final_position(self):
        return self.positions[-1]


def metric_cost(scenario: Scenario, spec: MetricSpec, pos) -> float:
    """Scalar cost of one metric at one collector position."""
    params = build_network_params(scenario, pos)
    if spec.power == FIXED:
        power = scenario.fixed_allocation()
    else:
        power = scenario.power_budget()
    return metrics.evaluate(spec, params, power).distortion


def candidate_costs(scenario: Scenario, spec: MetricSpec, pos):
    """Labeled costs at {stay, +x, -x, +y, -y}; out-of-grid moves excluded.

    For optimized-power specs a fresh allocation is solved per candidate.
    """
    g = scenario.grid
    x, y = pos
    candidates = [
        ("stay", (x, y)),
        ("+x", (x + g.step, y)),
        ("-x", (x - g.step, y)),
        ("+y", (x, y + g.step)),
        ("-y", (x, y - g.step)),
    ]
    return [(label, cand, metric_cost(scenario, spec, cand))
            for label, cand in candidates if g.contains(cand)]


def greedy_plan(scenario: Scenario, spec: MetricSpec, steps: int = 30,
                cost_fn=None) -> PathResult:
    """Greedy descent over the cost field from the scenario's AV start.

    `cost_fn(scenario, spec, pos)` may override the metric (used for the
    mutual-information equivalence check); it must be deterministic.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    fn = cost_fn or metric_cost
    pos = tuple(scenario.av_start)
    positions = [pos]
    costs = [fn(scenario, spec, pos)]
    moves = []
    ties = []
    stalls = []
    g = scenario.grid
    for step in range(steps):
        x, y = pos
        candidates = [
            ("stay", (x, y), costs[-1]),
        ]
        for label, cand in (("+x", (x + g.step, y)), ("-x", (x - g.step, y)),
                            ("+y", (x, y + g.step)), ("-y", (x, y - g.step))):
            if g.contains(cand):
                candidates.append((label, cand, fn(scenario, spec, cand)))
        best = min(c[2] for c in candidates)
        winners = [c for c in candidates if c[2] == best]
        if len(winners) > 1:
            ties.append(step)
        label, pos, cost = winners[0]   # candidate order breaks ties
        if label == "stay":
            stalls.append(step)
        positions.append(pos)
        costs.append(cost)
        moves.append(label)
    return PathResult(positions=positions, costs=costs, moves=moves,
                      spec=spec, scenario_id=scenario.scenario_id,
                      tie_steps=ties, stall_steps=stalls)


@dataclass(frozen=True)
class PathComparison:
    paths: dict                 # spec name -> PathResult
    first_divergence: dict      # (name_a, name_b) -> step index or None
    final_sensor_dist: dict     # spec name -> per-sensor distances


def compare_paths(scenario: Scenario, specs, steps: int = 30) -> PathComparison:
    """Plan one path per spec and summarize where any two diverge."""
    if len(specs) < 2:
        raise ValueError("need at least two specs to compare")
    paths = {s.name: greedy_plan(scenario, s, steps) for s in specs}
    names = list(paths)
    divergence = {}
    for i, na in enumerate(names):
        for nb in names[i + 1:]:
            div = None
            for k, (pa, pb) in enumerate(zip(paths[na].positions, paths[nb].positions)):
                if pa != pb:
                    div = k
                    break
            divergence[(na, nb)] = div
    sensors = np.asarray(scenario.sensor_pos)
    final_dist = {
        name: np.hypot(sensors[:, 0] - res.final_position[0],
                       sensors[:, 1] - res.final_position[1])
        for name, res in paths.items()
    }
    return PathComparison(paths=paths, first_divergence=divergence,
                          final_sensor_dist=final_dist)
