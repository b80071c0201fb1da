"""Network/scenario data types and the geometry-to-channel mapping.

Communication gains follow an inverse-square law in the distance between
the collector (AV) and each sensor; sensing gains follow the same law in
the distance between the source and each sensor.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DistanceDegenerateWarning, ScenarioError

# Distance clamp applied before the inverse-square law so a collector
# crossing a sensor position never produces an infinite gain.
EPS_DIST = 1e-6

SR, FR = "sr", "fr"
UPPER, LOWER = "upper", "lower"
FIXED, OPTIMIZED = "fixed", "optimized"
HIGH_RATE, EXACT = "highrate", "exact"


def _as_vector(x, name, m=None):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"{name} must be a 1-D vector")
    if m is not None and v.size != m:
        raise ValueError(f"{name} must have length {m}, got {v.size}")
    return v


@dataclass(frozen=True)
class NetworkParams:
    """Per-sensor channel gains alpha, sensing gains beta, field weights
    gamma and power weights r for an M-sensor network."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray = None
    r: np.ndarray = None

    def __post_init__(self):
        alpha = _as_vector(self.alpha, "alpha")
        m = alpha.size
        beta = _as_vector(self.beta, "beta", m)
        gamma = np.ones(m) if self.gamma is None else _as_vector(self.gamma, "gamma", m)
        r = np.ones(m) if self.r is None else _as_vector(self.r, "r", m)
        if m < 1:
            raise ValueError("need at least one sensor")
        for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("r", r)):
            if not np.all(v > 0):
                raise ValueError(f"all {name} entries must be positive")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "r", r)

    @property
    def M(self) -> int:
        return self.alpha.size

    @property
    def unit_gamma(self) -> bool:
        return bool(np.all(self.gamma == 1.0))


@dataclass(frozen=True)
class PowerAllocation:
    """Per-sensor transmit powers and the r-weighted total they consume."""

    p: np.ndarray
    weighted_total: float = None

    def __post_init__(self):
        p = _as_vector(self.p, "p")
        if not np.all(p >= 0):
            raise ValueError("powers must be non-negative")
        object.__setattr__(self, "p", p)
        if self.weighted_total is None:
            object.__setattr__(self, "weighted_total", float(p.sum()))

    @classmethod
    def of(cls, p, r=None):
        p = _as_vector(p, "p")
        wt = float(p.sum()) if r is None else float(np.dot(np.asarray(r, float), p))
        return cls(p=p, weighted_total=wt)

    @classmethod
    def uniform(cls, p_total, r):
        """Budget split so every sensor draws the same power: P_m = P_T / sum(r)."""
        r = _as_vector(r, "r")
        p = np.full(r.size, p_total / r.sum())
        return cls(p=p, weighted_total=float(p_total))


@dataclass(frozen=True)
class MetricSpec:
    """Selector over the four bounds and the power handling.

    objective: 'sr' | 'fr'; bound: 'upper' | 'lower';
    power: 'fixed' | 'optimized'; fr_lower_mode: 'exact' | 'highrate',
    present only for the FR lower bound.
    """

    objective: str
    bound: str
    power: str = FIXED
    fr_lower_mode: str = None

    def __post_init__(self):
        if self.objective not in (SR, FR):
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.bound not in (UPPER, LOWER):
            raise ValueError(f"unknown bound {self.bound!r}")
        if self.power not in (FIXED, OPTIMIZED):
            raise ValueError(f"unknown power mode {self.power!r}")
        is_fr_lower = self.objective == FR and self.bound == LOWER
        if is_fr_lower:
            mode = self.fr_lower_mode or EXACT
            if mode not in (HIGH_RATE, EXACT):
                raise ValueError(f"unknown fr_lower_mode {self.fr_lower_mode!r}")
            object.__setattr__(self, "fr_lower_mode", mode)
        elif self.fr_lower_mode is not None:
            raise ValueError("fr_lower_mode only applies to the FR lower bound")

    @classmethod
    def parse(cls, name: str, fr_lower_mode: str = None) -> "MetricSpec":
        """Parse names like 'sr-upper-fixed', 'fr-lower-opt'."""
        parts = name.lower().split("-")
        if len(parts) == 2:
            parts.append("fixed")
        if len(parts) == 4 and parts[:2] == [FR, LOWER] and parts[3] in (HIGH_RATE, EXACT):
            fr_lower_mode = parts.pop()
        if len(parts) != 3:
            raise ValueError(f"cannot parse metric spec {name!r}")
        obj, bound, power = parts
        power = {"opt": OPTIMIZED, "optimized": OPTIMIZED, "fixed": FIXED}.get(power)
        if power is None:
            raise ValueError(f"cannot parse metric spec {name!r}")
        mode = fr_lower_mode if (obj == FR and bound == LOWER) else None
        return cls(objective=obj, bound=bound, power=power, fr_lower_mode=mode)

    @property
    def name(self) -> str:
        s = f"{self.objective}-{self.bound}-{'opt' if self.power == OPTIMIZED else 'fixed'}"
        if self.fr_lower_mode is not None:
            s += f"-{self.fr_lower_mode}"
        return s


ALL_SPEC_NAMES = (
    "sr-upper-fixed", "sr-lower-fixed", "fr-upper-fixed", "fr-lower-fixed",
    "sr-upper-opt", "sr-lower-opt", "fr-upper-opt", "fr-lower-opt",
)


def all_specs(fr_lower_mode: str = EXACT):
    return [MetricSpec.parse(n, fr_lower_mode) for n in ALL_SPEC_NAMES]


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    step: float

    def contains(self, pos) -> bool:
        x, y = pos
        return (self.x_min - 1e-12 <= x <= self.x_max + 1e-12
                and self.y_min - 1e-12 <= y <= self.y_max + 1e-12)


@dataclass(frozen=True)
class Scenario:
    """Planar geometry plus propagation constants and power budgets."""

    source_pos: tuple
    sensor_pos: tuple          # tuple of (x, y) pairs
    av_start: tuple
    a: float                   # communication propagation constant
    b: float                   # sensing propagation constant
    grid: Grid
    per_sensor_power: np.ndarray = None
    total_power: float = None
    gamma: np.ndarray = None
    r: np.ndarray = None
    seed: int = 0
    scenario_id: str = "unnamed"

    def __post_init__(self):
        object.__setattr__(self, "source_pos", tuple(float(v) for v in self.source_pos))
        object.__setattr__(self, "av_start", tuple(float(v) for v in self.av_start))
        object.__setattr__(
            self, "sensor_pos",
            tuple(tuple(float(v) for v in s) for s in self.sensor_pos))
        m = len(self.sensor_pos)
        if self.gamma is None:
            object.__setattr__(self, "gamma", np.ones(m))
        else:
            object.__setattr__(self, "gamma", _as_vector(self.gamma, "gamma"))
        if self.r is None:
            object.__setattr__(self, "r", np.ones(m))
        else:
            object.__setattr__(self, "r", _as_vector(self.r, "r"))
        if self.per_sensor_power is not None:
            object.__setattr__(
                self, "per_sensor_power", _as_vector(self.per_sensor_power, "powers"))

    @property
    def M(self) -> int:
        return len(self.sensor_pos)

    def fixed_allocation(self) -> PowerAllocation:
        if self.per_sensor_power is None:
            raise ScenarioError("scenario has no per-sensor powers")
        return PowerAllocation.of(self.per_sensor_power, self.r)

    def power_budget(self) -> float:
        """Weighted sum-power budget: explicit total_power if given, else
        the budget the fixed allocation consumes."""
        if self.total_power is not None:
            return float(self.total_power)
        if self.per_sensor_power is not None:
            return float(np.dot(self.r, self.per_sensor_power))
        raise ScenarioError("scenario has neither total_power nor powers")


def _clamped_inv_sq(const, p_from, p_to):
    """const / max(dist, EPS_DIST)**2 with a degeneracy warning on clamp."""
    d = math.hypot(p_from[0] - p_to[0], p_from[1] - p_to[1])
    if d < EPS_DIST:
        warnings.warn(
            f"distance between {p_from} and {p_to} below {EPS_DIST}; clamped",
            DistanceDegenerateWarning, stacklevel=3)
        d = EPS_DIST
    return const / (d * d)


def build_network_params(scenario: Scenario, av_pos) -> NetworkParams:
    """Map geometry to channel parameters at the given collector position.

    beta_m = b / ||source - sensor_m||^2 (independent of av_pos);
    alpha_m = a / ||av_pos - sensor_m||^2 (independent of source_pos).
    """
    beta = np.array([_clamped_inv_sq(scenario.b, scenario.source_pos, s)
                     for s in scenario.sensor_pos])
    alpha = np.array([_clamped_inv_sq(scenario.a, tuple(av_pos), s)
                      for s in scenario.sensor_pos])
    return NetworkParams(alpha=alpha, beta=beta,
                         gamma=scenario.gamma.copy(), r=scenario.r.copy())


def validate_scenario(scenario: Scenario) -> list:
    """Return named diagnostics for every violated invariant (empty if ok)."""
    diags = []
    m = scenario.M
    if m < 1:
        diags.append("NoSensors")
    if scenario.a <= 0 or scenario.b <= 0:
        diags.append("ConstantNonPositive")
    for name, v in (("gamma", scenario.gamma), ("r", scenario.r)):
        if v.size != m:
            diags.append("LengthMismatch")
        elif not np.all(v > 0):
            diags.append("WeightNonPositive")
    if scenario.per_sensor_power is not None:
        if scenario.per_sensor_power.size != m:
            diags.append("LengthMismatch")
        elif not np.all(scenario.per_sensor_power >= 0):
            diags.append("PowerNegative")
    if scenario.total_power is not None and scenario.total_power <= 0:
        diags.append("BudgetNonPositive")
    if scenario.per_sensor_power is None and scenario.total_power is None:
        diags.append("PowerMissing")
    g = scenario.grid
    if g.step <= 0:
        diags.append("StepNonPositive")
    if g.x_min >= g.x_max or g.y_min >= g.y_max:
        diags.append("GridEmpty")
    elif not g.contains(scenario.av_start):
        diags.append("StartOutsideGrid")
    return diags


_SCENARIO_KEYS = {
    "source_pos", "sensors", "av_start", "a", "b", "grid",
    "powers", "total_power", "gamma", "r", "seed", "name",
}
_GRID_KEYS = {"x_min", "x_max", "y_min", "y_max", "step"}


def scenario_from_dict(d: dict, scenario_id="unnamed") -> Scenario:
    unknown = set(d) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
    missing = {"source_pos", "sensors", "av_start", "a", "b", "grid"} - set(d)
    if missing:
        raise ScenarioError(f"missing scenario keys: {sorted(missing)}")
    gd = d["grid"]
    if set(gd) != _GRID_KEYS:
        raise ScenarioError(f"grid must have exactly keys {sorted(_GRID_KEYS)}")
    try:
        grid = Grid(**{k: float(gd[k]) for k in _GRID_KEYS})
        return Scenario(
            source_pos=d["source_pos"],
            sensor_pos=d["sensors"],
            av_start=d["av_start"],
            a=float(d["a"]),
            b=float(d["b"]),
            grid=grid,
            per_sensor_power=d.get("powers"),
            total_power=None if d.get("total_power") is None else float(d["total_power"]),
            gamma=d.get("gamma"),
            r=d.get("r"),
            seed=int(d.get("seed", 0)),
            scenario_id=d.get("name", scenario_id),
        )
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"malformed scenario: {exc}") from exc


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(d, dict):
        raise ScenarioError(f"{path}: scenario file must hold a JSON object")
    import os
    return scenario_from_dict(d, scenario_id=os.path.splitext(os.path.basename(path))[0])


def bundled_scenario_names():
    """Names of the scenario files shipped with the package."""
    from importlib import resources
    root = resources.files(__package__) / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_scenario(name: str) -> Scenario:
    """Load a shipped scenario by name (see bundled_scenario_names)."""
    from importlib import resources
    ref = resources.files(__package__) / "scenarios" / f"{name}.json"
    if not ref.is_file():
        raise ScenarioError(
            f"no bundled scenario {name!r}; available: {bundled_scenario_names()}")
    d = json.loads(ref.read_text())
    return scenario_from_dict(d, scenario_id=name)
