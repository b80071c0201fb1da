"""Command-line front end.

Subcommands: metrics (bounds at the collector start), optimize (power
allocation under the scenario budget), sweep (matched/mismatched channel
experiment tables), plan (greedy paths per metric plus a divergence
summary), rd (rate-distortion curve emitters), validate (oracle
cross-check suite).

Exit codes: 0 success, 1 validation failure, 2 input error, 3 numeric or
invariant error.  Every file written under --out is listed in a run
manifest so the run can be reproduced exactly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__, metrics, oracle, planner, power_alloc
from . import rate_distortion as rd
from .errors import (BracketFailure, DimensionTooLarge, DomainError,
                     FixedPointDivergence, NonUnitGamma, ScenarioError)
from .model import (EXACT, FIXED, ALL_SPEC_NAMES, MetricSpec, NetworkParams,
                    PowerAllocation, Scenario, all_specs,
                    build_network_params, bundled_scenario,
                    bundled_scenario_names, load_scenario, validate_scenario)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3

_NUMERIC_ERRORS = (BracketFailure, DimensionTooLarge, DomainError,
                   FixedPointDivergence, NonUnitGamma, FloatingPointError)


class InputError(Exception):
    """User-supplied arguments or files could not be used."""


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------

def _resolve_scenario(args) -> Scenario:
    name = getattr(args, "scenario", None)
    if name is None:
        raise InputError("this command needs --scenario (a path or one of: "
                         + ", ".join(bundled_scenario_names()) + ")")
    try:
        if os.path.exists(name):
            scenario = load_scenario(name)
        else:
            scenario = bundled_scenario(name)
    except ScenarioError as exc:
        raise InputError(str(exc)) from exc
    diags = validate_scenario(scenario)
    if diags:
        raise InputError(f"invalid scenario {scenario.scenario_id}: {diags}")
    return scenario


def _parse_spec(name: str) -> MetricSpec:
    try:
        return MetricSpec.parse(name)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_table(path, schema, header, rows):
    with open(path, "w", newline="") as fh:
        fh.write(f"# {schema}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _emit(args, command, tables, summary, t0):
    """Write requested outputs plus the run manifest; print the summary."""
    print(summary)
    out_dir = getattr(args, "out", None)
    if out_dir is None:
        return
    os.makedirs(out_dir, exist_ok=True)
    outputs = []
    fmt = getattr(args, "format", "csv")
    for name, (schema, header, rows) in tables.items():
        if fmt == "csv":
            path = os.path.join(out_dir, f"{name}.csv")
            _write_table(path, schema, header, rows)
        else:
            path = os.path.join(out_dir, f"{name}.json")
            payload = {"schema": schema,
                       "rows": [dict(zip(header, row)) for row in rows]}
            with open(path, "w") as fh:
                json.dump(payload, fh, indent=2, default=_json_default)
                fh.write("\n")
        outputs.append(os.path.basename(path))
    manifest = {
        "schema": "sensorpath.manifest.v1",
        "command": command,
        "scenario": getattr(args, "scenario", None),
        "spec": getattr(args, "spec", None),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "format": fmt,
        "outputs": outputs,
        "wall_time_s": round(time.monotonic() - t0, 3),
        "args": {k: v for k, v in sorted(vars(args).items())
                 if k not in ("func",)},
    }
    mpath = os.path.join(out_dir, f"{command}_manifest.json")
    with open(mpath, "w") as fh:
        json.dump(manifest, fh, indent=2, default=_json_default)
        fh.write("\n")


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _fr_opt_results(params: NetworkParams, p_total: float):
    """Optimized FR bounds with the gamma handling of metrics.evaluate:
    exact general-gamma lower, gamma folded into beta for the upper."""
    lower = power_alloc.fr_lower_opt(params, params.r, p_total)
    up_params = params
    if not params.unit_gamma:
        up_params = NetworkParams(alpha=params.alpha,
                                  beta=np.sqrt(params.gamma) * params.beta,
                                  gamma=np.ones(params.M), r=params.r)
    upper, _ = power_alloc.fr_bounds_opt(up_params, up_params.r, p_total)
    return upper, lower


# ---------------------------------------------------------------------------
# metrics
# ---------------------------------------------------------------------------

def cmd_metrics(args) -> int:
    t0 = time.monotonic()
    scenario = _resolve_scenario(args)
    params = build_network_params(scenario, scenario.av_start)
    if args.spec:
        specs = [_parse_spec(args.spec)]
    else:
        specs = [MetricSpec.parse(n) for n in ALL_SPEC_NAMES[:4]]
    rows = []
    lines = []
    for spec in specs:
        power = (scenario.fixed_allocation() if spec.power == FIXED
                 else scenario.power_budget())
        bv = metrics.evaluate(spec, params, power)
        rows.append((spec.name, bv.distortion, bv.valid))
        lines.append(f"{spec.name:22s} {bv.distortion!r}"
                     + ("" if bv.valid else "  [outside validity regime]"))
    tables = {"metrics": ("sensorpath.metrics.v1",
                          ("spec", "distortion", "valid"), rows)}
    _emit(args, "metrics", tables,
          f"scenario {scenario.scenario_id} at {scenario.av_start}:\n"
          + "\n".join(lines), t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# optimize
# ---------------------------------------------------------------------------

def cmd_optimize(args) -> int:
    t0 = time.monotonic()
    scenario = _resolve_scenario(args)
    params = build_network_params(scenario, scenario.av_start)
    p_total = args.budget if args.budget is not None else scenario.power_budget()
    if p_total <= 0:
        raise InputError("total power budget must be positive")
    fr_upper, fr_lower = _fr_opt_results(params, p_total)
    results = [
        power_alloc.sr_upper_opt(params, params.r, p_total),
        power_alloc.sr_lower_opt(params, params.r, p_total),
        fr_upper,
        fr_lower,
    ]
    rows = []
    lines = [f"scenario {scenario.scenario_id}, budget {p_total!r}:"]
    for res in results:
        alloc = ";".join(repr(float(v)) for v in res.allocation.p)
        mults = ";".join(repr(float(v)) for v in res.multipliers)
        rows.append((res.family, res.value, alloc, mults, res.residual,
                     res.valid, res.method))
        lines.append(f"{res.family:10s} value={res.value!r} P=({alloc}) "
                     f"method={res.method}"
                     + ("" if res.valid else "  [outside validity regime]"))
    tables = {"optimize": ("sensorpath.optimize.v1",
                           ("family", "value", "allocation", "multipliers",
                            "residual", "valid", "method"), rows)}
    _emit(args, "optimize", tables, "\n".join(lines), t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def cmd_sweep(args) -> int:
    t0 = time.monotonic()
    if args.sensors < 1:
        raise InputError("--sensors must be at least 1")
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.powers:
        try:
            sweep = tuple(float(v) for v in args.powers.split(","))
        except ValueError as exc:
            raise InputError(f"bad --powers list: {exc}") from exc
        if not all(v > 0 for v in sweep):
            raise InputError("--powers entries must be positive")
    else:
        sweep = oracle.DEFAULT_SWEEP
    result = oracle.matched_mismatched_experiment(
        args.sensors, args.trials, args.seed, power_mode=args.power_mode,
        sweep=sweep)
    rows = [(p, pairing, fam, mean, args.power_mode)
            for (p, pairing, fam, mean) in result.rows()]
    lines = [f"{args.power_mode} power, M={args.sensors}, "
             f"{args.trials} trials, seed {args.seed}:"]
    for objective in ("sr", "fr"):
        for pairing in oracle.PAIRINGS:
            g = result.gap[(pairing, objective)]
            lines.append(f"mean {objective} gap {pairing:10s} "
                         + " ".join(f"{v:.4f}" for v in g))
    tables = {"sweep": ("sensorpath.sweep.v1",
                        ("power", "pairing", "family", "mean_mse",
                         "power_mode"), rows)}
    _emit(args, "sweep", tables, "\n".join(lines), t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# plan
# ---------------------------------------------------------------------------

def cmd_plan(args) -> int:
    t0 = time.monotonic()
    scenario = _resolve_scenario(args)
    if args.steps < 0:
        raise InputError("--steps must be non-negative")
    if args.spec == "all":
        specs = all_specs()
    else:
        specs = [_parse_spec(args.spec)]
    sensors = np.asarray(scenario.sensor_pos)

    paths = {s.name: planner.greedy_plan(scenario, s, args.steps) for s in specs}
    tables = {}
    lines = [f"scenario {scenario.scenario_id}, {args.steps} steps:"]
    summary_rows = []
    for name, res in paths.items():
        rows = [(k, pos[0], pos[1], cost, (res.moves[k - 1] if k else "start"))
                for k, (pos, cost) in enumerate(zip(res.positions, res.costs))]
        tables[f"path_{name}"] = (
            "sensorpath.path.v1", ("step", "x", "y", "cost", "move"), rows)
        f = res.final_position
        dists = np.hypot(sensors[:, 0] - f[0], sensors[:, 1] - f[1])
        nearest = int(np.argmin(dists)) + 1
        summary_rows.append((name, f[0], f[1], nearest,
                             float(dists.min()), len(res.tie_steps),
                             len(res.stall_steps)))
        lines.append(f"{name:22s} final=({f[0]:.2f},{f[1]:.2f}) "
                     f"nearest=sensor-{nearest} dist={dists.min():.3f}")
    tables["plan_summary"] = (
        "sensorpath.plan_summary.v1",
        ("spec", "final_x", "final_y", "nearest_sensor", "nearest_dist",
         "ties", "stalls"), summary_rows)

    if len(specs) > 1:
        cmp = planner.compare_paths(scenario, specs, args.steps)
        div_rows = [(a, b, ("" if step is None else step))
                    for (a, b), step in sorted(cmp.first_divergence.items())]
        tables["plan_divergence"] = (
            "sensorpath.plan_divergence.v1",
            ("spec_a", "spec_b", "first_divergence_step"), div_rows)
        identical = sum(1 for _, _, s in div_rows if s == "")
        lines.append(f"identical path pairs: {identical}/{len(div_rows)}")
    _emit(args, "plan", tables, "\n".join(lines), t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# rd
# ---------------------------------------------------------------------------

def _rd_beta_gamma(args):
    if args.beta:
        try:
            beta = np.array([float(v) for v in args.beta.split(",")])
            gamma = (np.ones(beta.size) if not args.gamma else
                     np.array([float(v) for v in args.gamma.split(",")]))
        except ValueError as exc:
            raise InputError(f"bad --beta/--gamma list: {exc}") from exc
        if gamma.size != beta.size:
            raise InputError("--gamma must match --beta in length")
        if not (np.all(beta > 0) and np.all(gamma > 0)):
            raise InputError("--beta/--gamma entries must be positive")
        return beta, gamma
    scenario = _resolve_scenario(args)
    params = build_network_params(scenario, scenario.av_start)
    return params.beta, params.gamma


def cmd_rd(args) -> int:
    t0 = time.monotonic()
    beta, gamma = _rd_beta_gamma(args)
    if args.rate_max <= 0 or args.points < 2:
        raise InputError("--rate-max must be positive and --points >= 2")
    rates = np.linspace(0.0, args.rate_max, args.points)
    tables = {}
    if args.curve in ("remote", "both"):
        rows = [(r, rd.remote_rd_distortion(beta, r)) for r in rates]
        tables["rd_remote"] = ("sensorpath.rd_remote.v1",
                               ("rate_bits", "distortion"), rows)
    if args.curve in ("vector", "both"):
        eig = rd.ru_eigen(beta, gamma)
        rows = [(r, rd.vector_rd_exact(eig, r), rd.vector_rd_highrate(eig, r),
                 rd.highrate_active(eig, r)) for r in rates]
        tables["rd_vector"] = ("sensorpath.rd_vector.v1",
                               ("rate_bits", "exact", "highrate",
                                "highrate_active"), rows)
    summary = (f"rate-distortion curves for beta={[float(v) for v in beta]}, "
               f"gamma={[float(v) for v in gamma]}, {args.points} points up "
               f"to {args.rate_max} bits")
    _emit(args, "rd", tables, summary, t0)
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def _random_networks(rng, n, m_range=(1, 5), p_max=10.0):
    for _ in range(n):
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        alpha = 1.0 - rng.random(m)
        beta = 1.0 - rng.random(m)
        p = p_max * (1.0 - rng.random(m))
        yield NetworkParams(alpha=alpha, beta=beta), PowerAllocation.of(p)


def _check_bound_ordering(rng, n):
    worst = 0.0
    for params, p in _random_networks(rng, n):
        lo = metrics.sr_lower(params, p).distortion
        up = metrics.sr_upper(params, p).distortion
        worst = max(worst, lo - up)
        flo = metrics.fr_lower(params, p, EXACT).distortion
        fup = metrics.fr_upper(params, p).distortion
        worst = max(worst, flo - fup)
    return worst <= 1e-12, f"max lower-upper excess {worst:.3e} (tol 1e-12)"


def _check_identities(rng, n):
    worst = 0.0
    for _ in range(n):
        # Single sensor: both SR bounds coincide.
        alpha = 1.0 - rng.random(1)
        beta = 1.0 - rng.random(1)
        p = PowerAllocation.of(10.0 * (1.0 - rng.random(1)))
        params = NetworkParams(alpha=alpha, beta=beta)
        worst = max(worst, abs(metrics.sr_upper(params, p).distortion
                               - metrics.sr_lower(params, p).distortion))
        # Symmetric network: equal gains and powers, any size.
        m = int(rng.integers(2, 6))
        params = NetworkParams(alpha=np.full(m, 1.0 - rng.random()),
                               beta=np.full(m, 1.0 - rng.random()))
        p = PowerAllocation.of(np.full(m, 10.0 * (1.0 - rng.random())))
        worst = max(worst, abs(metrics.sr_upper(params, p).distortion
                               - metrics.sr_lower(params, p).distortion))
    return worst <= 1e-12, f"max identity gap {worst:.3e} (tol 1e-12)"


def _check_mc(rng, n_instances, n_samples, tol):
    # tol grows with the instance count: the statistic is a max over a few
    # hundred independent z-scores, so its null distribution shifts right.
    worst = 0.0
    for i, (params, p) in enumerate(_random_networks(rng, n_instances)):
        cfg = oracle.McConfig(n_samples=n_samples, seed=int(rng.integers(2**32)))
        mc = oracle.mc_af_mse(params, p, cfg)
        sr = metrics.sr_upper(params, p).distortion
        worst = max(worst, abs(mc.sr_mse - sr) / mc.sr_se)
        fr = metrics.fr_upper(params, p).components
        worst = max(worst, float(np.max(np.abs(mc.fr_mse - fr) / mc.fr_se)))
    return worst <= tol, f"max |empirical-analytic|/se {worst:.2f} (tol {tol})"


def _check_brute_force(rng, per_family, resolution, tol, ms=(2, 3)):
    worst = 0.0
    for m in ms:
        for _ in range(per_family):
            alpha = 1.0 - rng.random(m)
            beta = 1.0 - rng.random(m)
            params = NetworkParams(alpha=alpha, beta=beta)
            p_total = float(1.0 + 9.0 * rng.random())
            closed = {
                "sr-upper": power_alloc.sr_upper_opt(params, params.r, p_total).value,
                "sr-lower": power_alloc.sr_lower_opt(params, params.r, p_total).value,
            }
            fu, fl = power_alloc.fr_bounds_opt(params, params.r, p_total)
            closed["fr-upper"] = fu.value
            if fl.valid:
                closed["fr-lower"] = fl.value
            for family, value in closed.items():
                bf, _ = oracle.brute_force_power(
                    oracle.batch_bound(params, family), params.r, p_total,
                    resolution)
                worst = max(worst, abs(bf - value))
    return worst <= tol, f"max |closed-form - brute force| {worst:.2e} (tol {tol})"


def _check_waterfill(rng, n, resolution=1e-3, tol=1e-3):
    worst = 0.0
    hr_excess = 0.0
    for _ in range(n):
        m = int(rng.integers(1, 4))
        beta = 1.0 - rng.random(m)
        gamma = 0.5 + rng.random(m)
        eig = rd.ru_eigen(beta, gamma)
        rate = 4.0 * rng.random()
        exact = rd.vector_rd_exact(eig, rate)
        bf = oracle.brute_force_waterfill(eig.lambdas, eig.gamma_prime, rate,
                                          resolution)
        worst = max(worst, abs(exact - bf))
        hr_excess = max(hr_excess, rd.vector_rd_highrate(eig, rate) - exact)
        if rd.highrate_active(eig, rate):
            hr_excess = max(hr_excess,
                            abs(rd.vector_rd_highrate(eig, rate) - exact))
    zero_ok = rd.remote_rd_distortion(np.array([0.7, 1.3]), 0.0) == 1.0
    ok = worst <= tol and hr_excess <= 1e-9 and zero_ok
    return ok, (f"max |exact - brute force| {worst:.2e} (tol {tol}), "
                f"high-rate excess {hr_excess:.2e}, D(0)=1 {zero_ok}")


def _check_residuals(rng, n):
    worst = 0.0
    for _ in range(n):
        m = int(rng.integers(1, 6))
        params = NetworkParams(alpha=1.0 - rng.random(m),
                               beta=1.0 - rng.random(m))
        p_total = float(1.0 + 9.0 * rng.random())
        _, res_sr = power_alloc.solve_lambda_sr(params, params.r)
        worst = max(worst, res_sr)
        try:
            _, _, res1, res2 = power_alloc.solve_lambda_fr(
                params, params.r, p_total)
            worst = max(worst, res1, res2)
        except FixedPointDivergence:
            pass  # no root in the bracket: low-power regime, nothing to check
    return worst <= 1e-10, f"max multiplier residual {worst:.2e} (tol 1e-10)"


def _check_sweep_gaps(trials, seed):
    msgs = []
    ok = True
    uniform = oracle.matched_mismatched_experiment(5, trials, seed, "uniform")
    optimized = oracle.matched_mismatched_experiment(5, trials, seed, "optimized")
    for result in (uniform, optimized):
        for objective in ("sr", "fr"):
            strict = np.all(result.gap[("matched", objective)]
                            < result.gap[("mismatched", objective)])
            ok &= bool(strict)
            msgs.append(f"{result.power_mode}/{objective} matched<mismatched "
                        f"{bool(strict)}")
    for pairing in oracle.PAIRINGS:
        for fam in oracle.FAMILIES:
            better = np.all(optimized.mean[(pairing, fam)]
                            <= uniform.mean[(pairing, fam)] + 1e-9)
            ok &= bool(better)
            msgs.append(f"{pairing}/{fam} optimized<=uniform {bool(better)}")
    return ok, "; ".join(msgs)


def cmd_validate(args) -> int:
    t0 = time.monotonic()
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    full = args.level == "full"
    checks = [
        ("bound-ordering",
         lambda: _check_bound_ordering(rng, 10_000 if full else 1_000)),
        ("exactness-identities",
         lambda: _check_identities(rng, 1_000 if full else 200)),
        ("monte-carlo-oracle",
         lambda: _check_mc(rng, 100 if full else 10,
                           100_000 if full else 20_000,
                           4.0 if full else 3.5)),
        ("optimizer-vs-brute-force",
         lambda: _check_brute_force(rng, 20 if full else 4,
                                    1e-3 if full else 1e-2,
                                    1e-3 if full else 1e-2)),
        ("water-filling",
         lambda: _check_waterfill(rng, 200 if full else 50)),
        ("multiplier-residuals",
         lambda: _check_residuals(rng, 1_000 if full else 200)),
    ]
    if full:
        checks.append(("sweep-gap-ordering",
                       lambda: _check_sweep_gaps(10_000, args.seed)))
    rows = []
    failures = 0
    for name, fn in checks:
        start = time.monotonic()
        ok, detail = fn()
        elapsed = time.monotonic() - start
        rows.append((name, "pass" if ok else "FAIL", detail,
                     round(elapsed, 2)))
        failures += 0 if ok else 1
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail} [{elapsed:.2f}s]")
    tables = {"validate": ("sensorpath.validate.v1",
                           ("check", "status", "detail", "seconds"), rows)}
    verdict = (f"{len(checks) - failures}/{len(checks)} checks passed "
               f"({args.level} level, seed {args.seed})")
    _emit(args, "validate", tables, verdict, t0)
    return EXIT_OK if failures == 0 else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario",
                        help="scenario JSON path or bundled scenario name")
    common.add_argument("--seed", type=int, default=0,
                        help="master seed for anything randomized")
    common.add_argument("--out", help="directory for output files + manifest")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output file format (default csv)")

    parser = argparse.ArgumentParser(
        prog="sensorpath",
        description="Power-distortion bounds and path planning for Gaussian "
                    "sensor networks.")
    parser.add_argument("--version", action="version",
                        version=f"sensorpath {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", parents=[common],
                       help="evaluate bounds at the collector start position")
    p.add_argument("--spec", help="single metric (default: all fixed-power)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("optimize", parents=[common],
                       help="optimal power allocation under the budget")
    p.add_argument("--budget", type=float,
                   help="total power budget (default: scenario budget)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("sweep", parents=[common],
                       help="matched/mismatched channel-ordering experiment")
    p.add_argument("--sensors", type=int, default=5)
    p.add_argument("--trials", type=int, default=1_000)
    p.add_argument("--power-mode", choices=("uniform", "optimized"),
                   default="uniform")
    p.add_argument("--powers",
                   help="comma-separated per-sensor power sweep points "
                        "(default: one decade, log-spaced)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plan", parents=[common],
                       help="greedy path planning over the scenario grid")
    p.add_argument("--spec", default="all",
                   help="metric name or 'all' (default all)")
    p.add_argument("--steps", type=int, default=30)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("rd", parents=[common],
                       help="emit rate-distortion curves")
    p.add_argument("--curve", choices=("remote", "vector", "both"),
                   default="both")
    p.add_argument("--beta", help="comma-separated sensing gains "
                                  "(default: from --scenario)")
    p.add_argument("--gamma", help="comma-separated field weights")
    p.add_argument("--rate-max", type=float, default=4.0)
    p.add_argument("--points", type=int, default=81)
    p.set_defaults(func=cmd_rd)

    p = sub.add_parser("validate", parents=[common],
                       help="run the oracle cross-check suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _NUMERIC_ERRORS as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
