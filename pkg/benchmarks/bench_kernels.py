"""Benchmark the compiled simplex-scan kernels against the numpy fallback.

Runs the exhaustive budget-simplex scan (the hot loop behind the
brute-force power oracle) for each bound family with both backends,
checks that they agree, and reports the speedup.

Usage: python benchmarks/bench_kernels.py [--m2-steps N] [--m3-steps N]
"""

import argparse
import time

import numpy as np

from sensorpath import _kernels
from sensorpath.model import NetworkParams
from sensorpath.oracle import FAMILY_CODES


def bench_case(m, n, repeats, seed):
    rng = np.random.default_rng(seed)
    params = NetworkParams(alpha=1.0 - rng.random(m), beta=1.0 - rng.random(m))
    p_total = 10.0
    rows = []
    for family, code in FAMILY_CODES.items():
        tables = _kernels.bound_tables(params, code)
        # Warm-up triggers JIT compilation so it is not timed.
        _kernels.scan_simplex(code, tables, params.r, p_total, 10)

        def run(force_numpy):
            t0 = time.perf_counter()
            for _ in range(repeats):
                out = _kernels.scan_simplex(code, tables, params.r, p_total, n,
                                            force_numpy=force_numpy)
            return (time.perf_counter() - t0) / repeats, out

        t_np, (v_np, p_np) = run(True)
        t_nb, (v_nb, p_nb) = run(False)
        assert abs(v_np - v_nb) < 1e-12, (family, v_np, v_nb)
        assert np.allclose(p_np, p_nb, atol=1e-12), (family, p_np, p_nb)
        rows.append((m, n, family, t_np, t_nb, t_np / t_nb))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m2-steps", type=int, default=200_000,
                    help="fraction steps for the M=2 scan")
    ap.add_argument("--m3-steps", type=int, default=1_000,
                    help="fraction steps per axis for the M=3 scan")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not _kernels.numba_enabled():
        print("numba unavailable or disabled (SENSORPATH_NO_NUMBA); "
              "nothing to compare")
        return

    print(f"{'M':>2} {'steps':>8} {'family':10} {'numpy_s':>10} "
          f"{'numba_s':>10} {'speedup':>8}")
    for m, n in ((2, args.m2_steps), (3, args.m3_steps)):
        for row in bench_case(m, n, args.repeats, args.seed):
            print(f"{row[0]:>2} {row[1]:>8} {row[2]:10} {row[3]:>10.4f} "
                  f"{row[4]:>10.4f} {row[5]:>7.1f}x")


if __name__ == "__main__":
    main()
