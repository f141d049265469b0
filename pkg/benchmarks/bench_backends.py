"""Compare the numba and numpy kernel backends on the two oracles.

The backend is chosen at import time from TRIPOWMIN_BACKEND, so the
parent process re-runs this script once per backend in a subprocess and
prints a small table. Run from the repository root:

    python3 benchmarks/bench_backends.py [--repeats 5]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

CASES = [
    (3.0, 1.0, 2.0),
    (2.0, 1.0, 1.0),
    (0.5, 2.0, 3.0),
]
EXPONENTS = (2.0, 5.0, 10.0)


def run_workloads(repeats):
    from tripowmin import _kernels
    from tripowmin.geometry import CanonicalTriangle
    from tripowmin.oracle import OracleConfig, grid_search, projected_gradient

    _kernels.warmup()
    tris = [CanonicalTriangle(a, b, c) for a, b, c in CASES]
    cfg = OracleConfig(pg_max_iters=200_000)

    grid_times = []
    pg_times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for tri in tris:
            for n in EXPONENTS:
                grid_search(tri, n, cfg)
        grid_times.append(time.perf_counter() - t0)

        t0 = time.perf_counter()
        for tri in tris:
            for n in EXPONENTS:
                projected_gradient(tri, n, config=cfg)
        pg_times.append(time.perf_counter() - t0)

    return {
        "backend": _kernels.backend(),
        "grid_s": statistics.median(grid_times),
        "descent_s": statistics.median(pg_times),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.inner:
        print(json.dumps(run_workloads(args.repeats)))
        return

    results = {}
    for backend in ("numpy", "numba"):
        env = dict(os.environ, TRIPOWMIN_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, __file__, "--inner", "--repeats", str(args.repeats)],
            env=env, capture_output=True, text=True, check=True,
        )
        results[backend] = json.loads(out.stdout.strip().splitlines()[-1])

    ncases = len(CASES) * len(EXPONENTS)
    print(f"{ncases} oracle calls per timing, median of {args.repeats} repeats")
    print(f"{'workload':<18}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for key, label in (("grid_s", "grid_search"), ("descent_s", "projected_gradient")):
        np_t = results["numpy"][key]
        nb_t = results["numba"][key]
        print(f"{label:<18}{np_t:>11.4f}s{nb_t:>11.4f}s{np_t / nb_t:>9.1f}x")


if __name__ == "__main__":
    main()
