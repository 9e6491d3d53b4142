#!/usr/bin/env python3
"""Compare the jitted kernels against the plain numpy fallback.

Micro benchmarks time both implementation sets inside one process.  The
macro benchmark (equidistant segmentation, which stresses the adaptive
quadrature) re-runs this script in subprocesses with DQLINK_BACKEND
forced, because the library binds its kernels once at import.

Usage:
    python benchmarks/bench_backends.py [--repeats N] [--skip-macro]
"""

import argparse
import math
import os
import pathlib
import subprocess
import sys
import time

import numpy as np

from dqlink import _kernels, load_mechanism

SIXBAR = pathlib.Path(__file__).resolve().parents[1] / "tests" / "data" / "sixbar.mech"


def best_time(fn, repeats: int) -> float:
    fn()  # warm call, also triggers jit compilation
    return min(timed(fn) for _ in range(repeats))


def timed(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def micro_cases(impls):
    rng = np.random.default_rng(7)
    pairs = rng.normal(size=(2000, 2, 8))
    mech = load_mechanism(SIXBAR)
    coeffs = mech.motion.coeffs
    path = mech.motion.point_path([0.0, 0.0, 0.0])
    ts = rng.uniform(-1.0, 1.732, size=2000)
    dq_mul8 = impls["dq_mul8"]
    poly_eval8 = impls["poly_eval8"]
    path_speed = impls["path_speed"]
    arc_simpson = impls["arc_simpson"]

    def run_mul():
        for a, b in pairs:
            dq_mul8(a, b)

    def run_eval():
        for t in ts:
            poly_eval8(coeffs, t)

    def run_speed():
        for t in ts:
            path_speed(path.x0, path.x0d, path.xi, path.xid, t)

    def run_quad():
        for _ in range(20):
            arc_simpson(path.x0, path.x0d, path.xi, path.xid, -1.0, 1.732, 1e-10, 40)

    return [
        ("dq_mul8 x2000", run_mul),
        ("poly_eval8 x2000", run_eval),
        ("path_speed x2000", run_speed),
        ("arc_simpson x20", run_quad),
    ]


def run_micro(repeats: int):
    backends = [("numpy", _kernels.PY_IMPLS)]
    if _kernels.NUMBA_IMPLS is not None:
        backends.append(("numba", _kernels.NUMBA_IMPLS))
    names = [name for name, _ in micro_cases(_kernels.PY_IMPLS)]
    results = {}
    for backend, impls in backends:
        for name, fn in micro_cases(impls):
            results[backend, name] = best_time(fn, repeats)
    print("%-20s %12s %12s %9s" % ("kernel", "numpy [ms]", "numba [ms]", "speedup"))
    for name in names:
        base = results["numpy", name]
        jit = results.get(("numba", name))
        if jit is None:
            print("%-20s %12.3f %12s %9s" % (name, base * 1e3, "n/a", "n/a"))
        else:
            print(
                "%-20s %12.3f %12.3f %8.1fx"
                % (name, base * 1e3, jit * 1e3, base / jit)
            )


def macro_once() -> float:
    from dqlink import equidistant_params

    mech = load_mechanism(SIXBAR)
    path = mech.motion.point_path([0.0, 0.0, 0.0])
    # warm pass compiles the kernels before timing
    equidistant_params(path, 1.732, -1.0, 4, driving_axis=mech.driving_axis)
    t0 = time.perf_counter()
    equidistant_params(path, 1.732, -1.0, 80, driving_axis=mech.driving_axis)
    return time.perf_counter() - t0


def run_macro():
    print()
    print("80-knot equidistant segmentation (subprocess per backend):")
    for backend in ("numpy", "numba"):
        env = dict(os.environ)
        env["DQLINK_BACKEND"] = backend
        proc = subprocess.run(
            [sys.executable, __file__, "--macro-once"],
            env=env,
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            print("%-8s failed: %s" % (backend, proc.stderr.strip().splitlines()[-1]))
            continue
        print("%-8s %10.1f ms" % (backend, float(proc.stdout) * 1e3))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--skip-macro", action="store_true")
    parser.add_argument("--macro-once", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.macro_once:
        print(repr(macro_once()))
        return 0
    print("active backend: %s" % _kernels.BACKEND)
    run_micro(args.repeats)
    if not args.skip_macro:
        run_macro()
    return 0


if __name__ == "__main__":
    sys.exit(main())
