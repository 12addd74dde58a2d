"""Compare the compiled and pure-Python schedule-replay kernels.

Two measurements:

* ``kernel``: replay every ordered edge partition (4683 schedules) on every
  menu for a handful of tournaments, calling each backend directly.
* ``census``: the end-to-end four-item census in a fresh interpreter, once per
  backend (the fallback is forced with ``CHOICE_CENSUS_PURE_PYTHON=1``).

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--skip-census]
"""
from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time

import numpy as np

from choicecensus import _pykernels, kernels
from choicecensus.core import all_menus, pair_edges
from choicecensus.fixtures import load_fixture
from choicecensus.sequential import _assignment_arrays

FIXTURES = ("c6", "c14", "sr15", "c2rat")


def kernel_inputs(name: str):
    edges = pair_edges(load_fixture(name))
    assign, nblocks, _ = _assignment_arrays(len(edges))
    return (
        np.array(all_menus(4), dtype=np.int64),
        np.array([w for w, _ in edges], dtype=np.int64),
        np.array([l for _, l in edges], dtype=np.int64),
        assign,
        nblocks,
    )


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_kernel(repeat: int) -> dict[str, float]:
    inputs = [kernel_inputs(name) for name in FIXTURES]
    backends = {"python": _pykernels.apply_schedules}
    if kernels.BACKEND == "cython":
        backends["cython"] = kernels.apply_schedules
        for args in inputs:
            if not np.array_equal(backends["cython"](*args), backends["python"](*args)):
                raise SystemExit("backends disagree; refusing to report timings")
    return {
        label: best_of(lambda f=fn: [f(*args) for args in inputs], repeat)
        for label, fn in backends.items()
    }


def bench_census(pure_python: bool) -> float:
    env = dict(os.environ)
    env.pop("CHOICE_CENSUS_PURE_PYTHON", None)
    if pure_python:
        env["CHOICE_CENSUS_PURE_PYTHON"] = "1"
    code = (
        "import time; from choicecensus import run_census, GroundSet;"
        "t = time.perf_counter(); run_census(GroundSet.of_size(4));"
        "print(time.perf_counter() - t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip())


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-census", action="store_true")
    args = parser.parse_args(argv)

    print(f"active backend: {kernels.BACKEND}")
    timings = bench_kernel(args.repeat)
    print(f"kernel: {len(FIXTURES)} tournaments x 4683 schedules x 11 menus "
          f"(best of {args.repeat})")
    for label, seconds in timings.items():
        print(f"  {label:<7} {seconds * 1000:9.2f} ms")
    if "cython" in timings:
        print(f"  speedup {timings['python'] / timings['cython']:9.1f}x")

    if not args.skip_census:
        print("census: full four-item run in a fresh interpreter")
        runs = {"python": [bench_census(True) for _ in range(3)]}
        if kernels.BACKEND == "cython":
            runs["cython"] = [bench_census(False) for _ in range(3)]
        for label, values in runs.items():
            print(f"  {label:<7} {statistics.median(values):9.2f} s (median of 3)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
