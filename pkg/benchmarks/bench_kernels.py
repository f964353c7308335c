"""Compare the compiled and pure-Python kernels on representative workloads.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Each workload is drawn from the pipeline: Laurent products of the size met
while exploring rank-3 atlases, and the integer Bareiss solves, ranks and
determinants used by vertex enumeration and facet computation.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from abhy import _pykernels

try:
    from abhy import _ckernels
except ImportError:
    _ckernels = None


def workloads(rng: random.Random) -> dict:
    def laurent(terms):
        return {tuple(rng.randint(-3, 3) for _ in range(6)): rng.randint(-5, 5) or 1 for _ in range(terms)}

    def square(n):
        return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]

    pairs = [(laurent(12), laurent(12)) for _ in range(50)]
    systems = [(square(6), [rng.randint(-9, 9) for _ in range(6)]) for _ in range(200)]
    mats = [square(7) for _ in range(200)]
    return {
        "laurent_mul 12x12 terms": lambda k: [k.laurent_mul(a, b) for a, b in pairs],
        "bareiss_solve 6x6": lambda k: [k.bareiss_solve(m, r) for m, r in systems],
        "bareiss_rank 7x7": lambda k: [k.bareiss_rank(m) for m in mats],
        "bareiss_det 7x7": lambda k: [k.bareiss_det(m) for m in mats],
    }


PIPELINE = (
    "import time; from abhy.moment import verify_theorem; from abhy.kernels import BACKEND; "
    "t = time.perf_counter(); verify_theorem(((0, 1, 0), (-1, 0, 1), (0, -2, 0))); "
    "print(BACKEND, time.perf_counter() - t)"
)


def pipeline_time(pure: bool) -> tuple[str, float]:
    """End-to-end theorem check on a rank-3 fixture, in a fresh interpreter per backend."""
    env = dict(os.environ)
    env.pop("ABHY_PURE_PYTHON", None)
    if pure:
        env["ABHY_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", PIPELINE], env=env, capture_output=True, text=True, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    jobs = workloads(random.Random(0))
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("compiled extension not built; timing the Python kernels only")
    print(f"{'workload':28s}" + "".join(f"{name:>12s}" for name, _ in backends) + ("     speedup" if _ckernels else ""))
    for label, job in jobs.items():
        times = []
        for _, mod in backends:
            for_mod = lambda mod=mod: job(mod)  # noqa: E731
            times.append(min(timeit.repeat(for_mod, number=1, repeat=args.repeat)))
        row = f"{label:28s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:11.2f}x"
        print(row)
    if _ckernels:
        for label, job in jobs.items():
            assert job(_pykernels) == job(_ckernels), f"backends disagree on {label}"
        print("backends agree on every workload")
    print("end-to-end theorem check on B3:")
    for pure in (True, False):
        backend, seconds = pipeline_time(pure)
        print(f"  {backend:8s}{seconds * 1e3:10.1f}ms")


if __name__ == "__main__":
    main()
