"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--calls N] [--trials N]

Per-call timings use the same random tetrahedra and points for both
backends; the suite timing runs ``isotet verify`` once per backend in a
subprocess (``ISOTET_PURE_PYTHON`` selects the fallback).
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from isotet import _kernels_py

try:
    from isotet import _kernels as _compiled
except ImportError:
    _compiled = None


def _inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    verts = [np.ascontiguousarray(rng.standard_normal((4, 3))) for _ in range(n)]
    pts = rng.standard_normal((n, 2, 3))
    return verts, pts


def _calls(k, verts, pts):
    return {
        "reflect_faces": lambda: [k.reflect_faces(v, p[0]) for v, p in zip(verts, pts)],
        "conjugate": lambda: [k.conjugate(v, p[0], 1e-9) for v, p in zip(verts, pts)],
        "dihedral_residuals": lambda: [k.dihedral_residuals(v, p[0], p[1], 1e-7) for v, p in zip(verts, pts)],
    }


def _suite_time(suite, trials, pure):
    env = dict(os.environ, ISOTET_PURE_PYTHON="1" if pure else "0")
    cmd = [sys.executable, "-m", "isotet.harness.cli", "verify", "--suite", suite, "--trials", str(trials)]
    start = time.perf_counter()
    subprocess.run(cmd, env=env, check=True, stdout=subprocess.DEVNULL)
    return time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--calls", type=int, default=2000)
    ap.add_argument("--trials", type=int, default=1000)
    args = ap.parse_args()
    if _compiled is None:
        sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation`")

    verts, pts = _inputs(args.calls)
    py, cy = _calls(_kernels_py, verts, pts), _calls(_compiled, verts, pts)
    print(f"{'kernel':20s} {'python us':>10s} {'cython us':>10s} {'speedup':>8s}")
    for name in py:
        tp = min(timeit.repeat(py[name], number=1, repeat=3)) / args.calls * 1e6
        tc = min(timeit.repeat(cy[name], number=1, repeat=3)) / args.calls * 1e6
        print(f"{name:20s} {tp:10.2f} {tc:10.2f} {tp / tc:7.1f}x")

    print()
    for suite in ("T3.1", "C3.4", "T6.1"):
        tp = _suite_time(suite, args.trials, pure=True)
        tc = _suite_time(suite, args.trials, pure=False)
        print(f"verify {suite:8s} {args.trials} trials: python {tp:6.2f} s, cython {tc:6.2f} s")


if __name__ == "__main__":
    main()
