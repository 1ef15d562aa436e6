"""Compare the compiled kernels with their pure-Python fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times one loop of the DP5 resolvent integrator and of the double-double
Taylor transport for a random symmetric matrix per size, and reports the
largest disagreement between the two backends.
"""
import argparse
import math
import time

import numpy as np

from dnfuchs import highprec, ode
from dnfuchs.highprec import DDMatrix, transport
from dnfuchs.ode import Arc, Path, integrate
from dnfuchs.sampling import random_symmetric_dn


def best_of(repeat, fn):
    best, out = math.inf, None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def bench_size(n, repeat, rng):
    A = random_symmetric_dn(n, rng)
    A_np = A.to_numpy().astype(complex)
    lam = np.linalg.eigvals(A_np)
    path = Path([Arc(0, 1.5 * np.max(np.abs(lam)) + 1, 0.1, 0.1 + 2 * math.pi)])
    eye = np.eye(n + 1)
    rows = []
    ode_runs = {b: best_of(repeat, lambda b=b: integrate(path, eye, 1e-12, A=A_np, backend=b).Phi)
                for b in ("cython", "python")}
    diff = np.max(np.abs(ode_runs["cython"][1] - ode_runs["python"][1]))
    rows.append(("dp5", n, ode_runs["cython"][0], ode_runs["python"][0], diff))
    A_dd = DDMatrix.from_exact(A.rows())
    dd_runs = {b: best_of(repeat, lambda b=b: transport(A_dd, path, lam, backend=b)[0])
               for b in ("cython", "python")}
    diff = (dd_runs["cython"][1] - dd_runs["python"][1]).max_abs()
    rows.append(("dd-taylor", n, dd_runs["cython"][0], dd_runs["python"][0], diff))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--sizes", type=int, nargs="+", default=[1, 2, 3, 4])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if ode.BACKEND != "cython" or highprec.BACKEND != "cython":
        raise SystemExit("compiled kernels not available; run `python3 setup.py build_ext --inplace`")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<10} {'n':>2} {'cython [s]':>11} {'python [s]':>11} {'speedup':>8} {'max diff':>9}")
    for n in args.sizes:
        for name, size, tc, tp, diff in bench_size(n, args.repeat, rng):
            print(f"{name:<10} {size:>2} {tc:>11.4f} {tp:>11.4f} {tp / tc:>8.1f} {diff:>9.1e}")


if __name__ == "__main__":
    main()
