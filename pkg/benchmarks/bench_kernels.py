"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from orthonorm import _fallback
from orthonorm.jacobi import _coefficients
from orthonorm.quad_norms import composite_weight_rule
from orthonorm.weights import WeightParams

try:
    from orthonorm import _kernels
except ImportError:
    _kernels = None


def cases():
    A, B, C = (np.asarray(v) for v in _coefficients(0.5, -0.25, 4096))
    x = np.linspace(-1, 1, 2048)
    rule = composite_weight_rule(WeightParams(2, 0.5, 1), 4096)
    yield "recur n=4096, 2048 pts", lambda k: k.recur(A, B, C, 1.0, x, 4096)
    yield "recur n=4096, 1 pt", lambda k: k.recur(A, B, C, 1.0, x[:1], 4096)
    yield "christoffel n=1024, 2048 pts", lambda k: k.christoffel(A, B, C, 1.0, x, 1024)
    yield "stieltjes N=1024, 8192 nodes", lambda k: k.stieltjes(rule.nodes, rule.weights, 1024)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':32s} {'numpy [ms]':>11s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, fn in cases():
        t_py = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat)) * 1e3
        if _kernels is None:
            print(f"{name:32s} {t_py:11.2f} {'n/a':>12s}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32s} {t_py:11.2f} {t_cy:12.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
