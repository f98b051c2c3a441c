"""Compare the compiled kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N]

Prints one row per workload with the best-of-N time for each backend and
the speedup. Both backends must return identical results.
"""
import argparse
import random
import timeit

from splicesig import _kernels_py
from splicesig.kernels import BACKEND

try:
    from splicesig import _kernels
except ImportError:
    _kernels = None


def workloads():
    rng = random.Random(0)
    ded = [(rng.randrange(1, q), q) for q in (rng.randint(1000, 2000) for _ in range(200))]
    jumps = [([rng.randrange(m) for _ in range(4)], m) for m in (rng.randint(500, 5000) for _ in range(40))]
    return {
        "dedekind numerator, 200 x q~1500": (lambda k: [k.dedekind_numerator(p, q) for p, q in ded]),
        "jump numerators, 40 x m~2500, 4 residues": (lambda k: [k.jump_numerators(r, m) for r, m in jumps]),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"default backend: {BACKEND}")
    print(f"{'workload':<44}{'python':>10}{'cython':>10}{'speedup':>10}")
    for name, fn in workloads().items():
        def ident(res):
            return [(list(x[0]), list(x[1])) if isinstance(x, tuple) else x for x in res]
        assert ident(fn(_kernels)) == ident(fn(_kernels_py)), name
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:<44}{t_py:>9.4f}s{t_cy:>9.4f}s{t_py / t_cy:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
