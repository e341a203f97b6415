"""Compare the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported directly, so the environment switch is not
needed here.  Each workload is checked for identical output before it is
timed.
"""

import argparse
import random
import timeit

from holored import _pykernels

try:
    from holored import _kernels
except ImportError:
    _kernels = None

DOMB = [(1, 0, 0, 0, 1, 0, 2), (2, -2, 0, 1, -1, 0, 1), (0, 2, 0, 0, 1, 0, 1)]
FRANEL4 = [(1, 0, 0, 0, 1, 0, 4)]


def workloads():
    rng = random.Random(1)
    big = [rng.randrange(-10 ** 40, 10 ** 40) for _ in range(60)]
    small = [rng.randrange(-1000, 1000) for _ in range(60)]
    return {
        "poly_mul 60x60, 130-bit coeffs": ("int_poly_mul", (big, big[::-1])),
        "poly_mul 60x60, 10-bit coeffs": ("int_poly_mul", (small, small[::-1])),
        "taylor_shift deg 59 by 7": ("int_taylor_shift", (big, 7)),
        "Domb terms n < 150": ("binomial_sum_terms", (150, DOMB, [])),
        "Franel4 terms n < 150": ("binomial_sum_terms", (150, FRANEL4, [])),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'workload':34} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, (fn, fargs) in workloads().items():
        py, cy = getattr(_pykernels, fn), getattr(_kernels, fn)
        assert py(*fargs) == cy(*fargs), name
        t_py = min(timeit.repeat(lambda: py(*fargs), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: cy(*fargs), number=1, repeat=args.repeat))
        print(f"{name:34} {t_py * 1e3:10.2f} {t_cy * 1e3:10.2f} {t_py / t_cy:7.2f}x")


if __name__ == "__main__":
    main()
