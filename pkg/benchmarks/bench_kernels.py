"""Time the pure-Python and compiled kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat N]

Also times one end-to-end Ehrhart computation under each backend.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from latsum import kernels


def _inputs(seed=0):
    rng = random.Random(seed)
    small = [Fraction(rng.randint(-9, 9), rng.randint(1, 12)) for _ in range(24)]
    small2 = [Fraction(rng.randint(-9, 9), rng.randint(1, 12)) for _ in range(24)]
    big = [Fraction(rng.randint(-10 ** 30, 10 ** 30), rng.randint(1, 10 ** 20)) for _ in range(24)]
    atoms = ((4, 1, 1), (-5, 2, 2), (3, 7, 1))
    terms = [(rng.randint(-50, 50), rng.randint(1, 60), atoms[: 1 + k % 3]) for k in range(30)]
    return small, small2, big, terms


def bench_backend(mod, repeat):
    small, small2, big, terms = _inputs()
    cases = {
        "series_mul (small)": lambda: mod.series_mul(small, small2, 24),
        "series_mul (big ints)": lambda: mod.series_mul(big, small, 24),
        "linear_power": lambda: mod.linear_power(Fraction(3, 7), Fraction(-2, 5), 12, 16),
        "step_eval": lambda: [mod.step_eval(terms, 4, 3 * 4 * 5 * 7 * 60, p, 13) for p in range(1, 40)],
    }
    return {name: min(timeit.repeat(fn, number=200, repeat=repeat)) / 200 for name, fn in cases.items()}


_E2E = """
import timeit
from fractions import Fraction
from latsum import kernels
from latsum.ehrhart import ehrhart_qp
from latsum.genfun import Polytope
p = Polytope(((4, 0), (Fraction(5, 2), 4), (0, Fraction(11, 3))))
best = min(timeit.repeat(lambda: ehrhart_qp(p, [(0, 1)], (1, 0), 2), number=3, repeat={repeat})) / 3
print(kernels.BACKEND, best)
"""


def bench_end_to_end(pure, repeat):
    # kernels are bound at import, so each backend gets a fresh interpreter
    env = dict(os.environ, LATSUM_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", _E2E.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [kernels.python_backend]
    if kernels.compiled_backend is not None:
        backends.append(kernels.compiled_backend)
    else:
        print("compiled backend not built; timing the pure-Python kernels only")
    results = {mod.BACKEND: bench_backend(mod, args.repeat) for mod in backends}
    names = list(next(iter(results.values())))
    header = f"{'kernel':24s}" + "".join(f"{b:>14s}" for b in results)
    if len(results) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for name in names:
        row = f"{name:24s}" + "".join(f"{r[name] * 1e6:11.1f} us" for r in results.values())
        if len(results) == 2:
            py, c = (r[name] for r in results.values())
            row += f"{py / c:9.2f}x"
        print(row)
    for pure in (True, False)[: len(backends)]:
        name, secs = bench_end_to_end(pure, args.repeat)
        print(f"ehrhart_qp end to end ({name}): {secs * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
