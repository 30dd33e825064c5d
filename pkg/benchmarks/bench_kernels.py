"""Compare the compiled and pure-Python polynomial kernels.

Runs the raw kernels on random sparse polynomials and, end to end, the
bialgebroid check of the tm2 tangent double under each backend (the latter in
a subprocess, since the backend is chosen at import time).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from dlalg import _kernels_py

try:
    from dlalg import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def random_terms(rng: random.Random, nvars: int, nterms: int, max_exp: int) -> dict:
    out = {}
    while len(out) < nterms:
        key = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        c = rng.choice([rng.randint(-9, 9), Fraction(rng.randint(-9, 9), rng.randint(1, 5))])
        if c:
            out[key] = c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
    return out


def kernel_timings(repeat: int) -> list:
    rng = random.Random(0)
    a = random_terms(rng, 4, 40, 3)
    b = random_terms(rng, 4, 40, 3)
    point = (1, -2, Fraction(1, 3), 2)
    cases = {
        "add": lambda k: k.add(a, b),
        "mul": lambda k: k.mul(a, b),
        "partial": lambda k: k.partial(a, 1),
        "evaluate": lambda k: k.evaluate(a, point),
    }
    rows = []
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=repeat, repeat=3)) / repeat
        cy = None
        if _kernels_c is not None:
            assert fn(_kernels_c) == fn(_kernels_py), f"backends disagree on {name}"
            cy = min(timeit.repeat(lambda: fn(_kernels_c), number=repeat, repeat=3)) / repeat
        rows.append((name, py, cy))
    return rows


END_TO_END = (
    "import time; from dlalg import BACKEND; from dlalg.fixtures import tm2_input;"
    "from dlalg.tangent import tangent_double_matched_pair; from dlalg.doubles import check_bialgebroid;"
    "mp = tangent_double_matched_pair(tm2_input()); t = time.perf_counter();"
    "[check_bialgebroid(mp) for _ in range(3)]; print(BACKEND, (time.perf_counter() - t) / 3)"
)


def end_to_end() -> list:
    rows = []
    for pure in ("1", "0"):
        env = dict(os.environ, DLALG_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        rows.append((backend, float(secs)))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    print(f"{'kernel':<10}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name, py, cy in kernel_timings(args.repeat):
        if cy is None:
            print(f"{name:<10}{py * 1e6:>14.1f}{'n/a':>14}{'':>10}")
        else:
            print(f"{name:<10}{py * 1e6:>14.1f}{cy * 1e6:>14.1f}{py / cy:>9.2f}x")
    print()
    print("bialgebroid check of the tm2 tangent double (seconds per run):")
    for backend, secs in end_to_end():
        print(f"  {backend:<8}{secs:.3f}")


if __name__ == "__main__":
    main()
