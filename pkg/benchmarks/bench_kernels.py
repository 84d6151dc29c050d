"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times raw Weyl multiplication on random operators and a full left Gröbner
basis computation, once per backend. The backend for the Gröbner run is
chosen through ``TAUT_PURE_PYTHON`` in a child process, since it is fixed at
import time.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction as Q

from taut import _kernels_py

try:
    from taut import _kernels_cy
except ImportError:
    _kernels_cy = None


def random_terms(rng, n, count, maxdeg):
    out = {}
    for _ in range(count):
        e = tuple(rng.randint(0, maxdeg) for _ in range(2 * n))
        out[e] = Q(rng.randint(-9, 9), rng.randint(1, 5))
    return {e: c for e, c in out.items() if c}


GB_SNIPPET = """
import time
from taut.topo_oracle import groebner_rank
from taut.weyl import left_groebner
from taut.tautbuild import build_tauthat, parse_family
t = time.perf_counter()
left_groebner(build_tauthat(parse_family("rnc:3").spec(0)))
groebner_rank("rnc:4", "1/2")
print(time.perf_counter() - t)
"""


def gb_time(pure):
    env = dict(os.environ)
    if pure:
        env["TAUT_PURE_PYTHON"] = "1"
    else:
        env.pop("TAUT_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", GB_SNIPPET], capture_output=True, text=True, env=env, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = random.Random(1)
    pairs = [(random_terms(rng, 3, 8, 4), random_terms(rng, 3, 8, 4)) for _ in range(50)]

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    else:
        print("compiled kernels not built; timing the pure-Python backend only")

    print(f"{'benchmark':<28}{'backend':<10}{'seconds':>10}")
    base = {}
    for name, mod in backends:
        t = min(timeit.repeat(lambda: [mod.weyl_mul(a, b, 3) for a, b in pairs], number=1, repeat=args.repeat))
        base.setdefault("weyl_mul", t)
        print(f"{'weyl_mul x50 (n=3)':<28}{name:<10}{t:>10.4f}  speedup {base['weyl_mul'] / t:.2f}x")
    for name, _ in backends:
        t = min(gb_time(name == "python") for _ in range(max(1, args.repeat // 2)))
        base.setdefault("gb", t)
        print(f"{'groebner + rank':<28}{name:<10}{t:>10.4f}  speedup {base['gb'] / t:.2f}x")


if __name__ == "__main__":
    main()
