"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads mirror the library's hot paths: strategy composition (closure and
restriction), acyclicity checks, and the exhaustive 3x3 matrix sweep of the
canonical-form encoder/decoder.
"""

from __future__ import annotations

import argparse
import itertools
import os
import random
import timeit

from causal_games import _pykernels

try:
    from causal_games import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def workloads(rng: random.Random):
    graphs = []
    for _ in range(300):
        n = rng.randint(4, 12)
        edges = sorted({(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < 0.15})
        graphs.append((n, edges, list(range(0, n, 2))))
    matrices = [list(v) for v in itertools.product(range(3), repeat=9)][:4000]

    def closure(k):
        for n, e, keep in graphs:
            k.closure_restrict(n, e, keep)

    def cycles(k):
        for n, e, _ in graphs:
            k.has_cycle(n, e)

    def codec(k):
        for flat in matrices:
            k.mrel_decode(k.mrel_encode(flat, 3, 3))

    return {"closure_restrict": closure, "has_cycle": cycles, "mrel_encode+decode": codec}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = random.Random(int(os.environ.get("CAUSAL_GAMES_SEED", "0")))
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'workload':<22}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _ckernels else ""))
    for label, fn in workloads(rng).items():
        times = [min(timeit.repeat(lambda fn=fn, k=k: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        row = f"{label:<22}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)
    if not _ckernels:
        print("compiled extension not available; only the fallback was timed")


if __name__ == "__main__":
    main()
