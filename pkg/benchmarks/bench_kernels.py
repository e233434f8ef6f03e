"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

import numpy as np

from dksynth import _kernels_py

try:
    from dksynth import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(rng):
    k = 5
    n = 16
    yield "fwht_mod (n=16, k=5)", "fwht_mod", ([rng.randrange(k) for _ in range(1 << n)], k)

    n, m = 12, 200
    ops = [rng.randrange(3) for _ in range(m)]
    ctrl = [rng.randrange(n) for _ in range(m)]
    pairs = [rng.sample(range(k), 2) for _ in range(m)]
    r1, r2 = [p for p, _ in pairs], [q for _, q in pairs]
    yield f"run_circuit_all (n={n}, {m} gates, k={k})", "run_circuit_all", (ops, ctrl, r1, r2, list(range(k)), n, k)

    n, m = 12, 2 ** 13
    kinds = [i % 2 for i in range(m)]
    exps = [rng.randrange(k) if t == 0 else 0 for t in kinds]
    masks = [rng.randrange(1 << (n + 1)) if t else 0 for t in kinds]
    yield f"fold_cascade_all (n={n}, {m} cells, k={k})", "fold_cascade_all", (kinds, exps, masks, n, k)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<44}{'python s':>11}{'compiled s':>12}{'speedup':>10}")
    for label, name, call_args in cases(random.Random(args.seed)):
        t_py, out_py = best_of(getattr(_kernels_py, name), call_args, args.repeat)
        if compiled is None:
            print(f"{label:<44}{t_py:>11.4f}{'-':>12}{'-':>10}")
            continue
        t_c, out_c = best_of(getattr(compiled, name), call_args, args.repeat)
        assert np.array_equal(out_py, out_c), f"{name}: backends disagree"
        print(f"{label:<44}{t_py:>11.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x")


if __name__ == "__main__":
    main()
