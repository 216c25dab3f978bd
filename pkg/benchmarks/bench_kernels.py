"""Compare the numba kernels with their interpreted / numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--symmetric 8]

Each row times one kernel on one input with ``jit=True`` and ``jit=False``;
compilation is done in an untimed warm-up call.
"""
import argparse
import random
import time

import numpy as np

from deficiency import kernels
from deficiency._jit import USE_NUMBA
from deficiency.cosets import kernel_coset_table, todd_coxeter
from deficiency.presentation import abelianization_matrix, parse_presentation
from deficiency.presets import PRESETS, fold_map_images
from deficiency.rewriting import subgroup_presentation
from deficiency.smith import smith_normal_form


def symmetric_group(n):
    """Coxeter presentation of S_n on adjacent transpositions."""
    names = [f"s{i}" for i in range(1, n)]
    rels = [f"{a}^2" for a in names]
    rels += [f"({a}*{b})^3" for a, b in zip(names, names[1:])]
    rels += [f"({names[i]}*{names[j]})^2" for i in range(n - 1) for j in range(i + 2, n - 1)]
    return parse_presentation(f"< {', '.join(names)} | {', '.join(rels)} >")


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--symmetric", type=int, default=8,
                        help="enumerate S_n (order n!) with this n")
    args = parser.parse_args()
    if not USE_NUMBA:
        print("numba disabled (DEFICIENCY_NO_JIT); both columns use the fallback")

    Sn = symmetric_group(args.symmetric)
    DD = PRESETS["DxD"].presentation
    kernel_matrix = abelianization_matrix(
        subgroup_presentation(DD, kernel_coset_table(DD, fold_map_images())))
    rng = random.Random(1)
    dense = np.array([[rng.randrange(101) for _ in range(300)] for _ in range(300)], dtype=object)

    cases = [
        (f"todd_coxeter S_{args.symmetric}", lambda jit: todd_coxeter(Sn, max_cosets=5 * 10 ** 6, jit=jit).index),
        ("todd_coxeter binary icosahedral",
         lambda jit: todd_coxeter(PRESETS["binary-icosahedral"].presentation, jit=jit).index),
        ("smith_normal_form 480x361", lambda jit: smith_normal_form(kernel_matrix, jit=jit)),
        ("rank_mod_p 300x300, p=101", lambda jit: kernels.rank_mod_p(dense, 101, jit=jit)),
    ]
    print(f"{'kernel':36} {'numba (s)':>10} {'fallback (s)':>13} {'speedup':>8}")
    for name, fn in cases:
        fn(True)
        fast = best_of(args.repeat, lambda: fn(True))
        slow = best_of(args.repeat, lambda: fn(False))
        print(f"{name:36} {fast:10.4f} {slow:13.4f} {slow / fast:8.1f}x")


if __name__ == "__main__":
    main()
