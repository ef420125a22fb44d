"""Timing comparison of the two subpolyhedron enumeration kernels.

Runs the pure-Python backtracking search and the compiled extension on the
same spines and reports best-of-N wall times. Invoke from the repo root:

    python3 benchmarks/bench_enum.py [--repeat N]
"""

import argparse
import time

from tetspine._enum import HAVE_COMPILED, enumerate_masks_pure
from tetspine.lens import build_Tpq
from tetspine.moves import random_pachner_walk
from tetspine.spine import dual_spine

if HAVE_COMPILED:
    from tetspine import _enumcore


def instances():
    yield "T_8_3", build_Tpq(8, 3)
    yield "T_13_5", build_Tpq(13, 5)
    yield "T_21_4", build_Tpq(21, 4)
    yield "T_21_4 + 8 moves", random_pachner_walk(build_Tpq(21, 4), 8, seed=7)
    yield "T_21_4 + 25 moves", random_pachner_walk(build_Tpq(21, 4), 25, seed=5)
    yield "T_21_4 + 25 moves*", random_pachner_walk(build_Tpq(21, 4), 25, seed=0)


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    header = f"{'instance':<20} {'faces':>5} {'masks':>6} {'pure ms':>9}"
    if HAVE_COMPILED:
        header += f" {'compiled ms':>12} {'speedup':>8}"
    print(header)

    for name, tri in instances():
        sp = dual_spine(tri)
        germs = list(sp.edge_germs)
        t_pure, masks = best_of(args.repeat, enumerate_masks_pure, sp.num_faces, germs)
        line = f"{name:<20} {sp.num_faces:>5} {len(masks):>6} {t_pure * 1e3:>9.3f}"
        if HAVE_COMPILED:
            t_fast, fast_masks = best_of(
                args.repeat, _enumcore.enumerate_masks, sp.num_faces, germs
            )
            assert fast_masks == masks
            line += f" {t_fast * 1e3:>12.3f} {t_pure / t_fast:>7.1f}x"
        print(line)

    if not HAVE_COMPILED:
        print("\ncompiled kernel not available; showing the pure kernel only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
