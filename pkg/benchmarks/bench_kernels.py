"""Compare the compiled and numpy minimum-weight kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Times one weight level of the search and a full minimum-distance run for a
few codes, once per available backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lattoric import kernels
from lattoric.code import hirzebruch_code, minimum_distance_of_matrix
from lattoric.field import field_for_order

LEVELS = [  # (q, k, n, w)
    (7, 12, 30, 3),
    (7, 14, 36, 4),
    (16, 10, 40, 3),
]

CODES = [  # (l, c1, c2, q, alpha)
    (3, 3, 3, 7, (4, 1)),
    (2, 6, 6, 7, (5, 2)),
    (1, 6, 6, 7, (5, 5)),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(names)} (default {kernels.BACKEND})")

    print("\nsingle level: q k n w | " + " | ".join(f"{n:>10}" for n in names) + " | visited")
    for q, k, n, w in LEVELS:
        f = field_for_order(q)
        rows = np.random.default_rng(q * k + n).integers(0, q, size=(k, n)).astype(np.int32)
        cells, visited = [], None
        for name in names:
            dt, res = best_of(lambda: kernels.min_weight_level(rows, w, f.tables, backend=name), args.repeat)
            cells.append(f"{dt:10.4f}")
            visited = res[2]
        print(f"  {q:>3} {k:>3} {n:>3} {w:>2} | " + " | ".join(cells) + f" | {visited}")

    print("\nfull distance: code | " + " | ".join(f"{n:>10}" for n in names) + " | [N, K, delta]")
    for l, c1, c2, q, alpha in CODES:
        c = hirzebruch_code(l, c1, c2, q, alpha)
        cells, delta = [], None
        for name in names:
            dt, res = best_of(
                lambda: minimum_distance_of_matrix(c.gen_matrix, c.field, budget=10**9, backend=name), 1
            )
            cells.append(f"{dt:10.4f}")
            delta = res.delta
        label = f"H{l} c=({c1},{c2}) q={q} alpha={alpha}"
        print(f"  {label:<34} | " + " | ".join(cells) + f" | [{c.N}, {c.K}, {delta}]")


if __name__ == "__main__":
    main()
