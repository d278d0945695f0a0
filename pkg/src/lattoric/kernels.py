"""Backend selection for the hot search kernel.

The compiled extension is used when it imports; setting
``LATTORIC_FORCE_PYTHON=1`` forces the numpy fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from math import comb

from . import _kernels_py

_cy = None
if not os.environ.get("LATTORIC_FORCE_PYTHON"):
    try:
        from . import _kernels_cy as _cy
    except ImportError:  # extension not built
        _cy = None

BACKEND = "cython" if _cy is not None else "python"
BACKENDS = {"python": _kernels_py.combo_min_weight}
if _cy is not None:
    BACKENDS["cython"] = _cy.combo_min_weight


def get_kernel(backend: str | None = None):
    name = backend or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def _partition(k: int, w: int, parts: int) -> list[tuple[int, int]]:
    """Split first-row indices into ranges of roughly equal combination counts."""
    sizes = [comb(k - 1 - i, w - 1) for i in range(k - w + 1)]
    total = sum(sizes)
    out, lo, acc = [], 0, 0
    target = total / parts
    for i, s in enumerate(sizes):
        acc += s
        if acc >= target * (len(out) + 1) and len(out) < parts - 1:
            out.append((lo, i + 1))
            lo = i + 1
    out.append((lo, k - w + 1))
    return [r for r in out if r[0] < r[1]]


def min_weight_level(rows, w, tables, stop_at=0, threads=1, backend=None):
    """Minimum weight over all weight-w projective messages; result independent of threads."""
    kernel = get_kernel(backend)
    k = rows.shape[0]
    if threads <= 1 or k - w + 1 < 2:
        return kernel(rows, w, tables.add, tables.mul, stop_at, 0, k)
    ranges = _partition(k, w, threads)
    with ThreadPoolExecutor(max_workers=threads) as ex:
        results = list(ex.map(lambda r: kernel(rows, w, tables.add, tables.mul, stop_at, r[0], r[1]), ranges))
    best = min(results, key=lambda t: t[0])
    return best[0], best[1], sum(t[2] for t in results)
