"""Row reduction over GF(q) on element-index arrays, driven by the field tables."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .field import ArithTables


def rref(m, t: ArithTables, col_order: Sequence[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``m``; pivots are taken only from ``col_order``.

    All rows are returned: the first ``len(pivots)`` are the pivot rows, the
    rest vanish on every column of ``col_order``.
    """
    a = np.array(m, dtype=np.int32, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    nrows, ncols = a.shape
    cols = range(ncols) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    for c in cols:
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = t.mul[t.inv[a[r, c]], a[r]]
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = t.add[a[hit], t.neg[t.mul[f[hit, None], a[r][None, :]]]]
        pivots.append(int(c))
        r += 1
    return a, pivots


def rank(m, t: ArithTables) -> int:
    arr = np.asarray(m)
    if arr.size == 0:
        return 0
    return len(rref(arr, t)[1])


def row_space_basis(m, t: ArithTables) -> tuple[np.ndarray, list[int]]:
    a, piv = rref(m, t)
    return a[: len(piv)], piv


def combine(coeffs: Sequence[int], rows: np.ndarray, t: ArithTables) -> np.ndarray:
    """sum_i coeffs[i] * rows[i] over GF(q)."""
    out = np.zeros(rows.shape[1], dtype=np.int32)
    for c, row in zip(coeffs, rows):
        if c:
            out = t.add[out, t.mul[c, row]]
    return out
