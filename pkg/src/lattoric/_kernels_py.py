"""Pure-numpy fallback for the minimum-weight search kernel.

Same contract as the compiled kernel: combinations of ``w`` rows whose first
index lies in ``[first_lo, first_hi)``, first coefficient 1, the others over
all units; stops once a weight <= ``stop_at`` turns up.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

CHUNK = 1 << 16


def _coef_chunks(q: int, w: int):
    m = w - 1
    total = (q - 1) ** m
    for start in range(0, total, CHUNK):
        ids = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
        digits = np.empty((ids.size, w), dtype=np.int64)
        digits[:, 0] = 1
        for t in range(m):
            digits[:, t + 1] = ids % (q - 1) + 1
            ids //= q - 1
        yield digits


def _combos(k: int, w: int, lo: int, hi: int):
    for i in range(lo, min(hi, k - w + 1)):
        for rest in combinations(range(i + 1, k), w - 1):
            yield (i,) + rest


def combo_min_weight(rows, w, add, mul, stop_at=0, first_lo=0, first_hi=None):
    """Return (best weight, a codeword of that weight or None, codewords visited)."""
    rows = np.ascontiguousarray(rows, dtype=np.int64)
    add = np.asarray(add, dtype=np.int64)
    mul = np.asarray(mul, dtype=np.int64)
    k, n = rows.shape
    q = add.shape[0]
    if first_hi is None:
        first_hi = k
    best, word, count = n + 1, None, 0
    if w < 1 or w > k:
        return best, word, count
    for coefs in _coef_chunks(q, w):
        m = coefs.shape[0]
        batch = max(1, CHUNK // m)
        combos = _combos(k, w, first_lo, first_hi)
        while True:
            chunk = [c for _, c in zip(range(batch), combos)]
            if not chunk:
                break
            idx = np.asarray(chunk, dtype=np.int64)
            acc = np.broadcast_to(rows[idx[:, 0]][:, None, :], (idx.shape[0], m, n))
            for t in range(1, w):
                term = mul[coefs[None, :, t, None], rows[idx[:, t]][:, None, :]]
                acc = add[acc, term]
            wt = np.count_nonzero(acc, axis=2)
            count += wt.size
            flat = int(np.argmin(wt))
            bi, bj = divmod(flat, m)
            if wt[bi, bj] < best:
                best = int(wt[bi, bj])
                word = np.array(acc[bi, bj], dtype=np.int32)
                if best <= stop_at:
                    return best, word, count
    return best, word, count
