"""Exact integer linear algebra and sublattices of Z^r.

Everything here works on Python ints, so entries never overflow.  Matrices
are small (rank <= 8 in practice), which keeps the textbook algorithms
(smallest-pivot Smith reduction, extended-gcd Hermite reduction) fast enough.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence


class LatticeError(ValueError):
    """Raised for dimension mismatches and non-containment."""


class InfiniteIndexError(LatticeError):
    """The sublattice has smaller rank, so the quotient is infinite."""


JSON_SAFE = 2**53


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored as a tuple of row tuples."""

    rows_: tuple[tuple[int, ...], ...]
    ncols: int = field(default=-1)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows_)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise LatticeError("ragged matrix rows")
        object.__setattr__(self, "rows_", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], ncols: int = -1) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in r) for r in rows), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        cols = [list(c) for c in cols]
        for c in cols:
            if len(c) != nrows:
                raise LatticeError("column length does not match row count")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diag(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows_)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(v for r in self.rows_ for v in r)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows_[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows_[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows_)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows_]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(self.columns()), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise LatticeError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in ocols) for r in self.rows_),
            other.ncols,
        )

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(k * v for v in r) for r in self.rows_), self.ncols)

    __rmul__ = __mul__

    def __neg__(self) -> "IntMatrix":
        return self * -1

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.nrows != other.nrows:
            raise LatticeError("hstack needs equal row counts")
        return IntMatrix(tuple(a + b for a, b in zip(self.rows_, other.rows_)), self.ncols + other.ncols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.ncols:
            raise LatticeError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows_)

    def to_json(self) -> list[list[int | str]]:
        """Rows of ints; entries beyond 2^53 become decimal strings so JSON readers keep them exact."""
        return [[v if abs(v) <= JSON_SAFE else str(v) for v in r] for r in self.rows_]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int | str]]) -> "IntMatrix":
        return cls.from_rows([[int(v) for v in r] for r in data])

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def as_matrix(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    return IntMatrix.from_rows(m)


def det(m: IntMatrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    m = as_matrix(m)
    n = m.nrows
    if n != m.ncols:
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = m.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Rank over the rationals."""
    return len(_hnf_columns(as_matrix(m).columns(), as_matrix(m).nrows)[0])


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """a @ b @ c == d with a, c unimodular and d in Smith form."""

    a: IntMatrix
    d: IntMatrix
    c: IntMatrix
    invariant_factors: tuple[int, ...]

    def verify(self, b: IntMatrix) -> bool:
        if self.a @ as_matrix(b) @ self.c != self.d:
            return False
        if abs(det(self.a)) != 1 or abs(det(self.c)) != 1:
            return False
        return is_smith_form(self.d)


def is_smith_form(d: IntMatrix) -> bool:
    diag = []
    for i in range(d.nrows):
        for j in range(d.ncols):
            if i != j and d[i, j] != 0:
                return False
    for i in range(min(d.shape)):
        diag.append(d[i, i])
    nz = [x for x in diag if x != 0]
    if any(x < 0 for x in nz):
        return False
    # zeros only at the tail
    if diag[: len(nz)] != nz:
        return False
    return all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))


def smith_normal_form(b) -> SmithDecomposition:
    """Smith decomposition with smallest-absolute-value pivoting.

    The row transform ``a`` and column transform ``c`` are accumulated as
    products of elementary operations, so ``a @ b @ c == d`` holds exactly.
    They are not unique; only the decomposition equation is meaningful.
    """
    b = as_matrix(b)
    r, n = b.shape
    D = b.tolist()
    A = IntMatrix.identity(r).tolist()
    C = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        A[i], A[j] = A[j], A[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in C:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [x + k * y for x, y in zip(D[dst], D[src])]
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for row in D:
            row[dst] += k * row[src]
        for row in C:
            row[dst] += k * row[src]

    t = 0
    while t < min(r, n):
        best = None
        for i in range(t, r):
            for j in range(t, n):
                v = D[i][j]
                if v != 0 and (best is None or abs(v) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, r):
                if D[i][t] != 0:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t] != 0:
                        done = False
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j] != 0:
                        done = False
            if not done:
                # a nonzero remainder is smaller than the pivot; move it up
                best = None
                for i in range(t, r):
                    if D[i][t] != 0 and (best is None or abs(D[i][t]) < abs(D[best[0]][best[1]])):
                        best = (i, t)
                for j in range(t, n):
                    if D[t][j] != 0 and (best is None or abs(D[t][j]) < abs(D[best[0]][best[1]])):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            # row and column cleared; enforce divisibility of the rest
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, n):
                    if D[i][j] % p != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            A[t] = [-x for x in A[t]]
        t += 1

    factors = tuple(D[i][i] for i in range(min(r, n)) if D[i][i] != 0)
    return SmithDecomposition(
        IntMatrix.from_rows(A, r), IntMatrix.from_rows(D, n), IntMatrix.from_rows(C, n), factors
    )


def invariant_factors(b) -> tuple[int, ...]:
    return smith_normal_form(b).invariant_factors


# --------------------------------------------------------------------------
# Hermite normal form (column style)


def _hnf_columns(
    cols: list[Sequence[int]], nrows: int, track: bool = False
) -> tuple[list[list[int]], list[int], list[list[int]] | None, list[list[int]] | None]:
    """Column-style Hermite form of the lattice generated by ``cols``.

    Returns ``(basis, pivots, transform, kernel)``.  ``basis`` is lower
    echelon: column j is zero above row ``pivots[j]``, its pivot entry is
    positive, and pivot rows increase with j.  Entries of earlier columns in a
    pivot row are reduced into ``[0, pivot)``.  With ``track`` the unimodular
    transform U (cols @ U = [basis | 0]) and the kernel columns of U are
    also returned.
    """
    m = len(cols)
    work = [list(c) for c in cols]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None

    def combine(j, k, a, b_, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        cj, ck = work[j], work[k]
        work[j] = [a * x + b_ * y for x, y in zip(cj, ck)]
        work[k] = [c * x + d * y for x, y in zip(cj, ck)]
        if track:
            for row in U:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b_ * y, c * x + d * y

    def negate(j):
        work[j] = [-x for x in work[j]]
        if track:
            for row in U:
                row[j] = -row[j]

    def swap(j, k):
        work[j], work[k] = work[k], work[j]
        if track:
            for row in U:
                row[j], row[k] = row[k], row[j]

    def axpy(dst, src, k):  # col_dst += k col_src
        work[dst] = [x + k * y for x, y in zip(work[dst], work[src])]
        if track:
            for row in U:
                row[dst] += k * row[src]

    pivots: list[int] = []
    col = 0
    for i in range(nrows):
        if col >= m:
            break
        nz = [j for j in range(col, m) if work[j][i] != 0]
        if not nz:
            continue
        if nz[0] != col:
            swap(col, nz[0])
        for k in range(col + 1, m):
            if work[k][i] == 0:
                continue
            a, b_ = work[col][i], work[k][i]
            g, x, y = _xgcd(a, b_)
            # [x -b/g; y a/g] has determinant 1
            combine(col, k, x, y, -b_ // g, a // g)
        if work[col][i] < 0:
            negate(col)
        p = work[col][i]
        for j in range(col):
            q = work[j][i] // p
            if q:
                axpy(j, col, -q)
        pivots.append(i)
        col += 1
    basis = [work[j] for j in range(col)]
    kernel = None
    transform = None
    if track:
        transform = U
        kernel = [[U[i][j] for i in range(m)] for j in range(col, m)]
    return basis, pivots, transform, kernel


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g = gcd(a, b) > 0 and x a + y b = g."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m) -> IntMatrix:
    """Column Hermite form of the column lattice of ``m`` (zero columns dropped)."""
    m = as_matrix(m)
    basis, _, _, _ = _hnf_columns(m.columns(), m.nrows)
    return IntMatrix.from_columns(basis, m.nrows)


# --------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^r spanned by the (independent) columns of ``basis``."""

    ambient_rank: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.nrows != self.ambient_rank:
            raise LatticeError("basis rows must equal ambient rank")
        if self.basis.ncols and rank(self.basis) != self.basis.ncols:
            raise LatticeError("basis columns are linearly dependent")

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], ambient_rank: int) -> "Lattice":
        gens = [list(g) for g in gens]
        for g in gens:
            if len(g) != ambient_rank:
                raise LatticeError("generator length does not match ambient rank")
        basis, _, _, _ = _hnf_columns(gens, ambient_rank)
        return cls(ambient_rank, IntMatrix.from_columns(basis, ambient_rank))

    @classmethod
    def from_basis_matrix(cls, m) -> "Lattice":
        m = as_matrix(m)
        return cls(m.nrows, m)

    @classmethod
    def zero(cls, ambient_rank: int) -> "Lattice":
        return cls(ambient_rank, IntMatrix.zeros(ambient_rank, 0))

    @classmethod
    def standard(cls, ambient_rank: int, scale: int = 1) -> "Lattice":
        return cls(ambient_rank, IntMatrix.identity(ambient_rank) * scale)

    @property
    def rank(self) -> int:
        return self.basis.ncols

    def generators(self) -> list[tuple[int, ...]]:
        return self.basis.columns()

    def hermite(self) -> "Lattice":
        return Lattice.from_generators(self.generators(), self.ambient_rank)

    def scaled(self, k: int) -> "Lattice":
        if k == 0:
            return Lattice.zero(self.ambient_rank)
        return Lattice(self.ambient_rank, self.basis * k)

    def __contains__(self, v) -> bool:
        return lattice_membership(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return lattices_equal(self, other)

    def __hash__(self) -> int:
        h = self.hermite()
        return hash((h.ambient_rank, h.basis))

    def __le__(self, other: "Lattice") -> bool:
        return all(lattice_membership(other, v) for v in self.generators())


def _check_ambient(l1: Lattice, l2: Lattice) -> None:
    if l1.ambient_rank != l2.ambient_rank:
        raise LatticeError(f"ambient rank mismatch: {l1.ambient_rank} vs {l2.ambient_rank}")


def hermite_kernel(q) -> Lattice:
    """Integer kernel {z in Z^r : q z = 0} with a Hermite-reduced basis."""
    q = as_matrix(q)
    r = q.ncols
    _, _, _, kernel = _hnf_columns(q.columns(), q.nrows, track=True)
    return Lattice.from_generators(kernel, r)


def lattice_sum(l1: Lattice, l2: Lattice) -> Lattice:
    _check_ambient(l1, l2)
    return Lattice.from_generators(l1.generators() + l2.generators(), l1.ambient_rank)


def lattice_intersection(l1: Lattice, l2: Lattice) -> Lattice:
    """Solve B1 x = B2 y over Z through the kernel of [B1 | -B2]."""
    _check_ambient(l1, l2)
    if l1.rank == 0 or l2.rank == 0:
        return Lattice.zero(l1.ambient_rank)
    stacked = l1.basis.hstack(-l2.basis)
    ker = hermite_kernel(stacked)
    k1 = l1.rank
    vecs = [l1.basis.apply(z[:k1]) for z in ker.generators()]
    return Lattice.from_generators(vecs, l1.ambient_rank)


def _solve_integer(basis: IntMatrix, v: Sequence[int]) -> tuple[int, ...] | None:
    """Coordinates x with basis @ x = v, or None when v is not in the lattice."""
    r = basis.nrows
    if len(v) != r:
        raise LatticeError("vector length does not match ambient rank")
    k = basis.ncols
    if k == 0:
        return () if all(x == 0 for x in v) else None
    H, pivots, U, _ = _hnf_columns(basis.columns(), r, track=True)
    # independent columns: U is k x k and basis @ U = H
    resid = list(v)
    y = []
    for j, p in enumerate(pivots):
        h = H[j]
        if resid[p] % h[p] != 0:
            return None
        c = resid[p] // h[p]
        y.append(c)
        if c:
            resid = [a - c * b for a, b in zip(resid, h)]
    if any(resid):
        return None
    return tuple(sum(U[i][j] * y[j] for j in range(k)) for i in range(k))


def lattice_membership(l: Lattice, v: Sequence[int]) -> bool:
    return _solve_integer(l.basis, list(v)) is not None


def lattices_equal(l1: Lattice, l2: Lattice) -> bool:
    """Equality as sets: mutual membership of the bases."""
    if l1.ambient_rank != l2.ambient_rank or l1.rank != l2.rank:
        return False
    return l1 <= l2 and l2 <= l1


def coords_in(sub: Lattice, sup: Lattice) -> IntMatrix:
    """The matrix ML with sup.basis @ ML == sub.basis."""
    _check_ambient(sub, sup)
    cols = []
    for j, v in enumerate(sub.generators()):
        x = _solve_integer(sup.basis, v)
        if x is None:
            raise LatticeError(f"basis column {j} of the sublattice is not in the superlattice: {list(v)}")
        cols.append(x)
    return IntMatrix.from_columns(cols, sup.rank)


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """|sup / sub| for a full-rank sublattice."""
    if sub.rank != sup.rank:
        raise InfiniteIndexError(f"rank {sub.rank} sublattice has infinite index in rank {sup.rank} lattice")
    return abs(det(coords_in(sub, sup)))


def saturate_at(l: Lattice, m: int) -> Lattice:
    """The lattice {v : m v in l}, computed as (l intersect m Z^r) / m."""
    if m < 1:
        raise LatticeError("saturation multiplier must be positive")
    if m == 1:
        return l
    inter = lattice_intersection(l, Lattice.standard(l.ambient_rank, m))
    return Lattice.from_generators(
        [[x // m for x in v] for v in inter.generators()], l.ambient_rank
    )


# --------------------------------------------------------------------------
# Mixed dominating matrices


def _mixed(m: IntMatrix, rows: Sequence[int], cols: Sequence[int]) -> bool:
    for j in cols:
        vals = [m[i, j] for i in rows]
        if not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
            return False
    return True


def is_mixed_dominating(m) -> bool:
    """True when no square submatrix has a positive and a negative entry in every column."""
    m = as_matrix(m)
    r, n = m.shape
    for k in range(2, min(r, n) + 1):
        for cols in combinations(range(n), k):
            # a column needs both signs somewhere to take part
            if not _mixed(m, range(r), cols):
                continue
            for rows in combinations(range(r), k):
                if _mixed(m, rows, cols):
                    return False
    return True


def dump_matrix(m: IntMatrix) -> str:
    return json.dumps(m.to_json())


def gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
