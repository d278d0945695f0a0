"""Toric varieties through their ray matrix and Cox grading.

Only the rays and the grading are modelled: ``phi`` (rows are ray
generators), ``beta`` (a basis of its left kernel, giving deg(x_i) as the
i-th column) and ``L_beta``, the column lattice of ``phi`` inside Z^r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import floor
from typing import Sequence

from .intlat import IntMatrix, Lattice, as_matrix, hermite_kernel, rank


class VarietyError(ValueError):
    pass


Monomial = tuple[int, ...]


@dataclass(frozen=True)
class ToricVariety:
    phi: IntMatrix
    beta: IntMatrix
    l_beta: Lattice
    hirzebruch_l: int | None = None

    @property
    def n(self) -> int:
        return self.phi.ncols

    @property
    def r(self) -> int:
        return self.phi.nrows

    @property
    def d(self) -> int:
        return self.beta.nrows

    def degree(self, j: int) -> tuple[int, ...]:
        return self.beta.col(j)

    def u(self, i: int) -> tuple[int, ...]:
        """The i-th basis vector of L_beta (i-th column of phi)."""
        return self.phi.col(i)

    def to_json(self) -> dict:
        if self.hirzebruch_l is not None:
            return {"hirzebruch": self.hirzebruch_l}
        return {"rays": self.phi.tolist()}


def _validate_phi(phi: IntMatrix) -> None:
    r, n = phi.shape
    if r <= n:
        raise VarietyError("need more rays than the torus dimension")
    if rank(phi) != n:
        raise VarietyError("ray matrix is rank deficient")
    for i in range(n):
        if phi.row(i) != tuple(int(i == j) for j in range(n)):
            raise VarietyError("the first n rays must be the standard basis e_1..e_n")


def _check_grading(phi: IntMatrix, beta: IntMatrix) -> None:
    if beta @ phi != IntMatrix.zeros(beta.nrows, phi.ncols):
        raise VarietyError("beta @ phi must vanish")
    if rank(beta) != phi.nrows - phi.ncols:
        raise VarietyError("beta must have rank r - n")


def make_toric_variety(phi) -> ToricVariety:
    """Variety from its rays; beta is the Hermite-reduced left kernel of phi."""
    phi = as_matrix(phi)
    _validate_phi(phi)
    ker = hermite_kernel(phi.T)
    beta = ker.basis.T
    x = ToricVariety(phi, beta, Lattice.from_basis_matrix(phi))
    _check_grading(phi, beta)
    _check_pointed(x)
    return x


def hirzebruch(l: int) -> ToricVariety:
    """H_l with rays (1,0),(0,1),(-1,l),(0,-1) and degrees (1,0),(0,1),(1,0),(l,1)."""
    if l < 0:
        raise VarietyError("Hirzebruch parameter must be nonnegative")
    phi = IntMatrix.from_rows([[1, 0], [0, 1], [-1, l], [0, -1]])
    beta = IntMatrix.from_rows([[1, 0, 1, l], [0, 1, 0, 1]])
    _validate_phi(phi)
    _check_grading(phi, beta)
    return ToricVariety(phi, beta, Lattice.from_basis_matrix(phi), hirzebruch_l=l)


def projective_space(n: int) -> ToricVariety:
    rows = [[int(i == j) for j in range(n)] for i in range(n)] + [[-1] * n]
    return make_toric_variety(rows)


def variety_from_json(data: dict) -> ToricVariety:
    if "hirzebruch" in data:
        return hirzebruch(int(data["hirzebruch"]))
    return make_toric_variety([[int(v) for v in row] for row in data["rays"]])


def degree_of_monomial(x: ToricVariety, m: Sequence[int]) -> tuple[int, ...]:
    if len(m) != x.r:
        raise VarietyError(f"monomial needs {x.r} exponents, got {len(m)}")
    return x.beta.apply(list(m))


# --------------------------------------------------------------------------
# monomial enumeration


def _fm_upper_bounds(beta: IntMatrix, alpha: Sequence[int]) -> list[Fraction | None]:
    """Max of each a_i over {a >= 0 : beta a = alpha} by Fourier-Motzkin.

    ``None`` marks an unbounded coordinate; an infeasible system yields -1.
    """
    d, r = beta.shape
    # inequalities g . a <= h
    base: list[tuple[tuple[Fraction, ...], Fraction]] = []
    for i in range(d):
        row = tuple(Fraction(v) for v in beta.row(i))
        base.append((row, Fraction(alpha[i])))
        base.append((tuple(-v for v in row), Fraction(-alpha[i])))
    for j in range(r):
        base.append((tuple(Fraction(-1 if k == j else 0) for k in range(r)), Fraction(0)))

    bounds: list[Fraction | None] = []
    for target in range(r):
        ineqs = _normalize(base)
        for j in range(r):
            if j == target:
                continue
            pos = [c for c in ineqs if c[0][j] > 0]
            neg = [c for c in ineqs if c[0][j] < 0]
            rest = [c for c in ineqs if c[0][j] == 0]
            for gp, hp in pos:
                for gn, hn in neg:
                    sp, sn = gp[j], -gn[j]
                    g = tuple(sn * a + sp * b for a, b in zip(gp, gn))
                    rest.append((g, sn * hp + sp * hn))
            ineqs = _normalize(rest)
        ub = None
        for g, h in ineqs:
            if any(g[k] != 0 for k in range(r) if k != target):
                continue
            c = g[target]
            if c == 0:
                if h < 0:
                    return [Fraction(-1)] * r
            elif c > 0:
                v = h / c
                ub = v if ub is None or v < ub else ub
        bounds.append(ub)
    return bounds


def _normalize(ineqs):
    """Scale each inequality, keep the tightest per direction; flag infeasibility."""
    best: dict = {}
    width = len(ineqs[0][0]) if ineqs else 0
    infeasible = False
    for g, h in ineqs:
        scale = max((abs(v) for v in g), default=Fraction(0))
        if scale == 0:
            infeasible = infeasible or h < 0
            continue
        key = tuple(v / scale for v in g)
        hh = h / scale
        if key not in best or hh < best[key]:
            best[key] = hh
    out = list(best.items())
    if infeasible:
        out.append(((Fraction(0),) * width, Fraction(-1)))
    return out


def _check_pointed(x: ToricVariety) -> None:
    bounds = _fm_upper_bounds(x.beta, [0] * x.d)
    if any(b is None for b in bounds):
        raise VarietyError("grading is not pointed: a degree has infinitely many monomials")


def _integer_inverse(m: IntMatrix) -> list[list[Fraction]]:
    n = m.nrows
    a = [[Fraction(v) for v in m.row(i)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise VarietyError("singular block")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [v / piv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[c])]
    return [row[n:] for row in a]


def _split_columns(beta: IntMatrix) -> tuple[list[int], list[int]]:
    """Choose d columns of beta forming an invertible block (the last ones when possible)."""
    d, r = beta.shape
    for cols in sorted(combinations(range(r), d), key=lambda c: tuple(-v for v in reversed(c))):
        block = IntMatrix.from_rows([[beta[i, j] for j in cols] for i in range(d)])
        if rank(block) == d:
            free = [j for j in range(r) if j not in cols]
            return free, list(cols)
    raise VarietyError("beta is rank deficient")


def monomial_basis(x: ToricVariety, alpha: Sequence[int]) -> list[Monomial]:
    """All a in N^r with beta a = alpha, in lexicographic order.

    The free coordinates range over boxes from exact Fourier-Motzkin bounds;
    the remaining d coordinates are solved for exactly.
    """
    alpha = [int(v) for v in alpha]
    if len(alpha) != x.d:
        raise VarietyError(f"degree needs {x.d} entries")
    bounds = _fm_upper_bounds(x.beta, alpha)
    if any(b is not None and b < 0 for b in bounds):
        return []
    if any(b is None for b in bounds):
        raise AssertionError("unbounded monomial set; variety invariants violated")
    free, pivot = _split_columns(x.beta)
    block = IntMatrix.from_rows([[x.beta[i, j] for j in pivot] for i in range(x.d)])
    inv = _integer_inverse(block)
    out: list[Monomial] = []
    ranges = [range(floor(bounds[j]) + 1) for j in free]
    for vals in product(*ranges):
        rhs = [alpha[i] - sum(x.beta[i, j] * v for j, v in zip(free, vals)) for i in range(x.d)]
        sol = [sum(inv[i][k] * rhs[k] for k in range(x.d)) for i in range(x.d)]
        if any(s.denominator != 1 or s < 0 for s in sol):
            continue
        a = [0] * x.r
        for j, v in zip(free, vals):
            a[j] = v
        for j, s in zip(pivot, sol):
            a[j] = int(s)
        out.append(tuple(a))
    out.sort()
    return out


def in_semigroup(x: ToricVariety, alpha: Sequence[int]) -> bool:
    """alpha in N beta, decided by a nonempty monomial basis."""
    return bool(monomial_basis(x, alpha))
