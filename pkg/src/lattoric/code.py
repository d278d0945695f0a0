"""Generalized toric codes: evaluation at subgroup points, dimension, distance.

Distances are exact. The search enumerates low-weight messages over several
systematic generator matrices on disjoint information sets (the
Brouwer-Zimmermann scheme) and stops once the accumulated lower bound meets
the best weight seen.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .field import FiniteField, field_for_order
from .gflinalg import rank as gf_rank
from .gflinalg import rref, row_space_basis
from .intlat import IntMatrix, lattices_equal
from .kernels import min_weight_level
from .subgroup import NotFullError, SubgroupSpec, TorusPoint, enumerate_points, is_full_over, make_subgroup
from .toricvar import Monomial, ToricVariety, hirzebruch, in_semigroup, monomial_basis

DEFAULT_BUDGET = 10**7
# sweeps reach K ~ 2N/3 at N = 36, where a single weight level is ~3e7 codewords
SWEEP_BUDGET = 10**8


class CodeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """The distance search would visit more codewords than allowed."""


class HypothesisError(CodeError):
    """Inputs outside the closed-form theorem's hypotheses."""


@dataclass
class ToricCode:
    variety: ToricVariety
    subgroup: SubgroupSpec
    field: FiniteField
    alpha: tuple[int, ...]
    points: list[TorusPoint]
    basis: list[Monomial]
    gen_matrix: np.ndarray  # element indices, |basis| x N
    K: int
    delta: int | None = dc_field(default=None)

    @property
    def N(self) -> int:
        return len(self.points)

    @property
    def params(self) -> tuple[int, int, int | None]:
        return (self.N, self.K, self.delta)

    def gen_matrix_elements(self):
        return [[self.field.element(int(v)) for v in row] for row in self.gen_matrix]

    def to_json(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "N": self.N,
            "K": self.K,
            "delta": self.delta,
            "basis": [list(m) for m in self.basis],
        }


def evaluation_matrix(basis: Sequence[Monomial], points: Sequence[TorusPoint], f: FiniteField) -> np.ndarray:
    """Entry (i, j) is the index of basis[i] evaluated at points[j]."""
    if not basis:
        return np.zeros((0, len(points)), dtype=np.int32)
    logs = np.array([[f.log(c) for c in p.coords] for p in points], dtype=np.int64)
    exps = np.array(basis, dtype=np.int64)
    e = (exps @ logs.T) % (f.q - 1)
    return np.ascontiguousarray(f.exp_array[e], dtype=np.int32)


def build_code(
    x: ToricVariety,
    s: SubgroupSpec,
    f: FiniteField,
    alpha: Sequence[int],
    points: Sequence[TorusPoint] | None = None,
) -> ToricCode:
    """Evaluate the degree-alpha monomials at the subgroup points.

    ``points`` overrides the canonical enumeration, e.g. with rescaled
    representatives of the same orbits.
    """
    if not is_full_over(s, f.q):
        raise NotFullError(f"d_n = {s.exponent} does not divide q - 1 = {f.q - 1}")
    alpha = tuple(int(a) for a in alpha)
    pts = list(points) if points is not None else enumerate_points(s, f)
    basis = monomial_basis(x, alpha)
    g = evaluation_matrix(basis, pts, f)
    k = gf_rank(g, f.tables) if basis else 0
    return ToricCode(x, s, f, alpha, pts, basis, g, k)


# --------------------------------------------------------------------------
# minimum distance


@dataclass(frozen=True)
class DistanceResult:
    delta: int
    codeword: np.ndarray | None
    visited: int
    info_set_ranks: tuple[int, ...]
    levels: int


def _info_matrices(g0: np.ndarray, pivots: list[int], t, multi: bool) -> list[tuple[np.ndarray, int]]:
    mats = [(g0, len(pivots))]
    if not multi:
        return mats
    used = set(pivots)
    n = g0.shape[1]
    while True:
        remaining = [c for c in range(n) if c not in used]
        if not remaining:
            break
        a, piv = rref(g0, t, col_order=remaining)
        if not piv:
            break
        mats.append((a, len(piv)))
        used.update(piv)
    return mats


def _lower_bound(ranks: Sequence[int], k: int, w: int) -> int:
    """Weight bound for codewords whose messages all have weight >= w + 1."""
    return sum(max(0, w + 1 - (k - r)) for r in ranks)


def _level_size(k: int, w: int, q: int) -> int:
    return comb(k, w) * (q - 1) ** (w - 1)


def _plan(ranks: list[int], k: int, q: int, ub: int) -> int:
    """How many info-set matrices to use, minimizing the predicted work."""
    best_p, best_cost = 1, None
    for p in range(1, len(ranks) + 1):
        cost, w = 0, 0
        while w < k and _lower_bound(ranks[:p], k, w) < ub:
            w += 1
            cost += p * _level_size(k, w, q)
        if best_cost is None or cost < best_cost:
            best_p, best_cost = p, cost
    return best_p


def minimum_distance_of_matrix(
    g: np.ndarray,
    f: FiniteField,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    backend: str | None = None,
    multi: bool = True,
) -> DistanceResult:
    """Exact minimum distance of the row space of ``g`` (element indices)."""
    t = f.tables
    g0, piv = row_space_basis(g, t)
    k, n = g0.shape
    if k == 0:
        raise CodeError("the zero code has no minimum distance")
    mats = _info_matrices(g0, piv, t, multi)
    ub, word = n + 1, None
    for a, _ in mats:
        wts = np.count_nonzero(a[:k], axis=1)
        i = int(np.argmin(wts))
        if wts[i] < ub:
            ub, word = int(wts[i]), a[i].copy()
    ranks = [r for _, r in mats]
    active = mats[: _plan(ranks, k, f.q, ub)]
    active_ranks = [r for _, r in active]
    visited, levels = 0, 0
    for w in range(1, k + 1):
        lb = _lower_bound(active_ranks, k, w - 1)
        if lb >= ub:
            break
        cost = len(active) * _level_size(k, w, f.q)
        if visited + cost > budget:
            raise BudgetExceeded(
                f"weight-{w} level needs {cost} more codewords; budget {budget} (visited {visited})"
            )
        levels = w
        for a, _ in active:
            best, cw, cnt = min_weight_level(a, w, t, stop_at=lb, threads=threads, backend=backend)
            visited += cnt
            if best < ub:
                ub, word = best, cw
            if ub <= lb:
                break
        if ub <= lb:
            break
    return DistanceResult(ub, word, visited, tuple(active_ranks), levels)


def minimum_distance_exhaustive(
    c: ToricCode,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    backend: str | None = None,
) -> int:
    """Exact delta of a built code; also stored on the code."""
    if c.K < 1:
        raise CodeError("the zero code has no minimum distance")
    res = minimum_distance_of_matrix(c.gen_matrix, c.field, budget, threads, backend)
    c.delta = res.delta
    return res.delta


# --------------------------------------------------------------------------
# closed forms on Hirzebruch surfaces


@dataclass(frozen=True)
class HirzebruchParams:
    l: int
    c1: int
    c2: int
    q: int
    alpha: tuple[int, int]
    a: int
    b: int
    b_prime: int | None
    mu1: int
    mu2: int
    case: int
    N: int
    K: int
    delta: int

    @property
    def result(self) -> tuple[int, int, int]:
        return (self.N, self.K, self.delta)


def _check_common(l: int, c1: int, c2: int, q: int, alpha: Sequence[int]) -> tuple[int, int]:
    if l < 0 or c1 < 1 or c2 < 1:
        raise HypothesisError("need l >= 0 and positive c1, c2")
    if (q - 1) % c1 or (q - 1) % c2:
        raise HypothesisError(f"c1 = {c1} and c2 = {c2} must divide q - 1 = {q - 1}")
    c, d = (int(v) for v in alpha)
    if c < 0 or d < 0:
        raise HypothesisError("alpha must lie in N^2")
    return c, d


def _as_int(v: Fraction) -> int:
    if v.denominator != 1:
        raise AssertionError(f"closed form produced a non-integer {v}")
    return int(v)


def hirzebruch_params(l: int, c1: int, c2: int, q: int, alpha: Sequence[int]) -> HirzebruchParams:
    """[N, K, delta] of the code on H_l for L = <c1 u1, c2 u2>, when c1 <= l c2."""
    c, d = _check_common(l, c1, c2, q, alpha)
    if c1 > l * c2:
        raise HypothesisError(f"c1 = {c1} > l*c2 = {l * c2}: outside the closed form")
    b = min(c // l, d)
    a = c - l * b
    half = Fraction(l, 2)
    mu1 = min(c, c1 - 1)
    mu2 = min(b, c2 - 1)
    bp = None
    if c < c1:
        if b <= c2 - 1:
            case, k = 1, (b + 1) * (c + 1 - b * half)
        else:
            case, k = 2, c2 * (c + 1 - (c2 - 1) * half)
        delta = c2 * (c1 - c)
    else:
        bp = min((c - c1 + 1) // l, b)
        if bp <= b < c2 - 1:
            case = 3
            k = c1 * (bp + 1) + (b - bp) * (c + 1 - half * (b + bp + 1))
            delta = c2 - bp
        elif bp < c2 - 1 <= b:
            case = 4
            k = c1 * (bp + 1) + (c2 - 1 - bp) * (c + 1 - half * (c2 + bp))
            delta = c2 - bp
        else:
            case, k, delta = 5, c1 * c2, 1
    return HirzebruchParams(l, c1, c2, q, (c, d), a, b, bp, mu1, mu2, case, c1 * c2, _as_int(Fraction(k)), delta)


def hirzebruch_params_big_l(l: int, c1: int, c2: int, q: int, alpha: Sequence[int]) -> HirzebruchParams:
    """The simplified three-case formulas valid when l >= c1."""
    c, d = _check_common(l, c1, c2, q, alpha)
    if l < c1:
        raise HypothesisError(f"l = {l} < c1 = {c1}")
    b = min(c // l, d)
    a = c - l * b
    # a > c1 - 1 gives the same code as a = c1 - 1
    ae = min(a, c1 - 1)
    mu1 = min(c, c1 - 1)
    mu2 = min(b, c2 - 1)
    if b >= c2:
        case, k, delta = 5, c1 * c2, 1
    elif c < c1:
        case, k, delta = 1, a + 1, c2 * (c1 - a)
    elif ae < c1 - 1:
        case, k, delta = 2, c1 * b + 1 + ae, c2 - b + 1
    else:
        case, k, delta = 3, c1 * (b + 1), c2 - b
    return HirzebruchParams(l, c1, c2, q, (c, d), a, b, None, mu1, mu2, case, c1 * c2, k, delta)


def hirzebruch_code(l: int, c1: int, c2: int, q: int, alpha: Sequence[int]) -> ToricCode:
    x = hirzebruch(l)
    s = make_subgroup(x, IntMatrix.diag([c1, c2]))
    return build_code(x, s, field_for_order(q), alpha)


def equivalence_hint(c1: ToricCode, c2: ToricCode) -> bool:
    """Sufficient test for equivalence: equal K and alpha - alpha' in N beta (either way)."""
    if c1.field != c2.field or c1.variety.phi != c2.variety.phi or c1.variety.beta != c2.variety.beta:
        raise CodeError("codes live on different varieties or fields")
    if not lattices_equal(c1.subgroup.lattice, c2.subgroup.lattice):
        raise CodeError("codes live on different subgroups")
    if c1.K != c2.K:
        return False
    diff = [a - b for a, b in zip(c1.alpha, c2.alpha)]
    if not any(diff):
        return True
    x = c1.variety
    return in_semigroup(x, diff) or in_semigroup(x, [-v for v in diff])


# --------------------------------------------------------------------------
# sweeps


@dataclass(frozen=True)
class SweepRow:
    alpha: tuple[int, int]
    N: int
    K: int
    delta: int
    method: str
    closed: tuple[int, int] | None
    brute: tuple[int, int] | None

    @property
    def mismatch(self) -> bool:
        return self.closed is not None and self.brute is not None and self.closed != self.brute

    def to_json(self) -> dict:
        return {"alpha": list(self.alpha), "N": self.N, "K": self.K, "delta": self.delta, "method": self.method}


def sweep_grid(l: int, c1: int, c2: int) -> list[tuple[int, int]]:
    """alpha = a(1,0) + b(l,1) for 0 <= a < c1, 0 <= b < c2, b-major."""
    return [(a + l * b, b) for b in range(c2) for a in range(c1)]


def table_sweep(
    l: int,
    c1: int,
    c2: int,
    q: int,
    brute: bool = True,
    closed: bool = True,
    threads: int = 1,
    budget: int = SWEEP_BUDGET,
    backend: str | None = None,
) -> list[SweepRow]:
    """Hirzebruch code parameters over the canonical grid, by both paths.

    Outside c1 <= l c2 the closed form does not apply and rows come from
    brute force alone.
    """
    if not (brute or closed):
        raise CodeError("enable at least one computation path")
    if l < 0 or c1 < 1 or c2 < 1:
        raise HypothesisError("need l >= 0 and positive c1, c2")
    if (q - 1) % c1 or (q - 1) % c2:
        raise HypothesisError(f"c1 = {c1} and c2 = {c2} must divide q - 1 = {q - 1}")
    in_hyp = c1 <= l * c2
    if not brute and not in_hyp:
        raise HypothesisError(f"c1 = {c1} > l*c2 = {l * c2} and brute force disabled")
    x = hirzebruch(l)
    s = make_subgroup(x, IntMatrix.diag([c1, c2]))
    f = field_for_order(q)
    pts = enumerate_points(s, f) if brute else None
    rows = []
    for alpha in sweep_grid(l, c1, c2):
        cf = bf = None
        if closed and in_hyp:
            p = hirzebruch_params(l, c1, c2, q, alpha)
            cf = (p.K, p.delta)
        if brute:
            code = build_code(x, s, f, alpha, points=pts)
            bf = (code.K, minimum_distance_exhaustive(code, budget, threads, backend))
        method = "both" if cf and bf else ("brute" if bf else "closed_form")
        k, delta = bf if bf else cf
        rows.append(SweepRow(alpha, c1 * c2, k, delta, method, cf, bf))
    return rows
