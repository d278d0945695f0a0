"""Invariants of the lattice ideal I_L: binomials, Hilbert function, degree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .intlat import IntMatrix, det, hermite_normal_form, is_mixed_dominating, lattice_index, lattice_membership
from .subgroup import SubgroupSpec, TorusPoint
from .toricvar import Monomial, ToricVariety, monomial_basis


class IdealError(ValueError):
    pass


def _format_monomial(exps: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class Binomial:
    plus: Monomial
    minus: Monomial

    @classmethod
    def from_vector(cls, m: Sequence[int]) -> "Binomial":
        """x^{m+} - x^{m-}, oriented so the last variable in the support sits in the first term."""
        m = list(m)
        last = next((v for v in reversed(m) if v), 0)
        if last < 0:
            m = [-v for v in m]
        return cls(tuple(max(v, 0) for v in m), tuple(max(-v, 0) for v in m))

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def evaluate(self, p: TorusPoint):
        return p.monomial(self.plus) - p.monomial(self.minus)

    def vanishes_at(self, p: TorusPoint) -> bool:
        return self.evaluate(p).index == 0

    def __str__(self) -> str:
        return f"{_format_monomial(self.plus)} - {_format_monomial(self.minus)}"


@dataclass(frozen=True)
class BinomialGenerators:
    binomials: tuple[Binomial, ...]
    complete_intersection: bool

    def __iter__(self):
        return iter(self.binomials)

    def __len__(self) -> int:
        return len(self.binomials)

    def to_json(self) -> dict:
        return {
            "binomials": [str(b) for b in self.binomials],
            "complete_intersection": self.complete_intersection,
        }


def binomial_generators(s: SubgroupSpec) -> BinomialGenerators:
    """Binomials of the stored lattice basis.

    They generate I_L (as a complete intersection) when the basis matrix is
    mixed dominating; otherwise they only generate a sub-ideal and the flag
    is false.
    """
    basis = s.lattice.basis
    bins = tuple(Binomial.from_vector(m) for m in basis.columns())
    return BinomialGenerators(bins, is_mixed_dominating(basis))


# --------------------------------------------------------------------------
# Hilbert function


def _reduce_mod(v: list[int], h: IntMatrix) -> tuple[int, ...]:
    """Canonical residue of v modulo the full-rank lower-triangular HNF h."""
    v = list(v)
    n = h.nrows
    for j in range(n):
        p = h[j, j]
        k = v[j] // p
        if k:
            for i in range(j, n):
                v[i] -= k * h[i, j]
    return tuple(v)


def hilbert_function(s: SubgroupSpec, alpha: Sequence[int]) -> int:
    """Number of classes of degree-alpha monomials modulo a ~ a' iff a - a' in L.

    Two monomials of equal degree differ by phi.c with c their first n
    exponents' difference, so each class is keyed by the first n exponents
    reduced modulo ML.
    """
    x = s.variety
    h = hermite_normal_form(s.ml)
    keys = {_reduce_mod(list(a[: x.n]), h) for a in monomial_basis(x, alpha)}
    return len(keys)


def hilbert_function_pairwise(s: SubgroupSpec, alpha: Sequence[int]) -> int:
    """The same count by union-find over pairwise lattice-membership tests."""
    basis = monomial_basis(s.variety, alpha)
    parent = list(range(len(basis)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            diff = [a - b for a, b in zip(basis[i], basis[j])]
            if lattice_membership(s.lattice, diff):
                parent[rj] = ri
    return len({find(i) for i in range(len(basis))})


def ideal_degree(s: SubgroupSpec) -> int:
    """deg I_L = |L_beta / L| = d_1 ... d_n."""
    deg = s.order
    assert deg == lattice_index(s.lattice, s.variety.l_beta)
    return deg


def segment_mixed_volume(s: SubgroupSpec) -> int:
    """n! times the mixed volume of the Newton segments, i.e. |det ML|."""
    return abs(det(s.ml))


def regularity_bound(x: ToricVariety, c1: int, c2: int) -> tuple[int, int]:
    """(c1 + c2*l, c2): every degree above it has H_Y = c1*c2 on H_l."""
    if x.hirzebruch_l is None:
        raise IdealError("the regularity bound is only certified for Hirzebruch surfaces")
    if c1 < 1 or c2 < 1:
        raise IdealError("c1 and c2 must be positive")
    return (c1 + c2 * x.hirzebruch_l, c2)
