"""Subgroups V_X(I_L) of the torus cut out by a homogeneous lattice ideal.

A subgroup is fixed by a rank-n lattice L inside L_beta, stored both in Z^r and
through ML, its basis written in the coordinates u_1..u_n of L_beta.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import prod
from typing import Sequence

from .field import FieldSpec, FiniteField, FqElement, is_prime
from .intlat import (
    IntMatrix,
    Lattice,
    SmithDecomposition,
    as_matrix,
    coords_in,
    det,
    hermite_kernel,
    lattice_intersection,
    lattice_sum,
    lattices_equal,
    saturate_at,
    smith_normal_form,
)
from .toricvar import ToricVariety


class SubgroupError(ValueError):
    pass


class NotFullError(SubgroupError):
    """The spec is not full over the requested field: d_n does not divide q - 1."""


@dataclass(frozen=True)
class SubgroupSpec:
    variety: ToricVariety
    lattice: Lattice
    ml: IntMatrix
    invariant_factors: tuple[int, ...]

    @property
    def exponent(self) -> int:
        """d_n, the exponent of L_beta / L."""
        return self.invariant_factors[-1]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def to_json(self) -> dict:
        return {
            "variety": self.variety.to_json(),
            "in_u_coords": self.ml.to_json(),
            "in_z_coords": self.lattice.basis.T.to_json(),
            "invariant_factors": list(self.invariant_factors),
        }


def make_subgroup(x: ToricVariety, basis_in_u_coords) -> SubgroupSpec:
    """Spec of L = L_beta . ML for an n x n nonsingular ML."""
    ml = as_matrix(basis_in_u_coords)
    if ml.shape != (x.n, x.n):
        raise SubgroupError(f"ML must be {x.n}x{x.n}, got {ml.nrows}x{ml.ncols}")
    if det(ml) == 0:
        raise SubgroupError("ML is singular: the lattice has rank < n")
    basis = x.phi @ ml
    factors = smith_normal_form(ml).invariant_factors
    return SubgroupSpec(x, Lattice(x.r, basis), ml, factors)


def subgroup_from_lattice(x: ToricVariety, lattice: Lattice) -> SubgroupSpec:
    """Spec of a lattice given in Z^r; it must be a rank-n sublattice of L_beta."""
    if lattice.ambient_rank != x.r:
        raise SubgroupError(f"lattice lives in Z^{lattice.ambient_rank}, variety needs Z^{x.r}")
    if lattice.rank != x.n:
        raise SubgroupError(f"lattice has rank {lattice.rank}, need rank {x.n}")
    try:
        ml = coords_in(lattice, x.l_beta)
    except ValueError as exc:
        raise SubgroupError(f"lattice is not contained in L_beta: {exc}") from None
    return make_subgroup(x, ml)


def subgroup_from_z_coords(x: ToricVariety, generators: Sequence[Sequence[int]]) -> SubgroupSpec:
    return subgroup_from_lattice(x, Lattice.from_generators(generators, x.r))


# --------------------------------------------------------------------------
# counting


def count_points(s: SubgroupSpec, f: FieldSpec) -> int:
    """|V_X(K)(I_L)| as the product of the root-of-unity counts for each d_i."""
    return prod(f.roots_of_unity_count(d) for d in s.invariant_factors)


def is_full_over(s: SubgroupSpec, q: int) -> bool:
    """(q-1)L_beta is contained in L, i.e. d_n divides q - 1."""
    return (q - 1) % s.exponent == 0


def multiplicative_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    k, x = 1, a % m
    while x != 1:
        x = x * a % m
        k += 1
    return k


def smallest_field_char(s: SubgroupSpec, p: int) -> int:
    """Smallest q = p^k over which the spec is full."""
    if not is_prime(p):
        raise SubgroupError(f"{p} is not prime")
    if s.order % p == 0:
        raise SubgroupError(f"p = {p} divides |L_beta/L| = {s.order}; no field of that characteristic")
    return p ** multiplicative_order(p, s.exponent)


def correct_lattice(s: SubgroupSpec, q: int) -> SubgroupSpec:
    """The spec of L' = L + (q-1)L_beta, which has the same points over GF(q)."""
    lp = lattice_sum(s.lattice, s.variety.l_beta.scaled(q - 1))
    return subgroup_from_lattice(s.variety, lp)


# --------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class TorusPoint:
    """A torus representative: r nonzero coordinates."""

    coords: tuple[FqElement, ...]

    def __post_init__(self):
        if any(c.index == 0 for c in self.coords):
            raise SubgroupError("torus points have nonzero coordinates")

    @property
    def field(self) -> FiniteField:
        return self.coords[0].field

    def __mul__(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(tuple(a * b for a, b in zip(self.coords, other.coords)))

    def inv(self) -> "TorusPoint":
        return TorusPoint(tuple(a.inv() for a in self.coords))

    def __pow__(self, e: int) -> "TorusPoint":
        return TorusPoint(tuple(a**e for a in self.coords))

    def monomial(self, m: Sequence[int]) -> FqElement:
        """The Laurent monomial x^m at this point (negative exponents allowed)."""
        out = self.field.one
        for a, e in zip(self.coords, m):
            if e:
                out = out * a**e
        return out

    def canonical(self, x: ToricVariety) -> "TorusPoint":
        """The orbit representative (x^{u_1}, ..., x^{u_n}, 1, ..., 1)."""
        one = self.field.one
        head = [self.monomial(x.u(i)) for i in range(x.n)]
        return TorusPoint(tuple(head + [one] * (x.r - x.n)))

    def same_orbit(self, other: "TorusPoint", x: ToricVariety) -> bool:
        """[P] = [P'] iff the coordinate-wise ratio lies in G."""
        ratio = self * other.inv()
        return all(ratio.monomial(x.u(i)).index == 1 for i in range(x.n))

    def to_json(self) -> dict:
        return {
            "notation": [c.notation() for c in self.coords],
            "coefficients": [list(c.rep) for c in self.coords],
        }

    def __repr__(self) -> str:
        return "[" + ":".join(c.notation() for c in self.coords) + "]"


def identity_point(f: FiniteField, r: int) -> TorusPoint:
    return TorusPoint(tuple([f.one] * r))


def g_element(x: ToricVariety, lambdas: Sequence[FqElement]) -> TorusPoint:
    """The element of G with coordinates prod_k lambda_k^{beta_kj}."""
    if len(lambdas) != x.d:
        raise SubgroupError(f"G is parameterized by {x.d} units")
    f = lambdas[0].field
    coords = []
    for j in range(x.r):
        v = f.one
        for k in range(x.d):
            v = v * lambdas[k] ** x.beta[k, j]
        coords.append(v)
    return TorusPoint(tuple(coords))


def satisfies_lattice(p: TorusPoint, s: SubgroupSpec) -> bool:
    """x^{m+} = x^{m-} for each lattice basis vector m."""
    return all(p.monomial(m).index == 1 for m in s.lattice.generators())


# --------------------------------------------------------------------------
# parameterization


@dataclass(frozen=True)
class ParamMatrix:
    q_matrix: IntMatrix
    generators: tuple[TorusPoint, ...]
    orders: tuple[int, ...]
    smith: SmithDecomposition = dc_field(repr=False)
    cyclic_q: IntMatrix | None = None

    @property
    def cyclic_generator(self) -> TorusPoint | None:
        return self.generators[-1] if self.cyclic_q is not None else None

    def to_json(self) -> dict:
        out = {
            "Q": self.q_matrix.to_json(),
            "orders": list(self.orders),
            "generators": [g.to_json() for g in self.generators],
        }
        if self.cyclic_q is not None:
            out["cyclic_Q"] = self.cyclic_q.to_json()
        return out


def _require_full(s: SubgroupSpec, f: FiniteField) -> None:
    if not isinstance(f, FiniteField):
        raise SubgroupError("a finite field is required")
    if not is_full_over(s, f.q):
        raise NotFullError(
            f"d_n = {s.exponent} does not divide q - 1 = {f.q - 1}; apply correct_lattice first"
        )


def parameterize(s: SubgroupSpec, f: FiniteField) -> ParamMatrix:
    """Generators P_i with coordinates eta_i^{a_ij} and the matrix Q.

    A is the row transform of the Smith form of the r x n basis of L; row i
    of Q is (q-1)/d_i times row i of A.
    """
    _require_full(s, f)
    x = s.variety
    sd = smith_normal_form(s.lattice.basis)
    factors = sd.invariant_factors
    rows, gens = [], []
    for i, d in enumerate(factors):
        eta_i = f.primitive_root_of_unity(d)
        a_row = sd.a.row(i)
        gens.append(TorusPoint(tuple(eta_i**e for e in a_row)))
        rows.append([(f.q - 1) // d * e for e in a_row])
    q_matrix = IntMatrix.from_rows(rows, x.r)
    cyclic = None
    if all(d == 1 for d in factors[:-1]):
        cyclic = IntMatrix.from_rows([rows[-1]], x.r)
    return ParamMatrix(q_matrix, tuple(gens), factors, sd, cyclic)


def enumerate_points(s: SubgroupSpec, f: FiniteField, check: bool = True) -> list[TorusPoint]:
    """All P_1^{k_1} ... P_n^{k_n}, 0 <= k_i < d_i, in lexicographic order of k."""
    pm = parameterize(s, f)
    x = s.variety
    powers = [[g**k for k in range(d)] for g, d in zip(pm.generators, pm.orders)]
    out = []
    for ks in product(*(range(d) for d in pm.orders)):
        p = identity_point(f, x.r)
        for i, k in enumerate(ks):
            if k:
                p = p * powers[i][k]
        out.append(p)
    if check:
        for p in out:
            if not satisfies_lattice(p, s):
                raise AssertionError(f"point {p} violates a lattice binomial")
    return out


def points_from_q(x: ToricVariety, q_matrix, f: FiniteField) -> list[TorusPoint]:
    """Y_Q = {[t^{q_1} : ... : t^{q_r}]}, one canonical representative per orbit."""
    qm = as_matrix(q_matrix)
    if qm.ncols != x.r:
        raise SubgroupError(f"Q needs {x.r} columns")
    seen: dict[tuple[int, ...], TorusPoint] = {}
    units = list(f.units())
    for t in product(units, repeat=qm.nrows):
        coords = []
        for j in range(x.r):
            v = f.one
            for i in range(qm.nrows):
                v = v * t[i] ** qm[i, j]
            coords.append(v)
        p = TorusPoint(tuple(coords)).canonical(x)
        seen.setdefault(tuple(c.index for c in p.coords), p)
    return [seen[k] for k in sorted(seen)]


# --------------------------------------------------------------------------
# monomially parameterized subgroups


@dataclass(frozen=True)
class YQReport:
    l_q: Lattice
    image: Lattice
    lq_in_lbeta: bool
    saturated: bool
    lattice: Lattice
    spec: SubgroupSpec
    vanishing: SubgroupSpec

    @property
    def holds(self) -> bool:
        return self.saturated

    def to_json(self) -> dict:
        return {
            "L_Q": self.l_q.basis.T.to_json(),
            "image": self.image.basis.T.to_json(),
            "L_Q_in_L_beta": self.lq_in_lbeta,
            "saturated": self.saturated,
            "lattice": self.spec.to_json(),
            "vanishing_lattice": self.vanishing.to_json(),
        }


def vanishing_lattice(x: ToricVariety, q_matrix, q: int) -> Lattice:
    """{m in L_beta : Q m = 0 mod (q-1)}, the homogeneous exponents vanishing on Y_Q."""
    qm = as_matrix(q_matrix)
    qphi = qm @ x.phi
    s = qphi.nrows
    stacked = qphi.hstack(IntMatrix.identity(s) * (q - 1))
    ker = hermite_kernel(stacked)
    coeffs = [v[: x.n] for v in ker.generators()]
    u_lat = Lattice.from_generators(coeffs, x.n)
    return Lattice(x.r, x.phi @ u_lat.basis)


def check_yq_correspondence(x: ToricVariety, q_matrix, q: int) -> YQReport:
    """Compare Y_Q with the lattice (L_Q cap L_beta) + (q-1)L_beta.

    The correspondence holds exactly when the image lattice Q.L_beta is
    saturated at q - 1.
    """
    qm = as_matrix(q_matrix)
    if qm.ncols != x.r:
        raise SubgroupError(f"Q has {qm.ncols} columns but the variety has r = {x.r} rays")
    l_q = hermite_kernel(qm)
    image = Lattice.from_generators((qm @ x.phi).columns(), qm.nrows)
    saturated = lattices_equal(image, saturate_at(image, q - 1))
    lq_in = all(v in x.l_beta for v in l_q.generators())
    lat = lattice_sum(lattice_intersection(l_q, x.l_beta), x.l_beta.scaled(q - 1))
    spec = subgroup_from_lattice(x, lat)
    van = subgroup_from_lattice(x, vanishing_lattice(x, qm, q))
    return YQReport(l_q, image, lq_in, saturated, lat, spec, van)
