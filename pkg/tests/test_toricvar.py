import pytest
from hypothesis import given
from hypothesis import strategies as st

from lattoric.intlat import IntMatrix, Lattice, lattices_equal
from lattoric.toricvar import (
    VarietyError,
    degree_of_monomial,
    hirzebruch,
    in_semigroup,
    make_toric_variety,
    monomial_basis,
    projective_space,
    variety_from_json,
)


def hirzebruch_count(l, c, d):
    """Monomials of degree (c, d) on H_l: a2 + a4 = d and a1 + a3 + l a4 = c."""
    if d < 0:
        return 0
    return sum(c - l * a4 + 1 for a4 in range(d + 1) if c - l * a4 >= 0)


def test_h2_beta_from_rays_matches_hard_coded():
    general = make_toric_variety([[1, 0], [0, 1], [-1, 2], [0, -1]])
    assert general.beta @ general.phi == IntMatrix.zeros(2, 2)
    # row-equivalent gradings have the same row lattice
    fixed = IntMatrix.from_rows([[1, -2, 1, 0], [0, 1, 0, 1]])
    assert lattices_equal(Lattice.from_generators(general.beta.rows_, 4), Lattice.from_generators(fixed.rows_, 4))
    assert lattices_equal(general.l_beta, hirzebruch(2).l_beta)


def test_projective_space_grading():
    for n in (1, 2, 3, 4):
        x = projective_space(n)
        assert x.beta == IntMatrix.from_rows([[1] * (n + 1)])


@pytest.mark.parametrize("l", range(5))
def test_hirzebruch_degrees(l):
    x = hirzebruch(l)
    assert [x.degree(j) for j in range(4)] == [(1, 0), (0, 1), (1, 0), (l, 1)]
    assert x.beta @ x.phi == IntMatrix.zeros(2, 2)


def test_hirzebruch_u_vectors():
    x = hirzebruch(2)
    assert x.u(0) == (1, 0, -1, 0)
    assert x.u(1) == (0, 1, 2, -1)


def test_degree_of_monomial_examples():
    assert degree_of_monomial(hirzebruch(2), [0, 0, 0, 1]) == (2, 1)
    assert degree_of_monomial(hirzebruch(3), [0, 0, 0, 0]) == (0, 0)
    assert degree_of_monomial(hirzebruch(3), [1, 0, 0, 1]) == (4, 1)
    with pytest.raises(VarietyError):
        degree_of_monomial(hirzebruch(3), [1, 0, 0])


def test_monomial_basis_examples():
    x = hirzebruch(3)
    assert monomial_basis(x, (1, 0)) == [(0, 0, 1, 0), (1, 0, 0, 0)]
    assert monomial_basis(x, (0, 0)) == [(0, 0, 0, 0)]
    assert len(monomial_basis(x, (8, 2))) == 18
    assert monomial_basis(projective_space(2), (0,)) == [(0, 0, 0)]
    assert monomial_basis(x, (-1, 0)) == []
    assert not in_semigroup(x, (0, -1))
    assert in_semigroup(x, (3, 1))


@pytest.mark.parametrize("l", range(4))
def test_monomial_basis_matches_closed_count(l):
    x = hirzebruch(l)
    for c in range(-2, 13):
        for d in range(-1, 5):
            basis = monomial_basis(x, (c, d))
            assert len(basis) == hirzebruch_count(l, c, d)
            assert len(set(basis)) == len(basis)
            assert all(min(a) >= 0 and degree_of_monomial(x, a) == (c, d) for a in basis)


@given(st.integers(1, 4), st.integers(0, 6))
def test_projective_basis_is_stars_and_bars(n, deg):
    from math import comb

    basis = monomial_basis(projective_space(n), (deg,))
    assert len(basis) == comb(deg + n, n)


def test_general_variety_roundtrip_and_grading():
    rays = [[1, 0], [0, 1], [-1, -1], [1, 1]]
    x = make_toric_variety(rays)
    assert x.beta @ x.phi == IntMatrix.zeros(x.d, 2)
    assert variety_from_json(x.to_json()).phi == x.phi
    assert variety_from_json({"hirzebruch": 2}) == hirzebruch(2)


def test_bad_rays_rejected():
    with pytest.raises(VarietyError):
        make_toric_variety([[1, 0], [0, 1]])
    with pytest.raises(VarietyError):
        make_toric_variety([[1, 0], [1, 1], [-1, 0]])
    with pytest.raises(VarietyError):
        hirzebruch(-1)
    with pytest.raises(VarietyError):
        monomial_basis(hirzebruch(1), (1, 2, 3))


def test_non_pointed_grading_rejected():
    # beta = [1, 1, -1]: degree 0 holds x1^k x3^k for every k
    with pytest.raises(VarietyError):
        make_toric_variety([[1, 0], [0, 1], [1, 1]])
