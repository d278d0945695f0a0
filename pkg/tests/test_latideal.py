import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lattoric.field import field_for_order, make_field
from lattoric.intlat import IntMatrix, det
from lattoric.latideal import (
    Binomial,
    IdealError,
    binomial_generators,
    hilbert_function,
    hilbert_function_pairwise,
    ideal_degree,
    regularity_bound,
    segment_mixed_volume,
)
from lattoric.subgroup import correct_lattice, enumerate_points, make_subgroup
from lattoric.toricvar import hirzebruch, make_toric_variety, projective_space

TABLE_ALPHAS = [(0, 0), (1, 0), (2, 0), (3, 1), (4, 1), (5, 1), (6, 2), (7, 2), (8, 2)]


def test_hirzebruch_binomials():
    for l, c1, c2 in [(3, 3, 3), (2, 3, 5), (1, 2, 4), (0, 2, 2)]:
        s = make_subgroup(hirzebruch(l), IntMatrix.diag([c1, c2]))
        gens = binomial_generators(s)
        assert gens.complete_intersection
        z = f"x3^{l * c2}" if l * c2 > 1 else ("x3" if l * c2 == 1 else "")
        second = f"x4^{c2} - x2^{c2}" + (f"*{z}" if z else "")
        assert [str(b) for b in gens] == [f"x3^{c1} - x1^{c1}", second]


def test_l_beta_binomials():
    s = make_subgroup(hirzebruch(2), IntMatrix.identity(2))
    assert [str(b) for b in binomial_generators(s)] == ["x3 - x1", "x4 - x2*x3^2"]
    assert binomial_generators(s).to_json() == {
        "binomials": ["x3 - x1", "x4 - x2*x3^2"],
        "complete_intersection": True,
    }


def test_binomial_orientation_and_vector():
    b = Binomial.from_vector([1, 0, -1, 0])
    assert str(b) == "x3 - x1" and b.vector == (-1, 0, 1, 0)
    assert str(Binomial.from_vector([0, 0, 0, 0])) == "1 - 1"


def test_non_mixed_dominating_basis_is_flagged():
    s = make_subgroup(hirzebruch(1), IntMatrix.from_rows([[1, 1], [-1, 2]]))
    assert not binomial_generators(s).complete_intersection


@given(st.sampled_from([5, 7, 8, 9, 13]), st.integers(0, 3), st.integers(0, 10**6))
def test_binomials_vanish_on_points(q, l, seed):
    rng = random.Random(seed)
    ml = IntMatrix.from_rows([[rng.randint(-6, 6) for _ in range(2)] for _ in range(2)])
    if det(ml) == 0:
        ml = IntMatrix.diag([2, 2])
    s = correct_lattice(make_subgroup(hirzebruch(l), ml), q)
    f = field_for_order(q)
    pts = enumerate_points(s, f, check=False)
    for b in binomial_generators(s):
        assert all(b.vanishes_at(p) for p in pts)


# hilbert ---------------------------------------------------------------------


def test_hilbert_table_values():
    s = make_subgroup(hirzebruch(3), IntMatrix.diag([3, 3]))
    assert [hilbert_function(s, a) for a in TABLE_ALPHAS] == list(range(1, 10))
    assert hilbert_function(s, (0, 0)) == 1
    assert hilbert_function(s, (-1, 0)) == 0


def test_hilbert_at_regularity_bound():
    x = hirzebruch(2)
    s = make_subgroup(x, IntMatrix.diag([3, 5]))
    assert regularity_bound(x, 3, 5) == (13, 5)
    assert hilbert_function(s, (13, 5)) == 15
    assert regularity_bound(hirzebruch(3), 3, 3) == (12, 3)
    assert regularity_bound(hirzebruch(0), 1, 1) == (1, 1)
    with pytest.raises(IdealError):
        regularity_bound(projective_space(2), 1, 1)
    with pytest.raises(IdealError):
        regularity_bound(x, 0, 1)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_hilbert_monotone_and_capped(l):
    x = hirzebruch(l)
    steps = [(1, 0), (0, 1), (l, 1)]
    for c1, c2 in product(range(1, 5), repeat=2):
        s = make_subgroup(x, IntMatrix.diag([c1, c2]))
        cap = c1 * c2
        reg = regularity_bound(x, c1, c2)
        cs, ds = range(0, reg[0] + 3 + l), range(0, reg[1] + 3)
        values = {(c, d): hilbert_function(s, (c, d)) for c in cs for d in ds}
        for c in range(0, reg[0] + 3):
            for d in range(0, reg[1] + 2):
                h = values[c, d]
                assert h <= cap
                for e in steps:
                    assert h <= values[c + e[0], d + e[1]]
                if c >= reg[0] and d >= reg[1]:
                    assert h == cap


@given(st.integers(0, 3), st.integers(0, 10**6))
def test_hilbert_key_method_matches_pairwise(l, seed):
    rng = random.Random(seed)
    ml = IntMatrix.from_rows([[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)])
    if det(ml) == 0:
        return
    s = make_subgroup(hirzebruch(l), ml)
    b = rng.randint(0, 4)
    alpha = (rng.randint(0, 8) + l * b, b)
    assert hilbert_function(s, alpha) == hilbert_function_pairwise(s, alpha)


def test_hilbert_on_other_varieties():
    x = projective_space(2)
    s = make_subgroup(x, IntMatrix.from_rows([[2, 1], [0, 3]]))
    for deg in range(8):
        assert hilbert_function(s, (deg,)) == hilbert_function_pairwise(s, (deg,))
    assert hilbert_function(s, (12,)) == 6
    y = make_toric_variety([[1, 0], [0, 1], [-1, -1], [1, 1]])
    t = make_subgroup(y, IntMatrix.diag([2, 2]))
    for alpha in product(range(0, 4), repeat=2):
        assert hilbert_function(t, alpha) == hilbert_function_pairwise(t, alpha)


# degree ----------------------------------------------------------------------


def test_degree_examples():
    x = hirzebruch(2)
    s = make_subgroup(x, IntMatrix.diag([3, 5]))
    assert ideal_degree(s) == segment_mixed_volume(s) == 15
    base = make_subgroup(x, IntMatrix.identity(2))
    assert ideal_degree(base) == segment_mixed_volume(base) == 1
    assert ideal_degree(correct_lattice(s, 11)) == 5
    assert segment_mixed_volume(make_subgroup(x, IntMatrix.from_rows([[2, 1], [0, 3]]))) == 6


@given(st.integers(1, 3), st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_degree_identities(l, entries):
    ml = IntMatrix.from_rows([entries[:2], entries[2:]])
    if det(ml) == 0:
        return
    s = make_subgroup(hirzebruch(l), ml)
    d1, d2 = s.invariant_factors
    assert ideal_degree(s) == segment_mixed_volume(s) == d1 * d2


def test_degree_is_the_point_count_over_a_full_field():
    x = hirzebruch(1)
    s = make_subgroup(x, IntMatrix.from_rows([[2, 2], [0, 6]]))
    assert len(enumerate_points(s, make_field(13))) == ideal_degree(s) == 12
