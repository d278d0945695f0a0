"""Lattice ideals of subgroups of toric varieties over finite fields, and the
generalized toric codes evaluated on them."""

from .code import (
    BudgetExceeded,
    build_code,
    hirzebruch_params,
    minimum_distance_exhaustive,
    table_sweep,
)
from .field import ComplexField, FiniteField, RealField, field_for_order, make_field
from .intlat import IntMatrix, Lattice, hermite_normal_form, smith_normal_form
from .kernels import BACKEND
from .latideal import binomial_generators, hilbert_function, ideal_degree
from .subgroup import (
    NotFullError,
    correct_lattice,
    count_points,
    enumerate_points,
    make_subgroup,
    parameterize,
)
from .toricvar import hirzebruch, make_toric_variety, monomial_basis, projective_space

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "ComplexField",
    "FiniteField",
    "IntMatrix",
    "Lattice",
    "NotFullError",
    "RealField",
    "binomial_generators",
    "build_code",
    "correct_lattice",
    "count_points",
    "enumerate_points",
    "field_for_order",
    "hermite_normal_form",
    "hilbert_function",
    "hirzebruch",
    "hirzebruch_params",
    "ideal_degree",
    "make_field",
    "make_subgroup",
    "make_toric_variety",
    "minimum_distance_exhaustive",
    "monomial_basis",
    "parameterize",
    "projective_space",
    "smith_normal_form",
    "table_sweep",
]
