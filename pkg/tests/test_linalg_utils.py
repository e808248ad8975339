from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.utils.linalg_utils import (
    determinant,
    identity,
    inverse,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    solve,
    to_fraction,
    vec_mat,
    vector,
)

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def square(n):
    return st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)


def test_to_fraction_rejects_floats():
    with pytest.raises(TypeError):
        to_fraction(0.5)
    assert to_fraction("1/3") == Fraction(1, 3)
    assert to_fraction(2) == Fraction(2)


def test_rank_and_nullspace_of_normalization_rows():
    rows = [vector([1, 1, 0, 0]), vector([0, 0, 1, 1])]
    assert rank(rows) == 2
    basis = nullspace(rows)
    assert len(basis) == 2
    for b in basis:
        assert mat_vec(rows, b) == [0, 0]


def test_inverse_of_singular_matrix_is_none():
    assert inverse([vector([1, 2]), vector([2, 4])]) is None


def test_solve_returns_none_when_underdetermined():
    assert solve([vector([1, 1])], vector([1])) is None
    assert solve([vector([1, 1]), vector([1, -1])], vector([1, 0])) == [Fraction(1, 2), Fraction(1, 2)]


def test_vec_mat_pulls_back_effects():
    swap = [vector([0, 1]), vector([1, 0])]
    assert vec_mat(vector([1, 0]), swap) == [0, 1]


@settings(max_examples=40, deadline=None)
@given(square(3))
def test_inverse_is_two_sided_when_it_exists(m):
    inv = inverse(m)
    if determinant(m) == 0:
        assert inv is None
    else:
        assert mat_mul(m, inv) == identity(3)
        assert mat_mul(inv, m) == identity(3)


@settings(max_examples=40, deadline=None)
@given(square(3), square(3))
def test_determinant_is_multiplicative(a, b):
    assert determinant(mat_mul(a, b)) == determinant(a) * determinant(b)


@settings(max_examples=30, deadline=None)
@given(square(3), square(3), square(3))
def test_matrix_product_reassociates_exactly(a, b, c):
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
