import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperdet.errors import InputError
from hyperdet.linalg import Matrix, det
from hyperdet.symmetric import (
    count_monomials,
    enumerate_monomials,
    monomial_index,
    monomial_rank,
    monomial_unrank,
    multiply_index,
    sym_power_matrix,
)
from oracles import brute_monomials, random_int_matrix, sym2_matrix_2x2


def test_documented_order():
    assert enumerate_monomials(3, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert enumerate_monomials(1, 4) == ((4,),)
    assert enumerate_monomials(4, 0) == ((0, 0, 0, 0),)


@pytest.mark.parametrize("k", range(1, 6))
@pytest.mark.parametrize("m", range(0, 6))
def test_enumeration_matches_brute_force(k, m):
    basis = enumerate_monomials(k, m)
    assert list(basis) == brute_monomials(k, m)
    assert len(basis) == count_monomials(k, m) == comb(k + m - 1, m)


def test_invalid_arguments():
    with pytest.raises(InputError):
        enumerate_monomials(0, 2)
    with pytest.raises(InputError):
        enumerate_monomials(2, -1)
    with pytest.raises(InputError):
        monomial_unrank(2, 3, 4)
    with pytest.raises(InputError):
        monomial_rank((1, -1))
    with pytest.raises(InputError):
        multiply_index((1, 0), 2)


@pytest.mark.parametrize("k,m", [(1, 3), (2, 4), (3, 3), (4, 2), (5, 3)])
def test_rank_unrank_round_trip(k, m):
    index = monomial_index(k, m)
    for pos, mu in enumerate(enumerate_monomials(k, m)):
        assert monomial_rank(mu) == pos == index[mu]
        assert monomial_unrank(k, m, pos) == mu


@given(st.lists(st.integers(0, 6), min_size=1, max_size=6))
def test_rank_is_position(mu):
    mu = tuple(mu)
    assert enumerate_monomials(len(mu), sum(mu))[monomial_rank(mu)] == mu


@pytest.mark.parametrize("k,n", [(1, 0), (2, 1), (3, 2), (3, 3), (4, 2)])
def test_multiplication_fibers(k, n):
    # every degree n+1 monomial is hit once per variable it contains
    hits = {nu: 0 for nu in enumerate_monomials(k, n + 1)}
    for mu in enumerate_monomials(k, n):
        for q in range(k):
            hits[multiply_index(mu, q)] += 1
    for nu, count in hits.items():
        assert count == sum(1 for e in nu if e)


def test_sym_power_degree_one_and_zero():
    g = Matrix([[1, 2], [3, 5]])
    assert sym_power_matrix(g, 1) == g
    assert sym_power_matrix(g, 0) == Matrix.identity(1)
    assert sym_power_matrix(Matrix.identity(3), 3) == Matrix.identity(10)


def test_sym_square_hand_oracle():
    rng = random.Random(5)
    for _ in range(20):
        g = Matrix(random_int_matrix(rng, 2, 2))
        S2 = sym_power_matrix(g, 2)
        assert S2 == Matrix(sym2_matrix_2x2(g.tolist()))
        # det of the second symmetric power of a 2x2 matrix is det(g)^3
        assert det(S2) == det(g) ** 3


@pytest.mark.parametrize("k,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_sym_power_functorial_and_det(k, m):
    rng = random.Random(k * 10 + m)
    for _ in range(5):
        g = Matrix(random_int_matrix(rng, k, k, 4))
        h = Matrix(random_int_matrix(rng, k, k, 4))
        assert sym_power_matrix(g @ h, m) == sym_power_matrix(g, m) @ sym_power_matrix(h, m)
        # det S^m g = det(g)^(m * C(k+m-1, m) / k)
        assert det(sym_power_matrix(g, m)) == det(g) ** (m * comb(k + m - 1, m) // k)
