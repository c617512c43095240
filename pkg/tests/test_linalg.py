import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperdet.errors import DimensionError, InputError
from hyperdet.linalg import (
    MAX_MODULUS,
    Matrix,
    Poly,
    det,
    det_mod_p,
    is_prime,
    kernel_basis,
    poly_gcd,
    rank,
    residue,
)
from oracles import cofactor_det, random_int_matrix

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def matrix_strategy(rows, cols, elements=fractions):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(Matrix)


square_matrices = st.integers(1, 5).flatmap(lambda m: matrix_strategy(m, m))


def test_small_determinants():
    assert det(Matrix.identity(5)) == 1
    assert det(Matrix([[1, 2], [3, 4]])) == -2
    assert det(Matrix([[Fraction(1, 2), 0], [0, Fraction(2, 3)]])) == Fraction(1, 3)
    assert det(Matrix.zeros(0, 0)) == 1


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det(Matrix([[1, 2, 3], [4, 5, 6]]))


def test_matrix_rejects_floats():
    with pytest.raises(InputError):
        Matrix([[1.5]])


@given(square_matrices)
def test_det_matches_cofactor_expansion(M):
    assert det(M) == cofactor_det(M.tolist())


@given(st.integers(1, 5).flatmap(lambda m: st.tuples(matrix_strategy(m, m), matrix_strategy(m, m))))
def test_det_multiplicative(pair):
    A, B = pair
    assert det(A @ B) == det(A) * det(B)


@given(square_matrices, st.data())
def test_repeated_row_gives_zero(M, data):
    m = M.shape[0]
    if m < 2:
        return
    i, j = data.draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
    rows = M.tolist()
    rows[j] = rows[i]
    assert det(Matrix(rows)) == 0


@given(square_matrices)
def test_inverse(M):
    if det(M) == 0:
        with pytest.raises(InputError):
            M.inverse()
    else:
        assert M @ M.inverse() == Matrix.identity(M.shape[0])


def test_det_mod_p_examples():
    assert det_mod_p(Matrix.identity(3), 7) == 1
    assert det_mod_p(Matrix([[1, 2], [3, 4]]), 5) == 3
    assert det_mod_p(Matrix([[Fraction(1, 2)]]), 7) == 4


@pytest.mark.parametrize("p", [10007, 1000003])
def test_det_mod_p_matches_exact(p):
    rng = random.Random(p)
    for _ in range(20):
        m = rng.randint(1, 10)
        M = Matrix(random_int_matrix(rng, m, m, 10**6))
        assert det_mod_p(M, p) == residue(det(M), p)


@pytest.mark.parametrize("p", [1, 4, 10005, MAX_MODULUS + 1, -7])
def test_det_mod_p_rejects_bad_moduli(p):
    with pytest.raises(InputError):
        det_mod_p(Matrix.identity(2), p)


def test_det_mod_p_rejects_denominator_divisible_by_p():
    with pytest.raises(InputError):
        det_mod_p(Matrix([[Fraction(1, 7)]]), 7)


def test_is_prime_against_trial_division():
    def trial(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if trial(n)]
    assert is_prime((1 << 61) - 1)
    assert not is_prime((1 << 61) + 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_rank_and_kernel_examples():
    assert rank(Matrix.zeros(3, 4)) == 0
    assert kernel_basis(Matrix.zeros(3, 4)).shape == (4, 4)
    assert rank(Matrix.identity(4)) == 4
    assert kernel_basis(Matrix.identity(4)).shape == (4, 0)
    u, v = [1, -2, 3, 5], [2, 0, -1, 4]
    outer = Matrix([[a * b for b in v] for a in u])
    assert rank(outer) == 1
    assert kernel_basis(outer).shape == (4, 3)


@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(lambda c: matrix_strategy(r, c, st.integers(-3, 3)))))
def test_rank_nullity(M):
    K = kernel_basis(M)
    rows, cols = M.shape
    assert rank(M) + K.shape[1] == cols
    assert (M @ K).is_zero() if K.shape[1] else True
    if K.shape[1]:
        assert rank(K) == K.shape[1]


def test_poly_gcd_examples():
    t = Poly([0, 1])
    one = Poly([1])
    assert poly_gcd(t * t - one, t - one) == t - one
    assert poly_gcd(Poly([2, 4]), Poly()) == Poly([Fraction(1, 2), 1])
    assert poly_gcd(Poly(), Poly()).is_zero()
    a, b, c = t + Poly([2]), t - Poly([3]), t - Poly([5])
    assert poly_gcd(a * a * b, a * c) == a
    assert poly_gcd(t * t - Poly([2]), t - one) == one


@given(st.lists(fractions, max_size=5), st.lists(fractions, max_size=5))
def test_poly_gcd_divides(f, g):
    f, g = Poly(f), Poly(g)
    d = poly_gcd(f, g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
        return
    assert d.lead == 1
    assert (f % d).is_zero() and (g % d).is_zero()


@given(st.lists(fractions, max_size=6))
def test_interpolation_round_trip(coeffs):
    f = Poly(coeffs)
    xs = list(range(len(coeffs) + 1))
    assert Poly.interpolate(xs, [f(x) for x in xs]) == f


@given(st.lists(fractions, max_size=5), st.lists(fractions, min_size=1, max_size=4))
def test_poly_division(f, g):
    f, g = Poly(f), Poly(g)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree
