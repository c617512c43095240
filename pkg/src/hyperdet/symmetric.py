"""Monomial bases of symmetric powers.

A monomial x^mu in k variables is a tuple ``mu`` of k exponents. Within a fixed
degree the basis is listed in graded-lexicographic order, which for a single
degree means lexicographically decreasing exponent tuples::

    enumerate_monomials(3, 2)
    ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))

Multiplication by a variable has coefficient 1 in this basis.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DimensionError, InputError
from .linalg import Matrix

MultiIndex = tuple[int, ...]


def count_monomials(k: int, m: int) -> int:
    """Dimension of the degree-m symmetric power of a k-dimensional space."""
    if k == 0:
        return 1 if m == 0 else 0
    return comb(k + m - 1, m)


@lru_cache(maxsize=None)
def enumerate_monomials(k: int, m: int) -> tuple[MultiIndex, ...]:
    if k < 1:
        raise InputError("need at least one variable")
    if m < 0:
        raise InputError("degree must be non-negative")
    if k == 1:
        return ((m,),)
    out = []
    for e in range(m, -1, -1):
        out.extend((e,) + rest for rest in enumerate_monomials(k - 1, m - e))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(k: int, m: int) -> dict[MultiIndex, int]:
    """Lookup table from multi-index to basis position (cached)."""
    return {mu: i for i, mu in enumerate(enumerate_monomials(k, m))}


def monomial_rank(mu: MultiIndex) -> int:
    """Position of ``mu`` in ``enumerate_monomials(len(mu), sum(mu))``."""
    if not mu or any(e < 0 for e in mu):
        raise InputError(f"invalid multi-index {mu!r}")
    k = len(mu)
    rem = sum(mu)
    pos = 0
    for i, e in enumerate(mu[:-1]):
        rest = k - i - 1
        # monomials that put a larger exponent in slot i come first
        for bigger in range(e + 1, rem + 1):
            pos += count_monomials(rest, rem - bigger)
        rem -= e
    return pos


def monomial_unrank(k: int, m: int, position: int) -> MultiIndex:
    total = count_monomials(k, m)
    if k < 1 or not 0 <= position < total:
        raise InputError(f"position {position} out of range for k={k}, m={m}")
    mu = []
    rem = m
    for i in range(k - 1):
        rest = k - i - 1
        for e in range(rem, -1, -1):
            block = count_monomials(rest, rem - e)
            if position < block:
                mu.append(e)
                rem -= e
                break
            position -= block
    mu.append(rem)
    return tuple(mu)


def multiply_index(mu: MultiIndex, q: int) -> MultiIndex:
    """Exponent vector of x_q * x^mu."""
    if not 0 <= q < len(mu):
        raise InputError(f"variable {q} out of range for {len(mu)} variables")
    return mu[:q] + (mu[q] + 1,) + mu[q + 1:]


def sym_power_matrix(g: Matrix, m: int) -> Matrix:
    """Matrix of the substitution induced by ``g`` on degree-m monomials.

    ``g`` sends the variable x_j to sum_i g[i][j] x_i; column ``mu`` of the
    result holds the expansion of the image of x^mu. This is functorial:
    ``sym_power_matrix(g @ h, m) == sym_power_matrix(g, m) @ sym_power_matrix(h, m)``.
    """
    if not g.is_square():
        raise DimensionError(f"expected a square matrix, got {g.shape}")
    k = g.nrows
    basis = enumerate_monomials(k, m)
    index = monomial_index(k, m)
    columns = []
    for mu in basis:
        poly: dict[MultiIndex, Fraction] = {(0,) * k: Fraction(1)}
        for j, e in enumerate(mu):
            for _ in range(e):
                nxt: dict[MultiIndex, Fraction] = {}
                for nu, c in poly.items():
                    for i in range(k):
                        gij = g[i, j]
                        if gij:
                            key = multiply_index(nu, i)
                            nxt[key] = nxt.get(key, 0) + c * gij
                poly = nxt
        col = [Fraction(0)] * len(basis)
        for nu, c in poly.items():
            col[index[nu]] = Fraction(c)
        columns.append(col)
    return Matrix(zip(*columns)) if columns else Matrix.zeros(0, 0)
