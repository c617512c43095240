"""The invariant D and its pair analogue.

``delta_matrix`` realizes W (x) S^n I -> V (x) S^{n+1} I, the transpose of A
followed by symmetric multiplication on the I factor. Its determinant, taken
in the fixed monomial bases of :mod:`hyperdet.symmetric`, is D(A).

Row and column orderings:

* ``delta_matrix``: rows (p, nu) p-major, columns (r, mu) r-major.
* ``s_matrix``: rows (mu, r) mu-major, columns (nu, p) nu-major.
* ``r_matrix``: the delta pattern applied to ``t[p][q][r] = b[r][p][q]``.

Here |mu| = n and |nu| = n + 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .linalg import Matrix, det, det_mod_p
from .symmetric import monomial_index, enumerate_monomials, multiply_index
from .tensor import PairTensor, Tensor3

__all__ = [
    "InvariantReport",
    "NondegeneracyCertificate",
    "certify_nondegenerate",
    "degree",
    "delta_matrix",
    "dimension_identity",
    "invariant_D",
    "invariant_D_mod_p",
    "invariant_Dtilde",
    "invariant_report",
    "matrix_dimension",
    "r_matrix",
    "s_matrix",
    "weights",
]


def dimension_identity(n: int, k: int) -> tuple[int, int, bool]:
    """Both sides of dim(W (x) S^n I) = dim(V (x) S^{n+1} I)."""
    lhs = (2 * n + 2 * k) * comb(k + n - 1, n)
    rhs = (2 * n + 2) * comb(k + n, n + 1)
    return lhs, rhs, lhs == rhs


def matrix_dimension(n: int, k: int) -> int:
    return (2 * n + 2 * k) * comb(k + n - 1, n)


def degree(n: int, k: int) -> int:
    """Degree of D as a homogeneous polynomial in the entries of A."""
    return matrix_dimension(n, k)


def weights(n: int, k: int) -> tuple[int, int]:
    """(alpha, beta): the exponents of det I and det V in the target of D."""
    return 2 * comb(k + n, n), comb(k + n, n + 1)


def _incidence(n: int, k: int):
    """Yield (mu_index, nu_index, q) with nu = mu + e_q."""
    lower = enumerate_monomials(k, n)
    upper_index = monomial_index(k, n + 1)
    for a, mu in enumerate(lower):
        for q in range(k):
            yield a, upper_index[multiply_index(mu, q)], q


def delta_matrix(A: Tensor3) -> Matrix:
    """Square matrix of W (x) S^n I -> V (x) S^{n+1} I induced by A."""
    n, k = A.n, A.k
    V, _, W = A.dims
    lo, hi = len(enumerate_monomials(k, n)), len(enumerate_monomials(k, n + 1))
    zero = Fraction(0)
    rows = [[zero] * (W * lo) for _ in range(V * hi)]
    e = A.entries
    for a, b, q in _incidence(n, k):
        for p in range(V):
            row = rows[p * hi + b]
            src = e[p][q]
            for r in range(W):
                row[r * lo + a] = src[r]
    return Matrix._wrap(tuple(map(tuple, rows)), W * lo)


def s_matrix(A: Tensor3 | PairTensor) -> Matrix:
    """Square matrix of S^{n+1} K (x) V* -> S^n K (x) W induced by A."""
    if isinstance(A, PairTensor):
        A = A.A
    n, k = A.n, A.k
    V, _, W = A.dims
    lo, hi = len(enumerate_monomials(k, n)), len(enumerate_monomials(k, n + 1))
    zero = Fraction(0)
    rows = [[zero] * (V * hi) for _ in range(W * lo)]
    e = A.entries
    for a, b, q in _incidence(n, k):
        for r in range(W):
            row = rows[a * W + r]
            for p in range(V):
                row[b * V + p] = e[p][q][r]
    return Matrix._wrap(tuple(map(tuple, rows)), V * hi)


def r_matrix(P: PairTensor) -> Matrix:
    """Square matrix of S^n I (x) W -> S^{n+1} I (x) V induced by B."""
    return delta_matrix(P.b_tensor())


def invariant_D(A: Tensor3) -> Fraction:
    return det(delta_matrix(A))


def invariant_D_mod_p(A: Tensor3, p: int) -> int:
    """D(A) mod p computed by elimination over F_p."""
    return det_mod_p(delta_matrix(A), p)


def invariant_Dtilde(P: PairTensor) -> Fraction:
    """det S(A) * det R(B)."""
    dS = det(s_matrix(P.A))
    if dS == 0:
        return dS
    return dS * det(r_matrix(P))


@dataclass(frozen=True)
class InvariantReport:
    n: int
    k: int
    matrix_dimension: int
    value: Fraction
    alpha: int
    beta: int
    degree: int


def invariant_report(A: Tensor3) -> InvariantReport:
    alpha, beta = weights(A.n, A.k)
    dim = matrix_dimension(A.n, A.k)
    return InvariantReport(A.n, A.k, dim, invariant_D(A), alpha, beta, dim)


@dataclass(frozen=True)
class NondegeneracyCertificate:
    """D(A) != 0, which rules out any degeneracy witness."""

    n: int
    k: int
    value: Fraction


def certify_nondegenerate(A: Tensor3) -> NondegeneracyCertificate | None:
    """Certificate when D(A) != 0; ``None`` (inconclusive) when D(A) = 0.

    D vanishes on every degenerate matrix, but for k >= 2 it can also vanish
    on nondegenerate ones, so a zero value decides nothing.
    """
    value = invariant_D(A)
    if value == 0:
        return None
    return NondegeneracyCertificate(A.n, A.k, value)
