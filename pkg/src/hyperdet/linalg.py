"""Exact dense linear algebra over Q and prime fields.

Everything here works on :class:`fractions.Fraction`. Determinants clear
denominators row by row and hand the integer matrix to the fraction-free
elimination kernel selected in :mod:`hyperdet._backend`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from . import _backend
from .errors import DimensionError, InputError

__all__ = [
    "Matrix",
    "Poly",
    "as_rational",
    "det",
    "det_mod_p",
    "check_modulus",
    "is_prime",
    "kernel_basis",
    "poly_gcd",
    "rank",
    "residue",
]

MAX_MODULUS = 1 << 62


def as_rational(x) -> Fraction:
    """Coerce an exact scalar to ``Fraction``; floats and bools are refused."""
    if type(x) is Fraction:
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"inexact or non-numeric scalar {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"not a rational number: {x!r}") from exc


class Matrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged rows")
            if ncols is not None and ncols != width:
                raise DimensionError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def _wrap(cls, rows: tuple, ncols: int) -> Matrix:
        # trusted constructor: rows already tuples of Fraction
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def identity(cls, n: int) -> Matrix:
        one, zero = Fraction(1), Fraction(0)
        return cls._wrap(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        zero = Fraction(0)
        return cls._wrap(tuple((zero,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a matrix from a grid of blocks with compatible shapes."""
        rows: list[tuple] = []
        for band in blocks:
            height = band[0].nrows
            if any(b.nrows != height for b in band):
                raise DimensionError("block heights differ within a band")
            for i in range(height):
                rows.append(tuple(x for b in band for x in b._rows[i]))
        return cls(rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._rows[i][j]
        return self._rows[idx]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    @property
    def T(self) -> Matrix:
        if not self.nrows:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._wrap(tuple(zip(*self._rows)), self.nrows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = tuple(zip(*other._rows)) if other.nrows else ((),) * other.ncols
        zero = Fraction(0)
        out = tuple(
            tuple(sum((a * b for a, b in zip(r, c) if a and b), zero) for c in cols) for r in self._rows
        )
        return Matrix._wrap(out, other.ncols)

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._wrap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other)
        return Matrix._wrap(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)), self.ncols
        )

    def __neg__(self) -> Matrix:
        return Matrix._wrap(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> Matrix:
        c = as_rational(c)
        return Matrix._wrap(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise DimensionError(f"vector of length {len(vec)} for {self.shape} matrix")
        v = [as_rational(x) for x in vec]
        zero = Fraction(0)
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), zero) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def inverse(self) -> Matrix:
        """Exact inverse by Gauss-Jordan elimination."""
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.nrows
        one, zero = Fraction(1), Fraction(0)
        a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self._rows)]
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                raise InputError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c]:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return Matrix._wrap(tuple(tuple(r[n:]) for r in a), n)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"


def _as_matrix(M) -> Matrix:
    return M if isinstance(M, Matrix) else Matrix(M)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return the rows and the product of scale factors."""
    out = []
    scale = 1
    for r in rows:
        L = math.lcm(*(x.denominator for x in r)) if r else 1
        if L == 1:
            out.append([x.numerator for x in r])
        else:
            out.append([x.numerator * (L // x.denominator) for x in r])
            scale *= L
    return out, scale


def det(M) -> Fraction:
    """Exact determinant.

    Denominators are cleared row-wise, the integer matrix goes through
    fraction-free (Bareiss) elimination, and the row scalings are divided
    back out.
    """
    M = _as_matrix(M)
    if not M.is_square():
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    rows, scale = _integer_rows(M.rows)
    return Fraction(_backend.bareiss_det(rows), scale)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for every p < 3.3e24."""
    if p < 2:
        return False
    for b in _MR_BASES:
        if p % b == 0:
            return p == b
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def residue(x, p: int) -> int:
    """Image of a rational in Z/p; the denominator must be a unit mod p."""
    x = as_rational(x)
    if x.denominator % p == 0:
        raise InputError(f"denominator {x.denominator} is divisible by {p}")
    if x.denominator == 1:
        return x.numerator % p
    return x.numerator * pow(x.denominator, -1, p) % p


def check_modulus(p: int) -> None:
    """Raise InputError unless ``p`` is a prime below 2**62."""
    if isinstance(p, bool) or not isinstance(p, int):
        raise InputError(f"modulus must be an integer, got {p!r}")
    if not is_prime(p):
        raise InputError(f"modulus {p} is not prime")
    if p >= MAX_MODULUS:
        raise InputError(f"modulus {p} is not below 2**62")


def det_mod_p(M, p: int) -> int:
    """Determinant of ``M`` reduced into [0, p) by elimination over F_p.

    ``M`` may hold rationals as long as no denominator is divisible by ``p``.
    """
    check_modulus(p)
    M = _as_matrix(M)
    if not M.is_square():
        raise DimensionError(f"determinant of non-square {M.shape} matrix")
    rows = [[residue(x, p) for x in r] for r in M.rows]
    return _backend.det_mod_p(rows, p)


def rank(M) -> int:
    """Exact rank via fraction-free row echelon form on the cleared integer matrix."""
    M = _as_matrix(M)
    a, _ = _integer_rows(M.rows)
    m, n = M.nrows, M.ncols
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        rr = a[r]
        p = rr[c]
        for i in range(r + 1, m):
            ri = a[i]
            f = ri[c]
            for j in range(c + 1, n):
                ri[j] = (ri[j] * p - f * rr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return r


def _rref(M: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    a = [list(r) for r in M.rows]
    m, n = M.nrows, M.ncols
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(M) -> Matrix:
    """Basis of the right null space, one basis vector per column.

    The result has shape ``(M.ncols, nullity)``.
    """
    M = _as_matrix(M)
    a, pivots = _rref(M)
    n = M.ncols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    zero, one = Fraction(0), Fraction(1)
    vectors = []
    for f in free:
        x = [zero] * n
        x[f] = one
        for i, c in enumerate(pivots):
            x[c] = -a[i][f]
        vectors.append(x)
    if not vectors:
        return Matrix.zeros(n, 0)
    return Matrix(zip(*vectors))


class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def interpolate(cls, xs: Sequence, ys: Sequence) -> Poly:
        """Unique polynomial of degree < len(xs) through the points (Newton form)."""
        xs = [as_rational(x) for x in xs]
        dd = [as_rational(y) for y in ys]
        n = len(xs)
        for j in range(1, n):
            for i in range(n - 1, j - 1, -1):
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
        result = cls([dd[-1]]) if n else cls()
        for i in range(n - 2, -1, -1):
            result = result * cls([-xs[i], 1]) + cls([dd[i]])
        return result

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        inv = 1 / self.coeffs[-1]
        return Poly(c * inv for c in self.coeffs)

    def __call__(self, t) -> Fraction:
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for i in range(len(rem) - 1, dq - 1, -1):
            f = rem[i] * inv
            if f:
                quot[i - dq] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - dq + j] -= f * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor; gcd(f, 0) = monic(f) and gcd(0, 0) = 0."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()
