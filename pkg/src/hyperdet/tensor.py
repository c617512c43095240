"""Multidimensional matrices of format (2n+2) x k x (2n+2k).

A :class:`Tensor3` stores ``a[p][q][r]`` where ``p`` indexes V (dim 2n+2),
``q`` indexes I* (dim k) and ``r`` indexes W (dim 2n+2k). Read as a linear
map it sends ``v (x) i`` to the vector ``sum_{p,q} v_p i_q a[p][q][.]`` in W.

Group action convention (fixed throughout the package)::

    act(A, g, s, h)[p][q][r] = sum h[p'][p] g[q'][q] s[r][r'] a[p'][q'][r']

so the coordinate slices transform as ``A'_p = sum_p' h[p'][p] s A_p' g`` and
composition reads ``act(act(A, g1, s1, h1), g2, s2, h2) ==
act(A, g1 @ g2, s2 @ s1, h1 @ h2)``.
"""
from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from .errors import DimensionError, InputError, ParseError, UnsupportedFormatError
from .linalg import Matrix, Poly, as_rational, det, kernel_basis, poly_gcd, rank

__all__ = [
    "DegeneracyWitness",
    "Document",
    "PairTensor",
    "SymplecticForm",
    "Tensor3",
    "act",
    "check_witness",
    "from_json",
    "is_complex_pair",
    "is_complex_symplectic",
    "is_degenerate_exact_dimv2",
    "parse_document",
    "search_witness",
    "slice_matrix",
    "to_json",
]

_ZERO = Fraction(0)


def _format_dims(n: int, k: int) -> tuple[int, int, int]:
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise InputError(f"n must be a non-negative integer, got {n!r}")
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InputError(f"k must be a positive integer, got {k!r}")
    return (2 * n + 2, k, 2 * n + 2 * k)


def _coerce_array(
    data: Any,
    shape: Sequence[int],
    axes: Sequence[str],
    path: str,
    convert: Callable[[Any, str], Fraction],
    error: Callable[[str, str], Exception],
) -> tuple:
    """Validate a nested list against ``shape`` and convert its leaves."""
    if not isinstance(data, (list, tuple)):
        raise error(f"expected an array along the {axes[0]} axis", path)
    if len(data) != shape[0]:
        raise error(f"{axes[0]} axis has length {len(data)}, expected {shape[0]}", path)
    if len(shape) == 1:
        return tuple(convert(x, f"{path}[{i}]") for i, x in enumerate(data))
    return tuple(
        _coerce_array(x, shape[1:], axes[1:], f"{path}[{i}]", convert, error) for i, x in enumerate(data)
    )


def _lib_convert(x: Any, where: str) -> Fraction:
    try:
        return as_rational(x)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def _lib_error(msg: str, where: str) -> Exception:
    return DimensionError(f"{where}: {msg}")


class Tensor3:
    """The multidimensional matrix ``a[p][q][r]`` of an instanton monad."""

    __slots__ = ("n", "k", "entries")

    AXES = ("p (V)", "q (I)", "r (W)")

    def __init__(self, n: int, k: int, entries):
        shape = _format_dims(n, k)
        self.n = n
        self.k = k
        self.entries = _coerce_array(entries, shape, self.AXES, "entries", _lib_convert, _lib_error)

    @classmethod
    def _wrap(cls, n: int, k: int, entries: tuple) -> Tensor3:
        t = object.__new__(cls)
        t.n, t.k, t.entries = n, k, entries
        return t

    @classmethod
    def zeros(cls, n: int, k: int) -> Tensor3:
        P, Q, R = _format_dims(n, k)
        return cls._wrap(n, k, tuple(tuple((_ZERO,) * R for _ in range(Q)) for _ in range(P)))

    @classmethod
    def from_function(cls, n: int, k: int, f: Callable[[int, int, int], Any]) -> Tensor3:
        P, Q, R = _format_dims(n, k)
        return cls(n, k, [[[f(p, q, r) for r in range(R)] for q in range(Q)] for p in range(P)])

    @property
    def dims(self) -> tuple[int, int, int]:
        """(dim V, dim I, dim W)."""
        return (2 * self.n + 2, self.k, 2 * self.n + 2 * self.k)

    def __getitem__(self, idx: tuple[int, int, int]) -> Fraction:
        p, q, r = idx
        return self.entries[p][q][r]

    def coordinate_slice(self, p: int) -> Matrix:
        """The W x k matrix ``A_p[r][q] = a[p][q][r]``."""
        return Matrix._wrap(tuple(zip(*self.entries[p])), self.k)

    def flattening(self) -> Matrix:
        """The (2n+2)k x (2n+2k) matrix with rows (p, q) and columns r."""
        return Matrix._wrap(tuple(row for plane in self.entries for row in plane), self.dims[2])

    def scale(self, lam) -> Tensor3:
        lam = as_rational(lam)
        return Tensor3._wrap(
            self.n, self.k, tuple(tuple(tuple(lam * x for x in row) for row in plane) for plane in self.entries)
        )

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for plane in self.entries for row in plane for x in row)

    def tolist(self) -> list:
        return [[list(row) for row in plane] for plane in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor3):
            return NotImplemented
        return (self.n, self.k, self.entries) == (other.n, other.k, other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.entries))

    def __repr__(self) -> str:
        return f"Tensor3(n={self.n}, k={self.k})"


class PairTensor:
    """A pair (A, B) with A stored as ``a[p][q][r]`` and B as ``b[r][p][q]``."""

    __slots__ = ("n", "k", "A", "B")

    B_AXES = ("r (W)", "p (V)", "q (I)")

    def __init__(self, n: int, k: int, A, B):
        V, I, W = _format_dims(n, k)
        self.n = n
        self.k = k
        self.A = A if isinstance(A, Tensor3) else Tensor3(n, k, A)
        if (self.A.n, self.A.k) != (n, k):
            raise DimensionError("A has a different format than the pair")
        self.B = _coerce_array(B, (W, V, I), self.B_AXES, "B", _lib_convert, _lib_error)

    def b_slice(self, p: int) -> Matrix:
        """The k x W matrix ``B_p[q][r] = b[r][p][q]``."""
        return Matrix._wrap(tuple(zip(*(plane[p] for plane in self.B))), len(self.B))

    def b_tensor(self) -> Tensor3:
        """B re-indexed as a Tensor3 ``t[p][q][r] = b[r][p][q]``."""
        V, I, W = self.A.dims
        return Tensor3._wrap(
            self.n,
            self.k,
            tuple(tuple(tuple(self.B[r][p][q] for r in range(W)) for q in range(I)) for p in range(V)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairTensor):
            return NotImplemented
        return (self.n, self.k, self.A, self.B) == (other.n, other.k, other.A, other.B)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.A, self.B))

    def __repr__(self) -> str:
        return f"PairTensor(n={self.n}, k={self.k})"


class SymplecticForm:
    """An invertible antisymmetric matrix J on W."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        J = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        if not J.is_square():
            raise DimensionError(f"symplectic form must be square, got {J.shape}")
        if J.T != -J:
            raise InputError("symplectic form is not antisymmetric")
        if det(J) == 0:
            raise InputError("symplectic form is degenerate")
        self.matrix = J

    @classmethod
    def standard(cls, dim: int) -> SymplecticForm:
        """J = [[0, Id], [-Id, 0]] with blocks of size dim/2."""
        if dim % 2:
            raise InputError(f"symplectic dimension must be even, got {dim}")
        m = dim // 2
        I, Z = Matrix.identity(m), Matrix.zeros(m, m)
        form = object.__new__(cls)
        form.matrix = Matrix.block([[Z, I], [-I, Z]])
        return form

    @property
    def dimension(self) -> int:
        return self.matrix.nrows

    def is_standard(self) -> bool:
        return self == SymplecticForm.standard(self.dimension)

    def preserves(self, s: Matrix) -> bool:
        """True iff s^t J s = J."""
        return s.T @ self.matrix @ s == self.matrix

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymplecticForm):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)


@dataclass(frozen=True)
class DegeneracyWitness:
    """Nonzero (v, i) with A(v (x) i) = 0."""

    v: tuple[Fraction, ...]
    i: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(as_rational(x) for x in self.v))
        object.__setattr__(self, "i", tuple(as_rational(x) for x in self.i))
        if not any(self.v):
            raise InputError("witness v must be nonzero")
        if not any(self.i):
            raise InputError("witness i must be nonzero")


def slice_matrix(A: Tensor3, v: Sequence) -> Matrix:
    """The W x k matrix of ``i -> A(v (x) i)``: ``M[r][q] = sum_p v_p a[p][q][r]``."""
    V, I, W = A.dims
    if len(v) != V:
        raise DimensionError(f"v has length {len(v)}, expected {V}")
    v = [as_rational(x) for x in v]
    rows = []
    for r in range(W):
        rows.append(
            tuple(sum((vp * A.entries[p][q][r] for p, vp in enumerate(v) if vp), _ZERO) for q in range(I))
        )
    return Matrix._wrap(tuple(rows), I)


def _resolve_form(J, dim: int) -> SymplecticForm:
    if J is None:
        return SymplecticForm.standard(dim)
    if not isinstance(J, SymplecticForm):
        J = SymplecticForm(J)
    if J.dimension != dim:
        raise DimensionError(f"symplectic form has dimension {J.dimension}, expected {dim}")
    return J


def is_complex_symplectic(A: Tensor3, J=None) -> bool:
    """True iff A^t J A = 0 as a map O(-1) -> O(1).

    Coefficient-wise this is ``A_p1^t J A_p2 + A_p2^t J A_p1 = 0`` for every
    pair p1 <= p2 of coordinate slices. ``J`` defaults to the standard form.
    """
    form = _resolve_form(J, A.dims[2])
    slices = [A.coordinate_slice(p) for p in range(A.dims[0])]
    left = [S.T @ form.matrix for S in slices]
    for p1, p2 in itertools.combinations_with_replacement(range(len(slices)), 2):
        prod = left[p1] @ slices[p2]
        if p1 == p2:
            if not (prod + prod).is_zero():
                return False
        elif not (prod + left[p2] @ slices[p1]).is_zero():
            return False
    return True


def is_complex_pair(P: PairTensor) -> bool:
    """True iff B . A = 0, i.e. ``B_p1 A_p2 + B_p2 A_p1 = 0`` for all p1 <= p2."""
    V = P.A.dims[0]
    a = [P.A.coordinate_slice(p) for p in range(V)]
    b = [P.b_slice(p) for p in range(V)]
    for p1, p2 in itertools.combinations_with_replacement(range(V), 2):
        if not (b[p1] @ a[p2] + b[p2] @ a[p1]).is_zero():
            return False
    return True


def check_witness(A: Tensor3, w: DegeneracyWitness) -> bool:
    """True iff A(v (x) i) = 0 exactly."""
    V, I, _ = A.dims
    if len(w.v) != V or len(w.i) != I:
        raise DimensionError(f"witness lengths ({len(w.v)}, {len(w.i)}), expected ({V}, {I})")
    return not any(slice_matrix(A, w.v).apply(w.i))


def search_witness(
    A: Tensor3, samples: int = 200, seed: int = 0, bound: int = 9
) -> DegeneracyWitness | None:
    """Look for a degeneracy witness along random integer directions v.

    For each sampled nonzero v the slice is tested for full column rank; a
    rank drop yields an exact witness from its kernel. Returning ``None``
    is evidence of nondegeneracy, not a proof.
    """
    V, I, _ = A.dims
    rng = random.Random(f"hyperdet:witness-search:{seed}")
    for _ in range(samples):
        v = [0] * V
        while not any(v):
            v = [rng.randint(-bound, bound) for _ in range(V)]
        M = slice_matrix(A, v)
        if rank(M) < I:
            return DegeneracyWitness(v, kernel_basis(M).column(0))
    return None


def _minor_polys(A0: Matrix, A1: Matrix) -> list[Poly]:
    """All maximal minors of A0 + t*A1 as polynomials in t."""
    m, k = A0.shape
    pts = list(range(k + 1))
    pencils = [A0 + A1.scale(t) for t in pts]
    out = []
    for rows in itertools.combinations(range(m), k):
        vals = [det([pen[r] for r in rows]) for pen in pencils]
        out.append(Poly.interpolate(pts, vals))
    return out


def is_degenerate_exact_dimv2(A: Tensor3) -> bool:
    """Decide degeneracy over C for n = 0 (dim V = 2).

    On the chart v = (1, t) the slice is ``A_0 + t A_1``; A is degenerate there
    iff all its maximal minors share a root, i.e. their gcd is nonconstant or
    they all vanish. The remaining point v = (0, 1) is tested directly.
    """
    if A.n != 0:
        raise UnsupportedFormatError(f"exact degeneracy decision needs n = 0, got n = {A.n}")
    A0, A1 = A.coordinate_slice(0), A.coordinate_slice(1)
    if rank(A1) < A.k:
        return True
    g = Poly()
    for f in _minor_polys(A0, A1):
        g = poly_gcd(g, f)
        if g.degree == 0:
            return False
    return g.is_zero() or g.degree > 0


def _mode_product(entries: tuple, M: Matrix, axis: int, transpose: bool) -> tuple:
    """Contract one axis of a 3-way array with M.

    transpose=True computes ``sum_x M[x][y] t[..x..]`` (index y replaces x),
    otherwise ``sum_x M[y][x] t[..x..]``.
    """
    P, Q, R = len(entries), len(entries[0]), len(entries[0][0])

    def coeff(y: int, x: int) -> Fraction:
        return M[x, y] if transpose else M[y, x]

    def total(terms) -> Fraction:
        return sum((c * t for c, t in terms if c and t), _ZERO)

    if axis == 0:
        return tuple(
            tuple(tuple(total((coeff(y, x), entries[x][q][r]) for x in range(P)) for r in range(R)) for q in range(Q))
            for y in range(P)
        )
    if axis == 1:
        return tuple(
            tuple(tuple(total((coeff(y, x), entries[p][x][r]) for x in range(Q)) for r in range(R)) for y in range(Q))
            for p in range(P)
        )
    return tuple(
        tuple(tuple(total((coeff(y, x), entries[p][q][x]) for x in range(R)) for y in range(R)) for q in range(Q))
        for p in range(P)
    )


def act(A: Tensor3, g: Matrix | None = None, s: Matrix | None = None, h: Matrix | None = None) -> Tensor3:
    """Apply (h, g, s) in GL(V) x GL(I) x GL(W); ``None`` means identity.

    See the module docstring for the coordinate formula and composition law.
    """
    V, I, W = A.dims
    for name, M, d in (("g", g, I), ("s", s, W), ("h", h, V)):
        if M is not None and M.shape != (d, d):
            raise DimensionError(f"{name} must be {d}x{d}, got {M.shape[0]}x{M.shape[1]}")
    e = A.entries
    if h is not None:
        e = _mode_product(e, h, 0, transpose=True)
    if g is not None:
        e = _mode_product(e, g, 1, transpose=True)
    if s is not None:
        e = _mode_product(e, s, 2, transpose=False)
    return Tensor3._wrap(A.n, A.k, e)


# --- JSON documents -------------------------------------------------------

_RATIONAL_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")


def _encode(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _decode(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"boolean {x!r} is not a rational", where)
    if isinstance(x, _NumberToken):
        raise ParseError(f"number {x} is not allowed; use an integer or a 'num/den' string", where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RATIONAL_RE.fullmatch(x):
            raise ParseError(f"malformed rational {x!r}", where)
        value = Fraction(x)
        if "/" in x and f"{value.numerator}/{value.denominator}" != x:
            raise ParseError(f"rational {x!r} is not in lowest terms", where)
        return value
    raise ParseError(f"expected an integer or a 'num/den' string, got {type(x).__name__}", where)


def _encode_array(data) -> Any:
    if isinstance(data, (tuple, list)):
        return [_encode_array(x) for x in data]
    return _encode(data)


@dataclass(frozen=True)
class Document:
    """A parsed JSON document: the tensor plus its optional companions."""

    obj: Tensor3 | PairTensor
    J: SymplecticForm | None = None
    witness: DegeneracyWitness | None = None


def to_json(obj: Tensor3 | PairTensor, J: SymplecticForm | None = None,
            witness: DegeneracyWitness | None = None) -> str:
    """Serialize a tensor or pair; rationals become integers or "num/den"."""
    if isinstance(obj, Tensor3):
        doc: dict[str, Any] = {"kind": "tensor3", "n": obj.n, "k": obj.k, "entries": _encode_array(obj.entries)}
    elif isinstance(obj, PairTensor):
        doc = {"kind": "pair", "n": obj.n, "k": obj.k,
               "A": _encode_array(obj.A.entries), "B": _encode_array(obj.B)}
    else:
        raise InputError(f"cannot serialize {type(obj).__name__}")
    if J is not None:
        doc["J"] = _encode_array(J.matrix.rows)
    if witness is not None:
        doc["witness"] = {"v": _encode_array(witness.v), "i": _encode_array(witness.i)}
    return json.dumps(doc)


class _NumberToken(str):
    """A float or non-finite literal, kept as text so it can be rejected with its location."""


def _number_token(text: str) -> _NumberToken:
    return _NumberToken(text)


def _read_int(doc: dict, key: str) -> int:
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    x = doc[key]
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"field {key!r} must be an integer", f"$.{key}")
    return x


def parse_document(text: str | bytes) -> Document:
    """Parse a tensor3 or pair document, including optional J and witness blocks."""
    try:
        doc = json.loads(text, parse_constant=_number_token, parse_float=_number_token)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"document is not UTF-8: {exc.reason}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    kind = doc.get("kind")
    n, k = _read_int(doc, "n"), _read_int(doc, "k")
    try:
        V, I, W = _format_dims(n, k)
    except InputError as exc:
        raise ParseError(str(exc)) from None
    if kind == "tensor3":
        if "entries" not in doc:
            raise ParseError("missing field 'entries'")
        e = _coerce_array(doc["entries"], (V, I, W), Tensor3.AXES, "$.entries", _decode, ParseError)
        obj: Tensor3 | PairTensor = Tensor3._wrap(n, k, e)
    elif kind == "pair":
        for key in ("A", "B"):
            if key not in doc:
                raise ParseError(f"missing field {key!r}")
        a = _coerce_array(doc["A"], (V, I, W), Tensor3.AXES, "$.A", _decode, ParseError)
        b = _coerce_array(doc["B"], (W, V, I), PairTensor.B_AXES, "$.B", _decode, ParseError)
        obj = PairTensor(n, k, Tensor3._wrap(n, k, a), b)
    else:
        raise ParseError(f"unknown kind {kind!r}; expected 'tensor3' or 'pair'", "$.kind")
    J = None
    if "J" in doc:
        rows = _coerce_array(doc["J"], (W, W), ("row", "column"), "$.J", _decode, ParseError)
        try:
            J = SymplecticForm(Matrix(rows))
        except InputError as exc:
            raise ParseError(str(exc), "$.J") from None
    witness = None
    if "witness" in doc:
        w = doc["witness"]
        if not isinstance(w, dict) or "v" not in w or "i" not in w:
            raise ParseError("witness must be an object with 'v' and 'i'", "$.witness")
        v = _coerce_array(w["v"], (V,), ("v",), "$.witness.v", _decode, ParseError)
        i = _coerce_array(w["i"], (I,), ("i",), "$.witness.i", _decode, ParseError)
        try:
            witness = DegeneracyWitness(v, i)
        except InputError as exc:
            raise ParseError(str(exc), "$.witness") from None
    return Document(obj, J, witness)


def from_json(text: str | bytes) -> Tensor3 | PairTensor:
    return parse_document(text).obj
