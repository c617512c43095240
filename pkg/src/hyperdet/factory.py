"""Constructors for test inputs.

All randomness is drawn from :class:`random.Random` seeded with a string of
the form ``"hyperdet:<purpose>:<seed>"``, so a given ``(seed, steps)`` always
reproduces the same output on every platform. Random integer entries lie in
``[-bound, bound]`` where ``bound`` defaults to 9 and can be overridden with
the ``HYPERDET_HEIGHT_BOUND`` environment variable.
"""
from __future__ import annotations

import os
import random
from fractions import Fraction

from .errors import InputError
from .linalg import Matrix, det
from .tensor import DegeneracyWitness, PairTensor, SymplecticForm, Tensor3, act

__all__ = [
    "UNIMODULAR_STEPS",
    "SYMPLECTIC_STEPS",
    "height_bound",
    "orbit_sample",
    "pair_from_symplectic",
    "planted_degenerate",
    "planted_degenerate_pair",
    "random_invertible",
    "random_symplectic",
    "random_tensor",
    "random_unimodular",
    "special_symplectic",
]

DEFAULT_HEIGHT_BOUND = 9
UNIMODULAR_STEPS = 4
SYMPLECTIC_STEPS = 3


def height_bound() -> int:
    raw = os.environ.get("HYPERDET_HEIGHT_BOUND")
    if raw is None or raw == "":
        return DEFAULT_HEIGHT_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"HYPERDET_HEIGHT_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"HYPERDET_HEIGHT_BOUND must be positive, got {value}")
    return value


def _rng(purpose: str, seed: int) -> random.Random:
    return random.Random(f"hyperdet:{purpose}:{seed}")


def _nonzero(rng: random.Random, bound: int) -> int:
    c = 0
    while c == 0:
        c = rng.randint(-bound, bound)
    return c


def special_symplectic(n: int, k: int) -> Tensor3:
    """A point of the instanton variety for every (n, k).

    With V-coordinates x_0..x_n, y_0..y_n, shift matrices ``S_j`` of size
    (n+k) x k (``S_j[j'][q] = 1`` iff ``j' = q + j``) and the flip ``T``, the
    slices are ``A_{x_j} = [S_j; 0]`` and ``A_{y_j} = [0; S_j T]``. Since
    ``S_a^t S_b`` is Toeplitz, ``S_a^t S_b T`` is Hankel hence symmetric, which
    makes A^t J A vanish for the standard J.
    """
    if n < 0 or k < 1:
        raise InputError(f"invalid format n={n}, k={k}")
    half = n + k

    def entry(p: int, q: int, r: int) -> int:
        if p <= n:
            return int(r == q + p)
        j = p - n - 1
        return int(r == half + (k - 1 - q) + j)

    return Tensor3.from_function(n, k, entry)


def random_unimodular(dim: int, seed: int, steps: int | None = None, bound: int | None = None) -> Matrix:
    """Product of ``steps`` elementary row additions; determinant exactly 1.

    Each factor adds ``c`` times one row to another with ``0 < |c| <= bound``,
    so every entry of the product is at most ``(bound + 1) ** steps`` in size.
    """
    steps = UNIMODULAR_STEPS if steps is None else steps
    bound = height_bound() if bound is None else bound
    if dim < 1:
        raise InputError(f"dimension must be positive, got {dim}")
    rng = _rng("unimodular", seed)
    a = [[int(i == j) for j in range(dim)] for i in range(dim)]
    if dim > 1:
        for _ in range(steps):
            i, j = rng.sample(range(dim), 2)
            c = _nonzero(rng, bound)
            a[i] = [x + c * y for x, y in zip(a[i], a[j])]
    return Matrix(a)


def random_symplectic(dim: int, seed: int, steps: int | None = None, bound: int | None = None) -> Matrix:
    """Exact s with s^t J s = J for the standard J, as a product of generators.

    Generators: ``[[Id, S], [0, Id]]`` and ``[[Id, 0], [S, Id]]`` with S symmetric,
    and ``[[U, 0], [0, U^-t]]`` with U unimodular.
    """
    if dim % 2 or dim < 2:
        raise InputError(f"symplectic dimension must be a positive even number, got {dim}")
    steps = SYMPLECTIC_STEPS if steps is None else steps
    bound = height_bound() if bound is None else bound
    rng = _rng("symplectic", seed)
    m = dim // 2
    I, Z = Matrix.identity(m), Matrix.zeros(m, m)
    out = Matrix.identity(dim)
    for _ in range(steps):
        kind = rng.randrange(3)
        if kind == 2:
            U = random_unimodular(m, rng.getrandbits(63), bound=bound)
            gen = Matrix.block([[U, Z], [Z, U.inverse().T]])
        else:
            S = [[0] * m for _ in range(m)]
            for i in range(m):
                for j in range(i, m):
                    S[i][j] = S[j][i] = rng.randint(-bound, bound)
            S = Matrix(S)
            gen = Matrix.block([[I, S], [Z, I]] if kind == 0 else [[I, Z], [S, I]])
        out = gen @ out
    return out


def random_invertible(dim: int, seed: int, bound: int | None = None) -> Matrix:
    """Random integer matrix with nonzero determinant (resampled until invertible)."""
    bound = height_bound() if bound is None else bound
    rng = _rng("invertible", seed)
    while True:
        M = Matrix([[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim)])
        if det(M) != 0:
            return M


def random_tensor(n: int, k: int, seed: int, bound: int | None = None, purpose: str = "tensor") -> Tensor3:
    bound = height_bound() if bound is None else bound
    rng = _rng(purpose, seed)
    return Tensor3.from_function(n, k, lambda p, q, r: rng.randint(-bound, bound))


def orbit_sample(A: Tensor3, seed: int, steps: int | None = None) -> Tensor3:
    """A translate ``s A g`` with g unimodular and s symplectic for the standard J.

    Seed 0 is reserved for the identity translate and returns ``A`` itself.
    """
    if seed == 0:
        return A
    g = random_unimodular(A.k, seed, steps)
    s = random_symplectic(A.dims[2], seed, steps)
    return act(A, g=g, s=s)


def planted_degenerate(n: int, k: int, seed: int) -> tuple[Tensor3, DegeneracyWitness]:
    """Random tensor with a hidden degeneracy witness.

    The column ``a[0][0][.]`` is zeroed, so (e_0, e_0) is a witness; then
    random unimodular h on V and g on I hide it. The returned witness is the
    transported one, ``(h^-1 e_0, g^-1 e_0)``.
    """
    bound = height_bound()
    base = random_tensor(n, k, seed, bound)
    e = [[list(row) for row in plane] for plane in base.entries]
    e[0][0] = [0] * len(e[0][0])
    V, I, _ = base.dims
    g = random_unimodular(I, seed ^ 0x5EED, bound=bound)
    h = random_unimodular(V, seed ^ 0xFACE, bound=bound)
    A = act(Tensor3(n, k, e), g=g, h=h)
    v = h.inverse().column(0)
    i = g.inverse().column(0)
    return A, DegeneracyWitness(v, i)


def planted_degenerate_pair(n: int, k: int, seed: int, side: str = "A") -> tuple[PairTensor, DegeneracyWitness]:
    """Pair whose ``side`` ("A" or "B") carries a planted degeneracy witness.

    For B the witness means ``sum_{p,q} v_p i_q b[r][p][q] = 0`` for all r.
    The other side is a random tensor.
    """
    if side not in ("A", "B"):
        raise InputError(f"side must be 'A' or 'B', got {side!r}")
    planted, w = planted_degenerate(n, k, seed)
    other = random_tensor(n, k, seed, purpose="pair-partner")
    if side == "A":
        A, Bt = planted, other
    else:
        A, Bt = other, planted
    V, I, W = A.dims
    B = [[[Bt.entries[p][q][r] for q in range(I)] for p in range(V)] for r in range(W)]
    return PairTensor(n, k, A, B), w


def pair_from_symplectic(A: Tensor3, J: SymplecticForm | None = None) -> PairTensor:
    """The pair (A, B) with ``B_p = A_p^t J``, so B . A = 0 iff A^t J A = 0."""
    W = A.dims[2]
    form = SymplecticForm.standard(W) if J is None else J
    Jm = form.matrix
    V, I, _ = A.dims
    zero = Fraction(0)
    B = [
        [
            [sum((A.entries[p][q][x] * Jm[x, r] for x in range(W) if A.entries[p][q][x] and Jm[x, r]), zero)
             for q in range(I)]
            for p in range(V)
        ]
        for r in range(W)
    ]
    return PairTensor(A.n, A.k, A, B)
