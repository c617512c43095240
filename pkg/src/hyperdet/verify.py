"""Property suites run by ``hyperdet verify``.

Each suite maps a format (n, k) and a list of seeds to a list of
:class:`CaseResult`. Results are ordered by (suite, n, k, seed, check) so
reports are reproducible byte for byte.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .factory import (
    orbit_sample,
    pair_from_symplectic,
    planted_degenerate,
    planted_degenerate_pair,
    random_invertible,
    random_symplectic,
    random_tensor,
    special_symplectic,
)
from .invariants import degree, delta_matrix, invariant_D, invariant_Dtilde, weights
from .linalg import det, det_mod_p, residue
from .tensor import (
    act,
    check_witness,
    is_complex_pair,
    is_complex_symplectic,
    is_degenerate_exact_dimv2,
    search_witness,
)

DEFAULT_PRIMES = (10007, 1000003)
WITNESS_SAMPLES = 200


@dataclass(frozen=True)
class CaseResult:
    suite: str
    n: int
    k: int
    seed: int
    check: str
    passed: bool
    detail: str = ""


def _lemma(n: int, k: int, seeds: Iterable[int], **_) -> list[CaseResult]:
    out = []
    for seed in seeds:
        A, w = planted_degenerate(n, k, seed)
        out.append(CaseResult("lemma", n, k, seed, "witness", check_witness(A, w)))
        D = invariant_D(A)
        out.append(CaseResult("lemma", n, k, seed, "D=0", D == 0, "" if D == 0 else f"D={D}"))
        if n == 0:
            out.append(CaseResult("lemma", n, k, seed, "exact-degenerate", is_degenerate_exact_dimv2(A)))
    return out


def _theorem(n: int, k: int, seeds: Iterable[int], **_) -> list[CaseResult]:
    base = special_symplectic(n, k)
    D0 = invariant_D(base)
    out = []
    for seed in seeds:
        A = orbit_sample(base, seed)
        out.append(CaseResult("theorem", n, k, seed, "complex", is_complex_symplectic(A)))
        w = search_witness(A, WITNESS_SAMPLES, seed)
        out.append(CaseResult("theorem", n, k, seed, "no-witness", w is None,
                              "" if w is None else f"witness v={[str(x) for x in w.v]}"))
        D = invariant_D(A)
        out.append(CaseResult("theorem", n, k, seed, "D!=0", D != 0))
        out.append(CaseResult("theorem", n, k, seed, "D-invariant", D == D0,
                              "" if D == D0 else f"D={D}, expected {D0}"))
    return out


def _random_scalar(seed: int) -> Fraction:
    rng = random.Random(f"hyperdet:scalar:{seed}")
    num = 0
    while num == 0:
        num = rng.randint(-9, 9)
    return Fraction(num, rng.randint(1, 9))


def _weights(n: int, k: int, seeds: Iterable[int], corrupt: bool = False, **_) -> list[CaseResult]:
    alpha, beta = weights(n, k)
    deg = degree(n, k)
    if corrupt:
        alpha, beta, deg = alpha + 1, beta + 1, deg + 1
    V, I, W = 2 * n + 2, k, 2 * n + 2 * k
    out = []
    signs: dict[str, set[int]] = {"I-weight": {1, -1}, "V-weight": {1, -1}}
    for seed in seeds:
        A = random_tensor(n, k, seed)
        D = invariant_D(A)
        lam = _random_scalar(seed)
        ok = invariant_D(A.scale(lam)) == lam ** deg * D
        out.append(CaseResult("weights", n, k, seed, "degree", ok))
        s = random_symplectic(W, seed)
        ok = invariant_D(act(A, s=s)) == D
        out.append(CaseResult("weights", n, k, seed, "Sp-invariant", ok))
        for label, M, expo, kw in (
            ("I-weight", random_invertible(I, seed), alpha, "g"),
            ("V-weight", random_invertible(V, seed), beta, "h"),
        ):
            Dt = invariant_D(act(A, **{kw: M}))
            d = det(M)
            matches = {e for e in (1, -1) if Dt == d ** (e * expo) * D}
            signs[label] &= matches
            out.append(CaseResult("weights", n, k, seed, label, bool(matches),
                                  "" if matches else f"det={d}, ratio mismatch"))
    for label, remaining in signs.items():
        detail = f"sign={sorted(remaining, reverse=True)[0]:+d}" if remaining else "no consistent sign"
        out.append(CaseResult("weights", n, k, -1, f"{label}-sign", bool(remaining), detail))
    return out


def _pair(n: int, k: int, seeds: Iterable[int], **_) -> list[CaseResult]:
    base = special_symplectic(n, k)
    out = []
    for seed in seeds:
        P = pair_from_symplectic(orbit_sample(base, seed))
        out.append(CaseResult("pair", n, k, seed, "complex-pair", is_complex_pair(P)))
        out.append(CaseResult("pair", n, k, seed, "Dtilde!=0", invariant_Dtilde(P) != 0))
        for side in ("A", "B"):
            Q, _ = planted_degenerate_pair(n, k, seed, side)
            val = invariant_Dtilde(Q)
            out.append(CaseResult("pair", n, k, seed, f"Dtilde=0 ({side} degenerate)", val == 0,
                                  "" if val == 0 else f"Dtilde={val}"))
    return out


def _modp(n: int, k: int, seeds: Iterable[int], primes: tuple[int, ...] = DEFAULT_PRIMES, **_) -> list[CaseResult]:
    out = []
    for seed in seeds:
        A = random_tensor(n, k, seed)
        M = delta_matrix(A)
        D = det(M)
        for p in primes:
            got = det_mod_p(M, p)
            want = residue(D, p)
            out.append(CaseResult("modp", n, k, seed, f"p={p}", got == want,
                                  "" if got == want else f"{got} != {want}"))
    return out


SUITES: dict[str, Callable[..., list[CaseResult]]] = {
    "lemma": _lemma,
    "theorem": _theorem,
    "weights": _weights,
    "pair": _pair,
    "modp": _modp,
}

DEFAULT_FORMATS = tuple((n, k) for n in (0, 1, 2) for k in (1, 2, 3))


def run(
    suite: str,
    formats: Iterable[tuple[int, int]] = DEFAULT_FORMATS,
    seeds: Iterable[int] = range(5),
    *,
    corrupt: bool = False,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
) -> list[CaseResult]:
    """Run one suite (or ``"all"``) over every format and seed."""
    names = list(SUITES) if suite == "all" else [suite]
    if any(name not in SUITES for name in names):
        raise KeyError(suite)
    seeds = list(seeds)
    results: list[CaseResult] = []
    for name in names:
        for n, k in sorted(set(formats)):
            results.extend(SUITES[name](n, k, seeds, corrupt=corrupt, primes=primes))
    return results
