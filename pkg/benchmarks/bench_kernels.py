"""Compare the compiled and pure-Python determinant kernels on Delta matrices.

    python benchmarks/bench_kernels.py [--repeat 3]

Every timing uses the same integer matrices, and both kernels must return
identical values.
"""
from __future__ import annotations

import argparse
import time

from hyperdet._backend import available_backends
from hyperdet.factory import orbit_sample, random_tensor, special_symplectic
from hyperdet.invariants import delta_matrix
from hyperdet.linalg import check_modulus

CASES = [
    ("orbit", 1, 3),
    ("orbit", 2, 3),
    ("orbit", 2, 4),
    ("random", 1, 4),
    ("random", 2, 4),
]
PRIME = 1000003


def integer_rows(kind: str, n: int, k: int) -> list[list[int]]:
    A = orbit_sample(special_symplectic(n, k), 1) if kind == "orbit" else random_tensor(n, k, 1)
    return [[int(x) for x in row] for row in delta_matrix(A).rows]


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    check_modulus(PRIME)
    backends = available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; only the Python fallback is available")
    names = sorted(backends)
    header = f"{'case':<16}{'size':>6}" + "".join(f"{name + ' exact':>16}{name + ' mod p':>16}" for name in names)
    print(header)
    for kind, n, k in CASES:
        rows = integer_rows(kind, n, k)
        reduced = [[x % PRIME for x in row] for row in rows]
        line = f"{kind} n={n} k={k}".ljust(16) + f"{len(rows):>6}"
        exact, modular = set(), set()
        for name in names:
            mod = backends[name]
            t_exact, v = best_of(lambda: mod.bareiss_det(rows), args.repeat)
            t_mod, m = best_of(lambda: mod.det_mod_p(reduced, PRIME), args.repeat)
            exact.add(v)
            modular.add(m)
            line += f"{t_exact * 1e3:>13.2f} ms{t_mod * 1e3:>13.2f} ms"
        if len(exact) != 1 or len(modular) != 1:
            raise SystemExit(f"kernels disagree on {kind} n={n} k={k}")
        print(line)


if __name__ == "__main__":
    main()
