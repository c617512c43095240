"""Pure-Python integer kernels.

Reference implementations of the hot loops. ``_kernels.pyx`` mirrors these
signatures exactly; ``hyperdet._backend`` picks one at import time.
"""
from __future__ import annotations


def bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination.

    Pivot rule: the first nonzero entry at or below the diagonal in the
    current column. Every division is exact (Sylvester's identity).
    """
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = a[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            if aik == 0:
                for j in range(k + 1, n):
                    ri[j] = ri[j] * akk // prev
            else:
                for j in range(k + 1, n):
                    ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det_mod_p(rows: list[list[int]], p: int) -> int:
    """Determinant modulo a prime ``p`` of a matrix with entries in [0, p)."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = 1
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if a[i][k]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = p - det if det else 0
        rk = a[k]
        det = det * rk[k] % p
        inv = pow(rk[k], p - 2, p)
        for i in range(k + 1, n):
            ri = a[i]
            if ri[k]:
                f = ri[k] * inv % p
                for j in range(k + 1, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return det
