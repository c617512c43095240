# cython: language_level=3
"""Compiled integer kernels.

Same contracts as ``_kernels_py``. ``bareiss_det`` runs fraction-free
elimination on a flat array of GMP integers, so no Python objects are
allocated inside the triple loop. ``det_mod_p`` works on 64-bit residues with
128-bit products, which is overflow-free for every modulus below 2**62.
"""
from libc.stdlib cimport malloc, free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    int mpz_set_str(mpz_ptr, const char*, int)
    void mpz_set_si(mpz_ptr, long)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    char* mpz_get_str(char*, int, mpz_ptr)

cdef extern from *:
    """
    typedef unsigned long long hd_u64;
    static inline hd_u64 hd_mulmod(hd_u64 a, hd_u64 b, hd_u64 p) {
        return (hd_u64)(((unsigned __int128)a * b) % p);
    }
    """
    ctypedef unsigned long long hd_u64
    hd_u64 hd_mulmod(hd_u64 a, hd_u64 b, hd_u64 p) nogil

# |x| < 2**62 fits a C long on LP64 targets
cdef object _SMALL = 1 << 62


cdef int _load(mpz_ptr z, object x) except -1:
    if -_SMALL < x < _SMALL:
        mpz_set_si(z, <long>x)
    else:
        if mpz_set_str(z, format(x, "x").encode("ascii"), 16) != 0:
            raise ValueError("cannot convert integer entry")
    return 0


cdef object _store(mpz_ptr z):
    cdef char* buf = mpz_get_str(NULL, 16, z)
    cdef bytes s
    try:
        s = buf
    finally:
        free(buf)
    return int(s, 16)


def bareiss_det(rows):
    """Determinant of a square integer matrix (fraction-free elimination)."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k, nn = n * n
    cdef int sign = 1
    cdef __mpz_struct* a
    cdef mpz_t prev, tmp
    if n == 0:
        return 1
    a = <__mpz_struct*>malloc(nn * sizeof(__mpz_struct))
    if a == NULL:
        raise MemoryError()
    for i in range(nn):
        mpz_init(&a[i])
    mpz_init(prev)
    mpz_init(tmp)
    try:
        for i in range(n):
            row = rows[i]
            if len(row) != n:
                raise ValueError("matrix is not square")
            for j in range(n):
                _load(&a[i * n + j], row[j])
        mpz_set_si(prev, 1)
        for k in range(n - 1):
            if mpz_sgn(&a[k * n + k]) == 0:
                for i in range(k + 1, n):
                    if mpz_sgn(&a[i * n + k]) != 0:
                        for j in range(n):
                            mpz_swap(&a[k * n + j], &a[i * n + j])
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                if mpz_sgn(&a[i * n + k]) == 0:
                    for j in range(k + 1, n):
                        mpz_mul(tmp, &a[i * n + j], &a[k * n + k])
                        mpz_divexact(&a[i * n + j], tmp, prev)
                else:
                    for j in range(k + 1, n):
                        mpz_mul(tmp, &a[i * n + j], &a[k * n + k])
                        mpz_submul(tmp, &a[i * n + k], &a[k * n + j])
                        mpz_divexact(&a[i * n + j], tmp, prev)
            mpz_set(prev, &a[k * n + k])
        return sign * _store(&a[nn - 1])
    finally:
        for i in range(nn):
            mpz_clear(&a[i])
        free(a)
        mpz_clear(prev)
        mpz_clear(tmp)


cdef hd_u64 _powmod(hd_u64 b, hd_u64 e, hd_u64 p) nogil:
    cdef hd_u64 r = 1 % p
    while e:
        if e & 1:
            r = hd_mulmod(r, b, p)
        b = hd_mulmod(b, b, p)
        e >>= 1
    return r


def det_mod_p(rows, p):
    """Determinant modulo a prime ``p`` < 2**62 of a matrix with entries in [0, p)."""
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k, piv
    cdef hd_u64 P = p
    cdef hd_u64 det = 1 % P
    cdef hd_u64 inv, f, t
    cdef hd_u64* a
    if n == 0:
        return int(det)
    a = <hd_u64*>malloc(n * n * sizeof(hd_u64))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            row = rows[i]
            if len(row) != n:
                raise ValueError("matrix is not square")
            for j in range(n):
                a[i * n + j] = <hd_u64>row[j]
        with nogil:
            for k in range(n):
                piv = -1
                for i in range(k, n):
                    if a[i * n + k] != 0:
                        piv = i
                        break
                if piv < 0:
                    det = 0
                    break
                if piv != k:
                    for j in range(n):
                        t = a[k * n + j]
                        a[k * n + j] = a[piv * n + j]
                        a[piv * n + j] = t
                    if det != 0:
                        det = P - det
                det = hd_mulmod(det, a[k * n + k], P)
                inv = _powmod(a[k * n + k], P - 2, P)
                for i in range(k + 1, n):
                    if a[i * n + k] != 0:
                        f = hd_mulmod(a[i * n + k], inv, P)
                        for j in range(k + 1, n):
                            t = hd_mulmod(f, a[k * n + j], P)
                            a[i * n + j] = (a[i * n + j] + P - t) % P
        return int(det)
    finally:
        free(a)
