# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular row reduction (hot kernel of the exact linear algebra)."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef i64 _inv(i64 a, i64 p) noexcept nogil:
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


cdef int _reduce(i64 *a, int m, int n, i64 p, int *piv) noexcept nogil:
    cdef int r = 0, c, i, j, k
    cdef i64 inv, f, negf
    cdef i64 *row
    cdef i64 *other
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if a[i * n + c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, n):
                f = a[k * n + j]
                a[k * n + j] = a[r * n + j]
                a[r * n + j] = f
        row = a + r * n
        inv = _inv(row[c], p)
        if inv != 1:
            for j in range(c, n):
                if row[j] != 0:
                    row[j] = row[j] * inv % p
        for i in range(m):
            if i == r:
                continue
            other = a + i * n
            f = other[c]
            if f != 0:
                negf = p - f
                for j in range(c, n):
                    if row[j] != 0:
                        other[j] = (other[j] + negf * row[j]) % p
        piv[r] = c
        r += 1
    return r


cdef i64 *_load(rows, int m, int n, i64 p) except NULL:
    cdef i64 *a = <i64 *> malloc(max(m * n, 1) * sizeof(i64))
    if a == NULL:
        raise MemoryError()
    cdef int i, j
    for i in range(m):
        row = rows[i]
        if len(row) != n:
            free(a)
            raise ValueError("ragged matrix")
        for j in range(n):
            a[i * n + j] = row[j] % p
    return a


def rref_mod(rows, i64 p):
    """Reduced row echelon form of an integer matrix over GF(p), p < 2**31."""
    cdef int m = len(rows)
    cdef int n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return [], []
    cdef i64 *a = _load(rows, m, n, p)
    cdef int *piv = <int *> malloc(min(m, n) * sizeof(int))
    cdef int r, i, j
    try:
        with nogil:
            r = _reduce(a, m, n, p, piv)
        out = [[a[i * n + j] for j in range(n)] for i in range(r)]
        pivots = [piv[i] for i in range(r)]
    finally:
        free(a)
        free(piv)
    return out, pivots


def rank_mod(rows, i64 p):
    """Rank of an integer matrix over GF(p), p < 2**31."""
    cdef int m = len(rows)
    cdef int n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return 0
    cdef i64 *a = _load(rows, m, n, p)
    cdef int *piv = <int *> malloc(min(m, n) * sizeof(int))
    cdef int r
    try:
        with nogil:
            r = _reduce(a, m, n, p, piv)
    finally:
        free(a)
        free(piv)
    return r
