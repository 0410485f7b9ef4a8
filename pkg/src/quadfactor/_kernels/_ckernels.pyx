# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over int64 matrices.

Same contracts as ``_pykernels``. Fraction-free elimination raises
OverflowError instead of wrapping when an operand exceeds 2**31; callers
then fall back to the Python version.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport llabs

ctypedef long long i64

cdef i64 GUARD = 1LL << 31


cdef inline int _big(i64 a, i64 b, i64 c, i64 d) noexcept nogil:
    return llabs(a) >= GUARD or llabs(b) >= GUARD or llabs(c) >= GUARD or llabs(d) >= GUARD


def det_bareiss(A):
    arr = np.array(A, dtype=np.int64, order="C", copy=True)
    if arr.size == 0 and arr.ndim != 2:
        arr = np.zeros((0, 0), dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    if arr.shape[0] == 0:
        return 1
    cdef i64[:, ::1] M = arr
    cdef Py_ssize_t n = M.shape[0]
    cdef Py_ssize_t i, j, k, r
    cdef i64 prev = 1, pk, a, tmp
    cdef int sign = 1
    for k in range(n - 1):
        if M[k, k] == 0:
            r = -1
            for i in range(k + 1, n):
                if M[i, k] != 0:
                    r = i
                    break
            if r < 0:
                return 0
            for j in range(n):
                tmp = M[k, j]
                M[k, j] = M[r, j]
                M[r, j] = tmp
            sign = -sign
        pk = M[k, k]
        for i in range(k + 1, n):
            a = M[i, k]
            for j in range(k + 1, n):
                if _big(M[i, j], pk, a, M[k, j]):
                    raise OverflowError("int64 guard exceeded")
                M[i, j] = (M[i, j] * pk - a * M[k, j]) // prev
        prev = pk
    return sign * M[n - 1, n - 1]


def rank_bareiss(A):
    arr = np.array(A, dtype=np.int64, order="C", copy=True)
    if arr.ndim != 2 or arr.size == 0:
        return 0
    cdef i64[:, ::1] M = arr
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef i64 prev = 1, pv, a, tmp
    for c in range(cols):
        p = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(cols):
                tmp = M[r, j]
                M[r, j] = M[p, j]
                M[p, j] = tmp
        pv = M[r, c]
        for i in range(r + 1, rows):
            a = M[i, c]
            for j in range(c + 1, cols):
                if _big(M[i, j], pv, a, M[r, j]):
                    raise OverflowError("int64 guard exceeded")
                M[i, j] = (M[i, j] * pv - a * M[r, j]) // prev
            M[i, c] = 0
        prev = pv
        r += 1
        if r == rows:
            break
    return r


cdef i64 _inv_mod(i64 a, i64 p) noexcept nogil:
    cdef i64 result = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


def rank_mod_p(A, long long p):
    if p < 2 or p >= GUARD:
        raise ValueError("modulus must be a prime below 2**31")
    arr = np.array(A, dtype=np.int64, order="C", copy=True)
    if arr.ndim != 2 or arr.size == 0:
        return 0
    arr %= p
    cdef i64[:, ::1] M = arr
    cdef Py_ssize_t rows = M.shape[0], cols = M.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, a, tmp
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = M[r, j]
                M[r, j] = M[piv, j]
                M[piv, j] = tmp
        inv = _inv_mod(M[r, c], p)
        for j in range(c, cols):
            M[r, j] = (M[r, j] * inv) % p
        for i in range(rows):
            if i != r and M[i, c] != 0:
                a = M[i, c]
                for j in range(c, cols):
                    M[i, j] = ((M[i, j] - a * M[r, j]) % p + p) % p
        r += 1
        if r == rows:
            break
    return r


cdef i64 _walk(i64[:, ::1] M, Py_ssize_t i, Py_ssize_t n, unsigned char* used, long inversions, i64 weight):
    cdef i64 total = 0
    cdef Py_ssize_t j, t
    cdef long above
    if i == n:
        return -weight if inversions & 1 else weight
    for j in range(n):
        if M[i, j] != 0 and not used[j]:
            above = 0
            for t in range(j + 1, n):
                above += used[t]
            used[j] = 1
            total += _walk(M, i + 1, n, used, inversions + above, weight * M[i, j])
            used[j] = 0
    return total


def signed_matchings(A):
    arr = np.array(A, dtype=np.int64, order="C", copy=True)
    if arr.size == 0:
        return 1
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("signed matchings need a square matrix")
    if np.abs(arr).max() > 1:
        raise OverflowError("compiled matching sum handles 0/1/-1 entries only")
    cdef i64[:, ::1] M = arr
    cdef Py_ssize_t n = M.shape[0]
    used = bytearray(n)
    cdef unsigned char* u = used
    return _walk(M, 0, n, u, 0, 1)
