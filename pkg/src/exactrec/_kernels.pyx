# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. ``_pykernels`` mirrors every function here."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def mixing_sweep(const int64_t[::1] indptr, const int64_t[::1] indices,
                 const double[::1] data, double[:, ::1] Z):
    """One cyclic pass of exact row maximizations; returns max row movement."""
    cdef Py_ssize_t n = Z.shape[0], k = Z.shape[1]
    cdef Py_ssize_t i, j, t, idx
    cdef double w, norm, move, max_move = 0.0
    cdef double[::1] g = np.empty(k, dtype=np.float64)
    with nogil:
        for i in range(n):
            for t in range(k):
                g[t] = 0.0
            for idx in range(indptr[i], indptr[i + 1]):
                j = indices[idx]
                w = data[idx]
                for t in range(k):
                    g[t] += w * Z[j, t]
            norm = 0.0
            for t in range(k):
                norm += g[t] * g[t]
            if norm == 0.0:
                continue
            norm = sqrt(norm)
            move = 0.0
            for t in range(k):
                w = g[t] / norm
                move += (w - Z[i, t]) * (w - Z[i, t])
                Z[i, t] = w
            move = sqrt(move)
            if move > max_move:
                max_move = move
    return max_move


def jacobi_eigen(double[:, ::1] A, double tol, int max_sweeps):
    """Cyclic Jacobi on a symmetric matrix, overwriting ``A``.

    Returns (diagonal, eigenvector matrix, sweeps used, final max |off-diagonal|).
    """
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t p, q, r
    cdef double apq, theta, t, c, s, x, y, off
    cdef int sweeps = 0
    V_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] V = V_arr
    with nogil:
        while True:
            off = 0.0
            for p in range(n):
                for q in range(p + 1, n):
                    if fabs(A[p, q]) > off:
                        off = fabs(A[p, q])
            if off <= tol or sweeps >= max_sweeps:
                break
            sweeps += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if apq == 0.0:
                        continue
                    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                    if theta >= 0.0:
                        t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                    else:
                        t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for r in range(n):
                        x = A[r, p]
                        y = A[r, q]
                        A[r, p] = c * x - s * y
                        A[r, q] = s * x + c * y
                    for r in range(n):
                        x = A[p, r]
                        y = A[q, r]
                        A[p, r] = c * x - s * y
                        A[q, r] = s * x + c * y
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for r in range(n):
                        x = V[r, p]
                        y = V[r, q]
                        V[r, p] = c * x - s * y
                        V[r, q] = s * x + c * y
    diag = np.array([A[r, r] for r in range(n)], dtype=np.float64)
    return diag, V_arr, sweeps, off


def cheeger_search(int n, const uint64_t[::1] adjmask, const int64_t[::1] deg):
    """Gray-code scan of all vertex subsets with 1 <= |S| <= n // 2.

    Returns (best_mask, best_cut, best_size) minimizing cut/|S|, then |S|,
    then the lexicographically smallest sorted vertex tuple.
    """
    cdef uint64_t mask = 0, best_mask = 0, diff
    cdef uint64_t i, total = (<uint64_t>1) << n
    cdef int64_t cut = 0, size = 0, best_cut = -1, best_size = 1, lhs, rhs
    cdef int v, half = n // 2
    with nogil:
        i = 1
        while i < total:
            v = __builtin_ctzll(i)
            if mask & ((<uint64_t>1) << v):
                mask ^= (<uint64_t>1) << v
                cut -= deg[v] - 2 * __builtin_popcountll(adjmask[v] & mask)
                size -= 1
            else:
                cut += deg[v] - 2 * __builtin_popcountll(adjmask[v] & mask)
                mask ^= (<uint64_t>1) << v
                size += 1
            i += 1
            if size < 1 or size > half:
                continue
            if best_cut < 0:
                best_cut = cut
                best_size = size
                best_mask = mask
                continue
            lhs = cut * best_size
            rhs = best_cut * size
            if lhs < rhs or (lhs == rhs and (size < best_size or (
                    size == best_size and (mask & ((mask ^ best_mask) & (~(mask ^ best_mask) + 1))) != 0))):
                best_cut = cut
                best_size = size
                best_mask = mask
    return int(best_mask), int(best_cut), int(best_size)


def brute_force_search(int n, const int64_t[::1] indptr, const int64_t[::1] indices,
                       const double[::1] data):
    """Gray-code maximization of y'Xy over y in {+-1}^n with y_0 = +1.

    Bit i of the returned mask set means y_i = -1. Ties go to the
    lexicographically smallest labeling with -1 < +1.
    """
    cdef uint64_t mask = 0, best_mask = 0, diff, i, total
    cdef double value = 0.0, best_value, acc
    cdef Py_ssize_t idx
    cdef int v
    s_arr = np.ones(n, dtype=np.float64)
    cdef double[::1] s = s_arr
    for idx in range(indptr[n]):
        value += data[idx]
    best_value = value
    if n <= 1:
        return 0, value
    total = (<uint64_t>1) << (n - 1)
    with nogil:
        i = 1
        while i < total:
            v = __builtin_ctzll(i) + 1
            acc = 0.0
            for idx in range(indptr[v], indptr[v + 1]):
                acc += data[idx] * s[indices[idx]]
            value -= 4.0 * s[v] * acc
            s[v] = -s[v]
            mask ^= (<uint64_t>1) << v
            i += 1
            if value > best_value:
                best_value = value
                best_mask = mask
            elif value == best_value:
                diff = mask ^ best_mask
                if mask & (diff & (~diff + 1)):
                    best_mask = mask
    return int(best_mask), best_value
