"""numpy implementations of the compiled kernels, used when the extension is unavailable.

Semantics (return values and tie-breaking) match ``_kernels.pyx`` exactly.
"""

import math

import numpy as np


def mixing_sweep(indptr, indices, data, Z):
    max_move = 0.0
    for i in range(Z.shape[0]):
        lo, hi = indptr[i], indptr[i + 1]
        if lo == hi:
            continue
        g = data[lo:hi] @ Z[indices[lo:hi]]
        norm = math.sqrt(float(g @ g))
        if norm == 0.0:
            continue
        g /= norm
        move = math.sqrt(float(((g - Z[i]) ** 2).sum()))
        Z[i] = g
        if move > max_move:
            max_move = move
    return max_move


def _max_offdiag(A):
    if A.shape[0] < 2:
        return 0.0
    return float(np.abs(A[np.triu_indices(A.shape[0], 1)]).max())


def jacobi_eigen(A, tol, max_sweeps):
    n = A.shape[0]
    V = np.eye(n)
    sweeps = 0
    while True:
        off = _max_offdiag(A)
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
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                x = A[:, p].copy()
                y = A[:, q]
                A[:, p] = c * x - s * y
                A[:, q] = s * x + c * y
                x = A[p, :].copy()
                y = A[q, :]
                A[p, :] = c * x - s * y
                A[q, :] = s * x + c * y
                A[p, q] = 0.0
                A[q, p] = 0.0
                x = V[:, p].copy()
                y = V[:, q]
                V[:, p] = c * x - s * y
                V[:, q] = s * x + c * y
    return A.diagonal().copy(), V, sweeps, off


def _bit_reverse(masks, n):
    out = np.zeros_like(masks)
    for b in range(n):
        out |= ((masks >> np.uint64(b)) & np.uint64(1)) << np.uint64(n - 1 - b)
    return out


def _subset_table(n, adjmask, weight_of):
    """Fill table[m] for every mask m < 2**n by adding the highest bit last.

    ``weight_of(h, rest)`` gives table[rest | 1 << h] - table[rest] for the
    block of masks ``rest`` < 2**h.
    """
    table = np.zeros(1 << n, dtype=np.int64)
    for h in range(n):
        rest = np.arange(1 << h, dtype=np.uint64)
        table[1 << h: 1 << (h + 1)] = table[: 1 << h] + weight_of(h, rest)
    return table


def cheeger_search(n, adjmask, deg):
    adjmask = np.asarray(adjmask, dtype=np.uint64)
    deg = np.asarray(deg, dtype=np.int64)

    def gain(h, rest):
        return deg[h] - 2 * np.bitwise_count(rest & adjmask[h]).astype(np.int64)

    cut = _subset_table(n, adjmask, gain)
    masks = np.arange(1 << n, dtype=np.uint64)
    size = np.bitwise_count(masks).astype(np.int64)
    ok = (size >= 1) & (size <= n // 2)
    masks, cut, size = masks[ok], cut[ok], size[ok]
    ratio = cut / size
    best = ratio.min()
    sel = ratio == best
    masks, cut, size = masks[sel], cut[sel], size[sel]
    sel = size == size.min()
    masks, cut, size = masks[sel], cut[sel], size[sel]
    # lexicographically smallest vertex tuple == largest bit-reversed mask
    k = int(np.argmax(_bit_reverse(masks, n)))
    return int(masks[k]), int(cut[k]), int(size[k])


def brute_force_search(n, indptr, indices, data):
    total = float(np.sum(data))
    if n <= 1:
        return 0, total
    pos = np.zeros(n, dtype=np.uint64)
    neg = np.zeros(n, dtype=np.uint64)
    rowsum = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for idx in range(indptr[v], indptr[v + 1]):
            j = int(indices[idx])
            rowsum[v] += int(data[idx])
            if data[idx] > 0:
                pos[v] |= np.uint64(1 << j)
            else:
                neg[v] |= np.uint64(1 << j)

    def gain(h, rest):
        # flipping vertex h to -1 with only lower vertices (in ``rest``) already -1
        inner = np.bitwise_count(rest & pos[h]).astype(np.int64) - np.bitwise_count(
            rest & neg[h]
        ).astype(np.int64)
        return -4 * (rowsum[h] - 2 * inner)

    table = _subset_table(n, None, gain) + int(round(total))
    even = table[::2]
    masks = np.arange(0, 1 << n, 2, dtype=np.uint64)
    best = even.max()
    cand = masks[even == best]
    k = int(np.argmax(_bit_reverse(cand, n)))
    return int(cand[k]), float(best)
