"""Compiled inner loops (numba).

Everything here works on plain integer arrays so the calling modules keep
their numpy-level contracts. Bit rows are little-endian: bit ``j`` of a row
lives in word ``j // 64`` at position ``j % 64``.
"""

import os

os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

import numba  # noqa: E402
import numpy as np  # noqa: E402
from numba import njit, prange  # noqa: E402

WORD_BITS = 64

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def set_threads(k):
    """Cap worker threads for the parallel kernels; returns the value in effect."""
    k = max(1, min(int(k), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(k)
    return k


@njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(parallel=True, cache=True)
def bfs_block(indptr, indices, sources, out):
    """BFS from each ``sources[i]`` into ``out[i]`` (pre-filled with -1)."""
    n = out.shape[1]
    for i in prange(sources.shape[0]):
        row = out[i]
        queue = np.empty(n, np.int64)
        s = sources[i]
        row[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = row[v] + 1
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                if row[u] < 0:
                    row[u] = dv
                    queue[tail] = u
                    tail += 1


@njit(parallel=True, cache=True)
def pack_level(dist_block, k, out):
    """Set bit ``(i, j)`` of ``out`` wherever ``dist_block[i, j] == k``."""
    rows, n = dist_block.shape
    for i in prange(rows):
        for j in range(n):
            if dist_block[i, j] == k:
                out[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)


@njit(parallel=True, cache=True)
def row_popcounts(words):
    rows, nw = words.shape
    out = np.zeros(rows, np.int64)
    for i in prange(rows):
        acc = 0
        for t in range(nw):
            acc += _popcount64(words[i, t])
        out[i] = acc
    return out


@njit(parallel=True, cache=True)
def masked_row_sums(words, weights):
    """``out[i] = sum of weights[j]`` over set bits ``j`` of row ``i``."""
    rows, nw = words.shape
    out = np.zeros(rows, np.int64)
    for i in prange(rows):
        acc = 0
        for t in range(nw):
            w = words[i, t]
            base = t << 6
            while w != np.uint64(0):
                low = w & (~w + np.uint64(1))
                acc += weights[base + _popcount64(low - np.uint64(1))]
                w ^= low
        out[i] = acc
    return out


@njit(parallel=True, cache=True)
def hamming_matrix(words):
    """All-pairs XOR-popcount distances between the rows of ``words``."""
    rows, nw = words.shape
    out = np.zeros((rows, rows), np.int64)
    for i in prange(rows):
        for j in range(i + 1, rows):
            acc = 0
            for t in range(nw):
                acc += _popcount64(words[i, t] ^ words[j, t])
            out[i, j] = acc
            out[j, i] = acc
    return out
