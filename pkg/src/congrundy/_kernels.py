"""Compiled decoder kernel for large graphs. Mirrors ``decode_connected``."""
import numpy as np
from numba import njit


@njit(cache=True)
def _before(keys, a, b):
    # heap order: larger key first, then smaller index
    return keys[a] > keys[b] or (keys[a] == keys[b] and a < b)


@njit(cache=True)
def connected_kernel(indptr, indices, keys, start):
    n = keys.shape[0]
    colors = np.zeros(n, dtype=np.int64)
    seq = np.empty(n, dtype=np.int64)
    reached = np.zeros(n, dtype=np.bool_)
    heap = np.empty(n, dtype=np.int64)
    maxdeg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        if d > maxdeg:
            maxdeg = d
    stamp = np.full(maxdeg + 2, -1, dtype=np.int64)
    size = 1
    heap[0] = start
    reached[start] = True
    count = 0
    best = 0
    while size > 0:
        v = heap[0]
        size -= 1
        if size > 0:
            last = heap[size]
            i = 0
            while True:
                c = 2 * i + 1
                if c >= size:
                    break
                if c + 1 < size and _before(keys, heap[c + 1], heap[c]):
                    c += 1
                if _before(keys, heap[c], last):
                    heap[i] = heap[c]
                    i = c
                else:
                    break
            heap[i] = last
        for j in range(indptr[v], indptr[v + 1]):
            col = colors[indices[j]]
            if col > 0 and col <= maxdeg + 1:
                stamp[col] = v
        col = 1
        while stamp[col] == v:
            col += 1
        colors[v] = col
        if col > best:
            best = col
        seq[count] = v
        count += 1
        for j in range(indptr[v], indptr[v + 1]):
            u = indices[j]
            if not reached[u]:
                reached[u] = True
                i = size
                size += 1
                while i > 0:
                    p = (i - 1) // 2
                    if _before(keys, u, heap[p]):
                        heap[i] = heap[p]
                        i = p
                    else:
                        break
                heap[i] = u
    return seq[:count], colors, best
