"""Random-key decoders and the inverse encoding of sequences.

Equal keys are broken by the smaller vertex index.
"""
from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Sequence

import numpy as np

from .coloring import UNCOLORED, Coloring
from .graph import Graph

try:
    from ._kernels import connected_kernel as _kernel
except ImportError:  # numba missing: the pure Python path is used everywhere
    _kernel = None

# Below this size the interpreter loop beats the call overhead of the kernel.
KERNEL_MIN_N = 2000


@dataclass(frozen=True)
class Decoded:
    sequence: list[int]
    colors: list[int]
    value: int

    @property
    def coloring(self) -> Coloring:
        return Coloring(tuple(self.colors))


def decode_connected(g: Graph, x: Sequence[float], compiled: bool | None = None) -> Decoded:
    """Grow a connected sequence from the highest key, always dequeuing the
    reached vertex of highest key and coloring it first-fit.

    Runs in O(n log n + m). ``compiled`` forces (True) or forbids (False)
    the numba kernel; by default it is used for large graphs.
    """
    n = g.n
    keys = np.asarray(x, dtype=float)
    if keys.shape != (n,):
        raise ValueError("key vector length must equal the vertex count")
    if n == 0:
        return Decoded([], [], 0)
    start = int(np.argmax(keys))  # first maximum, so the lowest index wins ties
    if compiled is None:
        compiled = n >= KERNEL_MIN_N and _kernel is not None
    if compiled:
        indptr, indices = g.csr
        seq_a, colors_a, value = _kernel(indptr, indices, keys, start)
        if seq_a.shape[0] != n:
            raise ValueError("graph is disconnected; the connected decoder cannot reach every vertex")
        return Decoded(seq_a.tolist(), colors_a.tolist(), int(value))
    neg = (-keys).tolist()
    adj = g.adj
    colors = [UNCOLORED] * n
    get = colors.__getitem__
    reached = [False] * n
    reached[start] = True
    heap = [(neg[start], start)]
    seq = []
    append = seq.append
    best = 0
    while heap:
        v = heappop(heap)[1]
        nbrs = adj[v]
        used = set(map(get, nbrs))
        c = 1
        while c in used:
            c += 1
        colors[v] = c
        if c > best:
            best = c
        append(v)
        for u in nbrs:
            if not reached[u]:
                reached[u] = True
                heappush(heap, (neg[u], u))
    if len(seq) != n:
        raise ValueError("graph is disconnected; the connected decoder cannot reach every vertex")
    return Decoded(seq, colors, best)


def decode_plain(g: Graph, x: Sequence[float]) -> Decoded:
    """Sequence by decreasing key, colored first-fit (no connectivity)."""
    n = g.n
    keys = np.asarray(x, dtype=float)
    if keys.shape != (n,):
        raise ValueError("key vector length must equal the vertex count")
    seq = np.lexsort((np.arange(n), -keys)).tolist()
    adj = g.adj
    colors = [UNCOLORED] * n
    best = 0
    for v in seq:
        used = {colors[u] for u in adj[v]}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
        if c > best:
            best = c
    return Decoded(seq, colors, best)


DECODERS = {"connected": decode_connected, "plain": decode_plain}


def decode(g: Graph, x: Sequence[float], mode: str = "connected") -> Decoded:
    return DECODERS[mode](g, x)


def encode_sequence(seq: Sequence[int]) -> np.ndarray:
    """Rank keys: the i-th vertex of ``seq`` (1-based) gets (n - i + 1)/(n + 1)."""
    n = len(seq)
    keys = np.empty(n)
    keys[np.asarray(seq, dtype=np.int64)] = (n - np.arange(n)) / (n + 1)
    return keys
