"""First-fit coloring over vertex sequences and related checks.

Colors are 1-based. A color array is indexed by vertex and holds
``UNCOLORED`` for vertices that have not been colored yet.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph

UNCOLORED = 0


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=0)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def is_complete(self) -> bool:
        return UNCOLORED not in self.colors

    def to_json(self) -> str:
        return json.dumps(list(self.colors))

    def to_dimacs(self) -> str:
        return "".join(f"v {v + 1} {c}\n" for v, c in enumerate(self.colors))


def color_vertex(g: Graph, v: int, colors: Sequence[int]) -> int:
    """Smallest positive color absent among the colored neighbors of ``v``."""
    used = {colors[u] for u in g.adj[v]}
    c = 1
    while c in used:
        c += 1
    return c


def first_fit_colors(g: Graph, seq: Sequence[int]) -> list[int]:
    colors = [UNCOLORED] * g.n
    adj = g.adj
    for v in seq:
        used = {colors[u] for u in adj[v]}
        c = 1
        while c in used:
            c += 1
        colors[v] = c
    return colors


def first_fit(g: Graph, seq: Sequence[int]) -> Coloring:
    check_permutation(seq, g.n)
    return Coloring(tuple(first_fit_colors(g, seq)))


def check_permutation(seq: Sequence[int], n: int) -> None:
    if len(seq) != n or sorted(seq) != list(range(n)):
        raise ValueError("sequence is not a permutation of the vertices")


def is_connected_sequence(g: Graph, seq: Sequence[int]) -> bool:
    """True iff every vertex after the first has an earlier neighbor."""
    seen = bytearray(g.n)
    for i, v in enumerate(seq):
        if i and not any(seen[u] for u in g.adj[v]):
            return False
        seen[v] = 1
    return True


def first_disconnected_position(g: Graph, seq: Sequence[int]) -> int | None:
    seen = bytearray(g.n)
    for i, v in enumerate(seq):
        if i and not any(seen[u] for u in g.adj[v]):
            return i
        seen[v] = 1
    return None


def validate_grundy(g: Graph, coloring: Coloring | Sequence[int]) -> bool:
    """Check properness and the Grundy property directly on the coloring."""
    colors = coloring.colors if isinstance(coloring, Coloring) else coloring
    for v, nbrs in enumerate(g.adj):
        c = colors[v]
        if c < 1:
            return False
        seen = set()
        for u in nbrs:
            if colors[u] == c:
                return False
            seen.add(colors[u])
        if any(k not in seen for k in range(1, c)):
            return False
    return True


@dataclass(frozen=True)
class PositionIndex:
    """Positional lookups over a sequence (0-based positions).

    ``first[v]`` is the position of the earliest neighbor of ``v`` in the
    sequence (-1 for isolated vertices); ``count[v]`` is the number of
    neighbors placed before ``v``.
    """

    pos: list[int]
    first: list[int]
    count: list[int]


def build_position_index(g: Graph, seq: Sequence[int]) -> PositionIndex:
    n = g.n
    pos = [0] * n
    for i, v in enumerate(seq):
        pos[v] = i
    first = [-1] * n
    count = [0] * n
    for v in seq:
        p = pos[v]
        for u in g.adj[v]:
            if first[u] < 0:
                first[u] = p
            if pos[u] > p:
                count[u] += 1
    return PositionIndex(pos, first, count)


def coloring_from_json(text: str) -> Coloring:
    return Coloring(tuple(int(c) for c in json.loads(text)))
