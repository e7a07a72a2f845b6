"""Move neighborhood with incremental recoloring and first-improvement search.

A move takes one vertex ``v`` and places it at the former position of one of
its neighbors ``u``: before ``u`` when ``u`` precedes ``v`` (left move), after
``u`` otherwise (right move). Positions are 0-based throughout.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .coloring import (UNCOLORED, Coloring, PositionIndex, build_position_index, color_vertex,
                       first_fit_colors)
from .decoders import decode
from .graph import Graph


def can_move_left(g: Graph, idx: PositionIndex, u: int, v: int) -> bool:
    """Sufficient test that moving ``v`` to ``u``'s position keeps connectivity."""
    pu = idx.pos[u]
    return pu == 0 or idx.first[v] < pu


def can_move_right(g: Graph, idx: PositionIndex, u: int, v: int) -> bool:
    """Sufficient test that moving ``v`` just after ``u`` keeps connectivity.

    Every neighbor ``w`` of ``v`` inside the window must keep an earlier
    neighbor once ``v`` leaves: either one before ``v``, or ``v`` is its first
    neighbor but not its only preceding one.
    """
    pos, first, count = idx.pos, idx.first, idx.count
    pv, pu = pos[v], pos[u]
    for w in g.adj[v]:
        pw = pos[w]
        if pv < pw <= pu:
            fw = first[w]
            if not (fw < pv or (fw == pv and count[w] > 1)):
                return False
    return True


def move(seq: Sequence[int], v: int, new_position: int) -> list[int]:
    """Remove ``v`` and reinsert it so it occupies index ``new_position``."""
    out = list(seq)
    out.remove(v)
    out.insert(new_position, v)
    return out


def color_sequence(g: Graph, seq: Sequence[int], colors: Sequence[int], v: int,
                   n_position: int, f_position: int) -> tuple[list[int], list[int], int]:
    """Apply a move and recolor only what can change.

    Colors at positions ``<= f_position`` are copied. Inside the window up to
    ``n_position`` only ``v`` and its neighbors are recolored until one of
    them differs from before; from then on every vertex is recolored.
    Outside the window, while nothing has changed, colors are copied.
    """
    new_seq = move(seq, v, n_position)
    new_colors = [UNCOLORED] * g.n
    for p in range(f_position + 1):
        w = new_seq[p]
        new_colors[w] = colors[w]
    nbrs = g.neighbor_sets[v]
    changed = False
    for p in range(f_position + 1, len(new_seq)):
        w = new_seq[p]
        if changed:
            new_colors[w] = color_vertex(g, w, new_colors)
        elif p > n_position or (w != v and w not in nbrs):
            new_colors[w] = colors[w]
        else:
            c = color_vertex(g, w, new_colors)
            new_colors[w] = c
            if c != colors[w]:
                changed = True
    return new_seq, new_colors, max(new_colors, default=0)


@dataclass
class SearchResult:
    sequence: list[int]
    colors: list[int]
    value: int
    moves: int = 0

    @property
    def coloring(self) -> Coloring:
        return Coloring(tuple(self.colors))


def improve_sequence(g: Graph, seq: Sequence[int], colors: Sequence[int] | None = None,
                     mode: str = "connected", deadline: float | None = None) -> SearchResult:
    """First-improvement descent over the move neighborhood.

    Vertices are scanned in increasing index, then their neighbors in
    increasing index. ``deadline`` is a ``time.perf_counter`` value checked
    between vertices.
    """
    seq = list(seq)
    colors = list(colors) if colors is not None else first_fit_colors(g, seq)
    value = max(colors, default=0)
    gated = mode == "connected"
    moves = 0
    improved = True
    while improved:
        improved = False
        idx = build_position_index(g, seq)
        pos = idx.pos
        for v in range(g.n):
            if deadline is not None and time.perf_counter() > deadline:
                return SearchResult(seq, colors, value, moves)
            for u in g.adj[v]:
                pu, pv = pos[u], pos[v]
                if pu < pv:
                    if gated and not can_move_left(g, idx, u, v):
                        continue
                    cand = color_sequence(g, seq, colors, v, pu, pu - 1)
                else:
                    if gated and not can_move_right(g, idx, u, v):
                        continue
                    cand = color_sequence(g, seq, colors, v, pu, pv - 1)
                if cand[2] > value:
                    seq, colors, value = cand
                    moves += 1
                    improved = True
                    break
            if improved:
                break
    return SearchResult(seq, colors, value, moves)


def local_search(g: Graph, x: Sequence[float], mode: str = "connected",
                 deadline: float | None = None) -> SearchResult:
    """Decode ``x`` in ``mode`` and descend to a local optimum."""
    d = decode(g, x, mode)
    return improve_sequence(g, d.sequence, d.colors, mode=mode, deadline=deadline)
