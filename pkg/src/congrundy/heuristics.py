"""Greedy sequence constructors for warm starts and baselines.

Every tie is broken by the smallest vertex index.
"""
from __future__ import annotations

from .coloring import UNCOLORED, Coloring, color_vertex, first_fit, is_connected_sequence
from .graph import Graph


class DisconnectedGraphError(ValueError):
    pass


def _require_connected(g: Graph) -> None:
    if not g.is_connected():
        raise DisconnectedGraphError("graph is disconnected; apply connectify first")


def connected_smallest_degree_first(g: Graph) -> list[int]:
    """Frontier growth picking the reached vertex of least residual degree."""
    _require_connected(g)
    if g.n == 0:
        return []
    deg = list(g.degrees)
    removed = bytearray(g.n)
    reached = bytearray(g.n)
    start = min(range(g.n), key=lambda v: (deg[v], v))
    queue = {start}
    reached[start] = 1
    seq = []
    while queue:
        v = min(queue, key=lambda u: (deg[u], u))
        queue.remove(v)
        seq.append(v)
        removed[v] = 1
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                if not reached[u]:
                    reached[u] = 1
                    queue.add(u)
    return seq


def connected_max_degree_first(g: Graph) -> list[int]:
    """Frontier growth picking the reached vertex of highest static degree."""
    _require_connected(g)
    if g.n == 0:
        return []
    deg = g.degrees
    start = min(range(g.n), key=lambda v: (-deg[v], v))
    reached = bytearray(g.n)
    reached[start] = 1
    frontier = {start}
    seq = []
    while frontier:
        v = min(frontier, key=lambda u: (-deg[u], u))
        frontier.remove(v)
        seq.append(v)
        for u in g.adj[v]:
            if not reached[u]:
                reached[u] = 1
                frontier.add(u)
    return seq


def dsatur_sequence(g: Graph, connected: bool = True) -> tuple[list[int], Coloring]:
    """DSatur order: highest saturation, then highest residual degree."""
    if connected:
        _require_connected(g)
    n = g.n
    colors = [UNCOLORED] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    res_deg = list(g.degrees)
    uncolored = set(range(n))
    seq = []
    while uncolored:
        if not seq:
            v = min(uncolored, key=lambda u: (-res_deg[u], u))
        else:
            v = min(uncolored, key=lambda u: (-len(sat[u]), -res_deg[u], u))
        uncolored.remove(v)
        c = color_vertex(g, v, colors)
        colors[v] = c
        seq.append(v)
        for u in g.adj[v]:
            sat[u].add(c)
            res_deg[u] -= 1
    if connected and not is_connected_sequence(g, seq):
        raise AssertionError("DSatur produced a disconnected sequence")
    return seq, Coloring(tuple(colors))


PLAIN_CRITERIA = ("max_degree_first", "adaptive_max_degree", "smallest_degree_last")


def plain_greedy_sequence(g: Graph, criterion: str) -> list[int]:
    n = g.n
    if criterion == "max_degree_first":
        deg = g.degrees
        return sorted(range(n), key=lambda v: (-deg[v], v))
    if criterion not in ("adaptive_max_degree", "smallest_degree_last"):
        raise ValueError(f"unknown criterion {criterion!r}")
    deg = list(g.degrees)
    alive = set(range(n))
    order = []
    pick_max = criterion == "adaptive_max_degree"
    while alive:
        if pick_max:
            v = min(alive, key=lambda u: (-deg[u], u))
        else:
            v = min(alive, key=lambda u: (deg[u], u))
        alive.remove(v)
        order.append(v)
        for u in g.adj[v]:
            if u in alive:
                deg[u] -= 1
    if not pick_max:
        order.reverse()
    return order


CONNECTED_HEURISTICS = {
    "cmindf": connected_smallest_degree_first,
    "cmdf": connected_max_degree_first,
    "dsatur": lambda g: dsatur_sequence(g)[0],
}

PLAIN_HEURISTICS = {
    "max_degree_first": lambda g: plain_greedy_sequence(g, "max_degree_first"),
    "adaptive_max_degree": lambda g: plain_greedy_sequence(g, "adaptive_max_degree"),
    "smallest_degree_last": lambda g: plain_greedy_sequence(g, "smallest_degree_last"),
    "dsatur": lambda g: dsatur_sequence(g, connected=False)[0],
}


def heuristic_sequence(g: Graph, name: str) -> list[int]:
    table = {**PLAIN_HEURISTICS, **CONNECTED_HEURISTICS}
    if name not in table:
        raise ValueError(f"unknown heuristic {name!r}; choose from {sorted(table)}")
    return table[name](g)


def warm_start(g: Graph, mode: str = "connected") -> tuple[list[int], Coloring, str]:
    """Best sequence over the mode's heuristic set (first listed wins ties)."""
    table = CONNECTED_HEURISTICS if mode == "connected" else PLAIN_HEURISTICS
    best = None
    for name, fn in table.items():
        seq = fn(g)
        col = first_fit(g, seq)
        if best is None or col.num_colors > best[1].num_colors:
            best = (seq, col, name)
    return best
