from __future__ import annotations

import itertools
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from congrundy.coloring import first_fit_colors
from congrundy.graph import Graph, InstanceSpec, connectify, generate

TESTS = Path(__file__).parent
LETTERS = "abcdefgh"


def lettered(n: int, edges: str) -> Graph:
    """Graph on vertices a, b, ... from a string like 'ab bc'."""
    return Graph.from_edges(n, [(LETTERS.index(e[0]), LETTERS.index(e[1])) for e in edges.split()])


def letters(seq: str) -> list[int]:
    return [LETTERS.index(ch) for ch in seq]


EAR5 = lettered(6, "ab bc cd de ea af bf")
PAW = lettered(4, "ab bc bd cd")
SPIDER6 = lettered(6, "ab ac ad cd ce ef")
PATH6 = lettered(6, "ab bc cd de ef")
# two triangles sharing edge 2-3, a 5-cycle 3-5-6-8-4 and a pendant 7 at 5
DIAMOND8 = Graph.from_edges(8, [(a - 1, b - 1) for a, b in
                            [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 5), (5, 6), (6, 8), (4, 8), (5, 7)]])


def random_connected(seed: int, n: int, p: float | None = None) -> Graph:
    rng = np.random.default_rng(seed)
    if p is None:
        p = float(rng.uniform(0.1, 0.8))
    return connectify(generate(InstanceSpec("random", n, p, seed)))


def random_bipartite_connected(seed: int, n: int) -> Graph:
    rng = np.random.default_rng(seed)
    return connectify(generate(InstanceSpec("bipartite", n, float(rng.uniform(0.15, 0.7)), seed)))


def random_connected_sequence(g: Graph, rng: np.random.Generator) -> list[int]:
    start = int(rng.integers(g.n))
    seq, seen = [start], {start}
    frontier = set(g.adj[start])
    while frontier:
        v = sorted(frontier)[int(rng.integers(len(frontier)))]
        frontier.discard(v)
        seq.append(v)
        seen.add(v)
        frontier.update(u for u in g.adj[v] if u not in seen)
    return seq


# Oracles independent of the exact module: plain permutation enumeration.

def enum_gamma(g: Graph, connected: bool) -> int:
    best = 0
    for perm in itertools.permutations(range(g.n)):
        if connected and any(not any(u in perm[:i] for u in g.adj[v]) for i, v in enumerate(perm) if i):
            continue
        best = max(best, max(first_fit_colors(g, perm), default=0))
    return best


def enum_chromatic(g: Graph) -> int:
    for k in range(1, g.n + 1):
        for col in itertools.product(range(k), repeat=g.n):
            if all(col[u] != col[v] for u, v in g.edges()):
                return k
    return g.n


@st.composite
def connected_graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return connectify(Graph.from_edges(n, chosen))


@pytest.fixture
def solver_command() -> str:
    return f"{sys.executable} {TESTS / 'milp_solver.py'} {{model}} {{mst}} {{solution}} {{timeout}}"
