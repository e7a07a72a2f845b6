"""Simple undirected graphs, DIMACS I/O and the benchmark instance generators.

Vertices are the integers ``0..n-1``. DIMACS files and every other
user-facing serialization use the conventional 1-based labels.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass
from functools import cached_property
from typing import Iterable, Iterator, TextIO

import numpy as np


class ParseError(ValueError):
    """Malformed DIMACS input."""


class Graph:
    """Immutable simple undirected graph stored as sorted adjacency tuples."""

    __slots__ = ("n", "adj", "m", "__dict__")

    def __init__(self, n: int, adj: Iterable[Iterable[int]]):
        self.n = int(n)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(set(a))) for a in adj)
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        self.m = sum(len(a) for a in self.adj) // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    @classmethod
    def from_edge_arrays(cls, n: int, us: np.ndarray, vs: np.ndarray) -> "Graph":
        """Bulk constructor for large graphs; drops self-loops and duplicates."""
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        keep = us != vs
        a = np.concatenate([us[keep], vs[keep]])
        b = np.concatenate([vs[keep], us[keep]])
        pairs = np.unique(a * n + b)
        a, b = pairs // n, pairs % n
        bounds = np.searchsorted(a, np.arange(n + 1))
        bl = b.tolist()
        g = cls.__new__(cls)
        g.n = n
        g.adj = tuple(tuple(bl[bounds[i]:bounds[i + 1]]) for i in range(n))
        g.m = len(bl) // 2
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays of the adjacency, neighbors sorted."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        indices = np.fromiter((u for a in self.adj for u in a), dtype=np.int64, count=int(indptr[-1]))
        return indptr, indices

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def validate(self) -> None:
        """Raise ``ValueError`` if symmetry or simplicity is violated."""
        sets = self.neighbor_sets
        for v, nbrs in enumerate(self.adj):
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"duplicate neighbor at vertex {v}")
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if v not in sets[u]:
                    raise ValueError(f"asymmetric edge {v}->{u}")
        if 2 * self.m != sum(self.degrees):
            raise ValueError("edge count mismatch")


def complete_graph(n: int) -> Graph:
    return Graph(n, [[u for u in range(n) if u != v] for v in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [[] for _ in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


# DIMACS ---------------------------------------------------------------------

def parse_dimacs(text: str | TextIO) -> Graph:
    """Parse a DIMACS ``.col``/``.clq`` graph.

    Duplicate edges and both orientations collapse into a single undirected
    edge. Errors name the offending (1-based) line.
    """
    stream = io.StringIO(text) if isinstance(text, str) else text
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "col"):
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            if n < 1:
                raise ParseError(f"line {lineno}: vertex count must be positive")
        elif parts[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before problem line")
            if len(parts) < 3:
                raise ParseError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed edge {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: vertex outside 1..{n} in {line!r}")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop on vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ParseError("missing 'p edge n m' line")
    return Graph.from_edges(n, edges)


def read_dimacs(path) -> Graph:
    with open(path, encoding="utf-8", errors="replace") as fh:
        return parse_dimacs(fh)


def write_dimacs(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p edge {g.n} {g.m}")
    out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(out) + "\n"


# Structure ------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    sets = g.neighbor_sets
    return Graph(g.n, [[u for u in range(g.n) if u != v and u not in sets[v]] for v in range(g.n)])


def connected_components(g: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by minimum vertex."""
    seen = bytearray(g.n)
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = 1
        stack, comp = [s], [s]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = 1
                    stack.append(u)
                    comp.append(u)
        comps.append(sorted(comp))
    return comps


def connectify(g: Graph) -> Graph:
    """Join the components by a path through their representatives.

    The representative of a component is its highest-degree vertex, ties going
    to the lowest index. Representatives are linked in increasing index order.
    """
    comps = connected_components(g)
    if len(comps) <= 1:
        return g
    deg = g.degrees
    reps = sorted(min(c, key=lambda v: (-deg[v], v)) for c in comps)
    return Graph.from_edges(g.n, list(g.edges()) + list(zip(reps, reps[1:])))


def density(g: Graph) -> float:
    if g.n < 2:
        raise ValueError("density is undefined for fewer than two vertices")
    return 2.0 * g.m / (g.n * (g.n - 1))


# Generators -----------------------------------------------------------------

GRAPH_CLASSES = ("random", "geometric", "bipartite", "complement_bipartite")
CLASS_ALIASES = {"rand": "random", "geo": "geometric", "bip": "bipartite", "cbip": "complement_bipartite"}
CLASS_SHORT = {v: k for k, v in CLASS_ALIASES.items()}


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one generated instance.

    ``eta`` is the edge probability for the random and bipartite classes and
    the distance threshold for geometric graphs (where values above 1 are
    allowed; the unit square has diameter sqrt(2)).
    """

    cls: str
    n: int
    eta: float
    seed: int

    def __post_init__(self):
        cls = CLASS_ALIASES.get(self.cls, self.cls)
        object.__setattr__(self, "cls", cls)
        if cls not in GRAPH_CLASSES:
            raise ValueError(f"unknown graph class {self.cls!r}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.eta > 0 or (cls != "geometric" and self.eta > 1):
            raise ValueError(f"eta={self.eta} outside (0, 1]")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def name(self) -> str:
        return f"{CLASS_SHORT[self.cls]}_{self.n}_{self.eta:g}"


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator; extra integers select an independent child stream."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), *map(int, stream)])))


def _bernoulli_pairs(rng, rows: np.ndarray, cols: np.ndarray, p: float):
    keep = rng.random(rows.size) < p
    return rows[keep], cols[keep]


def generate(spec: InstanceSpec) -> Graph:
    """Draw one instance; a pure function of ``spec``."""
    rng = make_rng(spec.seed)
    n = spec.n
    if spec.cls == "random":
        us, vs = np.triu_indices(n, k=1)
        return Graph.from_edges(n, zip(*_bernoulli_pairs(rng, us, vs, spec.eta)))
    if spec.cls == "geometric":
        pts = rng.random((n, 2))
        us, vs = np.triu_indices(n, k=1)
        dist = np.hypot(*(pts[us] - pts[vs]).T)
        keep = dist <= spec.eta
        return Graph.from_edges(n, zip(us[keep], vs[keep]))
    left = math.ceil(n / 2)
    us, vs = np.meshgrid(np.arange(left), np.arange(left, n), indexing="ij")
    g = Graph.from_edges(n, zip(*_bernoulli_pairs(rng, us.ravel(), vs.ravel(), spec.eta)))
    return complement(g) if spec.cls == "complement_bipartite" else g


def instance_suite(cls: str, n: int, eta: float, count: int, seed: int) -> list[InstanceSpec]:
    """``count`` specs of one group; instance ``i`` draws from child stream ``i``."""
    return [InstanceSpec(cls, n, eta, int(np.random.SeedSequence([seed, i]).generate_state(1, np.uint64)[0]))
            for i in range(count)]


def write_manifest(path, entries: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"instances": entries}, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)["instances"]


def spec_to_dict(spec: InstanceSpec) -> dict:
    d = asdict(spec)
    d["class"] = d.pop("cls")
    return d
