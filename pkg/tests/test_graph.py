import io
import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from congrundy.graph import (Graph, InstanceSpec, ParseError, complement, complete_graph, connected_components,
                             connectify, density, empty_graph, generate, instance_suite, parse_dimacs, path_graph,
                             read_manifest, write_dimacs, write_manifest)

from conftest import lettered


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def johnson_8_2_4_text():
    pairs = list(itertools.combinations(range(8), 2))
    edges = [(i + 1, j + 1) for i, j in itertools.combinations(range(len(pairs)), 2)
             if not set(pairs[i]) & set(pairs[j])]
    return "c johnson graph J(8,2) complement\n" + f"p edge {len(pairs)} {len(edges)}\n" + \
        "".join(f"e {u} {v}\n" for u, v in edges)


class TestParse:
    def test_path(self):
        g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n")
        assert g.n == 3 and g.m == 2
        assert g.adj == ((1,), (0, 2), (1,))

    def test_duplicate_orientations_collapse(self):
        g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n")
        assert g.m == 1

    def test_comments_and_col_header(self):
        g = parse_dimacs("c hello\np col 4 1\nc mid\ne 4 1\n")
        assert g.n == 4 and g.has_edge(0, 3)

    def test_stream_input(self):
        assert parse_dimacs(io.StringIO("p edge 2 1\ne 1 2\n")).m == 1

    @pytest.mark.parametrize("text,line", [
        ("p edge x 1\ne 1 2\n", 1),
        ("p edge 3 1\ne 1 4\n", 2),
        ("p edge 3 1\ne 0 1\n", 2),
        ("p edge 3 1\n\ne 2 2\n", 3),
        ("p edge 3 1\nq 1 2\n", 2),
        ("e 1 2\np edge 2 1\n", 1),
    ])
    def test_errors_name_line(self, text, line):
        with pytest.raises(ParseError, match=f"line {line}"):
            parse_dimacs(text)

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_dimacs("c nothing\n")

    def test_johnson_density(self):
        g = parse_dimacs(johnson_8_2_4_text())
        assert g.n == 28
        assert abs(density(g) - 0.55) <= 0.01

    def test_roundtrip(self):
        g = lettered(6, "ab bc cd de ea af bf")
        assert parse_dimacs(write_dimacs(g, comment="x\ny")) == g


class TestStructure:
    def test_complement_examples(self):
        assert complement(complete_graph(4)) == empty_graph(4)
        assert complement(empty_graph(3)) == complete_graph(3)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 12))
    def test_complement_involution(self, seed, n):
        g = generate(InstanceSpec("random", n, 0.4, seed))
        assert complement(complement(g)) == g

    def test_components(self):
        assert connected_components(path_graph(3)) == [[0, 1, 2]]
        assert connected_components(empty_graph(2)) == [[0], [1]]

    def test_two_components(self):
        # a 4-cycle on b,d,e,f and a path g-h-i among nine vertices a..i
        g = Graph.from_edges(9, [(1, 3), (3, 4), (4, 5), (1, 5), (6, 7), (7, 8)])
        comps = [c for c in connected_components(g) if len(c) > 1]
        assert sorted(map(len, comps)) == [3, 4]

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 15), st.floats(0.05, 0.6))
    def test_components_match_networkx(self, seed, n, p):
        g = generate(InstanceSpec("random", n, p, seed))
        ours = connected_components(g)
        theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
        assert ours == sorted(theirs, key=lambda c: c[0])

    def test_connectify_connected_unchanged(self):
        g = path_graph(4)
        assert connectify(g) is g

    def test_connectify_isolated(self):
        assert connectify(empty_graph(3)) == path_graph(3)

    def test_connectify_two_triangles(self):
        g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        h = connectify(g)
        assert h.m == g.m + 1 and h.has_edge(0, 3)

    def test_connectify_picks_max_degree(self):
        g = Graph.from_edges(5, [(0, 1), (2, 3), (2, 4)])
        assert connectify(g).has_edge(0, 2)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32), st.integers(1, 20), st.floats(0.0, 0.3))
    def test_connectify_properties(self, seed, n, p):
        g = generate(InstanceSpec("random", n, max(p, 1e-3), seed))
        h = connectify(g)
        assert h.is_connected()
        assert h.m - g.m == len(connected_components(g)) - 1
        assert connectify(h) is h
        h.validate()

    def test_density(self):
        assert density(complete_graph(4)) == 1.0
        assert density(path_graph(3)) == pytest.approx(2 / 3)
        with pytest.raises(ValueError):
            density(empty_graph(1))


class TestGenerate:
    def test_geometric_large_threshold_is_complete(self):
        assert generate(InstanceSpec("geometric", 5, 1.5, 3)) == complete_graph(5)

    def test_random_probability_one(self):
        assert generate(InstanceSpec("random", 4, 1.0, 0)) == complete_graph(4)

    def test_random_mean_density(self):
        d = [density(generate(InstanceSpec("random", 30, 0.5, s))) for s in range(1000)]
        assert abs(np.mean(d) - 0.5) <= 0.02

    def test_bipartite_parts(self):
        g = generate(InstanceSpec("bipartite", 7, 1.0, 1))
        assert g.m == 4 * 3
        for u, v in g.edges():
            assert (u < 4) != (v < 4)

    def test_complement_bipartite_is_complement_of_draw(self):
        spec = InstanceSpec("cbip", 9, 0.5, 11)
        assert generate(spec) == complement(generate(InstanceSpec("bip", 9, 0.5, 11)))

    def test_geometric_threshold(self):
        spec = InstanceSpec("geometric", 40, 0.3, 5)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([5])))
        pts = rng.random((40, 2))
        g = generate(spec)
        for u, v in itertools.combinations(range(40), 2):
            assert g.has_edge(u, v) == (np.hypot(*(pts[u] - pts[v])) <= 0.3)

    @pytest.mark.parametrize("cls", ["random", "geometric", "bipartite", "complement_bipartite"])
    def test_deterministic_and_valid(self, cls):
        spec = InstanceSpec(cls, 25, 0.4, 123)
        g = generate(spec)
        g.validate()
        assert write_dimacs(g) == write_dimacs(generate(spec))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            InstanceSpec("random", 5, 1.2, 0)
        with pytest.raises(ValueError):
            InstanceSpec("random", 5, 0.0, 0)
        with pytest.raises(ValueError):
            InstanceSpec("tree", 5, 0.5, 0)
        with pytest.raises(ValueError):
            InstanceSpec("random", 0, 0.5, 0)

    def test_suite_streams_and_manifest(self, tmp_path):
        suite = instance_suite("rand", 15, 0.4, 5, 7)
        assert len({s.seed for s in suite}) == 5
        assert suite == instance_suite("random", 15, 0.4, 5, 7)
        assert suite[0].name == "rand_15_0.4"
        path = tmp_path / "m.json"
        write_manifest(path, [{"file": "a.col", "n": 15}])
        assert read_manifest(path) == [{"file": "a.col", "n": 15}]


def test_graph_validation_and_edge_arrays():
    g = Graph.from_edge_arrays(4, np.array([0, 1, 1, 2, 3]), np.array([1, 0, 2, 2, 0]))
    assert g == Graph.from_edges(4, [(0, 1), (1, 2), (0, 3)])
    indptr, indices = g.csr
    assert indptr.tolist() == [0, 2, 4, 5, 6]
    assert indices.tolist() == [1, 3, 0, 2, 1, 0]
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])
    bad = Graph(2, [[1], []])
    with pytest.raises(ValueError):
        bad.validate()
