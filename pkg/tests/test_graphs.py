import json
import random

import pytest

from kirchhoff_kappa import (
    DisconnectedGraph,
    Graph,
    GraphError,
    NotATriangle,
    SelfLoopContraction,
    SpanningTree,
    UnknownEdgeLabel,
    ValenceError,
    are_isomorphic,
    collapse_triangle,
    contract_edge,
    delete_edge,
    kirchhoff_count,
    load_graph,
    save_graph,
    spanning_trees,
    split_vertex,
)

from conftest import random_connected_graph, tree_label_sets

TETRA_TREES = [
    "abc", "abd", "abf", "ace", "acf", "ade", "adf", "aef",
    "bcd", "bce", "bde", "bdf", "bef", "cde", "cdf", "cef",
]


class TestConstruction:
    def test_endpoint_bounds(self):
        with pytest.raises(GraphError):
            Graph.from_pairs(2, [(0, 2)])

    def test_duplicate_labels_rejected(self):
        with pytest.raises(GraphError):
            Graph.from_pairs(2, [(0, 1), (0, 1)], labels=["a", "a"])

    def test_label_lookup(self, tetrahedron):
        assert tetrahedron.edge_index("e") == 4
        with pytest.raises(UnknownEdgeLabel):
            tetrahedron.edge_index("z")

    def test_incidence_matrix_columns(self, tetrahedron):
        m = tetrahedron.incidence_matrix()
        for j in range(tetrahedron.edge_count):
            col = [m[v][j] for v in range(tetrahedron.vertex_count)]
            assert sorted(col) == [-1, 0, 0, 1]
            assert sum(col) == 0

    def test_laplacian_is_incidence_gram(self, tetrahedron, prism):
        # For loop-free graphs, L = B B^T regardless of orientation.
        for g in (tetrahedron, prism):
            b = g.incidence_matrix()
            n = g.vertex_count
            gram = [
                [sum(b[i][k] * b[j][k] for k in range(g.edge_count)) for j in range(n)]
                for i in range(n)
            ]
            assert gram == g.laplacian()


class TestSpanningTrees:
    def test_tetrahedron_sixteen_trees(self, tetrahedron):
        assert tree_label_sets(tetrahedron) == TETRA_TREES

    def test_lexicographic_order(self, tetrahedron):
        trees = [t.edge_indices for t in spanning_trees(tetrahedron)]
        assert trees == sorted(trees)

    def test_single_edge(self, single_edge):
        assert [t.edge_indices for t in spanning_trees(single_edge)] == [(0,)]

    def test_triangle_three_trees(self, triangle):
        trees = spanning_trees(triangle)
        assert len(trees) == 3
        assert all(len(t) == 2 for t in trees)

    def test_single_vertex_has_empty_tree(self):
        g = Graph.from_pairs(1, [])
        assert [t.edge_indices for t in spanning_trees(g)] == [()]

    def test_disconnected_raises(self):
        g = Graph.from_pairs(4, [(0, 1), (2, 3)])
        with pytest.raises(DisconnectedGraph):
            spanning_trees(g)

    def test_theta_trees(self, theta):
        assert [t.edge_indices for t in spanning_trees(theta)] == [(0,), (1,), (2,)]

    def test_loops_never_in_trees(self):
        g = Graph.from_pairs(2, [(0, 0), (0, 1), (1, 1)])
        assert [t.edge_indices for t in spanning_trees(g)] == [(1,)]

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_matrix_tree_count(self, seed):
        g = random_connected_graph(random.Random(seed))
        trees = spanning_trees(g)
        assert len(trees) == kirchhoff_count(g)
        assert len({t.edge_indices for t in trees}) == len(trees)

    @pytest.mark.parametrize("seed", range(10))
    def test_tree_invariants(self, seed):
        g = random_connected_graph(random.Random(100 + seed))
        for t in spanning_trees(g):
            assert len(t) == g.vertex_count - 1
            sub = Graph(g.vertex_count, tuple(g.edges[i] for i in t.edge_indices))
            assert sub.is_connected()  # n-1 edges + connected => acyclic


class TestDeleteContract:
    def test_delete_tetra_e(self, tetrahedron):
        g = delete_edge(tetrahedron, tetrahedron.edge_index("e"))
        assert tree_label_sets(g) == ["abc", "abd", "abf", "acf", "adf", "bcd", "bdf", "cdf"]

    def test_delete_triangle_edge(self, triangle):
        g = delete_edge(triangle, 0)
        assert len(spanning_trees(g)) == 1

    def test_delete_single_edge_disconnects(self, single_edge):
        g = delete_edge(single_edge, 0)
        assert not g.is_connected()

    def test_contract_tetra_e(self, tetrahedron):
        g = contract_edge(tetrahedron, tetrahedron.edge_index("e"))
        assert g.vertex_count == 3
        assert tree_label_sets(g) == ["ac", "ad", "af", "bc", "bd", "bf", "cd", "cf"]

    def test_contract_path_edge(self, path2):
        g = contract_edge(path2, 0)
        assert g.vertex_count == 2 and g.edge_count == 1

    def test_contract_triangle_makes_parallel_pair(self, triangle):
        g = contract_edge(triangle, 0)
        assert g.vertex_count == 2 and g.edge_count == 2
        assert len(spanning_trees(g)) == 2

    def test_contract_self_loop_rejected(self):
        g = Graph.from_pairs(2, [(0, 1), (1, 1)])
        with pytest.raises(SelfLoopContraction):
            contract_edge(g, 1)

    def test_index_errors(self, triangle):
        with pytest.raises(IndexError):
            delete_edge(triangle, 3)
        with pytest.raises(IndexError):
            contract_edge(triangle, -1)

    @pytest.mark.parametrize("seed", range(10))
    def test_edge_and_vertex_count_deltas(self, seed):
        g = random_connected_graph(random.Random(200 + seed))
        e = random.Random(seed).randrange(g.edge_count)
        assert delete_edge(g, e).edge_count == g.edge_count - 1
        assert delete_edge(g, e).vertex_count == g.vertex_count
        if not g.edges[e].is_loop():
            c = contract_edge(g, e)
            assert c.edge_count == g.edge_count - 1
            assert c.vertex_count == g.vertex_count - 1


class TestSplitCollapse:
    def test_split_counts(self, tetrahedron):
        g = split_vertex(tetrahedron, 1)
        assert g.vertex_count == 6 and g.edge_count == 9
        assert all(g.degree(v) == 3 for v in range(g.vertex_count))

    def test_split_tree_count(self, tetrahedron):
        # 3 derived trees per original tree, plus trees through the new cycle;
        # 75 total, frozen from an independent subset enumeration.
        g = split_vertex(tetrahedron, 1)
        assert len(spanning_trees(g)) == 75
        assert kirchhoff_count(g) == 75

    def test_split_then_collapse_is_identity(self, tetrahedron):
        g = split_vertex(tetrahedron, 1)
        base = tetrahedron.edge_count
        back = collapse_triangle(g, (base, base + 1, base + 2))
        assert back == tetrahedron

    def test_collapse_other_face_gives_isomorphic_graph(self, tetrahedron):
        # Splitting vertex 1 leaves the opposite face d,e,f intact; collapsing
        # that face instead of the new triangle still yields a tetrahedron.
        g = split_vertex(tetrahedron, 1)
        face = [g.edge_index(l) for l in "def"]
        back = collapse_triangle(g, face)
        assert are_isomorphic(back, tetrahedron)

    def test_collapse_non_cycle_rejected(self, tetrahedron):
        with pytest.raises(NotATriangle):
            collapse_triangle(tetrahedron, (0, 1, 5))  # a, b, f share no cycle

    def test_collapse_face_of_tetrahedron(self, tetrahedron):
        # faces of the tetrahedron: abe, acd, bcf, def
        face = [tetrahedron.edge_index(l) for l in "abe"]
        g = collapse_triangle(tetrahedron, face)
        assert g.vertex_count == 2 and g.edge_count == 3

    def test_split_wrong_valence(self, path2):
        with pytest.raises(ValenceError):
            split_vertex(path2, 1)

    def test_split_rejects_bad_assignment(self, tetrahedron):
        inc = tetrahedron.incident_edges(1)
        bad = {e: 0 for e in inc}
        with pytest.raises(ValenceError):
            split_vertex(tetrahedron, 1, bad)


class TestJson:
    def test_round_trip(self, tetrahedron, tmp_path):
        d = tetrahedron.to_json_dict()
        assert list(d) == ["vertex_count", "edges"]
        assert list(d["edges"][0]) == ["label", "src", "dst"]
        assert Graph.from_json_dict(d) == tetrahedron
        path = tmp_path / "g.json"
        save_graph(tetrahedron, path)
        assert load_graph(path) == tetrahedron

    def test_edge_order_is_array_order(self, tetrahedron):
        d = tetrahedron.to_json_dict()
        assert [e["label"] for e in d["edges"]] == list("abcdef")

    def test_missing_field(self):
        with pytest.raises(GraphError):
            Graph.from_json_dict({"edges": []})

    def test_unlabeled_round_trip(self):
        g = Graph.from_pairs(2, [(0, 1)])
        d = g.to_json_dict()
        assert d["edges"][0]["label"] == "e1"


class TestIsomorphism:
    def test_tetrahedron_relabelings(self, tetrahedron):
        shuffled = Graph.from_pairs(4, [(3, 2), (2, 1), (1, 3), (0, 3), (0, 2), (0, 1)])
        assert are_isomorphic(tetrahedron, shuffled)

    def test_distinguishes_counts(self, tetrahedron, prism):
        assert not are_isomorphic(tetrahedron, prism)

    def test_distinguishes_structure(self):
        path3 = Graph.from_pairs(4, [(0, 1), (1, 2), (2, 3)])
        star3 = Graph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
        assert not are_isomorphic(path3, star3)
