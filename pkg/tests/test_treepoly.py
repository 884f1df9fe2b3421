import random

import pytest

from kirchhoff_kappa import (
    COMPLEMENT,
    KAPPA,
    DisconnectedGraph,
    Graph,
    MultiPoly,
    SpanningTree,
    ValenceError,
    classical_polynomial,
    collapse_triangle,
    contract_edge,
    degree_bound,
    delete_edge,
    deletion_contraction_sides,
    edge_action_polynomial,
    kappa_polynomial,
    spanning_trees,
    split_transform_check,
    split_vertex,
    tree_term,
)

from conftest import random_connected_graph, random_trivalent_graph


def poly_from_terms(graph: Graph, classical: list[str], corrections: list[str]) -> MultiPoly:
    """Build an expected polynomial from monomial strings like "a^2*b*d".

    ``classical`` terms carry kappa-exponent 0, ``corrections`` carry 1;
    all coefficients are 1 (repeated strings accumulate).
    """
    n = graph.edge_count
    acc: dict[tuple[int, ...], int] = {}
    for kexp, bucket in ((0, classical), (1, corrections)):
        for text in bucket:
            exps = [kexp] + [0] * n
            for factor in text.split("*"):
                label, _, power = factor.partition("^")
                exps[1 + graph.edge_index(label)] += int(power or 1)
            key = tuple(exps)
            acc[key] = acc.get(key, 0) + 1
    return MultiPoly(n, acc)


TETRA_CLASSICAL = [
    "a*b*c", "a*b*d", "a*b*f", "a*c*e", "a*c*f", "a*d*e", "a*d*f", "a*e*f",
    "b*c*d", "b*c*e", "b*d*e", "b*d*f", "b*e*f", "c*d*e", "c*d*f", "c*e*f",
]
TETRA_CORRECTIONS = [
    "a^2*b^2*c^2", "a^2*d^2*e^2", "b^2*e^2*f^2", "c^2*d^2*f^2",
    "a^2*b*d", "a*b^2*f", "a^2*c*e", "a*c^2*f",
    "a*d^2*f", "a*e^2*f", "b*c^2*d", "b^2*c*e",
    "b*d*e^2", "b*d*f^2", "c*d^2*e", "c*e*f^2",
]


@pytest.fixture(scope="module")
def tetra_poly(tetrahedron):
    return kappa_polynomial(tetrahedron)


class TestClassical:
    def test_tetrahedron_tree_convention(self, tetrahedron):
        expected = poly_from_terms(tetrahedron, TETRA_CLASSICAL, [])
        assert classical_polynomial(tetrahedron) == expected

    def test_single_edge(self, single_edge):
        assert classical_polynomial(single_edge) == MultiPoly.t(1, 1)

    def test_triangle_complement(self, triangle):
        n = 3
        expected = MultiPoly.t(1, n) + MultiPoly.t(2, n) + MultiPoly.t(3, n)
        assert classical_polynomial(triangle, COMPLEMENT) == expected

    def test_disconnected(self):
        g = Graph.from_pairs(3, [(0, 1)])
        with pytest.raises(DisconnectedGraph):
            classical_polynomial(g)

    def test_bad_convention(self, triangle):
        with pytest.raises(ValueError):
            classical_polynomial(triangle, "dual")


class TestKappaPolynomial:
    def test_star_tree_term(self, tetrahedron):
        # the tree abc has one valence-3 vertex: correction a^2 b^2 c^2
        term = tree_term(tetrahedron, SpanningTree((0, 1, 2)))
        assert term.classical.exponents == (0, 1, 1, 1, 0, 0, 0)
        assert term.correction.exponents == (1, 2, 2, 2, 0, 0, 0)

    def test_path_tree_term(self, tetrahedron):
        # the tree abd has two valence-2 vertices: correction a^2 b d
        term = tree_term(tetrahedron, SpanningTree((0, 1, 3)))
        assert term.correction.exponents == (1, 2, 1, 0, 1, 0, 0)

    def test_tetrahedron_thirty_two_terms(self, tetrahedron, tetra_poly):
        expected = poly_from_terms(tetrahedron, TETRA_CLASSICAL, TETRA_CORRECTIONS)
        assert tetra_poly == expected
        assert len(tetra_poly) == 32
        assert all(c == 1 for c in tetra_poly.terms.values())

    def test_kappa_one_specialization_has_32_unit_terms(self, tetra_poly):
        at_one = tetra_poly.substitute(KAPPA, 1)
        assert len(at_one) == 32
        assert all(c == 1 for c in at_one.terms.values())

    def test_single_edge_empty_pair_product(self, single_edge):
        # no adjacent tree-edge pairs: the correction is the bare parameter
        assert kappa_polynomial(single_edge) == MultiPoly.t(1, 1) + MultiPoly.kappa(1)

    def test_theta(self, theta):
        n = 3
        expected = (
            MultiPoly.t(1, n) + MultiPoly.t(2, n) + MultiPoly.t(3, n) + 3 * MultiPoly.kappa(n)
        )
        assert kappa_polynomial(theta) == expected

    def test_kappa_linear(self, tetrahedron, prism, theta, path2):
        for g in (tetrahedron, prism, theta, path2):
            poly = kappa_polynomial(g)
            assert poly.kappa_degree() == 1
            ntrees = len(spanning_trees(g))
            parts = poly.coefficients_in(KAPPA)
            assert sum(parts[0].terms.values()) == ntrees
            assert sum(parts[1].terms.values()) == ntrees

    @pytest.mark.parametrize("seed", range(30))
    def test_kappa_zero_is_classical(self, seed):
        g = random_connected_graph(random.Random(seed))
        assert kappa_polynomial(g).substitute(KAPPA, 0) == classical_polynomial(g)

    def test_kappa_zero_is_classical_fixtures(self, tetrahedron, prism, theta, single_edge):
        for g in (tetrahedron, prism, theta, single_edge):
            assert kappa_polynomial(g).substitute(KAPPA, 0) == classical_polynomial(g)


class TestOrderingIndependence:
    @pytest.mark.parametrize("seed", range(60))
    def test_tetrahedron_permutations(self, tetrahedron, seed):
        self._check_permutation(tetrahedron, random.Random(seed))

    @pytest.mark.parametrize("seed", range(60))
    def test_random_graph_permutations(self, seed):
        rng = random.Random(1000 + seed)
        self._check_permutation(random_connected_graph(rng), rng)

    @staticmethod
    def _check_permutation(g: Graph, rng: random.Random):
        m = g.edge_count
        perm = list(range(m))
        rng.shuffle(perm)  # new edge j is old edge perm[j]
        permuted = Graph(g.vertex_count, tuple(g.edges[perm[j]] for j in range(m)))
        u_perm = kappa_polynomial(permuted)
        new_from_old = [0] * m
        for j in range(m):
            new_from_old[perm[j]] = j + 1
        relabeled = kappa_polynomial(g).permute_t_variables(new_from_old)
        assert u_perm == relabeled


class TestDegreeBound:
    def test_tetrahedron(self, tetrahedron, tetra_poly):
        assert degree_bound(tetrahedron) == 6
        assert tetra_poly.total_degree(in_t_only=True) == 6

    def test_path(self, path2):
        assert degree_bound(path2) == 2

    def test_single_edge_formula_value(self, single_edge):
        # the valence rule gives 0 even though the classical part has degree 1
        assert degree_bound(single_edge) == 0

    def test_high_valence_rejected(self):
        star4 = Graph.from_pairs(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
        with pytest.raises(ValenceError):
            degree_bound(star4)

    def test_matches_t_degree_on_trivalent_graphs(self, tetrahedron, prism):
        graphs = [tetrahedron, prism, split_vertex(tetrahedron, 1)]
        graphs += [random_trivalent_graph(random.Random(s)) for s in range(5)]
        for g in graphs:
            assert g.vertex_count >= 4
            assert kappa_polynomial(g).total_degree(in_t_only=True) == degree_bound(g)


DELETED_CLASSICAL = ["a*b*c", "a*b*d", "a*b*f", "a*c*f", "a*d*f", "b*c*d", "b*d*f", "c*d*f"]
DELETED_CORRECTIONS = [
    "a^2*b^2*c^2", "c^2*d^2*f^2", "a^2*b*d", "a*b^2*f",
    "a*c^2*f", "a*d^2*f", "b*c^2*d", "b*d*f^2",
]
CONTRACTED_PAIRS = ["a*c", "a*d", "a*f", "b*c", "b*d", "b*f", "c*d", "c*f"]
F_CLASSICAL = CONTRACTED_PAIRS
F_CORRECTIONS = ["a^2*c", "b^2*c", "c*d^2", "c*f^2"]
E_CORRECTIONS = ["a*f", "b*d", "a^2*d^2", "b^2*f^2"]


class TestDeletionContraction:
    def test_deleted_polynomial_display(self, tetrahedron):
        g = delete_edge(tetrahedron, tetrahedron.edge_index("e"))
        assert kappa_polynomial(g) == poly_from_terms(g, DELETED_CLASSICAL, DELETED_CORRECTIONS)

    def test_deleted_equals_substitution_at_zero(self, tetrahedron, tetra_poly):
        e = tetrahedron.edge_index("e")
        g = delete_edge(tetrahedron, e)
        lifted = kappa_polynomial(g).insert_t_variable(e + 1)
        assert lifted == tetra_poly.substitute(e + 1, 0)

    def test_contracted_polynomial_display(self, tetrahedron):
        g = contract_edge(tetrahedron, tetrahedron.edge_index("e"))
        expected = poly_from_terms(g, CONTRACTED_PAIRS, CONTRACTED_PAIRS)
        assert kappa_polynomial(g) == expected  # (1 + k) times the pair sum

    def test_fiber_expansion_g_f_e(self, tetrahedron, tetra_poly):
        # U = G + e F + e^2 E in the edge variable e
        e_var = tetrahedron.edge_index("e") + 1
        parts = tetra_poly.coefficients_in(e_var)
        assert len(parts) == 3
        g_part, f_part, e_part = parts
        assert g_part == tetra_poly.substitute(e_var, 0)
        assert f_part == poly_from_terms(tetrahedron, F_CLASSICAL, F_CORRECTIONS)
        assert e_part == poly_from_terms(tetrahedron, [], E_CORRECTIONS)

    def test_identity_on_every_tetrahedron_edge(self, tetrahedron):
        for e in range(tetrahedron.edge_count):
            lhs, rhs = deletion_contraction_sides(tetrahedron, e)
            assert lhs == rhs, f"edge {e}"

    def test_identity_on_fixture_graphs(self, triangle, theta, prism, path2):
        for g in (triangle, theta, prism, path2):
            for e in range(g.edge_count):
                lhs, rhs = deletion_contraction_sides(g, e)
                assert lhs == rhs

    def test_identity_on_bridges_uses_zero_deletion_side(self, path2):
        # deleting a bridge kills all spanning trees; the deletion side is 0
        lhs, rhs = deletion_contraction_sides(path2, 0)
        assert lhs == rhs
        assert lhs == edge_action_polynomial(path2, 0)

    @pytest.mark.parametrize("seed", range(20))
    def test_identity_on_random_trivalent_graphs(self, seed):
        g = random_trivalent_graph(random.Random(300 + seed))
        for e in range(g.edge_count):
            lhs, rhs = deletion_contraction_sides(g, e)
            assert lhs == rhs

    @pytest.mark.parametrize("seed", range(20))
    def test_identity_on_random_multigraphs(self, seed):
        g = random_connected_graph(random.Random(400 + seed))
        for e in range(g.edge_count):
            lhs, rhs = deletion_contraction_sides(g, e)
            assert lhs == rhs

    def test_edge_action_matches_trees_through_edge(self, tetrahedron, prism):
        # independent route: sum the terms of the trees containing e directly
        for g in (tetrahedron, prism):
            n = g.edge_count
            for e in range(n):
                direct: dict[tuple[int, ...], int] = {}
                for t in spanning_trees(g):
                    if e not in t:
                        continue
                    term = tree_term(g, t)
                    for mono in (term.classical, term.correction):
                        direct[mono.exponents] = direct.get(mono.exponents, 0) + 1
                assert edge_action_polynomial(g, e) == MultiPoly(n, direct)


class TestMatrixTree:
    """The complement polynomial against weighted Laplacian determinants."""

    PRIME = (1 << 61) - 1

    @classmethod
    def _det_mod(cls, m: list[list[int]]) -> int:
        p = cls.PRIME
        n = len(m)
        m = [row[:] for row in m]
        det = 1
        for col in range(n):
            pivot = next((r for r in range(col, n) if m[r][col] % p), None)
            if pivot is None:
                return 0
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = -det
            inv = pow(m[col][col], p - 2, p)
            det = det * m[col][col] % p
            for r in range(col + 1, n):
                f = m[r][col] * inv % p
                if f:
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[col])]
        return det * (1 if det >= 0 else 1) % p

    @classmethod
    def _weighted_laplacian_count(cls, g: Graph, ts: list[int]) -> int:
        p = cls.PRIME
        n = g.vertex_count
        lap = [[0] * n for _ in range(n)]
        for e, edge in zip(ts, g.edges):
            if edge.is_loop():
                continue
            w = pow(e, p - 2, p)
            lap[edge.src][edge.src] = (lap[edge.src][edge.src] + w) % p
            lap[edge.dst][edge.dst] = (lap[edge.dst][edge.dst] + w) % p
            lap[edge.src][edge.dst] = (lap[edge.src][edge.dst] - w) % p
            lap[edge.dst][edge.src] = (lap[edge.dst][edge.src] - w) % p
        minor = [row[1:] for row in lap[1:]]
        det = cls._det_mod(minor)
        prod = 1
        for t in ts:
            prod = prod * t % p
        return det * prod % p

    @pytest.mark.parametrize(
        "name", ["tetrahedron", "triangle", "prism3", "theta", "path2"]
    )
    def test_complement_equals_weighted_determinant(self, name, request):
        from kirchhoff_kappa import builtin_graph

        g = builtin_graph(name)
        poly = classical_polynomial(g, COMPLEMENT)
        rng = random.Random(name)
        for _ in range(20):
            ts = [rng.randrange(1, self.PRIME) for _ in range(g.edge_count)]
            assert poly.evaluate(ts) % self.PRIME == self._weighted_laplacian_count(g, ts)

    @pytest.mark.parametrize("seed", range(5))
    def test_complement_equals_weighted_determinant_random(self, seed):
        g = random_connected_graph(random.Random(500 + seed))
        poly = classical_polynomial(g, COMPLEMENT)
        rng = random.Random(600 + seed)
        for _ in range(20):
            ts = [rng.randrange(1, self.PRIME) for _ in range(g.edge_count)]
            assert poly.evaluate(ts) % self.PRIME == self._weighted_laplacian_count(g, ts)


class TestSplitTransform:
    def test_every_tetrahedron_vertex(self, tetrahedron):
        for v in range(4):
            report = split_transform_check(tetrahedron, v)
            assert report.passed, report.first_mismatch
            assert report.groups_checked == 16
            assert report.extra_trees == 27  # 75 total - 3*16 grouped

    def test_every_prism_vertex(self, prism):
        for v in range(6):
            report = split_transform_check(prism, v)
            assert report.passed, report.first_mismatch
            assert report.groups_checked == 75

    def test_all_corner_assignments(self, tetrahedron):
        import itertools

        incident = sorted(tetrahedron.incident_edges(0))
        for corners in itertools.permutations(range(3)):
            assignment = dict(zip(incident, corners))
            report = split_transform_check(tetrahedron, 0, assignment)
            assert report.passed, report.first_mismatch

    def test_split_then_collapse_recovers_polynomial(self, tetrahedron, prism):
        for g in (tetrahedron, prism):
            for v in range(g.vertex_count):
                split = split_vertex(g, v)
                base = g.edge_count
                back = collapse_triangle(split, (base, base + 1, base + 2))
                assert back == g
                assert kappa_polynomial(back) == kappa_polynomial(g)

    def test_non_trivalent_vertex_rejected(self, path2):
        with pytest.raises(ValenceError):
            split_transform_check(path2, 1)
