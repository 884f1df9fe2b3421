"""Shared graphs and generators for the test suite."""

import random

import pytest

from kirchhoff_kappa import Graph, builtin_graph


@pytest.fixture(scope="session")
def tetrahedron() -> Graph:
    return builtin_graph("tetrahedron")


@pytest.fixture(scope="session")
def triangle() -> Graph:
    return builtin_graph("triangle")


@pytest.fixture(scope="session")
def path2() -> Graph:
    return builtin_graph("path2")


@pytest.fixture(scope="session")
def single_edge() -> Graph:
    return builtin_graph("single_edge")


@pytest.fixture(scope="session")
def theta() -> Graph:
    return builtin_graph("theta")


@pytest.fixture(scope="session")
def prism() -> Graph:
    return builtin_graph("prism3")


def random_connected_graph(rng: random.Random, max_vertices: int = 6, max_extra: int = 4) -> Graph:
    """Random connected multigraph: a random spanning tree plus extra edges.

    Extra edges may duplicate existing ones (parallel edges); loops are
    left out so every edge is usable by contraction.
    """
    n = rng.randint(2, max_vertices)
    pairs = []
    for v in range(1, n):
        pairs.append((rng.randrange(v), v))
    for _ in range(rng.randint(0, max_extra)):
        u = rng.randrange(n)
        w = rng.randrange(n)
        if u == w:
            w = (w + 1) % n
        pairs.append((u, w))
    rng.shuffle(pairs)
    return Graph.from_pairs(n, pairs)


def random_trivalent_graph(rng: random.Random, vertices: int = 6) -> Graph:
    """Random connected 3-regular multigraph by stub pairing (no loops)."""
    assert vertices % 2 == 0
    while True:
        stubs = [v for v in range(vertices) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, len(stubs), 2)]
        if any(u == v for u, v in pairs):
            continue
        g = Graph.from_pairs(vertices, pairs)
        if g.is_connected():
            return g


def tree_label_sets(graph: Graph) -> list[str]:
    """Spanning trees as concatenated label strings, in enumeration order."""
    from kirchhoff_kappa import spanning_trees

    return ["".join(graph.label_of(i) for i in t.edge_indices) for t in spanning_trees(graph)]
