"""Ordered multigraphs with spanning-tree enumeration and edge surgeries.

A :class:`Graph` is a labeled multigraph whose edge list carries a total
order (the list position).  That order is what downstream polynomial
constructors use to name variables, so every surgery here (deletion,
contraction, vertex split, triangle collapse) preserves the induced order
of the surviving edges.  Self-loops and parallel edges are allowed; they
arise naturally under contraction.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence


class GraphError(Exception):
    """Base class for graph construction and surgery errors."""


class DisconnectedGraph(GraphError):
    """Raised when an operation requires a connected graph."""


class SelfLoopContraction(GraphError):
    """Raised when asked to contract a self-loop."""


class ValenceError(GraphError):
    """Raised when a vertex does not have the valence an operation needs."""


class NotATriangle(GraphError):
    """Raised when three edges do not form a 3-cycle on distinct vertices."""


class UnknownEdgeLabel(GraphError, KeyError):
    """Raised when an edge label does not exist in the graph."""


@dataclass(frozen=True)
class Edge:
    """Oriented edge.  Orientation only matters for the incidence matrix."""

    src: int
    dst: int

    def endpoints(self) -> tuple[int, int]:
        return (self.src, self.dst)

    def is_loop(self) -> bool:
        return self.src == self.dst

    def other(self, v: int) -> int:
        if v == self.src:
            return self.dst
        if v == self.dst:
            return self.src
        raise ValueError(f"vertex {v} is not an endpoint of {self}")


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree, stored as the sorted indices of its edges."""

    edge_indices: tuple[int, ...]

    def __contains__(self, edge_index: int) -> bool:
        return edge_index in self.edge_indices

    def __iter__(self):
        return iter(self.edge_indices)

    def __len__(self) -> int:
        return len(self.edge_indices)


@dataclass(frozen=True)
class Graph:
    """Immutable ordered multigraph.

    ``edges`` is a tuple whose positions define the edge order; ``labels``
    is either ``None`` or a tuple of unique names parallel to ``edges``.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        object.__setattr__(self, "edges", tuple(self.edges))
        for e in self.edges:
            if not (0 <= e.src < self.vertex_count and 0 <= e.dst < self.vertex_count):
                raise GraphError(f"edge {e} has an endpoint outside [0, {self.vertex_count})")
        if self.labels is not None:
            labels = tuple(self.labels)
            object.__setattr__(self, "labels", labels)
            if len(labels) != len(self.edges):
                raise GraphError("labels must be parallel to edges")
            if len(set(labels)) != len(labels):
                raise GraphError("edge labels must be unique")

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_pairs(
        cls,
        vertex_count: int,
        pairs: Iterable[tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        edges = tuple(Edge(u, v) for u, v in pairs)
        return cls(vertex_count, edges, tuple(labels) if labels is not None else None)

    # -- basic queries --------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def _incident(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex list of incident edge indices; loops appear twice."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, e in enumerate(self.edges):
            inc[e.src].append(i)
            inc[e.dst].append(i)
        return tuple(tuple(x) for x in inc)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def edge_index(self, label: str) -> int:
        if self.labels is None:
            raise UnknownEdgeLabel(f"graph has no edge labels (looked up {label!r})")
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownEdgeLabel(f"no edge labeled {label!r}") from None

    def label_of(self, edge_index: int) -> str:
        if self.labels is not None:
            return self.labels[edge_index]
        return f"e{edge_index + 1}"

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        if self.vertex_count == 1:
            return True
        parent = list(range(self.vertex_count))
        for e in self.edges:
            _union(parent, e.src, e.dst)
        root = _find(parent, 0)
        return all(_find(parent, v) == root for v in range(self.vertex_count))

    def incidence_matrix(self) -> list[list[int]]:
        """V x E signed incidence matrix: +1 at the target, -1 at the source.

        Loops contribute a zero column (the signs cancel).
        """
        m = [[0] * self.edge_count for _ in range(self.vertex_count)]
        for j, e in enumerate(self.edges):
            if e.src != e.dst:
                m[e.dst][j] += 1
                m[e.src][j] -= 1
        return m

    def laplacian(self) -> list[list[int]]:
        """Integer graph Laplacian (degree minus adjacency, loops ignored)."""
        lap = [[0] * self.vertex_count for _ in range(self.vertex_count)]
        for e in self.edges:
            if e.is_loop():
                continue
            lap[e.src][e.src] += 1
            lap[e.dst][e.dst] += 1
            lap[e.src][e.dst] -= 1
            lap[e.dst][e.src] -= 1
        return lap

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edges": [
                {"label": self.label_of(i), "src": e.src, "dst": e.dst}
                for i, e in enumerate(self.edges)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Graph":
        try:
            vc = int(data["vertex_count"])
            raw_edges = data["edges"]
        except KeyError as exc:
            raise GraphError(f"graph JSON is missing field {exc}") from None
        pairs = []
        labels: list[str] = []
        have_labels = True
        for obj in raw_edges:
            pairs.append((int(obj["src"]), int(obj["dst"])))
            if "label" in obj:
                labels.append(str(obj["label"]))
            else:
                have_labels = False
        return cls.from_pairs(vc, pairs, labels if have_labels and labels else None)


def load_graph(path) -> Graph:
    with open(path) as fh:
        return Graph.from_json_dict(json.load(fh))


def save_graph(graph: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph.to_json_dict(), fh, indent=2)
        fh.write("\n")


# -- union-find helpers --------------------------------------------------------


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent: list[int], a: int, b: int) -> bool:
    ra, rb = _find(parent, a), _find(parent, b)
    if ra == rb:
        return False
    parent[ra] = rb
    return True


# -- spanning trees --------------------------------------------------------------


def spanning_trees(graph: Graph) -> list[SpanningTree]:
    """Enumerate all spanning trees, in lexicographic order of index tuples.

    Contraction/deletion backtracking over the edge list: at edge ``i`` we
    first branch on including it (skipped when it would close a cycle),
    then on excluding it (skipped when the remaining edges can no longer
    connect the graph).  Including-first makes the output order
    lexicographic without a sort.
    """
    n = graph.vertex_count
    if n == 0 or not graph.is_connected():
        raise DisconnectedGraph("spanning trees exist only for connected graphs")
    if n == 1:
        return [SpanningTree(())]

    m = graph.edge_count
    ends = [(e.src, e.dst) for e in graph.edges]
    out: list[SpanningTree] = []

    def remaining_connects(parent: list[int], next_edge: int) -> bool:
        probe = parent.copy()
        components = len({_find(probe, v) for v in range(n)})
        for j in range(next_edge, m):
            u, v = ends[j]
            if _union(probe, u, v):
                components -= 1
                if components == 1:
                    return True
        return components == 1

    def walk(i: int, parent: list[int], chosen: list[int]) -> None:
        if len(chosen) == n - 1:
            out.append(SpanningTree(tuple(chosen)))
            return
        if i == m:
            return
        u, v = ends[i]
        child = parent.copy()
        if _union(child, u, v):
            chosen.append(i)
            walk(i + 1, child, chosen)
            chosen.pop()
        if remaining_connects(parent, i + 1):
            walk(i + 1, parent, chosen)

    walk(0, list(range(n)), [])
    return out


def kirchhoff_count(graph: Graph) -> int:
    """Number of spanning trees via the matrix-tree determinant.

    Exact integer arithmetic (Bareiss elimination) on a principal minor
    of the Laplacian; independent of the enumerator above, so the two can
    cross-check each other.
    """
    if graph.vertex_count == 0:
        raise DisconnectedGraph("empty graph")
    if graph.vertex_count == 1:
        return 1
    lap = graph.laplacian()
    minor = [row[1:] for row in lap[1:]]
    return _det_bareiss(minor)


def _det_bareiss(matrix: list[list[int]]) -> int:
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- surgeries --------------------------------------------------------------------


def delete_edge(graph: Graph, edge_index: int) -> Graph:
    """Remove one edge; the surviving edges keep their relative order."""
    _check_edge_index(graph, edge_index)
    edges = graph.edges[:edge_index] + graph.edges[edge_index + 1 :]
    labels = None
    if graph.labels is not None:
        labels = graph.labels[:edge_index] + graph.labels[edge_index + 1 :]
    return Graph(graph.vertex_count, edges, labels)


def contract_edge(graph: Graph, edge_index: int) -> Graph:
    """Identify the endpoints of an edge and drop it.

    The merged vertex keeps the smaller index; every vertex above the
    larger endpoint shifts down by one.  Parallel edges and loops may
    appear in the result.
    """
    _check_edge_index(graph, edge_index)
    e = graph.edges[edge_index]
    if e.is_loop():
        raise SelfLoopContraction(f"edge {edge_index} is a self-loop")
    keep, drop = min(e.src, e.dst), max(e.src, e.dst)

    def remap(v: int) -> int:
        if v == drop:
            return keep
        return v - 1 if v > drop else v

    edges = tuple(
        Edge(remap(o.src), remap(o.dst))
        for i, o in enumerate(graph.edges)
        if i != edge_index
    )
    labels = None
    if graph.labels is not None:
        labels = tuple(l for i, l in enumerate(graph.labels) if i != edge_index)
    return Graph(graph.vertex_count - 1, edges, labels)


_SPLIT_LABELS = ("alpha", "beta", "gamma")


def split_vertex(graph: Graph, vertex: int, assignment: Optional[Mapping[int, int]] = None) -> Graph:
    """Blow a trivalent vertex up into a triangle.

    ``assignment`` maps each of the three incident edge indices to a corner
    in {0, 1, 2}; corner 0 reuses the old vertex index, corners 1 and 2 are
    appended as new vertices.  Three triangle edges are appended after all
    existing edges, connecting corners (0,1), (1,2), (2,0).  When
    ``assignment`` is omitted the incident edges take corners 0, 1, 2 in
    edge-order.
    """
    if not (0 <= vertex < graph.vertex_count):
        raise IndexError(f"vertex index {vertex} out of range")
    incident = graph.incident_edges(vertex)
    if len(incident) != 3 or len(set(incident)) != 3:
        raise ValenceError(
            f"vertex {vertex} must have exactly three incident edge endpoints "
            f"on three distinct edges, found {incident}"
        )
    if assignment is None:
        assignment = {edge: corner for corner, edge in enumerate(sorted(incident))}
    if sorted(assignment) != sorted(incident) or sorted(assignment.values()) != [0, 1, 2]:
        raise ValenceError(
            f"assignment must biject the incident edges {sorted(incident)} onto corners 0..2"
        )

    corner_vertex = (vertex, graph.vertex_count, graph.vertex_count + 1)

    def reattach(i: int, v: int) -> int:
        if v == vertex and i in assignment:
            return corner_vertex[assignment[i]]
        return v

    edges = [Edge(reattach(i, e.src), reattach(i, e.dst)) for i, e in enumerate(graph.edges)]
    edges += [
        Edge(corner_vertex[0], corner_vertex[1]),
        Edge(corner_vertex[1], corner_vertex[2]),
        Edge(corner_vertex[2], corner_vertex[0]),
    ]
    labels = None
    if graph.labels is not None:
        fresh = []
        for base in _SPLIT_LABELS:
            name = base
            suffix = 0
            while name in graph.labels or name in fresh:
                suffix += 1
                name = f"{base}{suffix}"
            fresh.append(name)
        labels = graph.labels + tuple(fresh)
    return Graph(graph.vertex_count + 2, tuple(edges), labels)


def collapse_triangle(graph: Graph, triangle: Sequence[int]) -> Graph:
    """Shrink a 3-cycle to a single vertex, deleting its three edges.

    Inverse of :func:`split_vertex` up to isomorphism; when applied to the
    triangle that a split just created, it reproduces the original graph
    vertex-for-vertex and edge-for-edge.
    """
    tri = tuple(triangle)
    if len(tri) != 3 or len(set(tri)) != 3:
        raise NotATriangle("need three distinct edge indices")
    for i in tri:
        _check_edge_index(graph, i)
    tri_edges = [graph.edges[i] for i in tri]
    if any(e.is_loop() for e in tri_edges):
        raise NotATriangle("triangle edges must not be loops")
    verts = set()
    for e in tri_edges:
        verts.update(e.endpoints())
    if len(verts) != 3:
        raise NotATriangle(f"edges {tri} span {sorted(verts)}, not a 3-cycle")
    # each pair of triangle edges must share exactly one vertex
    for e1, e2 in itertools.combinations(tri_edges, 2):
        if len(set(e1.endpoints()) & set(e2.endpoints())) != 1:
            raise NotATriangle(f"edges {tri} do not form a 3-cycle")

    keep = min(verts)
    dropped = sorted(v for v in verts if v != keep)

    def remap(v: int) -> int:
        if v in verts:
            v = keep
        return v - sum(1 for d in dropped if d < v)

    tri_set = set(tri)
    edges = tuple(
        Edge(remap(e.src), remap(e.dst))
        for i, e in enumerate(graph.edges)
        if i not in tri_set
    )
    labels = None
    if graph.labels is not None:
        labels = tuple(l for i, l in enumerate(graph.labels) if i not in tri_set)
    return Graph(graph.vertex_count - 2, edges, labels)


def _check_edge_index(graph: Graph, edge_index: int) -> None:
    if not (0 <= edge_index < graph.edge_count):
        raise IndexError(f"edge index {edge_index} out of range [0, {graph.edge_count})")


# -- naive isomorphism (round-trip tests only) -------------------------------------


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Brute-force isomorphism over all vertex bijections.

    Exponential; intended only for the tiny graphs in split/collapse
    round-trip checks.
    """
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return False
    target = sorted(tuple(sorted(e.endpoints())) for e in g2.edges)
    degrees2 = sorted(g2.degree(v) for v in range(g2.vertex_count))
    if sorted(g1.degree(v) for v in range(g1.vertex_count)) != degrees2:
        return False
    for perm in itertools.permutations(range(g2.vertex_count)):
        mapped = sorted(tuple(sorted((perm[e.src], perm[e.dst]))) for e in g1.edges)
        if mapped == target:
            return True
    return False
