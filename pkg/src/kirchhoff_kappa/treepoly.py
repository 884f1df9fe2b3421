"""Spanning-tree polynomials of a graph, with the kappa correction term.

The central object is the corrected tree-sum polynomial

    U(t) = sum over spanning trees T of ( prod_{e in T} t_e
            + k * prod over adjacent pairs {e_i, e_j} in T of t_i t_j ),

where two tree edges are adjacent when they share a vertex.  Per tree,
a vertex of tree-valence 2 contributes one pair t_i t_j and a vertex of
tree-valence 3 contributes t_i^2 t_j^2 t_k^2; vertices of higher valence
(which contraction can create) contribute all pairs of their incident
tree edges.  Reading the correction off vertex valences like this makes
the polynomial independent of how the edge list is ordered.

Setting k = 0 recovers the classical tree-convention Kirchhoff
polynomial; the classical complement convention (product over edges NOT
in the tree) is also provided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .graphs import (
    Graph,
    SpanningTree,
    ValenceError,
    contract_edge,
    delete_edge,
    spanning_trees,
    split_vertex,
)
from .poly import Monomial, MultiPoly

TREE = "tree"
COMPLEMENT = "complement"


@dataclass(frozen=True)
class TreeTerm:
    """The two monomials a single spanning tree contributes."""

    tree: SpanningTree
    classical: Monomial
    correction: Monomial


def _classical_exponents(tree_indices, width: int) -> tuple[int, ...]:
    exps = [0] * (width + 1)
    for i in tree_indices:
        exps[1 + i] = 1
    return tuple(exps)


def _correction_t_exponents(graph: Graph, tree_indices) -> list[int]:
    """t-exponent vector of the pair product over adjacent tree edges."""
    exps = [0] * graph.edge_count
    chosen = set(tree_indices)
    for v in range(graph.vertex_count):
        at_v = [i for i in graph.incident_edges(v) if i in chosen]
        for i, j in itertools.combinations(sorted(set(at_v)), 2):
            exps[i] += 1
            exps[j] += 1
    return exps


def tree_term(graph: Graph, tree: SpanningTree, width: Optional[int] = None) -> TreeTerm:
    """Classical and correction monomials of one tree.

    ``width`` widens the exponent vectors to a larger variable count (used
    when embedding terms of a surgered graph into a parent graph's ring).
    """
    if width is None:
        width = graph.edge_count
    classical = Monomial(1, _classical_exponents(tree.edge_indices, width))
    t_exps = _correction_t_exponents(graph, tree.edge_indices)
    t_exps += [0] * (width - graph.edge_count)
    correction = Monomial(1, (1, *t_exps))
    return TreeTerm(tree, classical, correction)


def tree_terms(graph: Graph) -> list[TreeTerm]:
    return [tree_term(graph, t) for t in spanning_trees(graph)]


def classical_polynomial(graph: Graph, convention: str = TREE) -> MultiPoly:
    """Classical Kirchhoff polynomial, tree or complement convention."""
    if convention not in (TREE, COMPLEMENT):
        raise ValueError(f"unknown convention {convention!r}")
    n = graph.edge_count
    acc: dict[tuple[int, ...], int] = {}
    all_edges = set(range(n))
    for t in spanning_trees(graph):
        if convention == TREE:
            support = t.edge_indices
        else:
            support = sorted(all_edges - set(t.edge_indices))
        key = _classical_exponents(support, n)
        acc[key] = acc.get(key, 0) + 1
    return MultiPoly(n, acc)


def kappa_polynomial(graph: Graph) -> MultiPoly:
    """The corrected tree-sum polynomial U(t) in Z[k, t1..tn]."""
    n = graph.edge_count
    acc: dict[tuple[int, ...], int] = {}
    for term in tree_terms(graph):
        for mono in (term.classical, term.correction):
            acc[mono.exponents] = acc.get(mono.exponents, 0) + mono.coefficient
    return MultiPoly(n, acc)


_VALENCE_WEIGHT = {1: 0, 2: 2, 3: 6}


def degree_bound(graph: Graph) -> int:
    """Predicted t-degree of the corrected polynomial, from tree valences.

    Each tree contributes the sum over its vertices of 0/2/6 for valence
    1/2/3; the bound is the maximum over spanning trees.  Only defined up
    to valence 3, which covers trivalent graphs and everything they
    contract to in a tree.
    """
    best = None
    for tree in spanning_trees(graph):
        chosen = set(tree.edge_indices)
        total = 0
        for v in range(graph.vertex_count):
            valence = sum(1 for i in graph.incident_edges(v) if i in chosen)
            if valence == 0:
                continue
            if valence not in _VALENCE_WEIGHT:
                raise ValenceError(
                    f"tree vertex {v} has valence {valence}; the degree rule stops at 3"
                )
            total += _VALENCE_WEIGHT[valence]
        best = total if best is None else max(best, total)
    return best


def edge_action_polynomial(graph: Graph, edge_index: int) -> MultiPoly:
    """The edge action applied to the contracted graph's tree terms.

    Spanning trees of ``graph/e`` biject with spanning trees of ``graph``
    containing ``e``.  Under that bijection each contracted tree term is
    pushed back into the parent ring: the classical monomial picks up the
    factor ``t_e``, and the correction monomial picks up ``t_e * t_f`` for
    every tree edge ``f`` adjacent to ``e`` — while pairs that only became
    adjacent through the merge are unwound.  Computing the correction
    directly on the parent tree realizes exactly that.
    """
    contracted = contract_edge(graph, edge_index)
    n = graph.edge_count

    def parent_index(j: int) -> int:
        return j if j < edge_index else j + 1

    acc: dict[tuple[int, ...], int] = {}
    for small_tree in spanning_trees(contracted):
        lifted = sorted(parent_index(j) for j in small_tree.edge_indices)
        lifted.append(edge_index)
        lifted.sort()
        term = tree_term(graph, SpanningTree(tuple(lifted)))
        for mono in (term.classical, term.correction):
            acc[mono.exponents] = acc.get(mono.exponents, 0) + mono.coefficient
    return MultiPoly(n, acc)


def deletion_contraction_sides(graph: Graph, edge_index: int) -> tuple[MultiPoly, MultiPoly]:
    """Both sides of U(G) = U(G\\e) + e . U(G/e).

    The left side is the corrected polynomial of the graph; the right side
    is the deleted graph's polynomial plus the edge action on the
    contracted graph's terms.  Deleting a bridge leaves no spanning trees
    at all, so that side degenerates to the zero polynomial rather than an
    error.  The two sides are returned unreduced so callers can assert
    exact equality.
    """
    lhs = kappa_polynomial(graph)
    without = delete_edge(graph, edge_index)
    if without.is_connected():
        lifted = kappa_polynomial(without).insert_t_variable(edge_index + 1)
    else:
        lifted = MultiPoly.zero(graph.edge_count)
    rhs = lifted + edge_action_polynomial(graph, edge_index)
    return lhs, rhs


# -- vertex split transform -----------------------------------------------------------


@dataclass(frozen=True)
class SplitCheckReport:
    """Outcome of verifying the vertex-split polynomial transform."""

    passed: bool
    vertex: int
    groups_checked: int
    extra_trees: int
    first_mismatch: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


def split_transform_check(
    graph: Graph, vertex: int, assignment: Optional[Mapping[int, int]] = None
) -> SplitCheckReport:
    """Verify how splitting a trivalent vertex transforms each tree term.

    The split graph's spanning trees that use exactly two triangle edges
    group by the parent tree they collapse to (three derived trees per
    parent).  For each group this checks, in the split graph's ring:

    * classical parts: the group sum equals the parent classical monomial
      times nu = sum of products of triangle-edge pairs;
    * correction parts: the group sum matches the closed form dictated by
      the parent tree's valence at the split vertex (cross-multiplied to
      stay inside the polynomial ring for the valence-3 case).

    Trees using fewer than two triangle edges have no parent; they are
    counted in ``extra_trees`` and take no part in the transform.
    """
    incident = graph.incident_edges(vertex)
    if len(incident) != 3 or len(set(incident)) != 3:
        raise ValenceError(f"vertex {vertex} is not trivalent")
    if assignment is None:
        assignment = {edge: corner for corner, edge in enumerate(sorted(incident))}
    split = split_vertex(graph, vertex, assignment)

    base = graph.edge_count
    width = split.edge_count
    tri = (base, base + 1, base + 2)  # corners (0,1), (1,2), (2,0)
    side_between = {(0, 1): tri[0], (1, 2): tri[1], (0, 2): tri[2]}

    def side(c1: int, c2: int) -> int:
        return side_between[(min(c1, c2), max(c1, c2))]

    def var(i: int) -> MultiPoly:
        return MultiPoly.t(1 + i, width)

    nu = var(tri[0]) * var(tri[1]) + var(tri[1]) * var(tri[2]) + var(tri[0]) * var(tri[2])

    groups: dict[tuple[int, ...], list[SpanningTree]] = {}
    extra = 0
    for t in spanning_trees(split):
        tri_used = [i for i in t.edge_indices if i >= base]
        if len(tri_used) == 2:
            parent = tuple(i for i in t.edge_indices if i < base)
            groups.setdefault(parent, []).append(t)
        else:
            extra += 1

    parents = {t.edge_indices: t for t in spanning_trees(graph)}
    if set(groups) != set(parents):
        return SplitCheckReport(False, vertex, 0, extra, "grouping does not match parent trees")

    def monomial_poly(mono: Monomial) -> MultiPoly:
        return MultiPoly(width, {mono.exponents: mono.coefficient})

    for parent_indices, derived in sorted(groups.items()):
        if len(derived) != 3:
            return SplitCheckReport(
                False, vertex, 0, extra, f"parent {parent_indices} has {len(derived)} derived trees"
            )
        parent_term = tree_term(graph, parents[parent_indices], width=width)
        classical_parent = monomial_poly(parent_term.classical)
        corr_parent = monomial_poly(parent_term.correction)

        classical_sum = MultiPoly.zero(width)
        corr_sum = MultiPoly.zero(width)
        for t in derived:
            dterm = tree_term(split, t)
            classical_sum = classical_sum + monomial_poly(dterm.classical)
            corr_sum = corr_sum + monomial_poly(dterm.correction)

        if classical_sum != classical_parent * nu:
            return SplitCheckReport(
                False, vertex, 0, extra, f"classical transform fails for parent {parent_indices}"
            )

        attached = sorted(i for i in incident if i in parent_indices)
        corner = {i: assignment[i] for i in attached}
        valence = len(attached)
        if valence == 3:
            x, y, z = attached
            expected = MultiPoly.zero(width)
            for w in attached:
                others = [side(corner[w], corner[o]) for o in attached if o != w]
                expected = expected + var(w) * (var(others[0]) * var(others[1])) ** 3
            lhs = corr_sum * (var(x) * var(y) * var(z))
            rhs = corr_parent * expected
        elif valence == 2:
            x, y = attached
            free_corner = ({0, 1, 2} - {corner[x], corner[y]}).pop()
            s_xy = var(side(corner[x], corner[y]))
            s_xf = var(side(corner[x], free_corner))
            s_yf = var(side(corner[y], free_corner))
            lhs = corr_sum
            rhs = corr_parent * (
                var(x) * s_xy**3 * s_xf**2 + var(y) * s_xy**3 * s_yf**2 + s_xf**2 * s_yf**2
            )
        elif valence == 1:
            (x,) = attached
            free = sorted({0, 1, 2} - {corner[x]})
            s1 = var(side(corner[x], free[0]))
            s2 = var(side(corner[x], free[1]))
            s12 = var(side(free[0], free[1]))
            lhs = corr_sum
            rhs = corr_parent * (
                var(x) ** 2 * s1**2 * s2**2 + var(x) * s1**2 * s12 + var(x) * s2**2 * s12
            )
        else:
            return SplitCheckReport(
                False, vertex, 0, extra, f"parent {parent_indices} misses the split vertex"
            )

        if lhs != rhs:
            return SplitCheckReport(
                False,
                vertex,
                0,
                extra,
                f"correction transform fails for parent {parent_indices} (valence {valence})",
            )

    return SplitCheckReport(True, vertex, len(groups), extra)
