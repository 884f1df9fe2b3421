"""Kirchhoff graph polynomials with a kappa-linear correction term.

The pipeline: build the corrected spanning-tree polynomial of a graph,
count the rational points of its affine hypersurface over small finite
fields, and test by exact rational interpolation whether the counts can
come from an integer-coefficient polynomial in q.
"""

from .counting import (
    CountRecord,
    EvaluationProgram,
    count_points_fibered,
    count_points_naive,
    count_series,
)
from .fitting import (
    CrossValidation,
    DuplicateAbscissa,
    RationalFit,
    Verdict,
    check_integrality,
    cross_validate,
    fit_least_squares,
    interpolate,
)
from .fixtures import builtin_graph, tetrahedron_expectations
from .gf import (
    FieldElement,
    FieldSpec,
    NotPrime,
    enumerate_elements,
    make_field,
    parse_field_token,
    parse_fields_csv,
)
from .graphs import (
    DisconnectedGraph,
    Edge,
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
from .poly import KAPPA, ArityMismatch, Monomial, MultiPoly, ZeroPolynomial
from .treepoly import (
    COMPLEMENT,
    TREE,
    SplitCheckReport,
    TreeTerm,
    classical_polynomial,
    degree_bound,
    deletion_contraction_sides,
    edge_action_polynomial,
    kappa_polynomial,
    split_transform_check,
    tree_term,
    tree_terms,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatch",
    "COMPLEMENT",
    "CountRecord",
    "CrossValidation",
    "DisconnectedGraph",
    "DuplicateAbscissa",
    "Edge",
    "EvaluationProgram",
    "FieldElement",
    "FieldSpec",
    "Graph",
    "GraphError",
    "KAPPA",
    "Monomial",
    "MultiPoly",
    "NotATriangle",
    "NotPrime",
    "RationalFit",
    "SelfLoopContraction",
    "SpanningTree",
    "SplitCheckReport",
    "TREE",
    "TreeTerm",
    "UnknownEdgeLabel",
    "ValenceError",
    "Verdict",
    "ZeroPolynomial",
    "are_isomorphic",
    "builtin_graph",
    "check_integrality",
    "classical_polynomial",
    "collapse_triangle",
    "contract_edge",
    "count_points_fibered",
    "count_points_naive",
    "count_series",
    "cross_validate",
    "degree_bound",
    "delete_edge",
    "deletion_contraction_sides",
    "edge_action_polynomial",
    "enumerate_elements",
    "fit_least_squares",
    "interpolate",
    "kappa_polynomial",
    "kirchhoff_count",
    "load_graph",
    "make_field",
    "parse_field_token",
    "parse_fields_csv",
    "save_graph",
    "spanning_trees",
    "split_transform_check",
    "split_vertex",
    "tetrahedron_expectations",
    "tree_term",
    "tree_terms",
]
