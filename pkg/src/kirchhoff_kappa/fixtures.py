"""Bundled graphs and the tetrahedron reference results.

The tetrahedron ships with the edge labeling a..f under which every
reference value in ``expected_tetrahedron.json`` was frozen: a=(0,1),
b=(1,2), c=(1,3), d=(0,3), e=(0,2), f=(2,3).
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .graphs import Graph

GRAPH_NAMES = ("tetrahedron", "triangle", "single_edge", "path2", "theta", "prism3")


def _read_data(filename: str) -> str:
    return resources.files("kirchhoff_kappa").joinpath("data", filename).read_text()


def builtin_graph(name: str) -> Graph:
    """Load one of the bundled graphs by name."""
    if name not in GRAPH_NAMES:
        raise KeyError(f"unknown builtin graph {name!r}; have {GRAPH_NAMES}")
    return Graph.from_json_dict(json.loads(_read_data(f"{name}.json")))


def builtin_graph_json(name: str) -> str:
    if name not in GRAPH_NAMES:
        raise KeyError(f"unknown builtin graph {name!r}; have {GRAPH_NAMES}")
    return _read_data(f"{name}.json")


def tetrahedron_expectations() -> dict:
    """Reference counts and fit coefficients, with Fractions materialized.

    Returns a dict with keys "fields" (list of q) and "kappa0"/"kappa1",
    each holding "counts" (dict q -> int), "fit_coefficients"
    (constant-first Fractions) and "integral".
    """
    raw = json.loads(_read_data("expected_tetrahedron.json"))
    out = {"fields": raw["fields"]}
    for key in ("kappa0", "kappa1"):
        block = raw[key]
        out[key] = {
            "counts": {int(q): int(c) for q, c in block["counts"].items()},
            "fit_coefficients": tuple(
                Fraction(int(c["num"]), int(c["den"])) for c in block["fit_coefficients"]
            ),
            "integral": bool(block["integral"]),
        }
    return out
