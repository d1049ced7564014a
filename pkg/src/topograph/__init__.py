"""Topological graphs with discrete vertex and edge spaces: duals, boundary
paths, the shift groupoid, K-groups and unitality of the graph algebra."""

from .core import OMEGA, Cardinal, EdgeGroup, Graph, GraphError, classify, validate
from .dual import dual, isomorphic, iterate, product_form, relative_dual
from .ktheory import AbelianGroup, k_groups

__all__ = [
    "OMEGA", "Cardinal", "EdgeGroup", "Graph", "GraphError", "classify", "validate",
    "dual", "isomorphic", "iterate", "product_form", "relative_dual",
    "AbelianGroup", "k_groups",
]
