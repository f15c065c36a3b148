"""Search trees on graphs, rotations, projections and tree-associahedron bounds."""

from .errors import CapExceeded, ElimForestError, GraphError, InvalidTreeError, RotationError
from .graph import Graph, new_graph
from .search_tree import SearchTree

__all__ = [
    "CapExceeded",
    "ElimForestError",
    "Graph",
    "GraphError",
    "InvalidTreeError",
    "RotationError",
    "SearchTree",
    "new_graph",
]
