"""Exhaustive verification of generalized Turán numbers for cycles and bicliques."""

from __future__ import annotations

__version__ = "0.1.0"

from turanlab.graph import (  # noqa: E402
    CanonicalForm,
    Graph,
    GraphError,
    automorphism_count,
    canonical_form,
    from_graph6,
    is_isomorphic,
    new_graph,
    to_graph6,
)
from turanlab.graph6 import Graph6Error  # noqa: E402
from turanlab.kernels import BACKEND  # noqa: E402

__all__ = [
    "BACKEND",
    "CanonicalForm",
    "Graph",
    "Graph6Error",
    "GraphError",
    "__version__",
    "automorphism_count",
    "canonical_form",
    "from_graph6",
    "is_isomorphic",
    "new_graph",
    "to_graph6",
]
