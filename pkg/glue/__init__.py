"""
Gluing factor cycles into a Hamilton cycle through resonant hexagons.
"""

from .h_multigraph import BLACK, RED, WHITE, HMulti, VertexState, build_H
from .reducer import (
    GlueFrame,
    GlueResult,
    GlueState,
    classify_vertices,
    glue_all,
    greedy_rescue,
    pick_next,
    reduce_vertex,
)

__all__ = [
    "HMulti",
    "VertexState",
    "build_H",
    "RED",
    "BLACK",
    "WHITE",
    "GlueState",
    "GlueFrame",
    "GlueResult",
    "classify_vertices",
    "pick_next",
    "reduce_vertex",
    "glue_all",
    "greedy_rescue",
]
