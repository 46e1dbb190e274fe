"""
Plane cubic graph core: embeddings, formats, classification and certificates.

Usage:
    from planar import decode_planar_code, classify, verify_hamiltonian
"""

from .classify import Classification, GraphKind, classify
from .dual import DualGraph, dual_distance
from .edge_list import format_edge_list, iter_edge_list, parse_edge_list
from .embedding import Face, PlanarEmbedding
from .exceptions import (
    BarnetteError,
    CapExceeded,
    ClusterUnresolvable,
    EmbeddingError,
    FactorInvalid,
    GlueError,
    LiftError,
    NotApplicable,
    PlanarCodeError,
    ReductionError,
)
from .planar_code import decode_planar_code, encode_planar_code, read_planar_code
from .verify import CycleCheck, CycleDefect, verify_hamiltonian

__all__ = [
    "PlanarEmbedding",
    "Face",
    "DualGraph",
    "dual_distance",
    "classify",
    "Classification",
    "GraphKind",
    "verify_hamiltonian",
    "CycleCheck",
    "CycleDefect",
    "decode_planar_code",
    "encode_planar_code",
    "read_planar_code",
    "parse_edge_list",
    "iter_edge_list",
    "format_edge_list",
    "BarnetteError",
    "EmbeddingError",
    "PlanarCodeError",
    "ReductionError",
    "LiftError",
    "FactorInvalid",
    "ClusterUnresolvable",
    "NotApplicable",
    "CapExceeded",
    "GlueError",
]

__version__ = "1.0.0"
