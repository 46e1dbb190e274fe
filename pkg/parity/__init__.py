"""
Parity of the number of factor cycles and the recolourings that flip it.
"""

from .handlers import ParityOutcome, cluster_tags, fix_parity, solve_by_truncation, special_family
from .operations import ParityOp, ParityOpKind, RepairContext, apply_O, fix_parity_quad
from .stats import ParityStats, parity_stats

__all__ = [
    "ParityStats",
    "parity_stats",
    "ParityOp",
    "ParityOpKind",
    "RepairContext",
    "fix_parity_quad",
    "apply_O",
    "ParityOutcome",
    "fix_parity",
    "cluster_tags",
    "special_family",
    "solve_by_truncation",
]
