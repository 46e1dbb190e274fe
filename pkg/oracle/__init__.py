"""
Exact search used for validation, base cases and fallback.
"""

from .search import (
    DEFAULT_CAP,
    HamiltonSearch,
    SearchResult,
    SearchStats,
    all_hamilton_cycles,
    brute_hamilton,
    fallback_hamilton,
)
from .two_factors import count_2factors, enumerate_2factors

__all__ = [
    "DEFAULT_CAP",
    "HamiltonSearch",
    "SearchResult",
    "SearchStats",
    "brute_hamilton",
    "all_hamilton_cycles",
    "fallback_hamilton",
    "enumerate_2factors",
    "count_2factors",
]
