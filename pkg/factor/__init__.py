"""
2-factors of Barnette graphs from grey/white face colourings.

Usage:
    from factor import build_factor

    outcome = build_factor(embedding)
    print(outcome.factor.n_cycles)
"""

from .assemble import FactorAssessment, assess, coloring_to_factor
from .coloring import CutPatch, GWColoring, cut_along, grey_white, shift_region, three_coloring
from .configurations import Configuration, configurations
from .cut_path import DualPath, build_cut_path
from .ladder import FactorOutcome, build_factor, direct_check_configs, initial_coloring
from .resolve import LocalSearch, resolve_clusters
from .two_factor import TwoFactor
from .x_paths import XPath, shorten_all, shorten_x_path, trace_x_paths, x_graph

__all__ = [
    "TwoFactor",
    "Configuration",
    "configurations",
    "DualPath",
    "build_cut_path",
    "CutPatch",
    "cut_along",
    "three_coloring",
    "GWColoring",
    "grey_white",
    "shift_region",
    "XPath",
    "x_graph",
    "trace_x_paths",
    "shorten_x_path",
    "shorten_all",
    "LocalSearch",
    "resolve_clusters",
    "FactorAssessment",
    "assess",
    "coloring_to_factor",
    "FactorOutcome",
    "build_factor",
    "direct_check_configs",
    "initial_coloring",
]
