"""
Reductions to Barnette graphs and the lifting of Hamilton cycles back.

Usage:
    from reduction import reduce_to_barnette, lift_cycle

    trace = reduce_to_barnette(embedding)
    cycle = lift_cycle(trace, cycle_of_reduced_graph)
"""

from .steps import (
    ReductionKind,
    ReductionStep,
    ReductionTrace,
    find_site,
    lift_cycle,
    lift_step,
    reduce_quads,
    reduce_to_barnette,
    reduce_triangle,
    terminal_cycle,
)

__all__ = [
    "ReductionKind",
    "ReductionStep",
    "ReductionTrace",
    "find_site",
    "reduce_triangle",
    "reduce_quads",
    "reduce_to_barnette",
    "terminal_cycle",
    "lift_step",
    "lift_cycle",
]
