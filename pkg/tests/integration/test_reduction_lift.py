"""Every Hamilton cycle of a reduced graph lifts to the original.

Checked exhaustively on the small catalog graphs in the <=6 class.
"""

import pytest

from oracle.search import all_hamilton_cycles
from planar.catalog import build
from planar.classify import GraphKind, classify
from planar.verify import verify_hamiltonian
from reduction.steps import lift_cycle, reduce_to_barnette, terminal_cycle

SMALL = [
    "triangular_prism",
    "pentagonal_prism",
    "hexagonal_prism",
    "truncated_cube_vertex",
    "truncated_dodecahedron_vertex",
]


@pytest.mark.parametrize("name", SMALL)
def test_all_cycles_lift(name):
    emb = build(name)
    assert classify(emb).kind == GraphKind.CUBIC_POLYHEDRAL_LE6
    trace = reduce_to_barnette(emb, debug_checks=True)
    if trace.terminal is not None:
        cycles = [terminal_cycle(trace.terminal, trace.final)]
    else:
        cycles = all_hamilton_cycles(trace.final)
    assert cycles
    for cycle in cycles:
        lifted = lift_cycle(trace, cycle)
        check = verify_hamiltonian(emb, lifted)
        assert check, f"{name}: {check.reason} {check.detail}"

