"""Unit tests for reductions and cycle lifting.

Tests cover:
1. Reduction sequences on graphs with triangles and adjacent quadrangles
2. Terminal K4 and cube cycles
3. Lifting every Hamilton cycle of each reduced graph through its step
4. Rejection of sites that do not match the requested reduction
"""

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle.search import all_hamilton_cycles, brute_hamilton
from planar.catalog import build, cube, dodecahedron, k4, prism, truncate_vertex, truncated_octahedron
from planar.classify import classify
from planar.exceptions import ReductionError
from planar.verify import verify_hamiltonian
from reduction.steps import (
    ReductionKind,
    find_site,
    lift_cycle,
    lift_step,
    reduce_quads,
    reduce_to_barnette,
    reduce_triangle,
    terminal_cycle,
)


def kinds(name):
    return [step.kind for step in reduce_to_barnette(build(name)).steps]


@pytest.mark.parametrize(
    "name,expected",
    [
        ("K4", [ReductionKind.TERMINAL_K4]),
        ("triangular_prism", [ReductionKind.TRIANGLE_CONTRACT, ReductionKind.TERMINAL_K4]),
        ("cube", [ReductionKind.TERMINAL_CUBE]),
        ("truncated_cube_vertex", [ReductionKind.TRIANGLE_CONTRACT, ReductionKind.TERMINAL_CUBE]),
        (
            "pentagonal_prism",
            [ReductionKind.QUAD_PAIR_EXCISE, ReductionKind.TRIANGLE_CONTRACT, ReductionKind.TERMINAL_K4],
        ),
        ("hexagonal_prism", [ReductionKind.QUAD_PAIR_EXCISE, ReductionKind.TERMINAL_CUBE]),
        ("truncated_dodecahedron_vertex", [ReductionKind.TRIANGLE_CONTRACT]),
    ],
)
def test_reduction_sequences(name, expected):
    """Each small graph follows its known reduction path."""
    assert kinds(name) == expected


def test_barnette_graph_needs_no_reduction():
    """A Barnette input yields an empty trace."""
    trace = reduce_to_barnette(truncated_octahedron())
    assert trace.steps == []
    assert trace.final is trace.original
    assert trace.terminal is None
    assert find_site(dodecahedron()) is None


def test_truncated_vertex_reduces_to_original():
    """Contracting the new triangle gives back the dodecahedron."""
    trace = reduce_to_barnette(build("truncated_dodecahedron_vertex"), debug_checks=True)
    assert trace.final.n_vertices == 20
    assert nx.is_isomorphic(trace.final.to_networkx(), dodecahedron().to_networkx())
    assert classify(trace.final).is_barnette


def test_pentagonal_prism_excise_gives_triangular_prism():
    """Excising a quadrangle pair of the pentagonal prism leaves the triangular prism."""
    trace = reduce_to_barnette(prism(5))
    after = trace.steps[0].after
    assert after.n_vertices == 6
    assert nx.is_isomorphic(after.to_networkx(), prism(3).to_networkx())


def test_hexagonal_prism_excise_gives_cube():
    """Excising a quadrangle pair of the hexagonal prism leaves the cube."""
    trace = reduce_to_barnette(prism(6))
    assert trace.steps[0].after.n_vertices == 8
    assert trace.terminal == ReductionKind.TERMINAL_CUBE


@pytest.mark.parametrize("builder,kind", [(k4, ReductionKind.TERMINAL_K4), (cube, ReductionKind.TERMINAL_CUBE)])
def test_terminal_cycles(builder, kind):
    """Terminal graphs come with a certified Hamilton cycle."""
    emb = builder()
    assert verify_hamiltonian(emb, terminal_cycle(kind, emb)).ok


@pytest.mark.parametrize(
    "name",
    [
        "triangular_prism",
        "truncated_cube_vertex",
        "pentagonal_prism",
        "hexagonal_prism",
        "truncated_dodecahedron_vertex",
    ],
)
def test_every_cycle_lifts(name):
    """Each Hamilton cycle of a reduced graph lifts to one of the graph before."""
    trace = reduce_to_barnette(build(name))
    for step in trace.steps:
        if step.is_terminal:
            continue
        cycles = all_hamilton_cycles(step.after)
        assert cycles
        for cycle in cycles:
            lifted = lift_step(step, cycle)
            assert verify_hamiltonian(step.before, lifted).ok, (step.kind, cycle, lifted)


@pytest.mark.parametrize("name", ["triangular_prism", "pentagonal_prism", "hexagonal_prism", "truncated_cube_vertex"])
def test_lift_whole_trace(name):
    """A terminal cycle lifts through the whole trace."""
    emb = build(name)
    trace = reduce_to_barnette(emb)
    cycle = terminal_cycle(trace.terminal, trace.final)
    assert verify_hamiltonian(emb, lift_cycle(trace, cycle)).ok


@settings(max_examples=10, deadline=None)
@given(v=st.integers(min_value=0, max_value=23))
def test_truncating_any_vertex_round_trips(v):
    """Truncating any vertex of a Barnette graph then reducing recovers a cycle."""
    emb = truncate_vertex(truncated_octahedron(), v, name="t")
    trace = reduce_to_barnette(emb)
    assert [s.kind for s in trace.steps] == [ReductionKind.TRIANGLE_CONTRACT]
    cycle = brute_hamilton(trace.final)
    assert verify_hamiltonian(emb, lift_cycle(trace, cycle)).ok


def test_trace_summary_is_one_based():
    """Summaries report site vertices 1-based."""
    trace = reduce_to_barnette(prism(3))
    summary = trace.to_dict()
    assert summary["n"] == 6
    assert summary["final_n"] == 4
    assert summary["terminal"] == "terminal_K4"
    assert all(v >= 1 for v in summary["steps"][0]["site_vertices"])


def test_reduce_triangle_rejects_other_faces():
    """Only triangles can be contracted."""
    emb = cube()
    with pytest.raises(ReductionError):
        reduce_triangle(emb, 0)


def test_reduce_quads_rejects_non_adjacent_pair():
    """The truncated octahedron's quadrangles never touch."""
    emb = truncated_octahedron()
    quads = [f.id for f in emb.faces() if f.size == 4]
    with pytest.raises(ReductionError):
        reduce_quads(emb, quads[0], quads[1])


def test_reduce_quads_rejects_hexagon():
    """A hexagon is not a quadrangle."""
    emb = prism(6)
    hexagon = next(f.id for f in emb.faces() if f.size == 6)
    quad = next(f.id for f in emb.faces() if f.size == 4)
    with pytest.raises(ReductionError):
        reduce_quads(emb, hexagon, quad)
