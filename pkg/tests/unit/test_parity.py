"""Unit tests for parity counting and parity repair.

Tests cover:
1. The counting identities on hand-checked colourings
2. Strict mode rejecting inconsistent counts
3. Cluster shape tags and special families
4. The truncation route (truncate, search, contract)
5. fix_parity never handing back an even factor
6. Side conditions of the quadrangle and pentagon operations
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factor.assemble import assess
from factor.coloring import COLOURS, GWColoring, cut_along, grey_white, three_coloring
from factor.configurations import configurations
from factor.cut_path import DualPath
from factor.ladder import build_factor
from factor.two_factor import TwoFactor
from factor.x_paths import XPath, flank_side
from oracle.search import brute_hamilton
from parity.handlers import (
    c3_centre,
    cluster_tags,
    contract_cycle,
    fix_parity,
    special_family,
    truncate_vertices,
)
from parity.operations import ParityOpKind, RepairContext, apply_O, fix_parity_quad
from parity.stats import ParityStats, parity_stats
from planar.catalog import dodecahedron, nanotube, prism, truncated_octahedron
from planar.dual import DualGraph
from planar.exceptions import BarnetteError, FactorInvalid, NotApplicable
from planar.verify import verify_hamiltonian


@pytest.fixture(scope="module")
def octa_pairs():
    """(colouring, factor) for each colour class of the truncated octahedron."""
    emb = truncated_octahedron()
    cut = cut_along(emb, DualPath())
    colour = three_coloring(cut)
    pairs = []
    for choice in COLOURS:
        coloring = grey_white(emb, cut, colour, choice)
        pairs.append((coloring, assess(emb, coloring.grey).factor))
    return emb, pairs


def test_consistent_counts_have_no_violations():
    """Quadrangle class: c = 6; hexagon class: c = 4."""
    quads = ParityStats(f4=6, f5=0, f6=8, x4=6, x5=0, x6=0, q=0, c=6)
    hexes = ParityStats(f4=6, f5=0, f6=8, x4=0, x5=0, x6=4, q=0, c=4)
    assert quads.violations(24) == []
    assert hexes.violations(24) == []
    assert not quads.c_odd


def test_inconsistent_counts_are_reported():
    """Changing c alone breaks both the parity sum and the vertex count."""
    stats = ParityStats(f4=6, f5=0, f6=8, x4=6, x5=0, x6=0, q=0, c=5)
    problems = stats.violations(24)
    assert len(problems) == 2
    assert ParityStats(f4=0, f5=12, f6=0, x4=0, x5=10, x6=0, q=0, c=1).violations()


def test_parity_stats_on_colour_classes(octa_pairs):
    """Counts taken from real colourings satisfy the identities."""
    emb, pairs = octa_pairs
    cycles = []
    for coloring, factor in pairs:
        stats = parity_stats(emb, coloring, factor)
        assert stats.f4 == 6 and stats.f6 == 8 and stats.f5 == 0
        assert stats.q == 0
        assert stats.parity_sum % 2 == 0
        cycles.append(stats.c)
    assert sorted(cycles) == [4, 4, 6]


def test_strict_rejects_mismatched_factor(octa_pairs):
    """Pairing the quadrangle colouring with a hexagon-class factor is inconsistent."""
    emb, pairs = octa_pairs
    quad_coloring = next(c for c, _ in pairs if c.grey_count(4) == 6)
    hex_factor = next(f for c, f in pairs if c.grey_count(4) == 0)
    with pytest.raises(FactorInvalid):
        parity_stats(emb, quad_coloring, hex_factor)
    loose = parity_stats(emb, quad_coloring, hex_factor, strict=False)
    assert loose.violations(emb.n_vertices)


@pytest.mark.parametrize(
    "tags,family",
    [
        ({0: ["cap6"], 1: ["cap6"]}, "double_cap"),
        ({0: ["C3"], 1: ["C3"], 2: ["C3"], 3: ["C3"]}, "four_c3"),
        ({0: ["C3"], 1: ["C3"], 2: ["C3"], 3: ["C0"], 4: ["C0"], 5: ["C0"]}, "three_c3_three_c0"),
        ({0: ["quad4"], 1: []}, "quad4"),
        ({0: ["C3"], 1: ["C3"], 2: ["C3"], 3: ["C3"], 4: ["C0"]}, None),
        ({0: ["C1"], 1: ["C2"]}, None),
        ({}, None),
    ],
)
def test_special_family(tags, family):
    """Tag patterns map to their special treatment."""
    assert special_family(tags) == family


def test_nanotube_caps_are_tagged():
    """Both caps of a long tube are six pentagons around a central one."""
    emb = nanotube(10)
    configs = configurations(emb)
    tags = cluster_tags(emb, configs)
    assert tags == {0: ["cap6"], 1: ["cap6"]}
    assert configs[0].cluster.tags == ["cap6"]
    assert special_family(tags) == "double_cap"


def test_untagged_shapes():
    """The full C20 cluster and the quadrangle-only cluster carry no tag."""
    assert cluster_tags(dodecahedron()) == {0: []}
    assert cluster_tags(truncated_octahedron()) == {0: []}


def test_c3_centre():
    """Three pentagons around a vertex of C20 meet at that vertex."""
    emb = dodecahedron()
    faces = list(emb.faces_at(0))
    assert c3_centre(emb, faces) == 0
    first = faces[0]
    touching = {emb.face_of(emb.twin(d)) for d in emb.face(first).darts}
    apart = [f.id for f in emb.faces() if f.id not in touching and f.id != first][:2]
    assert c3_centre(emb, [first] + apart) is None


def test_truncate_and_contract():
    """A cycle of the truncated graph contracts to a Hamilton cycle of the original."""
    emb = dodecahedron()
    truncated, owner = truncate_vertices(emb, [0, 7])
    assert truncated.n_vertices == 24
    assert sorted(set(owner.values())) == list(range(20))
    cycle = brute_hamilton(truncated)
    assert cycle is not None
    assert verify_hamiltonian(emb, contract_cycle(cycle, owner)).ok


def test_contract_cycle_merges_wraparound():
    """Triangle corners split across the cycle ends merge into one vertex."""
    owner = {0: 0, 1: 1, 2: 2, 3: 0, 4: 0}
    assert contract_cycle([0, 1, 2, 3, 4], owner) == [0, 1, 2]


def test_odd_factor_is_returned_unchanged():
    """fix_parity leaves an odd factor alone."""
    emb = prism(6)
    factor = TwoFactor.from_cycles(emb, [[0, 1, 7, 6], [2, 3, 9, 8], [4, 5, 11, 10]])
    coloring = GWColoring(embedding=emb, grey=frozenset(), choice=0)
    outcome = fix_parity(emb, coloring, factor)
    assert outcome.factor is factor
    assert outcome.op is None


def test_fix_parity_never_returns_even(octa_pairs):
    """Either the repair yields an odd usable factor or it reports NotApplicable."""
    emb, pairs = octa_pairs
    for coloring, factor in pairs:
        try:
            outcome = fix_parity(emb, coloring, factor, budget=2000)
        except NotApplicable:
            continue
        assert outcome.factor.n_cycles % 2 == 1
        assert assess(emb, outcome.coloring.grey).valid
        assert outcome.op is not None


@pytest.mark.slow
@settings(max_examples=5, deadline=None)
@given(m=st.integers(min_value=2, max_value=5))
def test_identities_hold_on_nanotubes(m):
    """Whenever the ladder yields a factor, the counting identities hold."""
    emb = nanotube(m)
    try:
        outcome = build_factor(emb, budget=4000)
    except BarnetteError:
        return
    stats = parity_stats(emb, outcome.coloring, outcome.factor, strict=False)
    assert stats.violations(emb.n_vertices) == []


@pytest.fixture(scope="module")
def octa_ctx():
    emb = truncated_octahedron()
    dual = DualGraph.of(emb)
    return RepairContext(emb, dual, configurations(emb, dual))


def test_quad_move_needs_a_quadrangle(octa_ctx, octa_pairs):
    _, pairs = octa_pairs
    coloring, _ = pairs[0]
    hexagon = next(f.id for f in octa_ctx.embedding.faces() if f.size == 6)
    with pytest.raises(NotApplicable, match="not a quadrangle"):
        fix_parity_quad(octa_ctx, coloring, hexagon)


def test_o1_needs_grey_pentagons(octa_ctx, octa_pairs):
    _, pairs = octa_pairs
    coloring, _ = pairs[0]
    white = sorted(set(range(octa_ctx.embedding.n_faces)) - coloring.grey)
    with pytest.raises(NotApplicable, match="two grey pentagons"):
        apply_O(octa_ctx, coloring, ParityOpKind.O1, (white[0], white[1]))


def test_o2_needs_an_open_path(octa_ctx, octa_pairs):
    _, pairs = octa_pairs
    coloring, _ = pairs[0]
    with pytest.raises(NotApplicable, match="open"):
        apply_O(octa_ctx, coloring, ParityOpKind.O2, (XPath(),))
    loop = XPath(faces=[0, 1, 0], edges=[0, 1], is_cycle=True)
    with pytest.raises(NotApplicable, match="open"):
        apply_O(octa_ctx, coloring, ParityOpKind.O2, (loop,))


def test_quad_moves_are_not_pentagon_operations(octa_ctx, octa_pairs):
    _, pairs = octa_pairs
    coloring, _ = pairs[0]
    with pytest.raises(NotApplicable):
        apply_O(octa_ctx, coloring, ParityOpKind.QUAD_REROUTE, ())


def _one_step_path(emb, d):
    """A ×-path crossing the edge of ``d`` lengthwise, from its origin end."""
    pair = emb.edge_faces(d)
    a = next(f for f in emb.faces_at(emb.origin(d)) if f not in pair)
    b = next(f for f in emb.faces_at(emb.target(d)) if f not in pair)
    return XPath(faces=[a, b], edges=[d]), pair


def test_flank_side_follows_walk_direction():
    emb = dodecahedron()
    path, (left, right) = _one_step_path(emb, 0)
    assert flank_side(emb, path, left) == 0
    assert flank_side(emb, path, right) == 1
    assert flank_side(emb, path, path.faces[0]) is None
    backwards = XPath(faces=path.faces[::-1], edges=[emb.twin(0)])
    assert flank_side(emb, backwards, left) == 1


def test_push_checks_sides_before_moving():
    """O3 wants both pentagons on one side, O4 on opposite sides."""
    emb = dodecahedron()
    ctx = RepairContext(emb, DualGraph.of(emb), [])
    path, (left, right) = _one_step_path(emb, 0)
    far = next(f for f in range(emb.n_faces) if f not in {left, right, *path.faces})
    coloring = GWColoring(embedding=emb, grey=frozenset({left, right, far}), choice=0)
    with pytest.raises(NotApplicable, match="same side"):
        apply_O(ctx, coloring, ParityOpKind.O3, (path, left, right))
    with pytest.raises(NotApplicable, match="along one side"):
        apply_O(ctx, coloring, ParityOpKind.O4, (path, left, far))
    with pytest.raises(NotApplicable, match="open"):
        apply_O(ctx, coloring, ParityOpKind.O4, (XPath(), left, right))
