"""Unit tests for graph classification and dual-graph helpers.

Tests cover:
1. The fullerene / Barnette / <=6 hierarchy on catalog graphs
2. The first violated property for out-of-scope inputs
3. Dual distances and shortest dual paths
"""

import networkx as nx
import pytest

from planar.catalog import build, cube, dodecahedron, k4, nanotube, prism, truncated_octahedron
from planar.classify import GraphKind, classify, is_three_connected
from planar.dual import DualGraph, dual_distance, face_pairs_to_edges, shared_edge_dart
from planar.embedding import PlanarEmbedding


@pytest.mark.parametrize(
    "name,kind,violated",
    [
        ("K4", GraphKind.CUBIC_POLYHEDRAL_LE6, "triangle"),
        ("triangular_prism", GraphKind.CUBIC_POLYHEDRAL_LE6, "triangle"),
        ("cube", GraphKind.CUBIC_POLYHEDRAL_LE6, "adjacent_quadrangles"),
        ("pentagonal_prism", GraphKind.CUBIC_POLYHEDRAL_LE6, "adjacent_quadrangles"),
        ("hexagonal_prism", GraphKind.CUBIC_POLYHEDRAL_LE6, "adjacent_quadrangles"),
        ("dodecahedron", GraphKind.FULLERENE, None),
        ("c60", GraphKind.FULLERENE, None),
        ("truncated_octahedron", GraphKind.BARNETTE, "quadrangle"),
        ("tutte", GraphKind.OUT_OF_SCOPE, "face_size"),
        ("non_hamiltonian_38", GraphKind.OUT_OF_SCOPE, "face_size"),
    ],
)
def test_catalog_classification(name, kind, violated):
    """Catalog graphs land in the expected class."""
    result = classify(build(name))
    assert result.kind == kind
    assert result.violated == violated


def test_nested_flags():
    """Fullerenes are Barnette; everything but out-of-scope is in scope."""
    assert classify(dodecahedron()).is_barnette
    assert classify(truncated_octahedron()).is_barnette
    assert not classify(cube()).is_barnette
    assert classify(cube()).in_scope
    assert not classify(build("tutte")).in_scope


def test_nanotubes_are_fullerenes():
    """Capped tubes only have pentagons and hexagons."""
    for m in (1, 2, 5):
        assert classify(nanotube(m)).kind == GraphKind.FULLERENE


def test_multi_edge_is_out_of_scope():
    """The theta graph fails on its parallel edges first."""
    theta = PlanarEmbedding([[1, 1, 1], [0, 0, 0]], allow_multi=True)
    result = classify(theta)
    assert result.kind == GraphKind.OUT_OF_SCOPE
    assert result.violated == "multi_edge"


def test_non_planar_rotation_reports_genus():
    """K4 with one rotation reversed embeds on the torus."""
    rotations = k4().rotations()
    rotations[0] = list(reversed(rotations[0]))
    emb = PlanarEmbedding(rotations)
    assert emb.genus == 1
    assert classify(emb).violated == "genus"


def test_two_connected_graph_is_out_of_scope():
    """Two K4-minus-an-edge pieces joined by two edges have a 2-cut."""
    graph = nx.Graph()
    graph.add_edges_from([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    graph.add_edges_from([(4, 5), (4, 6), (5, 6), (5, 7), (6, 7)])
    graph.add_edges_from([(0, 4), (3, 7)])
    emb = PlanarEmbedding.from_networkx(graph)
    assert not is_three_connected(emb.to_networkx())
    assert classify(emb).violated == "connectivity"


def test_census_is_reported():
    """The face census travels with the classification."""
    assert classify(prism(6)).census == {6: 2, 4: 6}


def test_dual_of_dodecahedron():
    """The dual is the icosahedron: five neighbours each, diameter 3."""
    dual = DualGraph.of(dodecahedron())
    assert len(dual.nodes) == 12
    assert all(len(set(dual.neighbours(f))) == 5 for f in dual.nodes)
    assert max(dual_distance(dual, 0, f) for f in dual.nodes) == 3
    assert dual.pentagons == frozenset(dual.nodes)
    assert not dual.quadrangles


def test_cube_opposite_faces():
    """Opposite cube faces are at dual distance 2."""
    dual = DualGraph.of(cube())
    distances = sorted(dual_distance(dual, 0, f) for f in dual.nodes)
    assert distances == [0, 1, 1, 1, 1, 2]


def test_shortest_path_respects_blocked():
    """Blocked faces are routed around."""
    dual = DualGraph.of(prism(6))
    hexagons = [f for f in dual.nodes if dual.size(f) == 6]
    path = dual.shortest_path(hexagons[0], hexagons[1])
    assert path is not None and len(path) == 3
    blocked = set(dual.quadrangles)
    assert dual.shortest_path(hexagons[0], hexagons[1], blocked=blocked) is None


def test_shared_edges():
    """Adjacent faces share exactly one edge in a 3-connected graph."""
    emb = truncated_octahedron()
    table = face_pairs_to_edges(emb)
    assert len(table) == emb.n_edges
    (f, g), darts = next(iter(table.items()))
    d = shared_edge_dart(emb, f, g)
    assert emb.edge_id(d) in {emb.edge_id(x) for x in darts}
