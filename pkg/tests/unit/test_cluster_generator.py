"""Unit tests for cluster generation and the completion of capped clusters.

Tests cover:
1. Cluster counts of small cells
2. Rejection of empty and over-curved cells
3. Gap choice and patch completion
4. Capped clusters completed into graphs
"""

import networkx as nx
import pytest

from clusters.generator import (
    ClusterGenerator,
    complete_patch,
    enumerate_capped_graphs,
    generate_clusters,
    least_convex_gap,
)
from clusters.patch import ClusterRecord, Patch
from planar.catalog import dodecahedron


def test_single_pentagon_cell():
    """A lone pentagon among hexagons has exactly one cluster."""
    db = generate_clusters(0, 1)
    assert db.count == 1
    assert not db.incomplete
    (record,) = list(db)
    assert (record.f4, record.f5, record.mu) == (0, 1, 1)
    assert record.patch.is_closed()


@pytest.mark.slow
@pytest.mark.parametrize("f4,f5,expected", [(0, 2, 3), (0, 3, 11), (1, 1, 3), (2, 1, 16)])
def test_small_cells(f4, f5, expected):
    """Known numbers of clusters for small cells."""
    db = generate_clusters(f4, f5)
    assert not db.incomplete
    assert db.count == expected


@pytest.mark.parametrize("f4,f5", [(0, 0), (-1, 2), (7, 0), (3, 7)])
def test_invalid_cells(f4, f5):
    """Cells must be non-empty and within total curvature 12."""
    with pytest.raises(ValueError):
        generate_clusters(f4, f5)


def test_budget_marks_incomplete():
    """Running out of nodes is recorded, not raised."""
    db = generate_clusters(0, 1, budget=2)
    assert db.incomplete
    assert db.nodes == 2


def test_least_convex_gap():
    """All gaps of a pentagon tie; the first one wins."""
    assert least_convex_gap(Patch.single_face(5)) == (0, 1)
    grown = Patch.single_face(5).add_face(0, 1, 6)
    start, t = least_convex_gap(grown)
    assert t == max(run for _, run in grown.gaps())


def test_least_convex_gap_respects_candidates():
    """Gaps away from the candidate faces are ignored."""
    grown = Patch.single_face(5).add_face(0, 1, 6)
    start, t = least_convex_gap(grown, candidates={0})
    assert 0 in grown.gap_faces(start, t)
    assert least_convex_gap(grown, candidates={99}) is None


def dodecahedron_minus_face():
    emb = dodecahedron()
    return Patch.from_faces(emb, range(1, 12))


def test_complete_patch_without_stubs():
    """Eleven pentagons of C20 close back up into C20."""
    patch = dodecahedron_minus_face()
    assert patch.perimeter == 0
    completed = complete_patch(patch)
    assert completed is not None
    assert nx.is_isomorphic(completed.to_networkx(), dodecahedron().to_networkx())


def test_complete_patch_rejects_many_stubs():
    """A pentagon has five stubs, too many to close directly."""
    assert complete_patch(Patch.single_face(5)) is None


def test_enumerate_capped_graphs():
    """The only completion of eleven C20 pentagons is C20."""
    record = ClusterRecord.from_patch(dodecahedron_minus_face())
    assert record.direct_check
    graphs = enumerate_capped_graphs(record, budget=1000)
    assert len(graphs) == 1
    assert graphs[0].n_vertices == 20


def test_enumerate_capped_graphs_rejects_open_clusters():
    """Uncapped clusters are handled by the checker instead."""
    with pytest.raises(ValueError):
        enumerate_capped_graphs(ClusterRecord.from_patch(Patch.single_face(5)))
    with pytest.raises(ValueError):
        enumerate_capped_graphs(ClusterRecord(frozenset(), 0, 12, 12, 0))


def test_generator_completes_stubless_seed():
    """A seed without stubs is completed right away, not stored as a cluster."""
    generator = ClusterGenerator(0, 11, budget=100)
    seed = dodecahedron_minus_face()
    db = generator.run(seed)
    assert len(db.graphs) == 1
    assert db.count == 0
