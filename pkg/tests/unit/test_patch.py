"""Unit tests for patches and cluster records.

Tests cover:
1. Curvature, perimeter and gaps of free patches
2. Growing a patch along a gap
3. Canonical keys
4. Patches cut from host graphs, discs and closures
"""

import pytest

from clusters.patch import ClusterRecord, Patch, closure, closure_faces, k_disc
from planar.catalog import dodecahedron, truncated_octahedron
from planar.dual import DualGraph


def test_single_pentagon_measures():
    """One pentagon: curvature 1, five stubs, five unit gaps."""
    patch = Patch.single_face(5)
    assert patch.curvature == 1
    assert patch.perimeter == 5
    assert patch.gaps() == [(i, 1) for i in range(5)]
    assert patch.small_faces() == [0]
    assert not patch.is_closed()


def test_add_hexagon_along_gap():
    """A hexagon on one edge of a pentagon leaves seven stubs."""
    grown = Patch.single_face(5).add_face(0, 1, 6)
    assert grown is not None
    assert grown.sizes == [5, 6]
    assert grown.perimeter == 7
    assert grown.curvature == 1
    assert grown.inner_neighbours(0) == [1]


def test_add_face_rejects_impossible_sizes():
    """A face must be longer than the gap it closes."""
    patch = Patch.single_face(5)
    assert patch.add_face(0, 1, 1) is None
    assert patch.add_face(0, 5, 6) is None


def test_canonical_key_ignores_position():
    """Growing at any gap of a pentagon gives the same patch up to isomorphism."""
    patch = Patch.single_face(5)
    keys = {patch.add_face(start, 1, 6).canonical_key for start in range(5)}
    assert len(keys) == 1


def test_canonical_key_separates_shapes():
    """A pentagon and a quadrangle differ, as do different growths."""
    assert Patch.single_face(5).canonical_key != Patch.single_face(4).canonical_key
    pent = Patch.single_face(5)
    assert pent.add_face(0, 1, 6).canonical_key != pent.add_face(0, 1, 5).canonical_key


def test_inconsistent_walks_rejected():
    """Two faces may not traverse a dart in the same direction."""
    with pytest.raises(ValueError):
        Patch([[0, 1, 2]], [0, 1, 2])


def test_disc_of_dodecahedron():
    """The 1-disc of a C20 pentagon is six pentagons with five stubs."""
    emb = dodecahedron()
    patch = k_disc(emb, 0, 1)
    assert len(patch.faces) == 6
    assert patch.curvature == 6
    assert patch.perimeter == 5
    record = ClusterRecord.in_graph(emb, patch.host[1])
    assert (record.mu, record.delta) == (6, 5)
    assert not record.direct_check


def test_whole_sphere_is_not_a_patch():
    """Cutting every face leaves no outer face."""
    emb = dodecahedron()
    with pytest.raises(ValueError):
        Patch.from_faces(emb, range(emb.n_faces))
    record = ClusterRecord.in_graph(emb, range(emb.n_faces))
    assert record.patch is None
    assert record.mu == 12 and record.delta == 0


def test_closure_grows_to_two_discs():
    """Closing the 1-disc of a pentagon in C20 swallows the whole graph."""
    emb = dodecahedron()
    assert closure_faces(DualGraph.of(emb), [0]) == set(range(12))
    with pytest.raises(ValueError):
        closure(k_disc(emb, 0, 1))


def test_closure_of_free_patch_requires_closed():
    """Free patches cannot be closed without a host."""
    with pytest.raises(ValueError):
        closure(Patch.single_face(5))


def test_record_invariants():
    """mu = 2 f4 + f5 and the direct-check rule."""
    record = ClusterRecord.from_patch(Patch.single_face(4))
    assert (record.f4, record.f5, record.mu, record.delta) == (1, 0, 2, 4)
    assert not record.direct_check
    assert ClusterRecord(frozenset(), 0, 7, 7, 7).direct_check
    assert not ClusterRecord(frozenset(), 0, 7, 7, 8).direct_check
    assert not ClusterRecord(frozenset(), 0, 6, 6, 0).direct_check


def test_quadrangle_cluster_of_truncated_octahedron():
    """All six quadrangles close up into the whole graph."""
    emb = truncated_octahedron()
    quads = [f.id for f in emb.faces() if f.size == 4]
    region = closure_faces(DualGraph.of(emb), quads)
    record = ClusterRecord.in_graph(emb, region)
    assert record.f4 == 6
    assert record.direct_check
