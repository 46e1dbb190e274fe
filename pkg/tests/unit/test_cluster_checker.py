"""Unit tests for the cluster extension checker.

Tests cover:
1. Closing a cluster off with a ring
2. Segment counts and scenario positions
3. Skipped clusters
4. The parity criterion on a lone pentagon
5. Parity failures among the smallest pentagon clusters
6. Relabelling pieces when the cut leaves through ring faces
"""

import pytest

from clusters.checker import (
    OPEN_SIDE,
    CheckReport,
    Criterion,
    _combine,
    check_cluster,
    ring_cluster,
    scenarios,
    segment_count,
)
from clusters.generator import generate_clusters
from clusters.patch import ClusterRecord, Patch
from planar.catalog import dodecahedron
from planar.classify import classify


def test_ring_around_pentagon():
    """A pentagon plus ring is the pentagonal prism."""
    ringed = ring_cluster(Patch.single_face(5))
    assert ringed.embedding.n_vertices == 10
    assert len(ringed.inner) == 1
    assert len(ringed.ring) == 5
    assert ringed.cluster_vertices == frozenset(range(5))
    assert ringed.stubs == frozenset(range(5))
    assert ringed.embedding.face(ringed.outer).size == 5
    assert classify(ringed.embedding).in_scope


def test_ring_needs_three_stubs():
    """A patch with no stubs cannot be ringed."""
    with pytest.raises(ValueError):
        ring_cluster(Patch.from_faces(dodecahedron(), range(1, 12)))


@pytest.mark.parametrize(
    "mu,delta,segments",
    [(1, 5, 2), (5, 11, 2), (6, 6, 1), (8, 9, 1), (8, 5, 0), (7, 7, 0)],
)
def test_segment_count(mu, delta, segments):
    """Two segments below curvature 6, one at 6 or when open, none when capped."""
    assert segment_count(ClusterRecord(frozenset(), 0, mu, mu, delta)) == segments


def test_scenarios_for_pentagon():
    """Two leaving segments: every pair of ring faces."""
    patch = Patch.single_face(5)
    record = ClusterRecord.from_patch(patch)
    positions = scenarios(ring_cluster(patch), record)
    assert len(positions) == 10
    assert all(a < b for a, b in positions)


def test_scenarios_without_pentagons():
    """Quadrangle-only clusters have no cut."""
    patch = Patch.single_face(4)
    assert scenarios(ring_cluster(patch), ClusterRecord.from_patch(patch)) == [(None, None)]


def test_skipped_clusters():
    """Records without a patch or with a cap are not checked here."""
    no_patch = check_cluster(ClusterRecord(frozenset(), 0, 1, 1, 5))
    assert no_patch.skipped == "no_patch"
    assert not no_patch.passed
    capped = ClusterRecord.from_patch(Patch.from_faces(dodecahedron(), range(1, 12)))
    assert check_cluster(capped).skipped == "direct_check"


def test_lone_pentagon_fails_parity():
    """A single pentagon cannot change x4 + x5 // 2, so the parity criterion fails."""
    record = ClusterRecord.from_patch(Patch.single_face(5))
    report = check_cluster(record, Criterion.PARITY, budget=500, max_scenarios=2)
    assert report.tags == ["C0"]
    assert record.tags == ["C0"]
    assert not report.passed
    assert report.failures
    assert report.to_dict()["passed"] is False


def test_report_without_scenarios_does_not_pass():
    """Nothing checked is not a pass."""
    report = CheckReport(Criterion.EXTENSION, 0, 1, 1, 5)
    assert report.failures == []
    assert not report.passed


@pytest.mark.slow
def test_parity_failures_up_to_three_pentagons():
    """Only the lone pentagon, the adjacent pair, the pair across a hexagon and the triple fail."""
    failing = []
    for f5 in (1, 2, 3):
        for record in generate_clusters(0, f5):
            report = check_cluster(record, Criterion.PARITY)
            assert report.skipped is None
            if not report.passed:
                failing.extend(report.tags)
    assert sorted(failing) == ["C0", "C1", "C2", "C3"]


@pytest.mark.slow
def test_ten_parity_failures_up_to_six_pentagons():
    """Pentagon-only clusters with at most six pentagons fail the parity criterion ten times."""
    failing = 0
    for f5 in range(1, 7):
        for record in generate_clusters(0, f5):
            report = check_cluster(record, Criterion.PARITY)
            if report.skipped is None and not report.passed:
                failing += 1
    assert failing == 10


def test_open_end_faces_do_not_constrain_relabelling():
    """Two pieces disagreeing only on the faces the cut leaves through still combine."""
    first = {(10, 0): 0, (11, 0): 0, (5, 0): 2}
    second = {(10, 0): 0, (11, 0): 1, (5, 1): 2}
    assert _combine([first, second]) == []
    combined = _combine([first, second], open_ends=(10, 11))
    assert len(combined) == 6
    for relabel, colour in combined:
        (sigma,) = relabel
        assert colour[(10, OPEN_SIDE + 1)] == sigma[0]
        assert colour[(11, OPEN_SIDE + 1)] == sigma[1]
        assert colour[(10, 0)] == 0


def test_lone_pentagon_positions_all_relabel():
    """Cutting a pentagon in two always leaves a consistent relabelling."""
    record = ClusterRecord.from_patch(Patch.single_face(5))
    report = check_cluster(record, Criterion.EXTENSION, budget=500)
    assert report.scenarios > 0
    assert not any("no relabelling" in failure for failure in report.failures)
