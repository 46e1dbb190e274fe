"""Unit tests for the barycentric layout."""

import numpy as np
import pytest

from planar.catalog import cube, dodecahedron, prism
from pipeline.layout import default_outer_face, to_canvas, tutte_layout


def test_outer_face_is_largest():
    """Hexagonal prism: the first hexagon is drawn outside."""
    emb = prism(6)
    outer = default_outer_face(emb)
    assert emb.face(outer).size == 6
    assert outer == min(f for f in range(emb.n_faces) if emb.face(f).size == 6)


def test_outer_ring_on_unit_circle():
    emb = cube()
    positions = tutte_layout(emb, outer=0)
    ring = list(emb.face(0).vertices)
    assert positions.shape == (8, 2)
    assert np.allclose(np.hypot(positions[ring, 0], positions[ring, 1]), 1.0)


def test_inner_vertices_are_barycentres():
    emb = dodecahedron()
    positions = tutte_layout(emb)
    ring = set(emb.face(default_outer_face(emb)).vertices)
    for v in range(emb.n_vertices):
        if v in ring:
            continue
        assert np.allclose(positions[v], positions[list(emb.neighbors(v))].mean(axis=0))
        assert np.hypot(*positions[v]) < 1.0


def test_unknown_outer_face():
    with pytest.raises(ValueError):
        tutte_layout(cube(), outer=99)


def test_to_canvas():
    """Origin to centre, y axis flipped."""
    canvas = to_canvas(np.array([[0.0, 0.0], [1.0, 1.0]]), size=200, margin=0.0)
    assert canvas[0].tolist() == [100.0, 100.0]
    assert canvas[1].tolist() == [200.0, 0.0]
