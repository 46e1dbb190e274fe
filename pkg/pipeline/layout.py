"""Tutte barycentric layout of a plane cubic graph.

The outer face is pinned to a regular polygon and every other vertex sits at
the average of its neighbours. For a 3-connected plane graph the result is a
straight-line drawing with convex faces.
"""

from typing import Optional

import numpy as np

from planar.embedding import PlanarEmbedding


def default_outer_face(embedding: PlanarEmbedding) -> int:
    """Largest face, lowest id among ties."""
    sizes = embedding.face_sizes()
    return max(range(len(sizes)), key=lambda f: (sizes[f], -f))


def tutte_layout(embedding: PlanarEmbedding, outer: Optional[int] = None) -> np.ndarray:
    """Vertex positions in [-1, 1]^2, one row per vertex.

    Raises:
        ValueError: The outer face id does not exist
    """
    if outer is None:
        outer = default_outer_face(embedding)
    if not 0 <= outer < embedding.n_faces:
        raise ValueError(f"No face {outer}")
    n = embedding.n_vertices
    ring = list(embedding.face(outer).vertices)
    pinned = np.zeros((n, 2))
    is_pinned = np.zeros(n, dtype=bool)
    angles = 2 * np.pi * np.arange(len(ring)) / len(ring)
    pinned[ring, 0] = np.cos(angles)
    pinned[ring, 1] = np.sin(angles)
    is_pinned[ring] = True

    # Laplacian rows for free vertices, identity rows for pinned ones
    system = np.zeros((n, n))
    rhs = np.zeros((n, 2))
    for v in range(n):
        if is_pinned[v]:
            system[v, v] = 1.0
            rhs[v] = pinned[v]
            continue
        neighbours = embedding.neighbors(v)
        system[v, v] = len(neighbours)
        for w in neighbours:
            system[v, w] -= 1.0
    return np.linalg.solve(system, rhs)


def to_canvas(positions: np.ndarray, size: int, margin: float = 0.05) -> np.ndarray:
    """Scale positions from [-1, 1]^2 to pixel coordinates, y pointing down."""
    half = size / 2.0
    scale = half * (1.0 - 2 * margin)
    canvas = np.empty_like(positions)
    canvas[:, 0] = half + scale * positions[:, 0]
    canvas[:, 1] = half - scale * positions[:, 1]
    return canvas
