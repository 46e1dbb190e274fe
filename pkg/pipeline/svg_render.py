"""SVG drawings of a graph with an optional overlay.

Overlays:
- coloring: grey faces shaded
- factor: factor edges drawn heavy, 2-cycle edges doubled in colour
- h_trace: one group per glue frame, shading the hexagons flipped so far

Output is deterministic: coordinates come from the Tutte layout and are
written with two decimals.
"""

from typing import Iterable, List, Optional, Sequence

import numpy as np

from factor.coloring import GWColoring
from factor.two_factor import TwoFactor
from glue.reducer import GlueFrame
from pipeline.layout import default_outer_face, to_canvas, tutte_layout
from pipeline.models import Overlay
from planar.embedding import PlanarEmbedding

GREY = "#b8b8b8"
EDGE = "#606060"
FACTOR = "#1f4e9c"
TWO_CYCLE = "#c0392b"
FLIPPED = "#f2c14e"


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _polygon(points: np.ndarray, cls: str, fill: str, extra: str = "") -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
    return f'<polygon class="{cls}" points="{coords}" fill="{fill}" stroke="none"{extra}/>'


def _line(a: np.ndarray, b: np.ndarray, cls: str, colour: str, width: float) -> str:
    return (
        f'<line class="{cls}" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" '
        f'stroke="{colour}" stroke-width="{width}"/>'
    )


def _face_polygons(
    embedding: PlanarEmbedding, canvas: np.ndarray, faces: Iterable[int], outer: int, cls: str, fill: str
) -> List[str]:
    out = []
    for f in sorted(faces):
        if f == outer:
            continue
        out.append(_polygon(canvas[list(embedding.face(f).vertices)], cls, fill))
    return out


def render_svg(
    embedding: PlanarEmbedding,
    overlay: Overlay = Overlay.NONE,
    coloring: Optional[GWColoring] = None,
    factor: Optional[TwoFactor] = None,
    frames: Optional[Sequence[GlueFrame]] = None,
    size: int = 600,
    outer: Optional[int] = None,
) -> bytes:
    """Draw ``embedding`` with the requested overlay.

    Raises:
        ValueError: The overlay needs data that was not given
    """
    overlay = Overlay(overlay)
    if overlay == Overlay.COLORING and coloring is None:
        raise ValueError("The coloring overlay needs a colouring")
    if overlay in (Overlay.FACTOR, Overlay.H_TRACE) and factor is None:
        raise ValueError(f"The {overlay.value} overlay needs a factor")

    outer = default_outer_face(embedding) if outer is None else outer
    canvas = to_canvas(tutte_layout(embedding, outer), size)
    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
    ]
    if embedding.name:
        parts.append(f"<title>{embedding.name}</title>")
    background = "white"
    if overlay == Overlay.COLORING and outer in coloring.grey:
        background = GREY
    parts.append(f'<rect class="background" x="0" y="0" width="{size}" height="{size}" fill="{background}"/>')

    if overlay == Overlay.COLORING:
        parts.extend(_face_polygons(embedding, canvas, coloring.grey, outer, "face grey", GREY))

    if overlay == Overlay.H_TRACE:
        for frame in frames or ():
            parts.append(
                f'<g class="frame" data-step="{frame.step}" data-vertex="{frame.vertex}" '
                f'data-flipped="{str(frame.flipped).lower()}" data-regions="{frame.regions}">'
            )
            parts.extend(_face_polygons(embedding, canvas, frame.flips, outer, "flipped", FLIPPED))
            parts.append("</g>")

    for d in embedding.edge_darts():
        u, w = embedding.origin(d), embedding.target(d)
        m = factor.mult(d) if factor is not None and overlay != Overlay.COLORING else 0
        if m == 2:
            parts.append(_line(canvas[u], canvas[w], "edge two-cycle", TWO_CYCLE, 4))
        elif m == 1:
            parts.append(_line(canvas[u], canvas[w], "edge factor", FACTOR, 3))
        else:
            parts.append(_line(canvas[u], canvas[w], "edge", EDGE, 1))

    radius = max(2.0, size / (8.0 * np.sqrt(embedding.n_vertices)))
    for v in range(embedding.n_vertices):
        x, y = canvas[v]
        parts.append(f'<circle class="vertex" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="black"/>')
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
