"""Unit tests for SVG rendering.

Tests cover:
1. Plain drawings
2. Colouring and factor overlays
3. Missing overlay data
"""

import pytest

from factor.ladder import build_factor
from pipeline.models import Overlay
from pipeline.svg_render import render_svg
from planar.catalog import cube, truncated_octahedron


@pytest.fixture(scope="module")
def octa_outcome():
    emb = truncated_octahedron()
    return emb, build_factor(emb)


def test_plain_drawing():
    svg = render_svg(cube(), size=300).decode()
    assert svg.startswith("<svg")
    assert 'width="300"' in svg
    assert "<title>cube</title>" in svg
    assert svg.count('class="vertex"') == 8
    assert svg.count('class="edge"') == 12


def test_coloring_overlay(octa_outcome):
    """Grey faces are filled; the outer face shows as background."""
    emb, outcome = octa_outcome
    svg = render_svg(emb, Overlay.COLORING, coloring=outcome.coloring).decode()
    assert 0 < svg.count('class="face grey"') <= len(outcome.coloring.grey)
    assert svg.count('class="edge"') == emb.n_vertices * 3 // 2


def test_factor_overlay(octa_outcome):
    """Every vertex has factor edges through it."""
    emb, outcome = octa_outcome
    svg = render_svg(emb, Overlay.FACTOR, factor=outcome.factor).decode()
    drawn = svg.count('class="edge factor"') + svg.count('class="edge two-cycle"')
    assert drawn > 0
    assert drawn + svg.count('class="edge"') == emb.n_vertices * 3 // 2


@pytest.mark.parametrize("overlay", [Overlay.COLORING, Overlay.FACTOR, Overlay.H_TRACE])
def test_overlay_needs_data(overlay):
    with pytest.raises(ValueError):
        render_svg(cube(), overlay)
