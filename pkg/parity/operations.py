"""Local recolourings that flip the parity of the number of factor cycles.

Toggling a hexagon never changes the parity of c, so every operation here
changes one of the other terms of f6 + f5 + x4 + q + c: the number of grey
quadrangles, the number of ×-paths, or the number of grey pentagons by two.
Each move is followed by a local repair that insists on an odd cycle count.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple

from factor.assemble import coloring_to_factor
from factor.coloring import COLOURS, GWColoring, class_faces, shift_region
from factor.configurations import Configuration
from factor.resolve import DEFAULT_BUDGET, resolve_clusters
from factor.two_factor import TwoFactor
from factor.x_paths import XPath, flank_side, x_graph
from logging_system import get_logger
from planar.dual import DualGraph
from planar.embedding import PlanarEmbedding
from planar.exceptions import ClusterUnresolvable, FactorInvalid, NotApplicable

logger = get_logger(__name__)


class ParityOpKind(str, Enum):
    QUAD_REROUTE = "quad_reroute"
    QUAD_RECOLOR_WHITE_TO_GREY = "quad_recolor_white_to_grey"
    QUAD_RECOLOR_GREY = "quad_recolor_grey"
    QUAD_CLEAR_THEN_RECOLOR = "quad_clear_then_recolor"
    O1 = "O1"
    O2 = "O2"
    O3 = "O3"
    O4 = "O4"


@dataclass
class ParityOp:
    kind: ParityOpKind
    site: Tuple[int, ...] = ()
    changed: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "site": list(self.site), "changed": list(self.changed)}


@dataclass
class RepairContext:
    """What a parity move needs to re-resolve its surroundings."""

    embedding: PlanarEmbedding
    dual: DualGraph
    configs: Sequence[Configuration]
    budget: int = DEFAULT_BUDGET


def _resolve_odd(
    ctx: RepairContext, coloring: GWColoring, focus
) -> Tuple[GWColoring, TwoFactor]:
    repaired = resolve_clusters(
        ctx.embedding,
        coloring,
        ctx.budget,
        require_odd=True,
        focus=focus,
        configs=ctx.configs,
        dual=ctx.dual,
    )
    factor = coloring_to_factor(ctx.embedding, repaired)
    if factor.n_cycles % 2 == 0:
        raise FactorInvalid("Repair kept an even number of cycles")
    return repaired, factor


def _neighbour_faces(embedding: PlanarEmbedding, f: int) -> List[int]:
    return [embedding.face_of(embedding.twin(d)) for d in embedding.face(f).darts]


def _quad_variants(
    ctx: RepairContext, coloring: GWColoring, quad: int
) -> Iterator[Tuple[ParityOpKind, GWColoring]]:
    emb = ctx.embedding
    ring = _neighbour_faces(emb, quad)
    region = {quad, *ring}
    on_x_path = quad in x_graph(emb, coloring.grey)
    shifts = []
    if coloring.cut is not None:
        for k in COLOURS:
            if k != coloring.choice:
                shifts.append(shift_region(coloring, region, k, note=f"reroute around quad {quad}"))

    if quad not in coloring.grey:
        if on_x_path:
            for shifted in shifts:
                yield ParityOpKind.QUAD_REROUTE, shifted
        yield ParityOpKind.QUAD_RECOLOR_WHITE_TO_GREY, coloring.toggled([quad], note=f"grey quad {quad}")
        if not on_x_path:
            for shifted in shifts:
                yield ParityOpKind.QUAD_REROUTE, shifted
        return

    for i in (0, 1):
        pair = (ring[i], ring[i + 2])
        if any(emb.face(f).size != 6 or f in coloring.grey for f in pair):
            continue
        yield ParityOpKind.QUAD_RECOLOR_GREY, coloring.toggled([quad, *pair], note=f"clear quad {quad}")
    for shifted in shifts:
        if quad not in shifted.grey:
            yield ParityOpKind.QUAD_CLEAR_THEN_RECOLOR, shifted.toggled([quad], note=f"grey quad {quad}")
            continue
        for i in (0, 1):
            pair = (ring[i], ring[i + 2])
            if any(emb.face(f).size != 6 or f in shifted.grey for f in pair):
                continue
            yield ParityOpKind.QUAD_CLEAR_THEN_RECOLOR, shifted.toggled([quad, *pair], note=f"clear quad {quad}")


def fix_parity_quad(
    ctx: RepairContext, coloring: GWColoring, quad: int
) -> Tuple[GWColoring, TwoFactor, ParityOp]:
    """Flip the cycle parity by recolouring around a quadrangle.

    Raises:
        NotApplicable: The quadrangle touches four pentagons, or no variant repairs
    """
    emb = ctx.embedding
    if emb.face(quad).size != 4:
        raise NotApplicable(f"Face {quad} is not a quadrangle")
    ring = _neighbour_faces(emb, quad)
    if len({f for f in ring if emb.face(f).size == 5}) == 4:
        raise NotApplicable(f"Quadrangle {quad} is surrounded by four pentagons")
    focus = ctx.dual.ball(quad, 2)
    for kind, candidate in _quad_variants(ctx, coloring, quad):
        try:
            repaired, factor = _resolve_odd(ctx, candidate, focus)
        except (ClusterUnresolvable, FactorInvalid) as exc:
            logger.debug(f"{kind.value} at quad {quad} failed: {exc}")
            continue
        return repaired, factor, ParityOp(kind, (quad,), list(repaired.history[len(coloring.history):]))
    raise NotApplicable(f"No quadrangle variant repairs around face {quad}")


def _tube(ctx: RepairContext, a: int, b: int) -> Optional[List[int]]:
    """Faces of a dual path from a to b avoiding other small faces, with their non-small neighbours."""
    blocked = set(ctx.dual.small_faces) - {a, b}
    path = ctx.dual.shortest_path(a, b, blocked=blocked)
    if path is None:
        return None
    region = set(path)
    for f in path[1:-1]:
        region.update(g for g in ctx.dual.neighbours(f) if g not in ctx.dual.small_faces)
    return sorted(region)


def apply_O(
    ctx: RepairContext,
    coloring: GWColoring,
    kind: ParityOpKind,
    site: Tuple,
) -> Tuple[GWColoring, TwoFactor, ParityOp]:
    """Apply one of the pentagon operations and repair with an odd cycle count.

    Sites: O1 two grey pentagons; O2 an open ×-path; O3/O4 an open ×-path and
    two grey pentagons along it, on the same side for O3 and on different
    sides for O4.

    Raises:
        NotApplicable: Side conditions fail or the repair does not succeed
    """
    emb = ctx.embedding
    if kind == ParityOpKind.O1:
        p, p2 = site
        if p not in coloring.grey or p2 not in coloring.grey:
            raise NotApplicable("O1 needs two grey pentagons")
        if coloring.cut is None:
            raise NotApplicable("O1 needs the canonical colouring")
        region = _tube(ctx, p, p2)
        if region is None:
            raise NotApplicable(f"No pentagon-free face path between {p} and {p2}")
        candidates = []
        for k in COLOURS:
            if class_faces(coloring.cut, coloring.canonical, k, (p, p2)):
                continue
            candidates.append(shift_region(coloring, region, k, note=f"O1 {p}-{p2}"))
        focus = set(region)
        label = (p, p2)
    elif kind == ParityOpKind.O2:
        xpath: XPath = site[0]
        ends = xpath.endpoints
        if ends is None or ends[0] == ends[1]:
            raise NotApplicable("O2 needs an open ×-path")
        if any(emb.face(f).size != 5 or f in coloring.grey for f in ends):
            raise NotApplicable("O2 needs a ×-path between white pentagons")
        candidates = [coloring.toggled(ends, note=f"O2 close {ends[0]}-{ends[1]}")]
        focus = set(xpath.faces)
        label = ends
    elif kind in (ParityOpKind.O3, ParityOpKind.O4):
        xpath, p, p2 = site
        if xpath.endpoints is None:
            raise NotApplicable("Pushing needs an open ×-path")
        if p not in coloring.grey or p2 not in coloring.grey:
            raise NotApplicable("Pushing a ×-path needs two grey pentagons")
        sides = flank_side(emb, xpath, p), flank_side(emb, xpath, p2)
        if None in sides:
            raise NotApplicable(f"Pentagons {p}, {p2} do not lie along one side of the ×-path each")
        if (sides[0] == sides[1]) != (kind == ParityOpKind.O3):
            where = "the same side" if kind == ParityOpKind.O3 else "different sides"
            raise NotApplicable(f"{kind.value} needs the pentagons on {where} of the ×-path")
        candidates = [coloring.toggled([p, p2], note=f"push ×-path through {p}, {p2}")]
        focus = set(xpath.faces) | {p, p2}
        label = (p, p2)
    else:
        raise NotApplicable(f"{kind.value} is not a pentagon operation")

    for candidate in candidates:
        try:
            repaired, factor = _resolve_odd(ctx, candidate, focus)
        except (ClusterUnresolvable, FactorInvalid) as exc:
            logger.debug(f"{kind.value} at {label} failed: {exc}")
            continue
        changed = list(repaired.history[len(coloring.history):])
        return repaired, factor, ParityOp(kind, tuple(label), changed)
    raise NotApplicable(f"{kind.value} at {label} could not be repaired")
