"""Choosing a parity operation, and the shapes that need their own treatment.

Operations are tried cheapest first: quadrangle variants, then closing a
×-path, pushing a ×-path through grey pentagons, and finally whitening two
grey pentagons through a tube. Graphs whose clusters defeat all of them are
recognised by cluster shape:

- double-capped (5,0) tubes, where c comes out odd anyway
- four clusters of three pentagons at a vertex and no lone pentagon, solved
  by truncating the centre vertices and searching the truncated graph
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from factor.coloring import GWColoring
from factor.configurations import Configuration, configurations
from factor.resolve import DEFAULT_BUDGET
from factor.two_factor import TwoFactor
from factor.x_paths import XPath, flank_side, trace_x_paths
from logging_system import get_logger
from oracle.search import DEFAULT_CAP, brute_hamilton
from parity.operations import ParityOp, ParityOpKind, RepairContext, apply_O, fix_parity_quad
from planar.dual import DualGraph
from planar.embedding import PlanarEmbedding
from planar.exceptions import BarnetteError, NotApplicable

logger = get_logger(__name__)

MAX_CANDIDATES = 24


@dataclass
class ParityOutcome:
    coloring: GWColoring
    factor: TwoFactor
    op: Optional[ParityOp] = None
    tried: List[str] = field(default_factory=list)


# ----------------------------------------------------------------------
# cluster shapes


def _common_neighbours(dual: DualGraph, a: int, b: int) -> set:
    return set(dual.neighbours(a)) & set(dual.neighbours(b))


def shape_tags(embedding: PlanarEmbedding, config: Configuration, dual: DualGraph) -> List[str]:
    """Recognised shapes of one configuration."""
    tags: List[str] = []
    pentagons = sorted(config.pentagons)
    for quad in config.quadrangles:
        ring = {f for f in dual.neighbours(quad) if dual.size(f) == 5}
        if len(ring) == 4:
            tags.append("quad4")
    if config.quadrangles:
        return tags
    if len(pentagons) == 1:
        tags.append("C0")
    elif len(pentagons) == 2:
        a, b = pentagons
        if b in dual.neighbours(a):
            tags.append("C1")
        else:
            common = _common_neighbours(dual, a, b)
            if len(common) == 1:
                tags.append("C2")
            elif len(common) == 2:
                tags.append("C11")
    elif len(pentagons) == 3 and c3_centre(embedding, pentagons) is not None:
        tags.append("C3")
    elif len(pentagons) == 6:
        for p in pentagons:
            ring = {f for f in dual.neighbours(p) if dual.size(f) == 5}
            if len(ring) == 5:
                tags.append("cap6")
                break
    return tags


def c3_centre(embedding: PlanarEmbedding, pentagons: Sequence[int]) -> Optional[int]:
    """Vertex shared by three pentagons, if there is one."""
    target = set(pentagons)
    for d in embedding.face(pentagons[0]).darts:
        v = embedding.origin(d)
        if set(embedding.faces_at(v)) == target:
            return v
    return None


def cluster_tags(
    embedding: PlanarEmbedding,
    configs: Optional[Sequence[Configuration]] = None,
    dual: Optional[DualGraph] = None,
) -> Dict[int, List[str]]:
    """Configuration index -> shape tags; also stored on each cluster record."""
    dual = dual or DualGraph.of(embedding)
    configs = configs if configs is not None else configurations(embedding, dual)
    result = {}
    for config in configs:
        tags = shape_tags(embedding, config, dual)
        config.cluster.tags = tags
        result[config.index] = tags
    return result


def special_family(tags: Dict[int, List[str]]) -> Optional[str]:
    """Name of the special treatment a tag pattern calls for."""
    flat = [t for ts in tags.values() for t in ts]
    if flat.count("cap6") == 2:
        return "double_cap"
    if flat.count("C3") == 4 and "C0" not in flat:
        return "four_c3"
    if flat.count("C3") == 3 and flat.count("C0") == 3:
        return "three_c3_three_c0"
    if "quad4" in flat:
        return "quad4"
    return None


# ----------------------------------------------------------------------
# truncation route


def truncate_vertices(embedding: PlanarEmbedding, vertices: Sequence[int]) -> Tuple[PlanarEmbedding, Dict[int, int]]:
    """Replace each given vertex by a triangle; returns the graph and new -> old vertex map."""
    graph = embedding.to_networkx()
    owner = {v: v for v in range(embedding.n_vertices)}
    fresh_id = embedding.n_vertices
    for v in vertices:
        neighbours = list(graph.neighbors(v))
        graph.remove_node(v)
        corners = [v, fresh_id, fresh_id + 1]
        fresh_id += 2
        for c in corners:
            owner[c] = v
        for c, w in zip(corners, neighbours):
            graph.add_edge(c, w)
        graph.add_edges_from([(corners[0], corners[1]), (corners[1], corners[2]), (corners[2], corners[0])])
    return PlanarEmbedding.from_networkx(graph, name=f"{embedding.name or 'graph'}_truncated"), owner


def contract_cycle(cycle: Sequence[int], owner: Dict[int, int]) -> List[int]:
    """Map a cycle of the truncated graph back, merging each triangle into its vertex."""
    result: List[int] = []
    for v in cycle:
        old = owner[v]
        if not result or result[-1] != old:
            result.append(old)
    if len(result) > 1 and result[0] == result[-1]:
        result.pop()
    return result


def solve_by_truncation(
    embedding: PlanarEmbedding,
    configs: Sequence[Configuration],
    cap: int = DEFAULT_CAP,
) -> Optional[List[int]]:
    """Hamilton cycle via the truncated graph of the C3 centre vertices."""
    centres = []
    for config in configs:
        if "C3" in config.cluster.tags:
            centre = c3_centre(embedding, sorted(config.pentagons))
            if centre is not None:
                centres.append(centre)
    if not centres:
        return None
    truncated, owner = truncate_vertices(embedding, centres)
    logger.info(
        f"Truncating {len(centres)} C3 centres: n {embedding.n_vertices} -> {truncated.n_vertices}"
    )
    cycle = brute_hamilton(truncated, cap=cap)
    if cycle is None:
        return None
    return contract_cycle(cycle, owner)


# ----------------------------------------------------------------------
# driver


def _pentagon_pairs(dual: DualGraph, grey, limit: int = 6) -> List[Tuple[int, int]]:
    pentagons = sorted(p for p in dual.pentagons if p in grey)
    pairs = list(combinations(pentagons, 2))
    pairs.sort(key=lambda pair: (len(dual.shortest_path(*pair) or ()), pair))
    return pairs[:limit]


def _flanking_pairs(
    embedding: PlanarEmbedding, dual: DualGraph, grey, xpath: XPath, limit: int = 6
) -> List[Tuple[int, int, bool]]:
    """Grey pentagon pairs along an open ×-path, with whether they share a side."""
    sides = {}
    for p in sorted(dual.pentagons):
        if p in grey:
            side = flank_side(embedding, xpath, p)
            if side is not None:
                sides[p] = side
    return [(p, p2, sides[p] == sides[p2]) for p, p2 in combinations(sorted(sides), 2)][:limit]


def fix_parity(
    embedding: PlanarEmbedding,
    coloring: GWColoring,
    factor: TwoFactor,
    budget: int = DEFAULT_BUDGET,
    configs: Optional[Sequence[Configuration]] = None,
    dual: Optional[DualGraph] = None,
) -> ParityOutcome:
    """Make the number of factor cycles odd.

    Raises:
        NotApplicable: No operation produced an odd factor
    """
    if factor.n_cycles % 2 == 1:
        return ParityOutcome(coloring, factor)
    dual = dual or DualGraph.of(embedding)
    configs = list(configs) if configs is not None else configurations(embedding, dual)
    ctx = RepairContext(embedding, dual, configs, budget)
    tried: List[str] = []

    attempts = []
    for quad in sorted(dual.quadrangles):
        attempts.append(("quad", quad))
    open_paths = [p for p in trace_x_paths(coloring) if not p.is_cycle]
    for xpath in open_paths:
        attempts.append((ParityOpKind.O2, (xpath,)))
    for xpath in open_paths:
        for p, p2, same in _flanking_pairs(embedding, dual, coloring.grey, xpath):
            attempts.append((ParityOpKind.O3 if same else ParityOpKind.O4, (xpath, p, p2)))
    for pair in _pentagon_pairs(dual, coloring.grey):
        attempts.append((ParityOpKind.O1, pair))

    for kind, site in attempts[:MAX_CANDIDATES]:
        try:
            if kind == "quad":
                repaired, odd_factor, op = fix_parity_quad(ctx, coloring, site)
            else:
                repaired, odd_factor, op = apply_O(ctx, coloring, kind, site)
        except BarnetteError as exc:
            tried.append(f"{kind if kind == 'quad' else kind.value}: {exc}")
            continue
        logger.info(f"Parity fixed by {op.kind.value} at {list(op.site)}: c={odd_factor.n_cycles}")
        return ParityOutcome(repaired, odd_factor, op, tried)
    raise NotApplicable(f"No parity operation applies ({len(tried)} tried)")
