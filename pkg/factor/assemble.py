"""From a grey/white colouring to a 2-factor.

Factor edges are the edges with exactly one grey side; all-white vertices are
paired off by a perfect matching whose edges become 2-cycles. The factor is
usable when no vertex is all grey, the matching is perfect, no grey region has
a hole and every cycle has enough resonant hexagons around it.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set

import networkx as nx

from factor.coloring import GWColoring
from factor.two_factor import TwoFactor
from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import FactorInvalid

logger = get_logger(__name__)


@dataclass
class FactorAssessment:
    """Outcome of turning a colouring into a factor.

    ``defects`` holds faces near each problem so a local search knows where to
    look; ``score`` counts problems and is 0 exactly when the factor is usable.
    """

    factor: Optional[TwoFactor] = None
    defects: Set[int] = field(default_factory=set)
    reasons: List[str] = field(default_factory=list)
    score: int = 0

    @property
    def valid(self) -> bool:
        return self.factor is not None and self.score == 0

    def add(self, reason: str, faces) -> None:
        self.reasons.append(reason)
        self.defects.update(faces)
        self.score += 1


def grey_count_at(embedding: PlanarEmbedding, grey, v: int) -> int:
    return sum(1 for f in embedding.faces_at(v) if f in grey)


def white_matching(embedding: PlanarEmbedding, grey) -> Dict[int, int]:
    """Maximum matching of all-white vertices along all-white edges."""
    white = [v for v in range(embedding.n_vertices) if grey_count_at(embedding, grey, v) == 0]
    graph = nx.Graph()
    graph.add_nodes_from(white)
    members = set(white)
    for v in white:
        for w in embedding.neighbors(v):
            if w in members and v < w:
                graph.add_edge(v, w)
    matched: Dict[int, int] = {}
    for component in nx.connected_components(graph):
        if len(component) < 2:
            continue
        sub = graph.subgraph(component)
        for u, w in nx.max_weight_matching(sub, maxcardinality=True):
            matched[u] = w
            matched[w] = u
    return matched


def holes_free(embedding: PlanarEmbedding, grey, factor: TwoFactor) -> bool:
    """Whether n = 2c + 2x4 + 3x5 + 4x6, which holds exactly when no grey region has a hole."""
    weight = 0
    for f in grey:
        weight += embedding.face(f).size - 2
    return embedding.n_vertices == 2 * factor.n_cycles + weight


def _grey_components(embedding: PlanarEmbedding, grey) -> Dict[int, int]:
    parent = {f: f for f in grey}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in embedding.edge_darts():
        a, b = embedding.edge_faces(d)
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    return {f: find(f) for f in grey}


def assess(embedding: PlanarEmbedding, grey) -> FactorAssessment:
    """Build the factor of a grey face set and list what keeps it from being usable."""
    grey = frozenset(grey)
    result = FactorAssessment()
    for v in range(embedding.n_vertices):
        if grey_count_at(embedding, grey, v) == 3:
            result.add(f"all-grey vertex {v}", embedding.faces_at(v))
    matched = white_matching(embedding, grey)
    for v in range(embedding.n_vertices):
        if grey_count_at(embedding, grey, v) == 0 and v not in matched:
            result.add(f"unmatched all-white vertex {v}", embedding.faces_at(v))
    if result.score:
        return result

    mult: Dict[int, int] = {}
    for d in embedding.edge_darts():
        a, b = embedding.edge_faces(d)
        if (a in grey) != (b in grey):
            mult[d] = 1
    for u, w in matched.items():
        if u < w:
            mult[embedding.edge_id(embedding.dart(u, w))] = 2
    try:
        factor = TwoFactor(embedding, mult)
    except FactorInvalid as exc:
        result.add(str(exc), [])
        return result
    result.factor = factor

    if not holes_free(embedding, grey, factor):
        component = _grey_components(embedding, grey)
        touching: Dict[int, Set[int]] = {}
        for e, cid in factor.edge_member.items():
            if factor.multiplicity[e] != 1:
                continue
            for f in embedding.edge_faces(e):
                if f in grey:
                    touching.setdefault(component[f], set()).add(cid)
        for root, cycles in touching.items():
            if len(cycles) > 1:
                faces = [f for f, r in component.items() if r == root]
                result.add(f"grey region around face {root} has a hole", faces)
        if not result.score:
            result.add("vertex count does not match the grey face sizes", [])
        return result

    if factor.n_cycles > 1:
        counts = factor.resonant_counts()
        for i, cycle in enumerate(factor.cycles):
            need_exact = len(cycle) == 2
            if (need_exact and counts[i] != 2) or (not need_exact and counts[i] < 3):
                faces = set()
                for v in cycle:
                    faces.update(embedding.faces_at(v))
                result.add(f"cycle {i} of length {len(cycle)} has {counts[i]} resonant hexagons", faces)
        if factor.is_nested():
            result.add("nested cycles", [])
    return result


def coloring_to_factor(embedding: PlanarEmbedding, coloring: GWColoring) -> TwoFactor:
    """The 2-factor of a resolved colouring.

    Raises:
        FactorInvalid: The colouring does not give a usable factor
    """
    result = assess(embedding, coloring.grey)
    if not result.valid:
        raise FactorInvalid("; ".join(result.reasons[:3]) or "colouring gives no factor")
    logger.debug(f"Factor with {result.factor.n_cycles} cycles, {len(result.factor.resonant)} resonant hexagons")
    return result.factor
