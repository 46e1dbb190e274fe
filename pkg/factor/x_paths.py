"""×-paths: white faces strung together by the edges a colouring leaves off the factor.

The ×-graph has a node per white face and an edge for every grey-grey edge
and every 2-cycle edge, joining the white faces at its two ends. A white face
has ×-degree of the same parity as its size, so the odd nodes are exactly the
white pentagons. The ×-graph is split into trails: open trails start and end
at white pentagons (these are the ×-paths, q counts them), what remains closes
up into ×-cycles.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx

from factor.assemble import assess, white_matching
from factor.coloring import GWColoring
from logging_system import get_logger
from planar.embedding import PlanarEmbedding

logger = get_logger(__name__)


@dataclass
class XPath:
    """Alternating walk of ×-faces and the edges joining them.

    Attributes:
        faces: ×-faces in walk order (first == last for a ×-cycle)
        edges: Canonical darts of the joining edges, one per step
        is_cycle: Closed walk
    """

    faces: List[int] = field(default_factory=list)
    edges: List[int] = field(default_factory=list)
    is_cycle: bool = False

    @property
    def endpoints(self) -> Optional[Tuple[int, int]]:
        if self.is_cycle or not self.faces:
            return None
        return self.faces[0], self.faces[-1]

    def __len__(self) -> int:
        return len(self.edges)


def _third_face(embedding: PlanarEmbedding, v: int, pair: Tuple[int, int]) -> int:
    return next(f for f in embedding.faces_at(v) if f not in pair)


def x_graph(embedding: PlanarEmbedding, grey: Iterable[int], matching: Optional[Dict[int, int]] = None) -> nx.MultiGraph:
    """×-graph of a grey face set; edges carry the canonical dart as key."""
    grey = frozenset(grey)
    if matching is None:
        matching = white_matching(embedding, grey)
    graph = nx.MultiGraph()
    for d in embedding.edge_darts():
        pair = embedding.edge_faces(d)
        u, w = embedding.origin(d), embedding.target(d)
        both_grey = pair[0] in grey and pair[1] in grey
        two_cycle = matching.get(u) == w
        if not (both_grey or two_cycle):
            continue
        a, b = _third_face(embedding, u, pair), _third_face(embedding, w, pair)
        graph.add_edge(a, b, key=d)
    return graph


def flank_side(embedding: PlanarEmbedding, xpath: XPath, face: int) -> Optional[int]:
    """Side (0 or 1) of ``xpath`` that ``face`` lies along; None when it flanks neither side or both."""
    sides = set()
    for a, d in zip(xpath.faces, xpath.edges):
        if _third_face(embedding, embedding.origin(d), embedding.edge_faces(d)) != a:
            d = embedding.twin(d)
        left, right = embedding.edge_faces(d)
        if face == left:
            sides.add(0)
        elif face == right:
            sides.add(1)
    return sides.pop() if len(sides) == 1 else None


def x_faces(embedding: PlanarEmbedding, grey: Iterable[int]) -> List[int]:
    """White faces with a grey-grey edge or a 2-cycle edge at one of their corners."""
    return sorted(x_graph(embedding, grey).nodes)


def _walk(graph: nx.MultiGraph, used: set, start: int) -> XPath:
    path = XPath(faces=[start])
    current = start
    while True:
        options = sorted(
            (key, other)
            for _, other, key in graph.edges(current, keys=True)
            if key not in used
        )
        if not options:
            break
        key, other = options[0]
        used.add(key)
        path.edges.append(key)
        path.faces.append(other)
        current = other
    return path


def _residual_degree(graph: nx.MultiGraph, used: set, node: int) -> int:
    degree = 0
    for _, other, key in graph.edges(node, keys=True):
        if key not in used:
            degree += 2 if other == node else 1
    return degree


def trace_x_paths(coloring: GWColoring, matching: Optional[Dict[int, int]] = None) -> List[XPath]:
    """Split the ×-graph into ×-paths between white pentagons and leftover ×-cycles."""
    embedding = coloring.embedding
    graph = x_graph(embedding, coloring.grey, matching)
    used: set = set()
    paths: List[XPath] = []
    while True:
        odd = [v for v in sorted(graph.nodes) if _residual_degree(graph, used, v) % 2]
        if not odd:
            break
        paths.append(_walk(graph, used, odd[0]))
    while True:
        rest = [v for v in sorted(graph.nodes) if _residual_degree(graph, used, v)]
        if not rest:
            break
        cycle = _walk(graph, used, rest[0])
        cycle.is_cycle = True
        paths.append(cycle)
    logger.debug(
        f"×-graph: {graph.number_of_nodes()} faces, {sum(1 for p in paths if not p.is_cycle)} paths, "
        f"{sum(1 for p in paths if p.is_cycle)} cycles"
    )
    return paths


def count_q(paths: List[XPath]) -> int:
    return sum(1 for p in paths if not p.is_cycle)


def _corner_turns(embedding: PlanarEmbedding, grey, xpath: XPath) -> List[int]:
    """Grey hexagons shared by the two grey-grey edges at a ×-face of the walk."""
    turns: List[int] = []
    steps = len(xpath.edges)
    inner = range(steps) if xpath.is_cycle else range(1, steps)
    for i in inner:
        e_in, e_out = xpath.edges[i - 1], xpath.edges[i]
        if e_in == e_out:
            continue
        a, b = set(embedding.edge_faces(e_in)), set(embedding.edge_faces(e_out))
        if not (a <= grey and b <= grey):
            continue
        for g in sorted(a & b):
            if embedding.face(g).size == 6:
                turns.append(g)
    return turns


def shorten_x_path(coloring: GWColoring, xpath: XPath) -> GWColoring:
    """Whiten grey hexagons sitting in a 60 degree turn of ``xpath``.

    A whitening is kept only when it does not make the colouring worse.
    """
    embedding = coloring.embedding
    current = coloring
    score = assess(embedding, current.grey).score
    for g in _corner_turns(embedding, set(current.grey), xpath):
        if g not in current.grey:
            continue
        candidate = current.toggled([g], note=f"shorten at face {g}")
        candidate_score = assess(embedding, candidate.grey).score
        if candidate_score <= score:
            current, score = candidate, candidate_score
    return current


def shorten_all(coloring: GWColoring, max_rounds: int = 8) -> GWColoring:
    """Shorten every ×-path until no 60 degree turn can be removed."""
    current = coloring
    for _ in range(max_rounds):
        before = current.grey
        for xpath in trace_x_paths(current):
            current = shorten_x_path(current, xpath)
        if current.grey == before:
            break
    return current
