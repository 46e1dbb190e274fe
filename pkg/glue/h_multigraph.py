"""The multigraph H of resonant hexagons and the regions around them.

Every resonant hexagon h of a factor F becomes a vertex v_h. Walking along a
factor cycle, consecutive factor edges of resonant hexagons give the edges
of H, so every vertex has degree 6. The faces of H are the regions of the
plane cut by the cycles of F with the resonant hexagons taken out:

- maximal unions of non-resonant faces joined across non-factor edges
- a thin black region for each 2-cycle edge
- a thin white region for each non-factor edge between two resonant hexagons

The region across edge i of hexagon h is its i-th wedge. Flipping h merges
its three in-wedges (across its factor edges); leaving it merges its three
out-wedges. H has 2V + 2 faces, so V merges of three distinct regions leave
exactly two: one cycle.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import networkx as nx

from factor.two_factor import TwoFactor
from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import GlueError

logger = get_logger(__name__)

RED = 0
BLACK = -1
WHITE = -2


class VertexState(str, Enum):
    SOLID = "solid"
    FRAGILE = "fragile"
    UNSTABLE = "unstable"


@dataclass
class HMulti:
    """H together with the region tokens of the factor it came from.

    Attributes:
        embedding: The graph
        factor: The factor H was built from
        vertices: Resonant hexagons, sorted
        graph: H as a multigraph on hexagon ids
        face_token: Non-resonant face -> region token
        edge_token: Canonical dart -> token of a thin region
        colour: Token -> BLACK or WHITE
        in_wedges: Hexagon -> tokens across its factor edges
        out_wedges: Hexagon -> tokens across its other edges
        special_cycles: Hexagon chains joined through 2-cycles
    """

    embedding: PlanarEmbedding
    factor: TwoFactor
    vertices: List[int]
    graph: nx.MultiGraph
    face_token: Dict[int, int] = field(default_factory=dict)
    edge_token: Dict[int, int] = field(default_factory=dict)
    colour: Dict[int, int] = field(default_factory=dict)
    in_wedges: Dict[int, Tuple[int, int, int]] = field(default_factory=dict)
    out_wedges: Dict[int, Tuple[int, int, int]] = field(default_factory=dict)
    special_cycles: List[List[int]] = field(default_factory=list)

    @property
    def n_tokens(self) -> int:
        return len(self.colour)

    def degree(self, h: int) -> int:
        return self.graph.degree(h)


def _region_roots(embedding: PlanarEmbedding, factor: TwoFactor, resonant) -> Dict[int, int]:
    parent = {f: f for f in range(embedding.n_faces) if f not in resonant}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in embedding.edge_darts():
        if factor.mult(d):
            continue
        a, b = embedding.edge_faces(d)
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    return {f: find(f) for f in parent}


def _h_edges(factor: TwoFactor, in_edges: Dict[int, List[int]]) -> List[Tuple[int, int]]:
    emb = factor.embedding
    edges: List[Tuple[int, int]] = []
    for cycle in factor.cycles:
        if len(cycle) == 2:
            e = emb.edge_id(emb.dart(cycle[0], cycle[1]))
            owners = in_edges.get(e, [])
            if len(owners) == 2:
                edges.extend([(owners[0], owners[1])] * 2)
            else:
                edges.extend((h, h) for h in owners for _ in range(2))
            continue
        hits: List[int] = []
        for i, u in enumerate(cycle):
            e = emb.edge_id(emb.dart(u, cycle[(i + 1) % len(cycle)]))
            hits.extend(in_edges.get(e, []))
        for i, h in enumerate(hits):
            edges.append((h, hits[(i + 1) % len(hits)]))
    return edges


def build_H(embedding: PlanarEmbedding, factor: TwoFactor) -> HMulti:
    """H of a factor whose cycles all carry enough resonant hexagons.

    Raises:
        GlueError: Two resonant hexagons share a single factor edge
    """
    resonant = factor.resonant
    roots = _region_roots(embedding, factor, resonant)
    token_of_root: Dict[int, int] = {}
    face_token = {f: token_of_root.setdefault(r, len(token_of_root)) for f, r in sorted(roots.items())}
    colour: Dict[int, int] = {}
    edge_token: Dict[int, int] = {}

    def thin_token(e: int, tag: int) -> int:
        if e not in edge_token:
            edge_token[e] = len(token_of_root) + len(edge_token)
            colour[edge_token[e]] = tag
        return edge_token[e]

    in_wedges: Dict[int, Tuple[int, int, int]] = {}
    out_wedges: Dict[int, Tuple[int, int, int]] = {}
    in_edges: Dict[int, List[int]] = {}
    for h in sorted(resonant):
        triple = set(factor.in_triple(h))
        ins: List[int] = []
        outs: List[int] = []
        for d in embedding.face(h).darts:
            e = embedding.edge_id(d)
            other = embedding.face_of(embedding.twin(d))
            m = factor.mult(d)
            if m == 2:
                token = thin_token(e, BLACK)
            elif other in resonant:
                if m == 1:
                    raise GlueError(f"Resonant hexagons {h} and {other} share factor edge {factor.endpoints(e)}")
                token = thin_token(e, WHITE)
            else:
                token = face_token[other]
            if d in triple:
                ins.append(token)
                in_edges.setdefault(e, []).append(h)
            else:
                outs.append(token)
        in_wedges[h] = tuple(ins)
        out_wedges[h] = tuple(outs)

    for tokens, tag in ((out_wedges, WHITE), (in_wedges, BLACK)):
        for triple in tokens.values():
            for t in triple:
                colour.setdefault(t, tag)
    _colour_remaining(embedding, factor, face_token, colour)

    graph = nx.MultiGraph()
    graph.add_nodes_from(sorted(resonant))
    graph.add_edges_from(_h_edges(factor, in_edges))

    special: List[List[int]] = []
    chains = nx.Graph()
    for e, owners in in_edges.items():
        if factor.multiplicity.get(e) == 2 and len(owners) == 2:
            chains.add_edge(*owners)
    for component in nx.connected_components(chains):
        if len(component) > 2:
            special.append(sorted(component))

    h = HMulti(
        embedding=embedding,
        factor=factor,
        vertices=sorted(resonant),
        graph=graph,
        face_token=face_token,
        edge_token=edge_token,
        colour=colour,
        in_wedges=in_wedges,
        out_wedges=out_wedges,
        special_cycles=special,
    )
    odd = [v for v in h.vertices if h.degree(v) != 6]
    if odd:
        logger.warning(f"H vertices {odd[:5]} do not have degree 6")
    expected = 2 * len(h.vertices) + 2
    if h.vertices and h.n_tokens != expected:
        logger.debug(f"H has {h.n_tokens} regions, expected {expected}")
    logger.debug(
        f"H: {len(h.vertices)} vertices, {graph.number_of_edges()} edges, {h.n_tokens} regions, "
        f"{len(special)} special chains"
    )
    return h


def _colour_remaining(
    embedding: PlanarEmbedding, factor: TwoFactor, face_token: Dict[int, int], colour: Dict[int, int]
) -> None:
    """Two-colour tokens untouched by resonant hexagons across single factor edges."""
    adjacency: Dict[int, set] = {}
    for d in embedding.edge_darts():
        if factor.mult(d) != 1:
            continue
        a, b = embedding.edge_faces(d)
        if a in face_token and b in face_token:
            ta, tb = face_token[a], face_token[b]
            adjacency.setdefault(ta, set()).add(tb)
            adjacency.setdefault(tb, set()).add(ta)
    pending = sorted(set(face_token.values()) - set(colour))
    queue = [t for t in sorted(colour) if t in adjacency]
    while pending:
        while queue:
            t = queue.pop()
            for other in adjacency.get(t, ()):
                if other not in colour:
                    colour[other] = BLACK if colour[t] == WHITE else WHITE
                    queue.append(other)
        pending = [t for t in pending if t not in colour]
        if pending:
            colour[pending[0]] = BLACK
            queue.append(pending[0])


def white_count(colours: List[int]) -> int:
    """Distinct white-class regions: plain white or a unique tag."""
    return sum(1 for c in colours if c == WHITE or c > 0)
