"""Structural classification of cubic plane graphs.

The classes are nested: every fullerene is a Barnette graph and every Barnette
graph is a cubic polyhedral graph with faces of size at most 6.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Dict, Optional

import networkx as nx

from logging_system import get_logger
from planar.embedding import PlanarEmbedding

logger = get_logger(__name__)

EXHAUSTIVE_CONNECTIVITY_LIMIT = 64


class GraphKind(str, Enum):
    """Classification outcome."""
    FULLERENE = "fullerene"
    BARNETTE = "barnette"
    CUBIC_POLYHEDRAL_LE6 = "cubic_polyhedral_le6"
    OUT_OF_SCOPE = "out_of_scope"


@dataclass
class Classification:
    kind: GraphKind
    violated: Optional[str] = None
    census: Dict[int, int] = field(default_factory=dict)

    @property
    def is_barnette(self) -> bool:
        return self.kind in (GraphKind.BARNETTE, GraphKind.FULLERENE)

    @property
    def in_scope(self) -> bool:
        return self.kind != GraphKind.OUT_OF_SCOPE


def is_three_connected(graph: nx.Graph) -> bool:
    """Vertex connectivity >= 3.

    Small graphs are checked by deleting every vertex pair; larger ones use
    networkx's flow-based node connectivity.
    """
    n = graph.number_of_nodes()
    if n < 4 or not nx.is_connected(graph):
        return False
    if n > EXHAUSTIVE_CONNECTIVITY_LIMIT:
        return nx.node_connectivity(graph) >= 3
    nodes = list(graph.nodes())
    for u, v in combinations(nodes, 2):
        rest = graph.subgraph(w for w in nodes if w != u and w != v)
        if not nx.is_connected(rest):
            return False
    return True


def has_adjacent_quadrangles(embedding: PlanarEmbedding) -> bool:
    for d in embedding.edge_darts():
        f1, f2 = embedding.edge_faces(d)
        if embedding.face(f1).size == 4 and embedding.face(f2).size == 4:
            return True
    return False


def classify(embedding: PlanarEmbedding) -> Classification:
    """Place a cubic embedding in the fullerene/Barnette/<=6 hierarchy.

    Returns:
        Classification whose ``violated`` names the first failed property when
        the graph is out of scope (``multi_edge``, ``genus``, ``connectivity``,
        ``face_size``)
    """
    census = embedding.face_census()
    if embedding.allow_multi and len(set(embedding.edges())) != embedding.n_edges:
        return Classification(GraphKind.OUT_OF_SCOPE, "multi_edge", census)
    if embedding.genus != 0:
        return Classification(GraphKind.OUT_OF_SCOPE, "genus", census)
    if not is_three_connected(embedding.to_networkx()):
        return Classification(GraphKind.OUT_OF_SCOPE, "connectivity", census)
    if max(census) > 6:
        return Classification(GraphKind.OUT_OF_SCOPE, "face_size", census)

    if census.get(3, 0) > 0:
        return Classification(GraphKind.CUBIC_POLYHEDRAL_LE6, "triangle", census)
    if has_adjacent_quadrangles(embedding):
        return Classification(GraphKind.CUBIC_POLYHEDRAL_LE6, "adjacent_quadrangles", census)
    if census.get(4, 0) > 0:
        return Classification(GraphKind.BARNETTE, "quadrangle", census)
    return Classification(GraphKind.FULLERENE, None, census)
