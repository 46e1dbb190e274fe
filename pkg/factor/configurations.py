"""Configurations: small faces grouped by the transitive closure of dual distance <= 2."""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional

import networkx as nx

from clusters.patch import ClusterRecord, closure_faces
from logging_system import get_logger
from planar.dual import DualGraph
from planar.embedding import PlanarEmbedding

logger = get_logger(__name__)

LINK_DISTANCE = 2


@dataclass
class Configuration:
    """One equivalence class of small faces and the cluster it spans."""

    index: int
    faces: FrozenSet[int]
    pentagons: FrozenSet[int]
    cluster: ClusterRecord

    @property
    def quadrangles(self) -> FrozenSet[int]:
        return self.faces - self.pentagons


def configurations(
    embedding: PlanarEmbedding, dual: Optional[DualGraph] = None
) -> List[Configuration]:
    """Partition the quadrangles and pentagons into configurations.

    Classes are ordered by their smallest face id.
    """
    dual = dual or DualGraph.of(embedding)
    small = sorted(dual.small_faces)
    links = nx.Graph()
    links.add_nodes_from(small)
    for f in small:
        near = dual.bfs([f], limit=LINK_DISTANCE)
        for g in small:
            if g > f and g in near:
                links.add_edge(f, g)
    classes = sorted((sorted(c) for c in nx.connected_components(links)), key=lambda c: c[0])

    result: List[Configuration] = []
    for index, members in enumerate(classes):
        region = closure_faces(dual, members)
        record = ClusterRecord.in_graph(embedding, region)
        result.append(
            Configuration(
                index=index,
                faces=frozenset(members),
                pentagons=frozenset(f for f in members if dual.size(f) == 5),
                cluster=record,
            )
        )
    logger.debug(
        f"{embedding.name or 'graph'}: {len(result)} configurations, "
        f"sizes {[len(c.faces) for c in result]}"
    )
    return result


def configuration_of(configs: List[Configuration]) -> Dict[int, int]:
    """Small face id -> configuration index."""
    return {f: c.index for c in configs for f in c.faces}
