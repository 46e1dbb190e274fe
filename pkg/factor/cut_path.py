"""The cut path: a simple dual path through every pentagon.

Pentagons are visited one configuration at a time, starting with the
configuration the caller picks. Inside a configuration and between
configurations the next pentagon is the nearest unvisited one. Consecutive
pentagons are joined by a shortest dual path that avoids faces already on the
path and every other pentagon.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from factor.configurations import Configuration, configurations
from logging_system import get_logger
from planar.dual import DualGraph, shared_edge_dart
from planar.embedding import PlanarEmbedding
from planar.exceptions import FactorInvalid

logger = get_logger(__name__)


@dataclass
class DualPath:
    """Face sequence of the cut and its split into segments.

    Attributes:
        nodes: Faces along the cut, first and last are pentagons
        segments: Face sequences from one pentagon to the next, endpoints included
        order: Configuration indices in visiting order
        crossings: For each consecutive pair of nodes, the dart of the first
            face lying on the crossed edge
    """

    nodes: List[int] = field(default_factory=list)
    segments: List[List[int]] = field(default_factory=list)
    order: List[int] = field(default_factory=list)
    crossings: List[int] = field(default_factory=list)

    @property
    def pentagons(self) -> List[int]:
        if not self.segments:
            return list(self.nodes)
        return [s[0] for s in self.segments] + [self.segments[-1][-1]]

    @property
    def is_empty(self) -> bool:
        return not self.nodes

    def position(self) -> dict:
        """Face -> index along the cut."""
        return {f: i for i, f in enumerate(self.nodes)}


def _pentagon_order(
    dual: DualGraph, configs: Sequence[Configuration], start_config: int
) -> List[int]:
    pending = {c.index: set(c.pentagons) for c in configs if c.pentagons}
    if start_config not in pending:
        start_config = min(pending)
    current = min(pending[start_config])
    order = [current]
    active = start_config
    pending[active].discard(current)
    while any(pending.values()):
        dist = dual.bfs([current])
        if pending.get(active):
            candidates = pending[active]
        else:
            pending.pop(active, None)
            candidates = set().union(*pending.values())
        current = min(candidates, key=lambda f: (dist.get(f, len(dist) + 1), f))
        active = next(i for i, members in pending.items() if current in members)
        pending[active].discard(current)
        order.append(current)
    return order


def build_cut_path(
    embedding: PlanarEmbedding,
    start_config: int = 0,
    configs: Optional[Sequence[Configuration]] = None,
    dual: Optional[DualGraph] = None,
) -> DualPath:
    """Build the cut path starting in configuration ``start_config``.

    Raises:
        FactorInvalid: Two consecutive pentagons cannot be joined by an admissible segment
    """
    dual = dual or DualGraph.of(embedding)
    configs = list(configs) if configs is not None else configurations(embedding, dual)
    pentagons = dual.pentagons
    if not pentagons:
        return DualPath()

    sequence = _pentagon_order(dual, configs, start_config)
    config_index = {f: c.index for c in configs for f in c.pentagons}
    order: List[int] = []
    for f in sequence:
        if not order or order[-1] != config_index[f]:
            order.append(config_index[f])

    nodes = [sequence[0]]
    used = {sequence[0]}
    segments: List[List[int]] = []
    for a, b in zip(sequence, sequence[1:]):
        blocked = used | (pentagons - {b})
        path = dual.shortest_path(a, b, blocked=blocked)
        if path is None:
            raise FactorInvalid(f"No admissible cut segment from face {a} to face {b}")
        segments.append(path)
        nodes.extend(path[1:])
        used.update(path)

    crossings = [shared_edge_dart(embedding, f, g) for f, g in zip(nodes, nodes[1:])]
    logger.debug(
        f"Cut path: {len(nodes)} faces, {len(segments)} segments, configuration order {order}"
    )
    return DualPath(nodes=nodes, segments=segments, order=order, crossings=crossings)
