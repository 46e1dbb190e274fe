"""Dual graph, dual distances and small-face bookkeeping."""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from planar.embedding import PlanarEmbedding


@dataclass
class DualGraph:
    """Face adjacency of an embedding.

    ``adjacency[f]`` lists one entry per boundary edge of f in orbit order,
    so the dual degree of f equals its size (parallel dual edges repeat).
    """

    embedding: PlanarEmbedding
    adjacency: Dict[int, List[int]] = field(default_factory=dict)

    @classmethod
    def of(cls, embedding: PlanarEmbedding) -> "DualGraph":
        adjacency: Dict[int, List[int]] = {}
        for face in embedding.faces():
            adjacency[face.id] = [
                embedding.face_of(embedding.twin(d)) for d in face.darts
            ]
        return cls(embedding=embedding, adjacency=adjacency)

    @property
    def nodes(self) -> List[int]:
        return list(self.adjacency)

    def size(self, f: int) -> int:
        return self.embedding.face(f).size

    def neighbours(self, f: int) -> List[int]:
        return self.adjacency[f]

    @cached_property
    def small_faces(self) -> FrozenSet[int]:
        return frozenset(f for f in self.adjacency if self.size(f) in (4, 5))

    @cached_property
    def pentagons(self) -> FrozenSet[int]:
        return frozenset(f for f in self.adjacency if self.size(f) == 5)

    @cached_property
    def quadrangles(self) -> FrozenSet[int]:
        return frozenset(f for f in self.adjacency if self.size(f) == 4)

    def bfs(
        self,
        sources: Iterable[int],
        limit: Optional[int] = None,
        blocked: Optional[Set[int]] = None,
    ) -> Dict[int, int]:
        """Dual distances from a set of faces, optionally truncated at ``limit``."""
        dist: Dict[int, int] = {}
        queue: deque = deque()
        for s in sources:
            dist[s] = 0
            queue.append(s)
        while queue:
            f = queue.popleft()
            if limit is not None and dist[f] >= limit:
                continue
            for g in self.adjacency[f]:
                if g in dist or (blocked and g in blocked):
                    continue
                dist[g] = dist[f] + 1
                queue.append(g)
        return dist

    def ball(self, f: int, k: int) -> Set[int]:
        return set(self.bfs([f], limit=k))

    def shortest_path(
        self, source: int, target: int, blocked: Optional[Set[int]] = None
    ) -> Optional[List[int]]:
        """Shortest dual path, ties broken towards smaller face ids.

        Faces in ``blocked`` are never entered (the endpoints are always allowed).
        """
        parent: Dict[int, int] = {source: -1}
        frontier = [source]
        while frontier and target not in parent:
            nxt: List[int] = []
            for f in frontier:
                for g in sorted(set(self.adjacency[f])):
                    if g in parent:
                        continue
                    if blocked and g in blocked and g != target:
                        continue
                    parent[g] = f
                    nxt.append(g)
            frontier = sorted(nxt)
        if target not in parent:
            return None
        path = [target]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        return path[::-1]

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.adjacency)
        for f1, f2, d in self.embedding.dual_pairs():
            graph.add_edge(f1, f2, dart=d)
        return graph


def dual_distance(dual: DualGraph, f1: int, f2: int) -> int:
    """BFS distance between two faces in the dual graph."""
    if f1 == f2:
        return 0
    return dual.bfs([f1])[f2]


def shared_edge_dart(embedding: PlanarEmbedding, f: int, g: int) -> Optional[int]:
    """Dart of face ``f`` lying on an edge shared with face ``g``."""
    for d in embedding.face(f).darts:
        if embedding.face_of(embedding.twin(d)) == g:
            return d
    return None


def face_pairs_to_edges(embedding: PlanarEmbedding) -> Dict[Tuple[int, int], List[int]]:
    """Map each unordered adjacent face pair to its shared edge darts."""
    table: Dict[Tuple[int, int], List[int]] = {}
    for f1, f2, d in embedding.dual_pairs():
        table.setdefault((min(f1, f2), max(f1, f2)), []).append(d)
    return table
