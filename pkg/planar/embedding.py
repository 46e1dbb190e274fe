"""Rotation-system representation of plane cubic graphs.

A PlanarEmbedding stores, for every vertex, the cyclic order of its three
neighbours exactly as it was supplied (planar_code supplies clockwise order).
Darts are numbered ``3 * v + i`` for the i-th entry of the rotation of ``v``,
so the rotation permutation ``next`` and the origin map are arithmetic and
only ``twin`` needs a table.

Faces are the orbits of ``phi(d) = next(twin(d))``. Walking an orbit visits
the boundary of one face; ``origin`` of consecutive darts gives the facial
vertex sequence and each dart is one boundary edge.

Key Design Principles:
1. Immutable after construction; reductions build new embeddings.
2. Vertices are 0-based internally; I/O layers convert to 1-based.
3. All orientation reasoning uses dart order, never coordinates.

Usage:
    emb = PlanarEmbedding([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])
    print(emb.n_vertices, [f.size for f in emb.faces()])
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from planar.exceptions import EmbeddingError

DEGREE = 3


@dataclass(frozen=True)
class Face:
    """Boundary orbit of one face."""

    id: int
    darts: Tuple[int, ...]
    vertices: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.darts)


class PlanarEmbedding:
    """Combinatorial map of a cubic graph given by its rotation system.

    Args:
        rotations: For each vertex, its three neighbours in rotation order
        allow_multi: Permit parallel edges (paired in reverse occurrence order)
        name: Optional label carried into reports
    """

    def __init__(
        self,
        rotations: Sequence[Sequence[int]],
        allow_multi: bool = False,
        name: Optional[str] = None,
    ):
        self._rot: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self.allow_multi = allow_multi
        self.name = name
        self._validate()
        self._twin: List[int] = self._pair_darts()

    # ------------------------------------------------------------------
    # construction

    def _validate(self) -> None:
        n = len(self._rot)
        for v, rot in enumerate(self._rot):
            if len(rot) != DEGREE:
                raise EmbeddingError(f"Vertex {v} has degree {len(rot)}, expected 3")
            for w in rot:
                if not 0 <= w < n:
                    raise EmbeddingError(f"Vertex {v} lists neighbour {w} out of range")
                if w == v:
                    raise EmbeddingError(f"Vertex {v} has a loop")
            if not self.allow_multi and len(set(rot)) != DEGREE:
                raise EmbeddingError(f"Vertex {v} has parallel edges")

    def _pair_darts(self) -> List[int]:
        twin = [-1] * (DEGREE * len(self._rot))
        for u, rot in enumerate(self._rot):
            seen: Counter = Counter()
            for i, w in enumerate(rot):
                k = seen[w]
                seen[w] += 1
                back = [j for j, x in enumerate(self._rot[w]) if x == u]
                mult = rot.count(w)
                if len(back) != mult:
                    raise EmbeddingError(
                        f"Edge {u}-{w} has multiplicity {mult} at {u} but {len(back)} at {w}"
                    )
                twin[DEGREE * u + i] = DEGREE * w + back[mult - 1 - k]
        return twin

    @classmethod
    def from_networkx(cls, graph: nx.Graph, name: Optional[str] = None) -> "PlanarEmbedding":
        """Build an embedding of a planar cubic graph from its unique plane drawing.

        Vertices are relabelled 0..n-1 in sorted order. For 3-connected graphs
        the rotation system is unique up to mirror image.
        """
        is_planar, cert = nx.check_planarity(graph)
        if not is_planar:
            raise EmbeddingError(f"Graph {name or ''} is not planar")
        order = sorted(graph.nodes())
        index = {v: i for i, v in enumerate(order)}
        rotations = [[index[w] for w in cert.neighbors_cw_order(v)] for v in order]
        return cls(rotations, name=name)

    @classmethod
    def from_edges(
        cls, edges: Sequence[Tuple[int, int]], name: Optional[str] = None
    ) -> "PlanarEmbedding":
        """Build an embedding from a plain edge list via a planarity test."""
        graph = nx.Graph()
        graph.add_edges_from(edges)
        return cls.from_networkx(graph, name=name)

    # ------------------------------------------------------------------
    # darts

    @property
    def n_vertices(self) -> int:
        return len(self._rot)

    @property
    def n_edges(self) -> int:
        return DEGREE * len(self._rot) // 2

    @property
    def n_darts(self) -> int:
        return DEGREE * len(self._rot)

    def rotation(self, v: int) -> Tuple[int, ...]:
        return self._rot[v]

    def rotations(self) -> List[List[int]]:
        return [list(r) for r in self._rot]

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._rot[v]

    @staticmethod
    def origin(d: int) -> int:
        return d // DEGREE

    def target(self, d: int) -> int:
        return self._rot[d // DEGREE][d % DEGREE]

    @staticmethod
    def next(d: int) -> int:
        return DEGREE * (d // DEGREE) + (d + 1) % DEGREE

    @staticmethod
    def prev(d: int) -> int:
        return DEGREE * (d // DEGREE) + (d - 1) % DEGREE

    def twin(self, d: int) -> int:
        return self._twin[d]

    def phi(self, d: int) -> int:
        """Successor of ``d`` along its face."""
        return self.next(self._twin[d])

    def dart(self, u: int, w: int) -> int:
        """Dart from ``u`` to ``w`` (first occurrence for parallel edges)."""
        try:
            return DEGREE * u + self._rot[u].index(w)
        except ValueError:
            raise EmbeddingError(f"No edge {u}-{w}") from None

    def darts_at(self, v: int) -> Tuple[int, int, int]:
        base = DEGREE * v
        return (base, base + 1, base + 2)

    def has_edge(self, u: int, w: int) -> bool:
        return w in self._rot[u]

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (u, w) with u < w, one entry per dart pair."""
        return [
            (self.origin(d), self.target(d))
            for d in range(self.n_darts)
            if d < self._twin[d]
        ]

    def edge_darts(self) -> List[int]:
        """One representative dart per edge (the smaller of the pair)."""
        return [d for d in range(self.n_darts) if d < self._twin[d]]

    def edge_id(self, d: int) -> int:
        """Canonical dart of the edge of ``d``."""
        t = self._twin[d]
        return d if d < t else t

    @staticmethod
    def edge_key(u: int, w: int) -> Tuple[int, int]:
        return (u, w) if u < w else (w, u)

    # ------------------------------------------------------------------
    # faces

    @cached_property
    def _face_data(self) -> Tuple[Tuple[Face, ...], Tuple[int, ...]]:
        face_of = [-1] * self.n_darts
        faces: List[Face] = []
        for start in range(self.n_darts):
            if face_of[start] != -1:
                continue
            fid = len(faces)
            orbit = []
            d = start
            while face_of[d] == -1:
                face_of[d] = fid
                orbit.append(d)
                d = self.phi(d)
            faces.append(
                Face(id=fid, darts=tuple(orbit), vertices=tuple(self.origin(x) for x in orbit))
            )
        return tuple(faces), tuple(face_of)

    def faces(self) -> Tuple[Face, ...]:
        return self._face_data[0]

    def face(self, fid: int) -> Face:
        return self._face_data[0][fid]

    @property
    def n_faces(self) -> int:
        return len(self._face_data[0])

    def face_of(self, d: int) -> int:
        """Face containing dart ``d``; its corner at origin(d) lies between prev(d) and d."""
        return self._face_data[1][d]

    def faces_at(self, v: int) -> Tuple[int, int, int]:
        """The three faces around ``v`` in rotation order of their corners."""
        face_of = self._face_data[1]
        base = DEGREE * v
        return (face_of[base], face_of[base + 1], face_of[base + 2])

    def edge_faces(self, d: int) -> Tuple[int, int]:
        """Faces on the two sides of the edge of dart ``d``."""
        face_of = self._face_data[1]
        return face_of[d], face_of[self._twin[d]]

    def face_sizes(self) -> List[int]:
        return [f.size for f in self.faces()]

    def face_census(self) -> Dict[int, int]:
        return dict(Counter(self.face_sizes()))

    @cached_property
    def genus(self) -> int:
        euler = self.n_vertices - self.n_edges + self.n_faces
        return (2 - euler) // 2

    # ------------------------------------------------------------------
    # conversions

    def to_networkx(self) -> nx.Graph:
        graph = nx.MultiGraph() if self.allow_multi else nx.Graph()
        graph.add_nodes_from(range(self.n_vertices))
        graph.add_edges_from(self.edges())
        return graph

    def dual_pairs(self) -> Iterator[Tuple[int, int, int]]:
        """Yield (face, face, dart) for every edge."""
        for d in self.edge_darts():
            f1, f2 = self.edge_faces(d)
            yield f1, f2, d

    def relabel(self, order: Sequence[int], name: Optional[str] = None) -> "PlanarEmbedding":
        """Embedding with vertex ``order[i]`` renamed to ``i``."""
        index = {v: i for i, v in enumerate(order)}
        rotations = [[index[w] for w in self._rot[v]] for v in order]
        return PlanarEmbedding(rotations, allow_multi=self.allow_multi, name=name or self.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlanarEmbedding) and self._rot == other._rot

    def __hash__(self) -> int:
        return hash(self._rot)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"PlanarEmbedding{label}(n={self.n_vertices}, faces={self.n_faces})"
