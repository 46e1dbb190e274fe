"""Patches: discs of faces with one distinguished outer face.

A Patch is stored as a set of oriented facial walks. Every dart (u, w)
belongs to exactly one walk, the face on its left, and the outer face is one
more walk. The rotation at a vertex follows from the walks:
``next((u, w)) = phi((w, u))``, the same convention PlanarEmbedding uses, so
patches cut out of a host embedding keep the host's orientation.

Perimeter counts the stubs leaving the patch (one per degree-2 vertex) and
curvature is ``sum(6 - size)`` over the inner faces, i.e. ``2 f4 + f5`` for
patches of quadrangles, pentagons and hexagons.

Usage:
    patch = Patch.single_face(5)
    print(patch.curvature, patch.perimeter, patch.gaps())
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from planar.dual import DualGraph
from planar.embedding import PlanarEmbedding

Dart = Tuple[int, int]
CanonicalKey = Tuple[int, ...]

HEXAGON = 6
SMALL_SIZES = (4, 5)


class Patch:
    """Plane 2-connected graph with all degree-2 vertices on the outer face.

    Args:
        faces: Inner facial walks, each listing vertices in orbit order
        outer: Outer facial walk in orbit order
        host: Optional (embedding, face ids) the patch was cut from
    """

    def __init__(
        self,
        faces: Sequence[Sequence[int]],
        outer: Sequence[int],
        host: Optional[Tuple[PlanarEmbedding, FrozenSet[int]]] = None,
    ):
        self.faces: Tuple[Tuple[int, ...], ...] = tuple(tuple(f) for f in faces)
        self.outer: Tuple[int, ...] = tuple(outer)
        self.host = host
        self._succ: Dict[Dart, Dart] = {}
        self._face_of: Dict[Dart, int] = {}
        for index, walk in enumerate(self.faces + (self.outer,)):
            for i, u in enumerate(walk):
                d = (u, walk[(i + 1) % len(walk)])
                if d in self._succ:
                    raise ValueError(f"Dart {d} lies on two faces")
                nxt = (walk[(i + 1) % len(walk)], walk[(i + 2) % len(walk)])
                self._succ[d] = nxt
                self._face_of[d] = index
        for u, w in self._succ:
            if (w, u) not in self._succ:
                raise ValueError(f"Dart {(u, w)} has no twin")

    @classmethod
    def single_face(cls, size: int) -> "Patch":
        """One inner face of the given size; the outer walk runs the other way."""
        ring = list(range(size))
        return cls([ring], ring[::-1])

    @classmethod
    def from_faces(cls, embedding: PlanarEmbedding, face_ids: Iterable[int]) -> "Patch":
        """Cut the union of ``face_ids`` out of a host embedding.

        Raises:
            ValueError: The union is the whole sphere or not a disc
        """
        chosen = frozenset(face_ids)
        walks = [embedding.face(f).vertices for f in sorted(chosen)]
        patch_darts: Set[int] = set()
        for f in chosen:
            patch_darts.update(embedding.face(f).darts)
        edge_in_patch = {embedding.edge_id(d) for d in patch_darts}
        boundary = [
            d for d in sorted(patch_darts) if embedding.face_of(embedding.twin(d)) not in chosen
        ]
        if not boundary:
            raise ValueError("Faces cover the whole graph; there is no outer face")

        def patch_next(d: int) -> int:
            d = embedding.next(d)
            while embedding.edge_id(d) not in edge_in_patch:
                d = embedding.next(d)
            return d

        start = embedding.twin(boundary[0])
        outer: List[int] = []
        d = start
        while True:
            outer.append(embedding.origin(d))
            d = patch_next(embedding.twin(d))
            if d == start:
                break
            if len(outer) > len(boundary):
                raise ValueError("Outer walk did not close")
        if len(outer) != len(boundary):
            raise ValueError("Faces do not form a disc (several boundary components)")
        return cls(walks, outer, host=(embedding, chosen))

    # ------------------------------------------------------------------
    # map structure

    def twin(self, d: Dart) -> Dart:
        return (d[1], d[0])

    def phi(self, d: Dart) -> Dart:
        return self._succ[d]

    def next(self, d: Dart) -> Dart:
        return self._succ[(d[1], d[0])]

    @cached_property
    def _prev_map(self) -> Dict[Dart, Dart]:
        return {self.next(d): d for d in self._succ}

    def prev(self, d: Dart) -> Dart:
        return self._prev_map[d]

    @cached_property
    def darts_by_vertex(self) -> Dict[int, List[Dart]]:
        table: Dict[int, List[Dart]] = {}
        for d in self._succ:
            table.setdefault(d[0], []).append(d)
        return table

    @property
    def vertices(self) -> List[int]:
        return sorted(self.darts_by_vertex)

    @property
    def n_vertices(self) -> int:
        return len(self.darts_by_vertex)

    def degree(self, v: int) -> int:
        return len(self.darts_by_vertex[v])

    def neighbours(self, v: int) -> List[int]:
        """Neighbours of ``v`` in rotation order."""
        first = self.darts_by_vertex[v][0]
        order = [first]
        d = self.next(first)
        while d != first:
            order.append(d)
            d = self.next(d)
        return [w for _, w in order]

    def edges(self) -> List[Tuple[int, int]]:
        return sorted({(min(u, w), max(u, w)) for u, w in self._succ})

    def face_of(self, d: Dart) -> int:
        """Inner face index of ``d``, or ``len(faces)`` for the outer face."""
        return self._face_of[d]

    @property
    def outer_index(self) -> int:
        return len(self.faces)

    # ------------------------------------------------------------------
    # measures

    @property
    def sizes(self) -> List[int]:
        return [len(f) for f in self.faces]

    @property
    def f4(self) -> int:
        return self.sizes.count(4)

    @property
    def f5(self) -> int:
        return self.sizes.count(5)

    @property
    def curvature(self) -> int:
        return sum(HEXAGON - s for s in self.sizes)

    @property
    def perimeter(self) -> int:
        return sum(1 for v in self.outer if self.degree(v) == 2)

    def small_faces(self) -> List[int]:
        return [i for i, s in enumerate(self.sizes) if s in SMALL_SIZES]

    def inner_neighbours(self, index: int) -> List[int]:
        """Inner faces across each edge of face ``index`` (outer edges skipped)."""
        walk = self.faces[index]
        out = []
        for i, u in enumerate(walk):
            g = self._face_of[(walk[(i + 1) % len(walk)], u)]
            if g != self.outer_index:
                out.append(g)
        return out

    def touches_outer(self, index: int) -> bool:
        walk = self.faces[index]
        return any(
            self._face_of[(walk[(i + 1) % len(walk)], u)] == self.outer_index
            for i, u in enumerate(walk)
        )

    def disc_indices(self, index: int, k: int) -> Set[int]:
        """Inner faces within dual distance ``k`` of face ``index``."""
        seen = {index}
        frontier = [index]
        for _ in range(k):
            nxt = []
            for f in frontier:
                for g in self.inner_neighbours(f):
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        return seen

    def open_faces(self) -> Set[int]:
        """Faces whose missing neighbours would lie in the 2-disc of a small face.

        These are the faces of the 1-discs around small faces that still have
        an edge on the outer face.
        """
        needy: Set[int] = set()
        for s in self.small_faces():
            for f in self.disc_indices(s, 1):
                if self.touches_outer(f):
                    needy.add(f)
        return needy

    def is_closed(self) -> bool:
        """True when the patch contains the 2-disc of each of its small faces."""
        return not self.open_faces()

    # ------------------------------------------------------------------
    # growth

    def gaps(self) -> List[Tuple[int, int]]:
        """Boundary runs between consecutive degree-2 vertices.

        Returns:
            (index into ``outer`` of the starting degree-2 vertex, run length t)
        """
        m = len(self.outer)
        twos = [i for i, v in enumerate(self.outer) if self.degree(v) == 2]
        if len(twos) < 2:
            return []
        runs = []
        for j, i in enumerate(twos):
            nxt = twos[(j + 1) % len(twos)]
            runs.append((i, (nxt - i) % m or m))
        return runs

    def gap_faces(self, start: int, t: int) -> List[int]:
        """Inner faces along the run of ``t`` outer edges starting at ``outer[start]``."""
        m = len(self.outer)
        out = []
        for j in range(t):
            u = self.outer[(start + j) % m]
            w = self.outer[(start + j + 1) % m]
            out.append(self._face_of[(w, u)])
        return out

    def add_face(self, start: int, t: int, size: int) -> Optional["Patch"]:
        """Glue a new face of ``size`` along a gap; None when it does not fit."""
        m = len(self.outer)
        if t >= m or size < t + 1:
            return None
        rotated = self.outer[start:] + self.outer[:start]
        a, b = rotated[0], rotated[t]
        fresh_count = size - t - 1
        if fresh_count == 0 and b in self.neighbours(a):
            return None
        base = max(self.darts_by_vertex) + 1
        fresh = list(range(base, base + fresh_count))
        new_face = list(rotated[: t + 1]) + fresh
        # the outer walk keeps a and b and runs back through the fresh vertices
        outer = [a] + fresh[::-1] + list(rotated[t:])
        if len(outer) < 3:
            return None
        try:
            return Patch(list(self.faces) + [new_face], outer)
        except ValueError:
            return None

    # ------------------------------------------------------------------
    # identity

    def _code(self, start: Dart, mirror: bool) -> Tuple[int, ...]:
        number = {start[0]: 0}
        order = [start[0]]
        entry = {start[0]: start}
        code: List[int] = []
        turn = self.prev if mirror else self.next
        i = 0
        while i < len(order):
            v = order[i]
            d = entry[v]
            for _ in range(self.degree(v)):
                w = d[1]
                if w not in number:
                    number[w] = len(order)
                    order.append(w)
                    entry[w] = (w, v)
                code.append(number[w])
                d = turn(d)
            code.append(-1)
            i += 1
        return tuple(code)

    @cached_property
    def canonical_key(self) -> CanonicalKey:
        """Smallest BFS code over outer starting darts and both reflections."""
        m = len(self.outer)
        best: Optional[Tuple[int, ...]] = None
        for i, v in enumerate(self.outer):
            if self.degree(v) != 2:
                continue
            w_next = self.outer[(i + 1) % m]
            w_prev = self.outer[(i - 1) % m]
            for start, mirror in (((v, w_next), False), ((v, w_prev), True)):
                code = self._code(start, mirror)
                if best is None or code < best:
                    best = code
        if best is None:
            best = self._code((self.outer[0], self.outer[1]), False)
        return best

    def __repr__(self) -> str:
        return (
            f"Patch(faces={len(self.faces)}, f4={self.f4}, f5={self.f5}, "
            f"mu={self.curvature}, delta={self.perimeter})"
        )


# ----------------------------------------------------------------------
# patches inside a host graph


def disc_faces(dual: DualGraph, face: int, k: int) -> Set[int]:
    """Faces at dual distance at most ``k`` from ``face``."""
    return dual.ball(face, k)


def closure_faces(dual: DualGraph, faces: Iterable[int]) -> Set[int]:
    """Complete the 2-discs of every small face until nothing changes."""
    region = set(faces)
    while True:
        grown = set(region)
        for f in region:
            if f in dual.small_faces:
                grown |= dual.ball(f, 2)
        if grown == region:
            return region
        region = grown


def k_disc(embedding: PlanarEmbedding, face: int, k: int) -> Patch:
    """The k-disc centred at ``face`` as a patch of the host graph."""
    return Patch.from_faces(embedding, disc_faces(DualGraph.of(embedding), face, k))


def closure(patch: Patch) -> Patch:
    """Closure of a host-backed patch; free patches must already be closed.

    Raises:
        ValueError: A free patch is not closed, or the closure covers the host
    """
    if patch.host is None:
        if patch.is_closed():
            return patch
        raise ValueError("A free patch can only be closed inside a host graph")
    embedding, faces = patch.host
    region = closure_faces(DualGraph.of(embedding), faces)
    if region == set(faces):
        return patch
    return Patch.from_faces(embedding, region)


def face_set_curvature(embedding: PlanarEmbedding, faces: Iterable[int]) -> int:
    return sum(HEXAGON - embedding.face(f).size for f in faces)


def face_set_perimeter(embedding: PlanarEmbedding, faces: Iterable[int]) -> int:
    """Number of stubs leaving the union of ``faces``."""
    chosen = set(faces)
    covered: Dict[int, int] = {}
    for f in chosen:
        for d in embedding.face(f).darts:
            covered[embedding.edge_id(d)] = 1
    degree: Dict[int, int] = {}
    for e in covered:
        for v in (embedding.origin(e), embedding.target(e)):
            degree[v] = degree.get(v, 0) + 1
    return sum(3 - deg for deg in degree.values())


@dataclass
class ClusterRecord:
    """A cluster with its invariants.

    Attributes:
        faces: Host face ids (empty for generated clusters)
        f4: Quadrangles inside
        f5: Pentagons inside
        mu: Curvature ``2 f4 + f5``
        delta: Perimeter
        patch: The cluster as a patch, when it is a proper disc
        tags: Recognised shapes (``C0``, ``C3``, ``cap6`` ...)
    """

    faces: FrozenSet[int]
    f4: int
    f5: int
    mu: int
    delta: int
    patch: Optional[Patch] = None
    tags: List[str] = field(default_factory=list)

    @property
    def canonical_key(self) -> Optional[CanonicalKey]:
        return self.patch.canonical_key if self.patch is not None else None

    @property
    def direct_check(self) -> bool:
        """Curvature at least 7 with perimeter at most the curvature."""
        return self.mu >= 7 and self.delta <= self.mu

    @classmethod
    def from_patch(cls, patch: Patch) -> "ClusterRecord":
        return cls(
            faces=frozenset(),
            f4=patch.f4,
            f5=patch.f5,
            mu=patch.curvature,
            delta=patch.perimeter,
            patch=patch,
        )

    @classmethod
    def in_graph(cls, embedding: PlanarEmbedding, faces: Iterable[int]) -> "ClusterRecord":
        chosen = frozenset(faces)
        sizes = [embedding.face(f).size for f in chosen]
        try:
            patch: Optional[Patch] = Patch.from_faces(embedding, chosen)
        except ValueError:
            patch = None
        return cls(
            faces=chosen,
            f4=sizes.count(4),
            f5=sizes.count(5),
            mu=face_set_curvature(embedding, chosen),
            delta=face_set_perimeter(embedding, chosen),
            patch=patch,
        )
