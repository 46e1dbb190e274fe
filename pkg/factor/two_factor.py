"""2-factors with isolated edges counted as 2-cycles.

A TwoFactor is stored as an edge multiplicity map: 1 for an edge of a cycle,
2 for an isolated edge (a 2-cycle). Every vertex then has multidegree 2.
Flipping a resonant hexagon subtracts its three factor edges once and adds
the other three, which keeps multidegree 2 and merges three cycles into one.
"""

from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from planar.embedding import PlanarEmbedding
from planar.exceptions import FactorInvalid


class TwoFactor:
    """Spanning 2-regular multigraph of an embedding.

    Args:
        embedding: Host graph
        multiplicity: Canonical edge dart -> 1 or 2
    """

    def __init__(self, embedding: PlanarEmbedding, multiplicity: Mapping[int, int]):
        self.embedding = embedding
        self.multiplicity: Dict[int, int] = {
            embedding.edge_id(d): m for d, m in multiplicity.items() if m
        }
        self._check_degrees()

    @classmethod
    def from_cycles(cls, embedding: PlanarEmbedding, cycles: Iterable[List[int]]) -> "TwoFactor":
        """Build from vertex cycles; a two-vertex cycle is an isolated edge."""
        mult: Dict[int, int] = {}
        for cycle in cycles:
            if len(cycle) == 2:
                mult[embedding.edge_id(embedding.dart(cycle[0], cycle[1]))] = 2
                continue
            for i, u in enumerate(cycle):
                w = cycle[(i + 1) % len(cycle)]
                mult[embedding.edge_id(embedding.dart(u, w))] = 1
        return cls(embedding, mult)

    def _check_degrees(self) -> None:
        degree = [0] * self.embedding.n_vertices
        for e, m in self.multiplicity.items():
            if m not in (1, 2):
                raise FactorInvalid(f"Edge {self.endpoints(e)} has multiplicity {m}")
            degree[self.embedding.origin(e)] += m
            degree[self.embedding.target(e)] += m
        bad = [v for v, deg in enumerate(degree) if deg != 2]
        if bad:
            raise FactorInvalid(f"Vertices {bad[:5]} do not have factor degree 2")

    def endpoints(self, e: int) -> Tuple[int, int]:
        return self.embedding.origin(e), self.embedding.target(e)

    def mult(self, d: int) -> int:
        return self.multiplicity.get(self.embedding.edge_id(d), 0)

    def contains(self, d: int) -> bool:
        return self.embedding.edge_id(d) in self.multiplicity

    @cached_property
    def _components(self) -> Tuple[Tuple[Tuple[int, ...], ...], Dict[int, int]]:
        emb = self.embedding
        seen = [False] * emb.n_vertices
        cycles: List[Tuple[int, ...]] = []
        member: Dict[int, int] = {}
        for start in range(emb.n_vertices):
            if seen[start]:
                continue
            cid = len(cycles)
            double = [d for d in emb.darts_at(start) if self.mult(d) == 2]
            if double:
                w = emb.target(double[0])
                seen[start] = seen[w] = True
                cycles.append((start, w))
                member[emb.edge_id(double[0])] = cid
                continue
            walk = [start]
            seen[start] = True
            prev_dart = -1
            v = start
            while True:
                step = next(
                    d for d in emb.darts_at(v)
                    if self.mult(d) and emb.edge_id(d) != prev_dart
                )
                member[emb.edge_id(step)] = cid
                prev_dart = emb.edge_id(step)
                v = emb.target(step)
                if v == start:
                    break
                seen[v] = True
                walk.append(v)
            cycles.append(tuple(walk))
        return tuple(cycles), member

    @property
    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        return self._components[0]

    @property
    def edge_member(self) -> Dict[int, int]:
        """Canonical edge dart -> cycle index."""
        return self._components[1]

    @property
    def n_cycles(self) -> int:
        return len(self.cycles)

    @property
    def two_cycles(self) -> List[int]:
        return [e for e, m in self.multiplicity.items() if m == 2]

    def is_hamiltonian(self) -> bool:
        return self.n_cycles == 1 and len(self.cycles[0]) == self.embedding.n_vertices

    # ------------------------------------------------------------------
    # resonance

    def in_triple(self, face_id: int) -> Optional[Tuple[int, int, int]]:
        """Factor darts of a hexagon when exactly three alternate edges are in F."""
        face = self.embedding.face(face_id)
        if face.size != 6:
            return None
        inside = [self.contains(d) for d in face.darts]
        if sum(inside) != 3:
            return None
        for offset in (0, 1):
            if all(inside[i] == (i % 2 == offset) for i in range(6)):
                return tuple(face.darts[i] for i in range(offset, 6, 2))
        return None

    def is_resonant(self, face_id: int) -> bool:
        triple = self.in_triple(face_id)
        if triple is None:
            return False
        member = self.edge_member
        return len({member[self.embedding.edge_id(d)] for d in triple}) == 3

    @cached_property
    def resonant(self) -> FrozenSet[int]:
        return frozenset(f.id for f in self.embedding.faces() if self.is_resonant(f.id))

    def flip(self, face_id: int) -> "TwoFactor":
        """Symmetric difference with a resonant hexagon boundary.

        Raises:
            FactorInvalid: The hexagon is not resonant
        """
        if not self.is_resonant(face_id):
            raise FactorInvalid(f"Face {face_id} is not resonant")
        mult = dict(self.multiplicity)
        for d in self.embedding.face(face_id).darts:
            e = self.embedding.edge_id(d)
            if e in mult:
                mult[e] -= 1
                if not mult[e]:
                    del mult[e]
            else:
                mult[e] = 1
        return TwoFactor(self.embedding, mult)

    def flip_many(self, faces: Iterable[int]) -> "TwoFactor":
        """Flip a set of hexagons simultaneously, each w.r.t. this factor."""
        mult = dict(self.multiplicity)
        for face_id in faces:
            triple = self.in_triple(face_id)
            if triple is None:
                raise FactorInvalid(f"Face {face_id} has no alternating factor triple")
            ins = {self.embedding.edge_id(d) for d in triple}
            for d in self.embedding.face(face_id).darts:
                e = self.embedding.edge_id(d)
                mult[e] = mult.get(e, 0) + (-1 if e in ins else 1)
        return TwoFactor(self.embedding, {e: m for e, m in mult.items() if m})

    # ------------------------------------------------------------------
    # regions and structural properties

    @cached_property
    def regions(self) -> Tuple[List[int], List[Set[int]]]:
        """Face -> region index and, per region, the long cycles on its boundary."""
        emb = self.embedding
        parent = list(range(emb.n_faces))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in emb.edge_darts():
            if not self.contains(d):
                a, b = emb.edge_faces(d)
                parent[find(a)] = find(b)
        roots: Dict[int, int] = {}
        region_of = [roots.setdefault(find(f), len(roots)) for f in range(emb.n_faces)]
        touching: List[Set[int]] = [set() for _ in roots]
        member = self.edge_member
        for e, m in self.multiplicity.items():
            if m == 2:
                continue
            for f in emb.edge_faces(e):
                touching[region_of[f]].add(member[e])
        return region_of, touching

    def is_nested(self) -> bool:
        """True when some cycle lies inside another.

        The cycles are un-nested exactly when one region touches every long
        cycle.
        """
        long_cycles = {i for i, c in enumerate(self.cycles) if len(c) > 2}
        if len(long_cycles) <= 1:
            return False
        _, touching = self.regions
        return not any(t >= long_cycles for t in touching)

    def resonant_counts(self) -> Dict[int, int]:
        """Cycle index -> number of resonant hexagons it is incident to."""
        counts = {i: 0 for i in range(self.n_cycles)}
        member = self.edge_member
        for h in self.resonant:
            for d in self.in_triple(h):
                counts[member[self.embedding.edge_id(d)]] += 1
        return counts

    def property_violations(self) -> List[str]:
        """Reasons this factor is not ready for gluing (empty when it is)."""
        problems: List[str] = []
        if self.n_cycles == 1:
            return problems
        counts = self.resonant_counts()
        for i, cycle in enumerate(self.cycles):
            if len(cycle) == 2:
                if counts[i] != 2:
                    problems.append(f"2-cycle {cycle} flanked by {counts[i]} resonant hexagons")
            elif counts[i] < 3:
                problems.append(f"cycle {i} (length {len(cycle)}) has {counts[i]} resonant hexagons")
        if self.is_nested():
            problems.append("nested cycles")
        return problems

    def as_cycles_1based(self) -> List[List[int]]:
        return [[v + 1 for v in c] for c in self.cycles]

    def __repr__(self) -> str:
        sizes = sorted(len(c) for c in self.cycles)
        return f"TwoFactor(c={self.n_cycles}, lengths={sizes})"
