"""Reductions from cubic polyhedral graphs with faces <= 6 to Barnette graphs.

Three local moves shrink the graph:

- triangle_contract: a triangle becomes one vertex (n - 2)
- quad_triple_contract: three quadrangles around a vertex become one vertex (n - 6)
- quad_pair_excise: two adjacent quadrangles flanked by non-quadrangles are
  removed, their outer vertices identified in pairs (n - 4)

K4 and the cube are terminal. Every step carries a lift table built by
exhaustive path search on the original site, so any Hamilton cycle of the
reduced graph expands to one of the original.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from logging_system import get_logger
from planar.classify import classify, GraphKind
from planar.embedding import PlanarEmbedding
from planar.exceptions import LiftError, ReductionError
from reduction.builder import Replacement, Token, boundary_ports, replace_site
from reduction.lift import (
    Pattern,
    PortPair,
    build_lift_table,
    lift_runs,
    reduced_patterns,
    site_adjacency,
)

logger = get_logger(__name__)


class ReductionKind(str, Enum):
    TRIANGLE_CONTRACT = "triangle_contract"
    QUAD_TRIPLE_CONTRACT = "quad_triple_contract"
    QUAD_PAIR_EXCISE = "quad_pair_excise"
    TERMINAL_K4 = "terminal_K4"
    TERMINAL_CUBE = "terminal_cube"


TERMINAL_KINDS = (ReductionKind.TERMINAL_K4, ReductionKind.TERMINAL_CUBE)


@dataclass
class ReductionStep:
    """One reduction applied to ``before``.

    ``site_vertices`` are original ids removed by the step; ``site_faces`` the
    faces that triggered it. ``lift_table`` maps a traversal pattern of the
    gadget to original-site paths keyed by port pair.
    """

    kind: ReductionKind
    before: PlanarEmbedding
    after: PlanarEmbedding
    site_faces: Tuple[int, ...] = ()
    site_vertices: FrozenSet[int] = frozenset()
    replacement: Optional[Replacement] = None
    lift_table: Dict[Pattern, Dict[PortPair, List[int]]] = field(default_factory=dict)

    @property
    def is_terminal(self) -> bool:
        return self.kind in TERMINAL_KINDS

    def summary(self) -> dict:
        return {
            "kind": self.kind.value,
            "n_before": self.before.n_vertices,
            "n_after": self.after.n_vertices,
            "site_faces": list(self.site_faces),
            "site_vertices": sorted(v + 1 for v in self.site_vertices),
            "patterns": len(self.lift_table),
        }


@dataclass
class ReductionTrace:
    original: PlanarEmbedding
    steps: List[ReductionStep] = field(default_factory=list)

    @property
    def final(self) -> PlanarEmbedding:
        if not self.steps:
            return self.original
        return self.steps[-1].after

    @property
    def terminal(self) -> Optional[ReductionKind]:
        if self.steps and self.steps[-1].is_terminal:
            return self.steps[-1].kind
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.original.n_vertices,
            "final_n": self.final.n_vertices,
            "terminal": self.terminal.value if self.terminal else None,
            "steps": [s.summary() for s in self.steps],
        }


# ----------------------------------------------------------------------
# step construction


def _finish(
    kind: ReductionKind,
    embedding: PlanarEmbedding,
    site: FrozenSet[int],
    faces: Sequence[int],
    gadget: Sequence[Sequence[Token]],
    ports: List[int],
) -> Tuple[PlanarEmbedding, ReductionStep]:
    replacement = replace_site(embedding, site, gadget, ports)
    reduced = replacement.embedding

    gadget_adj = {
        v: {w for w in reduced.neighbors(v) if w in replacement.gadget}
        for v in replacement.gadget
    }
    reduced_port_vertex = {
        k: replacement.gadget[j] for k, j in replacement.port_owner.items()
    }
    patterns = reduced_patterns(gadget_adj, reduced_port_vertex)
    original_port_vertex = {k: embedding.origin(p) for k, p in enumerate(ports)}
    table = build_lift_table(site_adjacency(embedding, site), original_port_vertex, patterns)

    step = ReductionStep(
        kind=kind,
        before=embedding,
        after=reduced,
        site_faces=tuple(faces),
        site_vertices=site,
        replacement=replacement,
        lift_table=table,
    )
    logger.debug(
        f"{kind.value}: n {embedding.n_vertices} -> {reduced.n_vertices}, "
        f"{len(table)} traversal patterns"
    )
    return reduced, step


def _terminal(kind: ReductionKind, embedding: PlanarEmbedding) -> Tuple[PlanarEmbedding, ReductionStep]:
    return embedding, ReductionStep(kind=kind, before=embedding, after=embedding)


def is_k4(embedding: PlanarEmbedding) -> bool:
    return embedding.n_vertices == 4


def is_cube(embedding: PlanarEmbedding) -> bool:
    return embedding.n_vertices == 8 and all(f.size == 4 for f in embedding.faces())


def reduce_triangle(embedding: PlanarEmbedding, face_id: int) -> Tuple[PlanarEmbedding, ReductionStep]:
    """Contract a triangular face to a single vertex.

    Raises:
        ReductionError: ``face_id`` is not a triangle
    """
    face = embedding.face(face_id)
    if face.size != 3:
        raise ReductionError(f"Face {face_id} has size {face.size}, not a triangle")
    if is_k4(embedding):
        return _terminal(ReductionKind.TERMINAL_K4, embedding)
    site = frozenset(face.vertices)
    ports = boundary_ports(embedding, site)
    gadget = [[("port", 0), ("port", 1), ("port", 2)]]
    return _finish(ReductionKind.TRIANGLE_CONTRACT, embedding, site, [face_id], gadget, ports)


def _quad_pair_names(embedding: PlanarEmbedding, f1: int, f2: int) -> Dict[str, int]:
    """Name the vertices of two adjacent quadrangles f1 = v1 v2 u3 u4, f2 = v1 v2 w3 w4.

    v2 is adjacent to u3 and w3, v1 to u4 and w4. f3 is the third face at v2
    and f4 the third face at v1.
    """
    shared = next(
        (d for d in embedding.face(f1).darts if embedding.face_of(embedding.twin(d)) == f2),
        None,
    )
    if shared is None:
        raise ReductionError(f"Faces {f1} and {f2} are not adjacent")
    # f1 orbit from the shared dart: v1, v2, u3, u4
    d = shared
    v1 = embedding.origin(d)
    d = embedding.phi(d)
    v2 = embedding.origin(d)
    u3 = embedding.target(d)
    u4 = embedding.target(embedding.phi(d))
    # f2 orbit from the twin: v2, v1, w4, w3
    t = embedding.phi(embedding.twin(shared))
    w4 = embedding.target(t)
    w3 = embedding.target(embedding.phi(t))
    f3 = next(f for f in embedding.faces_at(v2) if f not in (f1, f2))
    f4 = next(f for f in embedding.faces_at(v1) if f not in (f1, f2))
    return {"v1": v1, "v2": v2, "u3": u3, "u4": u4, "w3": w3, "w4": w4, "f3": f3, "f4": f4}


def reduce_quads(embedding: PlanarEmbedding, f1: int, f2: int) -> Tuple[PlanarEmbedding, ReductionStep]:
    """Reduce a pair of adjacent quadrangles.

    Depending on the flanking faces f3 (at v2) and f4 (at v1): both
    quadrangles means the cube (terminal); exactly one quadrangle collapses
    the three quadrangles around the shared vertex; otherwise the pair is
    excised.

    Raises:
        ReductionError: Faces are not adjacent quadrangles, or both flanking
            faces are quadrangles in a graph other than the cube
    """
    for f in (f1, f2):
        if embedding.face(f).size != 4:
            raise ReductionError(f"Face {f} is not a quadrangle")
    names = _quad_pair_names(embedding, f1, f2)
    q3 = embedding.face(names["f3"]).size == 4
    q4 = embedding.face(names["f4"]).size == 4

    if q3 and q4:
        if is_cube(embedding):
            return _terminal(ReductionKind.TERMINAL_CUBE, embedding)
        raise ReductionError("Both flanking faces are quadrangles but the graph is not the cube")

    if q3 or q4:
        third = names["f3"] if q3 else names["f4"]
        site = frozenset(
            set(embedding.face(f1).vertices)
            | set(embedding.face(f2).vertices)
            | set(embedding.face(third).vertices)
        )
        ports = boundary_ports(embedding, site)
        if len(ports) != 3:
            raise ReductionError(f"Three-quadrangle site has {len(ports)} ports")
        gadget = [[("port", 0), ("port", 1), ("port", 2)]]
        return _finish(
            ReductionKind.QUAD_TRIPLE_CONTRACT, embedding, site, [f1, f2, third], gadget, ports
        )

    site = frozenset(names[k] for k in ("v1", "v2", "u3", "u4", "w3", "w4"))
    ports = boundary_ports(embedding, site)
    if len(ports) != 4:
        raise ReductionError(f"Quadrangle pair site has {len(ports)} ports")
    merged_a = {names["u3"], names["w3"]}
    origins = [embedding.origin(p) for p in ports]
    split = next(
        (i for i in range(4) if {origins[i], origins[(i + 1) % 4]} == merged_a), None
    )
    if split is None:
        raise ReductionError("Identified vertices do not own consecutive ports")
    i = split
    gadget = [
        [("port", i), ("port", (i + 1) % 4), ("new", 1)],
        [("port", (i + 2) % 4), ("port", (i + 3) % 4), ("new", 0)],
    ]
    return _finish(ReductionKind.QUAD_PAIR_EXCISE, embedding, site, [f1, f2], gadget, ports)


# ----------------------------------------------------------------------
# driver


def find_site(embedding: PlanarEmbedding) -> Optional[Tuple[str, Tuple[int, ...]]]:
    """Next reduction site: a triangle first, then an adjacent quadrangle pair."""
    for face in embedding.faces():
        if face.size == 3:
            return "triangle", (face.id,)
    for d in embedding.edge_darts():
        a, b = embedding.edge_faces(d)
        if embedding.face(a).size == 4 and embedding.face(b).size == 4:
            return "quads", (min(a, b), max(a, b))
    return None


def reduce_to_barnette(embedding: PlanarEmbedding, debug_checks: bool = False) -> ReductionTrace:
    """Apply reductions until the graph is Barnette or terminal.

    Args:
        embedding: Cubic polyhedral graph with faces of size <= 6
        debug_checks: Re-classify after every step
    """
    trace = ReductionTrace(original=embedding)
    current = embedding
    limit = embedding.n_vertices // 2 + 1
    while len(trace.steps) < limit:
        site = find_site(current)
        if site is None:
            break
        kind, faces = site
        if kind == "triangle":
            current, step = reduce_triangle(current, faces[0])
        else:
            current, step = reduce_quads(current, *faces)
        trace.steps.append(step)
        if step.is_terminal:
            break
        if debug_checks:
            result = classify(current)
            if result.kind == GraphKind.OUT_OF_SCOPE:
                raise ReductionError(
                    f"{step.kind.value} produced an out-of-scope graph ({result.violated})"
                )
    logger.info(
        f"Reduced {embedding.name or 'graph'} from n={embedding.n_vertices} "
        f"to n={trace.final.n_vertices} in {len(trace.steps)} steps"
    )
    return trace


def terminal_cycle(kind: ReductionKind, embedding: PlanarEmbedding) -> List[int]:
    """Hamilton cycle of a terminal graph."""
    if kind == ReductionKind.TERMINAL_K4:
        return [0, 1, 2, 3]
    # cube: a b c d is one face; out[v] is the neighbour of v on the opposite face
    face = embedding.faces()[0]
    a, b, c, d = face.vertices
    out = {v: next(w for w in embedding.neighbors(v) if w not in face.vertices) for v in face.vertices}
    return [a, out[a], out[b], b, c, out[c], out[d], d]


def lift_step(step: ReductionStep, cycle: Sequence[int]) -> List[int]:
    """Expand a Hamilton cycle of ``step.after`` to one of ``step.before``.

    Raises:
        LiftError: The cycle crosses the site in a pattern missing from the table
    """
    if step.is_terminal:
        return list(cycle)
    rep = step.replacement
    gadget = set(rep.gadget)
    port_of = {
        (rep.old_to_new[rep.port_outside[k]], rep.gadget[j]): k
        for k, j in rep.port_owner.items()
    }
    rotated, runs = lift_runs(cycle, gadget, port_of)
    pattern: Pattern = frozenset(frozenset((a, b)) for _, a, b in runs)
    paths = step.lift_table.get(pattern)
    if paths is None:
        raise LiftError(
            f"{step.kind.value}: traversal pattern {[sorted(p) for p in pattern]} missing from lift table"
        )
    run_at = {i: (a, b) for i, a, b in runs}
    lifted: List[int] = []
    i = 0
    while i < len(rotated):
        v = rotated[i]
        if i in run_at:
            a, b = run_at[i]
            path = paths[frozenset((a, b))]
            if path[0] != step.before.origin(rep.ports[a]):
                path = path[::-1]
            lifted.extend(path)
            while i < len(rotated) and rotated[i] in gadget:
                i += 1
            continue
        lifted.append(rep.new_to_old[v])
        i += 1
    return lifted


def lift_cycle(trace: ReductionTrace, cycle: Sequence[int]) -> List[int]:
    """Expand a Hamilton cycle of ``trace.final`` back to ``trace.original``."""
    current = list(cycle)
    for step in reversed(trace.steps):
        current = lift_step(step, current)
    return current
