"""Cutting along the dual path, the canonical 3-colouring and grey/white transfer.

The cut is represented by corner copies instead of an explicit patch. A face
on the cut path other than its two ends is split along the slit into two
copies: walking its darts from the entry dart d_0 (on the edge crossed to
enter) to the exit dart d_j, the corners at origin(d_1) .. origin(d_j) form
one side and the remaining corners the other. Every other face, the two end
faces included, keeps a single copy.

Colours propagate vertex to vertex across uncrossed edges: an edge shares two
face copies between its endpoints, so the third copy at the far endpoint is
forced. Faces off the cut are all even and no cycle of uncrossed edges can
separate the cut path, so propagation never meets a conflict on valid input.

Usage:
    cut = cut_along(emb, build_cut_path(emb))
    colours = three_coloring(cut)
    coloring = grey_white(emb, cut, colours, choice=0)
"""

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from factor.cut_path import DualPath
from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import FactorInvalid

logger = get_logger(__name__)

COLOURS = (0, 1, 2)
CLASS_NAMES = ("A", "B", "C")

Copy = Tuple[int, int]  # (face id, side)


@dataclass
class CutPatch:
    """The graph cut open along a dual path.

    Attributes:
        embedding: The uncut graph
        path: The cut path
        copy_of_dart: Dart -> copy of the face whose corner sits at origin(dart)
        crossed: Canonical darts of the crossed edges
        face_map: Copy -> face of the uncut graph
    """

    embedding: PlanarEmbedding
    path: DualPath
    copy_of_dart: List[Copy]
    crossed: FrozenSet[int]
    face_map: Dict[Copy, int] = field(default_factory=dict)

    def copies_at(self, v: int) -> Tuple[Copy, Copy, Copy]:
        base = 3 * v
        c = self.copy_of_dart
        return (c[base], c[base + 1], c[base + 2])

    def copies_of(self, face_id: int) -> List[Copy]:
        return sorted({c for c in self.copy_of_dart if c[0] == face_id})

    def corner_counts(self) -> Dict[Copy, int]:
        counts: Dict[Copy, int] = {}
        for c in self.copy_of_dart:
            counts[c] = counts.get(c, 0) + 1
        return counts


def cut_along(embedding: PlanarEmbedding, path: DualPath) -> CutPatch:
    """Split the inner faces of ``path`` into two corner copies each.

    Raises:
        FactorInvalid: The path does not cross an edge between consecutive faces
    """
    copy_of_dart: List[Copy] = [(embedding.face_of(d), 0) for d in range(embedding.n_darts)]
    crossed = set()
    for i, d in enumerate(path.crossings):
        if d is None:
            raise FactorInvalid(f"Cut faces {path.nodes[i]} and {path.nodes[i + 1]} are not adjacent")
        crossed.add(embedding.edge_id(d))

    for i in range(1, len(path.nodes) - 1):
        f = path.nodes[i]
        darts = list(embedding.face(f).darts)
        entry = embedding.twin(path.crossings[i - 1])
        leave = path.crossings[i]
        start = darts.index(entry)
        darts = darts[start:] + darts[:start]
        j = darts.index(leave)
        for k, d in enumerate(darts):
            if 1 <= k <= j:
                copy_of_dart[d] = (f, 1)

    face_map = {c: c[0] for c in copy_of_dart}
    return CutPatch(
        embedding=embedding,
        path=path,
        copy_of_dart=copy_of_dart,
        crossed=frozenset(crossed),
        face_map=face_map,
    )


def _propagate(
    cut: CutPatch, root: int, colour: Dict[Copy, int], allowed: Optional[Set[int]] = None
) -> Set[int]:
    """Colour outwards from ``root`` across uncrossed edges; returns the vertices reached."""
    emb = cut.embedding
    for c, k in zip(cut.copies_at(root), COLOURS):
        colour.setdefault(c, k)
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for d in emb.darts_at(u):
            w = emb.target(d)
            if emb.edge_id(d) in cut.crossed or (allowed is not None and w not in allowed):
                continue
            copies = cut.copies_at(w)
            known = [colour[c] for c in copies if c in colour]
            missing = [c for c in copies if c not in colour]
            if len(missing) == 1:
                rest = set(COLOURS) - set(known)
                if len(rest) != 1:
                    raise FactorInvalid(f"Colour conflict at vertex {w}")
                colour[missing[0]] = rest.pop()
            elif missing:
                raise FactorInvalid(f"Vertex {w} reached with {len(missing)} uncoloured copies")
            elif len(set(known)) != 3:
                raise FactorInvalid(f"Colour conflict at vertex {w}")
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def partial_colorings(cut: CutPatch, vertices: Iterable[int]) -> List[Dict[Copy, int]]:
    """Independent colourings of the pieces the cut leaves among ``vertices``.

    Each piece is seeded at its smallest vertex.
    """
    allowed = set(vertices)
    pieces: List[Dict[Copy, int]] = []
    done: Set[int] = set()
    for v in sorted(allowed):
        if v in done:
            continue
        colour: Dict[Copy, int] = {}
        done |= _propagate(cut, v, colour, allowed)
        pieces.append(colour)
    return pieces


def three_coloring(cut: CutPatch, root: int = 0) -> Dict[Copy, int]:
    """Proper colouring of the face copies with colours 0, 1, 2.

    Around every vertex the three copies receive three different colours.

    Raises:
        FactorInvalid: Propagation met a conflict or left vertices unreached
    """
    emb = cut.embedding
    colour: Dict[Copy, int] = {}
    _propagate(cut, root, colour)
    for v in range(emb.n_vertices):
        copies = cut.copies_at(v)
        if any(c not in colour for c in copies):
            raise FactorInvalid(f"Vertex {v} was not reached by propagation")
        if len({colour[c] for c in copies}) != 3:
            raise FactorInvalid(f"Colour conflict at vertex {v}")
    return colour


def segment_permutation(cut: CutPatch, colour: Dict[Copy, int], segment: List[int]) -> Tuple[int, int, int]:
    """Colour relabelling across the first crossed edge of ``segment``."""
    emb = cut.embedding
    nodes = cut.path.nodes
    index = nodes.index(segment[0])
    d = cut.path.crossings[index]
    u, v = emb.origin(d), emb.target(d)
    t = emb.twin(d)
    # the two cut faces and the third face, seen from each endpoint
    at_u = (cut.copy_of_dart[d], cut.copy_of_dart[emb.next(d)], cut.copy_of_dart[emb.prev(d)])
    at_v = (cut.copy_of_dart[emb.next(t)], cut.copy_of_dart[t], cut.copy_of_dart[emb.prev(t)])
    sigma = [0, 0, 0]
    for a, b in zip(at_u, at_v):
        sigma[colour[a]] = colour[b]
    if sorted(sigma) != [0, 1, 2]:
        raise FactorInvalid(f"Inconsistent colours across the crossing {u}-{v}")
    return tuple(sigma)


@dataclass
class GWColoring:
    """Grey/white face colouring of the uncut graph.

    Attributes:
        embedding: The graph
        grey: Grey faces
        choice: Colour class made grey
        canonical: Colour of each face copy
        cut: The cut the colouring was built on
        segment_state: Per cut segment, True when active
        region_choice: Faces recoloured with another class by a region shift
        history: Operations applied since the transfer
    """

    embedding: PlanarEmbedding
    grey: FrozenSet[int]
    choice: int
    canonical: Dict[Copy, int] = field(default_factory=dict)
    cut: Optional[CutPatch] = None
    segment_state: List[bool] = field(default_factory=list)
    region_choice: Dict[int, int] = field(default_factory=dict)
    history: List[str] = field(default_factory=list)

    def is_grey(self, f: int) -> bool:
        return f in self.grey

    def classes_of(self, f: int) -> List[int]:
        """Canonical colours of the copies of face ``f``."""
        if self.cut is None:
            return [self.canonical.get((f, 0), -1)]
        return sorted({self.canonical[c] for c in self.cut.copies_of(f)})

    def class_name(self, f: int) -> str:
        """Class letter relative to the grey choice: A is the grey class."""
        k = self.classes_of(f)[0]
        return CLASS_NAMES[(k - self.choice) % 3]

    def with_grey(self, grey: Iterable[int], note: Optional[str] = None) -> "GWColoring":
        history = list(self.history) + ([note] if note else [])
        return replace(self, grey=frozenset(grey), history=history)

    def toggled(self, faces: Iterable[int], note: Optional[str] = None) -> "GWColoring":
        return self.with_grey(set(self.grey) ^ set(faces), note)

    def grey_count(self, size: int) -> int:
        return sum(1 for f in self.grey if self.embedding.face(f).size == size)

    @property
    def active_segments(self) -> List[int]:
        return [i for i, on in enumerate(self.segment_state) if on]


def class_faces(cut: CutPatch, colour: Dict[Copy, int], k: int, faces: Optional[Iterable[int]] = None) -> set:
    """Faces having some copy of colour ``k`` (optionally restricted to ``faces``)."""
    allowed = set(faces) if faces is not None else None
    result = set()
    for c, col in colour.items():
        if col == k and (allowed is None or c[0] in allowed):
            result.add(c[0])
    return result


def grey_white(
    embedding: PlanarEmbedding,
    cut: CutPatch,
    colour: Dict[Copy, int],
    choice: int,
) -> GWColoring:
    """Make colour class ``choice`` grey; a split face is grey if either copy is."""
    if choice not in COLOURS:
        raise ValueError(f"Colour choice must be one of {COLOURS}, got {choice}")
    grey = class_faces(cut, colour, choice)
    states = []
    for segment in cut.path.segments:
        sigma = segment_permutation(cut, colour, segment)
        states.append(sigma[choice] != choice)
    coloring = GWColoring(
        embedding=embedding,
        grey=frozenset(grey),
        choice=choice,
        canonical=dict(colour),
        cut=cut,
        segment_state=states,
    )
    logger.debug(
        f"Grey class {CLASS_NAMES[choice]}: {len(grey)} grey faces, "
        f"active segments {coloring.active_segments}"
    )
    return coloring


def shift_region(coloring: GWColoring, region: Iterable[int], new_choice: int, note: str) -> GWColoring:
    """Recolour ``region`` so that class ``new_choice`` is grey inside it."""
    region = set(region)
    inside = class_faces(coloring.cut, coloring.canonical, new_choice, region)
    grey = (set(coloring.grey) - region) | inside
    shifted = coloring.with_grey(grey, note)
    shifted.region_choice = dict(coloring.region_choice)
    for f in region:
        shifted.region_choice[f] = new_choice
    return shifted
