"""Generation of the clusters containing a seed patch.

From a patch P:

- if P has at most three stubs left it is completed into a closed graph
- if P is closed and not capped (curvature >= 7 with perimeter <= curvature)
  it is a cluster of the cell when its face counts match
- otherwise a face of size 4, 5 or 6 is glued into the least convex gap, the
  boundary run with the most edges between two stubs among the runs next to
  faces that still need neighbours

Capped patches are not grown further here: there are finitely many graphs
containing them, and ``enumerate_capped_graphs`` builds those directly.

Usage:
    db = generate_clusters(f4=0, f5=2)
    print(db.count)   # 3
"""

from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

from clusters.database import ClusterDatabase
from clusters.patch import CanonicalKey, ClusterRecord, Patch
from logging_system import get_logger
from planar.classify import classify
from planar.embedding import PlanarEmbedding
from planar.exceptions import EmbeddingError

logger = get_logger(__name__)

DEFAULT_NODE_BUDGET = 10_000_000
MAX_GAP = 5
MAX_FACES = 110
TOTAL_CURVATURE = 12


def complete_patch(patch: Patch) -> Optional[PlanarEmbedding]:
    """Close a patch with at most three stubs into a Barnette graph.

    Two stubs are joined by an edge and three by a new vertex. Returns None
    when the result is not a Barnette graph.
    """
    stubs = [v for v in patch.outer if patch.degree(v) == 2]
    edges = patch.edges()
    if len(stubs) == 2:
        a, b = stubs
        if b in patch.neighbours(a):
            return None
        edges.append((min(a, b), max(a, b)))
    elif len(stubs) == 3:
        x = max(patch.vertices) + 1
        edges.extend((v, x) for v in stubs)
    elif stubs:
        return None
    try:
        embedding = PlanarEmbedding.from_edges(edges, name=f"completion_{len(patch.faces)}f")
    except (EmbeddingError, ValueError, IndexError):
        return None
    if not classify(embedding).is_barnette:
        return None
    return embedding


@dataclass
class GrowthLimits:
    """What the generator may add.

    Attributes:
        f4: Largest number of quadrangles
        f5: Largest number of pentagons
        curvature: Largest total curvature, used when completing capped patches
        max_faces: Largest number of inner faces
    """

    f4: int
    f5: int
    curvature: int = TOTAL_CURVATURE
    max_faces: int = MAX_FACES

    def sizes(self, patch: Patch, neighbours: List[int]) -> List[int]:
        out = []
        curvature = patch.curvature
        if patch.f4 < self.f4 and curvature + 2 <= self.curvature:
            if all(patch.sizes[f] != 4 for f in neighbours):
                out.append(4)
        if patch.f5 < self.f5 and curvature + 1 <= self.curvature:
            out.append(5)
        out.append(6)
        return out


def least_convex_gap(patch: Patch, candidates: Optional[Set[int]] = None) -> Optional[Tuple[int, int]]:
    """Gap with the longest run, among gaps touching ``candidates`` if given.

    Ties go to the earliest gap along the outer walk.
    """
    best: Optional[Tuple[int, int]] = None
    for start, t in patch.gaps():
        if candidates is not None and not set(patch.gap_faces(start, t)) & candidates:
            continue
        if best is None or t > best[1]:
            best = (start, t)
    return best


class ClusterGenerator:
    """Depth-first growth with canonical-key deduplication.

    Args:
        f4: Quadrangles per cluster
        f5: Pentagons per cluster
        budget: Patches visited before giving up
        complete: Grow capped patches into graphs instead of setting them aside
    """

    def __init__(self, f4: int, f5: int, budget: int = DEFAULT_NODE_BUDGET, complete: bool = False):
        self.db = ClusterDatabase(f4=f4, f5=f5)
        self.budget = budget
        self.complete = complete
        self.limits = GrowthLimits(f4=f4, f5=f5)
        self.seen: Set[CanonicalKey] = set()

    def run(self, seed: Patch) -> ClusterDatabase:
        self._add(seed)
        if self.db.incomplete:
            logger.warning(f"Node budget {self.budget} exhausted; database is incomplete")
        logger.info(
            f"Cell ({self.db.f4}, {self.db.f5}): {self.db.count} clusters, {len(self.db.capped)} capped, "
            f"{len(self.db.graphs)} graphs, {self.db.nodes} nodes"
        )
        return self.db

    def _add(self, patch: Patch) -> None:
        db = self.db
        if db.nodes >= self.budget:
            db.incomplete = True
            return
        key = patch.canonical_key
        if key in self.seen:
            return
        self.seen.add(key)
        db.nodes += 1

        mu, delta = patch.curvature, patch.perimeter
        if delta <= 3:
            embedding = complete_patch(patch)
            if embedding is not None:
                db.add_graph(embedding)
            return

        capped = mu >= 7 and delta <= mu
        if capped and not self.complete:
            db.add_capped(ClusterRecord.from_patch(patch))
            return
        if not capped and not self.complete and patch.is_closed():
            if (patch.f4, patch.f5) == (db.f4, db.f5):
                db.add(ClusterRecord.from_patch(patch))
            return
        if len(patch.faces) >= self.limits.max_faces:
            return

        gap = least_convex_gap(patch, None if self.complete else patch.open_faces())
        if gap is None:
            return
        start, t = gap
        if t > MAX_GAP:
            return
        for size in self.limits.sizes(patch, patch.gap_faces(start, t)):
            child = patch.add_face(start, t, size)
            if child is not None:
                self._add(child)


def generate_clusters(
    f4: int,
    f5: int,
    budget: int = DEFAULT_NODE_BUDGET,
    seed: Optional[Patch] = None,
) -> ClusterDatabase:
    """All clusters with ``f4`` quadrangles and ``f5`` pentagons, up to isomorphism.

    The seed defaults to a single pentagon, or a single quadrangle when the
    cell has no pentagons.

    Raises:
        ValueError: The cell is empty or exceeds the total curvature
    """
    if f4 < 0 or f5 < 0 or f4 + f5 == 0:
        raise ValueError(f"Cell ({f4}, {f5}) has no small faces")
    if 2 * f4 + f5 > TOTAL_CURVATURE:
        raise ValueError(f"Cell ({f4}, {f5}) exceeds the total curvature {TOTAL_CURVATURE}")
    if seed is None:
        seed = Patch.single_face(5 if f5 else 4)
    return ClusterGenerator(f4, f5, budget).run(seed)


def enumerate_capped_graphs(
    record: ClusterRecord,
    budget: int = DEFAULT_NODE_BUDGET,
    max_faces: int = MAX_FACES,
) -> List[PlanarEmbedding]:
    """Every Barnette graph containing a capped cluster, up to isomorphism.

    Faces are glued into every gap, least convex first, with any small faces the
    remaining curvature allows.

    Raises:
        ValueError: The record has no patch or is not capped
    """
    if record.patch is None:
        raise ValueError("Capped graph enumeration needs the cluster as a patch")
    if not record.direct_check:
        raise ValueError(f"Cluster with mu={record.mu}, delta={record.delta} is not capped")
    spare = TOTAL_CURVATURE - record.mu
    generator = ClusterGenerator(record.f4 + spare // 2, record.f5 + spare, budget, complete=True)
    generator.limits.max_faces = max_faces
    generator.run(record.patch)
    graphs = generator.db.graphs
    if generator.db.incomplete:
        logger.warning(f"Completion of a mu={record.mu} cluster stopped early; {len(graphs)} graphs so far")
    logger.info(f"Cluster mu={record.mu}, delta={record.delta}: {len(graphs)} completions")
    return graphs
