"""Checking that a factor can always be extended into a cluster.

The cluster is closed off by a ring: every stub gets a pendant vertex and the
pendants are joined in boundary order. The faces between the cluster and the
ring stand for the unknown outside; their grey/white status is the boundary
condition a scenario fixes.

A scenario picks the ring faces where the cut path enters and leaves the
cluster (one face for clusters whose cut only ends inside), colours the
cluster cut along that path, and picks which colour class is grey. Pieces of
the cluster the cut separates are coloured independently and combined under
every relabelling that agrees on shared faces.

- extension criterion: from the transferred colouring a local search over the
  inner faces reaches a colouring with no all-grey vertex and a perfect
  matching of the all-white vertices
- parity criterion: besides, a second such extension exists whose value of
  x4 + x5 // 2 has the other parity, with the same parity of x5. A position
  passes when some relabelling and grey class does; the extension criterion
  has to hold for every scenario

Usage:
    report = check_cluster(record, Criterion.PARITY)
    print(report.passed, report.failures[:3])
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, permutations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from clusters.patch import ClusterRecord, Patch
from factor.coloring import COLOURS, Copy, cut_along, partial_colorings
from factor.configurations import Configuration
from factor.cut_path import DualPath
from factor.resolve import LocalSearch
from logging_system import get_logger
from parity.handlers import shape_tags
from planar.dual import DualGraph, shared_edge_dart
from planar.embedding import PlanarEmbedding
from planar.exceptions import BarnetteError, FactorInvalid

logger = get_logger(__name__)

DEFAULT_CHECK_BUDGET = 4000
MAX_CHANGES = 4
MAX_ROUNDS = 32
MAX_PIECES = 3
OPEN_SIDE = 2  # first side index past the two slit copies


class Criterion(str, Enum):
    EXTENSION = "extension"
    PARITY = "parity"


@dataclass
class RingedCluster:
    """A cluster closed off by a ring of pendant vertices.

    Attributes:
        embedding: Cluster plus ring, a cubic plane graph
        cluster_vertices: Vertices of the cluster
        stubs: Cluster vertices with a pendant
        inner: Faces of the cluster
        ring: Faces between cluster and ring
        outer: The face bounded by the ring alone
    """

    embedding: PlanarEmbedding
    cluster_vertices: FrozenSet[int]
    stubs: FrozenSet[int]
    inner: List[int]
    ring: List[int]
    outer: int


def ring_cluster(patch: Patch) -> RingedCluster:
    """Close ``patch`` off with a ring of pendants.

    Raises:
        ValueError: Fewer than three stubs, or the ring does not embed as expected
    """
    stubs = [v for v in patch.outer if patch.degree(v) == 2]
    if len(stubs) < 3:
        raise ValueError(f"A ring needs at least three stubs, the cluster has {len(stubs)}")
    base = max(patch.vertices) + 1
    pendant = {v: base + i for i, v in enumerate(stubs)}
    edges = patch.edges()
    edges.extend((v, x) for v, x in pendant.items())
    ring_order = [pendant[v] for v in stubs]
    edges.extend(zip(ring_order, ring_order[1:] + ring_order[:1]))

    embedding = PlanarEmbedding.from_edges(edges, name="ringed_cluster")
    # from_edges relabels in sorted order, so cluster vertices come first
    index = {v: i for i, v in enumerate(sorted(set(patch.vertices) | set(pendant.values())))}
    n_cluster = patch.n_vertices
    inner: List[int] = []
    ring: List[int] = []
    outer: List[int] = []
    for f in range(embedding.n_faces):
        vertices = embedding.face(f).vertices
        on_ring = sum(1 for v in vertices if v >= n_cluster)
        if on_ring == 0:
            inner.append(f)
        elif on_ring == len(vertices):
            outer.append(f)
        else:
            ring.append(f)
    if len(inner) != len(patch.faces) or len(outer) != 1 or len(ring) != len(stubs):
        raise ValueError(
            f"Ring embedding has {len(inner)} inner, {len(ring)} ring and {len(outer)} outer faces"
        )
    return RingedCluster(
        embedding=embedding,
        cluster_vertices=frozenset(range(n_cluster)),
        stubs=frozenset(index[v] for v in stubs),
        inner=inner,
        ring=ring,
        outer=outer[0],
    )


@dataclass
class Scenario:
    """Where the cut meets the ring, how pieces are relabelled, which class is grey."""

    entry: Optional[int]
    exit: Optional[int]
    relabel: Tuple[Tuple[int, ...], ...]
    choice: int

    def label(self) -> str:
        return f"entry={self.entry} exit={self.exit} relabel={list(self.relabel)} choice={self.choice}"


@dataclass
class CheckReport:
    """Result of checking one cluster under one criterion."""

    criterion: Criterion
    f4: int
    f5: int
    mu: int
    delta: int
    scenarios: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: Optional[str] = None
    exhausted: bool = False
    nodes: int = 0
    tags: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.skipped is None and self.scenarios > 0 and not self.failures

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion.value,
            "f4": self.f4,
            "f5": self.f5,
            "mu": self.mu,
            "delta": self.delta,
            "scenarios": self.scenarios,
            "failures": list(self.failures),
            "skipped": self.skipped,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "tags": list(self.tags),
            "passed": self.passed,
        }


def segment_count(record: ClusterRecord) -> int:
    """Segments of the cut path leaving the cluster: 2, 1, or 0 for capped clusters."""
    if record.mu <= 5:
        return 2
    if record.mu == 6 or record.delta > record.mu:
        return 1
    return 0


def _cut_through(ringed: RingedCluster, dual: DualGraph, entry: int, exit_: Optional[int]) -> DualPath:
    """Cut from ``entry`` through every pentagon, nearest first, out through ``exit_``.

    Raises:
        FactorInvalid: Some leg of the path cannot be routed
    """
    emb = ringed.embedding
    pentagons = {f for f in ringed.inner if emb.face(f).size == 5}
    ring = set(ringed.ring)
    nodes = [entry]
    used = {entry}
    segments: List[List[int]] = []
    pending = set(pentagons)
    while pending:
        dist = dual.bfs([nodes[-1]], blocked=(ring | {ringed.outer}) - {nodes[-1]})
        nxt = min(pending, key=lambda f: (dist.get(f, len(dist) + 1), f))
        pending.discard(nxt)
        path = dual.shortest_path(
            nodes[-1], nxt, blocked=(used | ring | {ringed.outer} | (pentagons - {nxt})) - {nodes[-1]}
        )
        if path is None:
            raise FactorInvalid(f"No cut leg from face {nodes[-1]} to pentagon {nxt}")
        segments.append(path)
        nodes.extend(path[1:])
        used.update(path)
    if exit_ is not None:
        path = dual.shortest_path(
            nodes[-1], exit_, blocked=(used | (ring - {exit_}) | {ringed.outer} | pentagons) - {nodes[-1]}
        )
        if path is None:
            raise FactorInvalid(f"No cut leg from face {nodes[-1]} to ring face {exit_}")
        segments.append(path)
        nodes.extend(path[1:])
    crossings = [shared_edge_dart(emb, f, g) for f, g in zip(nodes, nodes[1:])]
    return DualPath(nodes=nodes, segments=segments, order=[0], crossings=crossings)


def _combine(
    pieces: List[Dict[Copy, int]], open_ends: Iterable[int] = ()
) -> List[Tuple[Tuple[Tuple[int, ...], ...], Dict[Copy, int]]]:
    """Every relabelling of pieces after the first that agrees on shared copies.

    Faces in ``open_ends`` are where the cut leaves the cluster; each piece keeps
    its own copy of them, so they never constrain the relabelling.
    """
    open_ends = set(open_ends)
    first, rest = pieces[0], pieces[1:]
    out = []
    for relabel in product(permutations(COLOURS), repeat=len(rest)):
        combined = dict(first)
        ok = True
        for index, (piece, sigma) in enumerate(zip(rest, relabel), start=1):
            for c, k in piece.items():
                value = sigma[k]
                if c[0] in open_ends:
                    c = (c[0], OPEN_SIDE + index)
                if combined.setdefault(c, value) != value:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append((tuple(relabel), combined))
    return out


class ExtensionProblem:
    """Local validity of grey sets on a ringed cluster with the ring faces fixed."""

    def __init__(self, ringed: RingedCluster):
        self.ringed = ringed
        self.embedding = ringed.embedding
        self.quads = {f for f in ringed.inner if self.embedding.face(f).size == 4}
        self.pentagons = {f for f in ringed.inner if self.embedding.face(f).size == 5}

    def defects(self, grey: Set[int]) -> int:
        emb = self.embedding
        count = 0
        white: List[int] = []
        for v in self.ringed.cluster_vertices:
            greys = sum(1 for f in emb.faces_at(v) if f in grey)
            if greys == 3:
                count += 1
            elif greys == 0 and v not in self.ringed.stubs:
                white.append(v)
        if white:
            graph = nx.Graph()
            graph.add_nodes_from(white)
            members = set(white)
            graph.add_edges_from((v, w) for v in white for w in emb.neighbors(v) if w in members and v < w)
            matched = 2 * len(nx.max_weight_matching(graph, maxcardinality=True))
            count += len(white) - matched
        return count

    def key(self, grey: Set[int]) -> Tuple[int, int]:
        """(x5 parity, parity of x4 + x5 // 2)."""
        x4 = len(grey & self.quads)
        x5 = len(grey & self.pentagons)
        return x5 % 2, (x4 + x5 // 2) % 2

    def improve(self, grey: Set[int], objective, budget: int) -> Tuple[Optional[Set[int]], int]:
        """Lower ``objective`` to zero by rounds of local search; returns (grey or None, nodes)."""
        current = set(grey)
        nodes = 0
        window = list(self.ringed.inner)
        for _ in range(MAX_ROUNDS):
            if objective(current)[0] == 0:
                return current, nodes
            search = LocalSearch(
                self.embedding, current, window, budget=max(budget - nodes, 1),
                max_changes=MAX_CHANGES, objective=objective,
            )
            changes = search.run()
            nodes += search.nodes
            if changes is None:
                return None, nodes
            current ^= set(changes)
        return None, nodes


def _parity_room(record: ClusterRecord) -> bool:
    """Whether the key x4 + x5 // 2 can change at all."""
    return record.f4 > 0 or record.f5 >= 2


def scenarios(ringed: RingedCluster, record: ClusterRecord) -> List[Tuple[Optional[int], Optional[int]]]:
    """(entry, exit) ring faces for every position of the leaving segments."""
    segments = segment_count(record)
    if record.f5 == 0:
        return [(None, None)]
    if segments == 2:
        return list(combinations(sorted(ringed.ring), 2))
    return [(f, None) for f in sorted(ringed.ring)]


def check_cluster(
    record: ClusterRecord,
    criterion: Criterion = Criterion.EXTENSION,
    budget: int = DEFAULT_CHECK_BUDGET,
    max_scenarios: Optional[int] = None,
    choices: Sequence[int] = COLOURS,
) -> CheckReport:
    """Check every boundary scenario of a cluster; failures are reported, not raised.

    Capped clusters are skipped: the graphs containing them are checked directly.
    """
    report = CheckReport(criterion, record.f4, record.f5, record.mu, record.delta)
    if record.patch is None:
        report.skipped = "no_patch"
        return report
    if segment_count(record) == 0:
        report.skipped = "direct_check"
        return report
    try:
        ringed = ring_cluster(record.patch)
    except (ValueError, BarnetteError) as exc:
        report.skipped = f"ring: {exc}"
        return report
    dual = DualGraph.of(ringed.embedding)
    small = {f for f in ringed.inner if ringed.embedding.face(f).size in (4, 5)}
    config = Configuration(index=0, faces=frozenset(small), pentagons=frozenset(
        f for f in small if ringed.embedding.face(f).size == 5), cluster=record)
    report.tags = shape_tags(ringed.embedding, config, dual)
    record.tags = list(report.tags)

    if criterion == Criterion.PARITY and not _parity_room(record):
        report.failures.append("x4 + x5 // 2 cannot change inside the cluster")
        return report

    positions = scenarios(ringed, record)
    if max_scenarios is not None:
        positions = positions[:max_scenarios]
    for entry, exit_ in positions:
        try:
            if entry is None:
                path = DualPath()
            else:
                path = _cut_through(ringed, dual, entry, exit_)
            cut = cut_along(ringed.embedding, path)
            pieces = partial_colorings(cut, ringed.cluster_vertices)
        except FactorInvalid as exc:
            report.failures.append(f"entry={entry} exit={exit_}: {exc}")
            continue
        if len(pieces) > MAX_PIECES:
            report.failures.append(f"entry={entry} exit={exit_}: cut leaves {len(pieces)} pieces")
            continue
        combined = _combine(pieces, (f for f in (entry, exit_) if f is not None))
        if not combined:
            report.failures.append(f"entry={entry} exit={exit_}: no relabelling agrees on shared faces")
            continue
        if criterion == Criterion.PARITY:
            if not _some_scenario_flips(ringed, combined, entry, exit_, choices, budget, report):
                report.failures.append(f"entry={entry} exit={exit_}: no scenario changes the parity")
            continue
        for relabel, colour in combined:
            for choice in choices:
                scenario = Scenario(entry, exit_, relabel, choice)
                report.scenarios += 1
                if not _check_scenario(ringed, colour, scenario, criterion, budget, report):
                    report.failures.append(scenario.label())
    logger.info(
        f"Cluster f4={record.f4} f5={record.f5} {report.tags}: {criterion.value} "
        f"{len(report.failures)} failure(s) over {len(positions)} position(s), {report.scenarios} scenarios"
    )
    return report


def _some_scenario_flips(
    ringed: RingedCluster,
    combined: List[Tuple[Tuple[Tuple[int, ...], ...], Dict[Copy, int]]],
    entry: Optional[int],
    exit_: Optional[int],
    choices: Sequence[int],
    budget: int,
    report: CheckReport,
) -> bool:
    """A position passes the parity criterion when any relabelling and grey class does."""
    for relabel, colour in combined:
        for choice in choices:
            report.scenarios += 1
            scenario = Scenario(entry, exit_, relabel, choice)
            if _check_scenario(ringed, colour, scenario, Criterion.PARITY, budget, report):
                return True
    return False


def _check_scenario(
    ringed: RingedCluster,
    colour: Dict[Copy, int],
    scenario: Scenario,
    criterion: Criterion,
    budget: int,
    report: CheckReport,
) -> bool:
    grey = {c[0] for c, k in colour.items() if k == scenario.choice}
    problem = ExtensionProblem(ringed)
    first, nodes = problem.improve(grey, lambda g: (problem.defects(g),), budget)
    report.nodes += nodes
    if first is None:
        report.exhausted = report.exhausted or nodes >= budget
        return False
    if criterion == Criterion.EXTENSION:
        return True
    target = problem.key(first)

    def other_parity(g: Set[int]) -> Tuple[int]:
        key = problem.key(g)
        mismatch = 0 if key[0] == target[0] and key[1] != target[1] else 1
        return (problem.defects(g) + mismatch,)

    second, nodes = problem.improve(first, other_parity, budget)
    report.nodes += nodes
    if second is None:
        report.exhausted = report.exhausted or nodes >= budget
        return False
    return True
