"""Glue the cycles of an odd factor into one by processing the vertices of H.

Each vertex is either flipped (its hexagon joins the cycles through it) or
left, and the corresponding three regions of H merge. The order follows the
red-face rules: start anywhere and turn three white regions red, then take
unstable vertices as soon as they appear and otherwise a fragile vertex next
to a solid one. A step is one chosen vertex plus the unstable vertices it
leaves; a step after which H is neither 2-connected nor empty is rolled back,
as is a choice that makes two of the three regions coincide.
"""

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from factor.two_factor import TwoFactor
from glue.h_multigraph import BLACK, RED, WHITE, HMulti, VertexState, build_H, white_count
from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import FactorInvalid, GlueError
from planar.verify import verify_hamiltonian

logger = get_logger(__name__)

DEFAULT_GLUE_BUDGET = 200000


@dataclass
class GlueFrame:
    """Snapshot after one step: a chosen vertex and the unstable vertices it left."""

    step: int
    vertex: int
    flipped: bool
    regions: int
    states: Dict[str, int]
    two_connected: bool
    flips: Tuple[int, ...] = ()
    cascade: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "vertex": self.vertex,
            "cascade": list(self.cascade),
            "flipped": self.flipped,
            "regions": self.regions,
            "states": dict(self.states),
            "two_connected": self.two_connected,
        }


@dataclass
class GlueResult:
    cycle: List[int]
    flips: List[int] = field(default_factory=list)
    frames: List[GlueFrame] = field(default_factory=list)
    rescued: bool = False
    nodes: int = 0
    elapsed: float = 0.0


class GlueState:
    """Union-find over H regions with undo, plus the processed vertices.

    Args:
        h: The multigraph to reduce
    """

    def __init__(self, h: HMulti):
        self.h = h
        self.parent = list(range(h.n_tokens))
        self.size = [1] * h.n_tokens
        self.colour = dict(h.colour)
        self.remaining: Set[int] = set(h.vertices)
        self.flips: List[int] = []
        self.order: List[int] = []
        self.next_tag = 1
        self.has_red = False
        self._undo: List[tuple] = []

    def find(self, t: int) -> int:
        while self.parent[t] != t:
            t = self.parent[t]
        return t

    def roots(self, tokens) -> List[int]:
        return [self.find(t) for t in tokens]

    @property
    def regions(self) -> int:
        return sum(1 for t in range(len(self.parent)) if self.parent[t] == t)

    def mark(self) -> int:
        return len(self._undo)

    def undo(self, mark: int) -> None:
        while len(self._undo) > mark:
            entry = self._undo.pop()
            kind = entry[0]
            if kind == "union":
                _, child, root, old_size = entry
                self.parent[child] = child
                self.size[root] = old_size
            elif kind == "colour":
                _, root, old = entry
                self.colour[root] = old
            elif kind == "vertex":
                _, v, flipped, had_red, tag = entry
                self.remaining.add(v)
                self.order.pop()
                if flipped:
                    self.flips.pop()
                self.has_red = had_red
                self.next_tag = tag

    def _set_colour(self, root: int, value: int) -> None:
        self._undo.append(("colour", root, self.colour[root]))
        self.colour[root] = value

    def merge(self, tokens, value: int) -> int:
        roots = self.roots(tokens)
        roots.sort(key=lambda r: -self.size[r])
        top = roots[0]
        for r in roots[1:]:
            self._undo.append(("union", r, top, self.size[top]))
            self.parent[r] = top
            self.size[top] += self.size[r]
        self._set_colour(top, value)
        return top

    # ------------------------------------------------------------------
    # vertex states

    def white_regions(self, v: int) -> int:
        return white_count([self.colour[r] for r in set(self.roots(self.h.out_wedges[v]))])

    def state(self, v: int) -> VertexState:
        whites = self.white_regions(v)
        if whites >= 3:
            return VertexState.SOLID
        if whites == 2:
            return VertexState.FRAGILE
        return VertexState.UNSTABLE

    def options(self, v: int) -> List[bool]:
        """Admissible choices for ``v`` (True = flip), leaving preferred.

        An unstable vertex whose other regions coincide can only be flipped.
        """
        allowed = {
            False: len(set(self.roots(self.h.out_wedges[v]))) == 3,
            True: len(set(self.roots(self.h.in_wedges[v]))) == 3,
        }
        return [choice for choice in (False, True) if allowed[choice]]

    def apply(self, v: int, flip: bool) -> None:
        self._undo.append(("vertex", v, flip, self.has_red, self.next_tag))
        self.remaining.discard(v)
        self.order.append(v)
        if flip:
            self.flips.append(v)
            for r in set(self.roots(self.h.out_wedges[v])):
                if self.colour[r] == WHITE:
                    self._set_colour(r, self.next_tag)
                    self.next_tag += 1
            self.merge(self.h.in_wedges[v], BLACK)
            return
        colours = [self.colour[r] for r in self.roots(self.h.out_wedges[v])]
        if RED in colours or not self.has_red:
            value = RED
        else:
            uniques = sorted(c for c in colours if c > 0)
            value = uniques[0] if uniques else self.next_tag
            if not uniques:
                self.next_tag += 1
        self.merge(self.h.out_wedges[v], value)
        self.has_red = self.has_red or value == RED


def classify_vertices(state: GlueState) -> Dict[int, VertexState]:
    """State of every unprocessed vertex; red counts as black, unique tags as white."""
    return {v: state.state(v) for v in sorted(state.remaining)}


def _remaining_graph(state: GlueState) -> nx.Graph:
    return nx.Graph(state.h.graph.subgraph(state.remaining))


def _two_connected(graph: nx.Graph) -> bool:
    if graph.number_of_nodes() <= 1:
        return True
    if graph.number_of_nodes() == 2:
        return nx.is_connected(graph)
    return nx.is_biconnected(graph)


def _is_cycle(graph: nx.Graph) -> bool:
    return (
        graph.number_of_nodes() > 2
        and all(d == 2 for _, d in graph.degree())
        and nx.is_connected(graph)
    )


def _touches_red(state: GlueState, v: int) -> bool:
    return any(state.colour[r] == RED for r in state.roots(state.h.out_wedges[v]))


def _unstable(state: GlueState) -> List[int]:
    if not state.has_red:
        return []
    return [v for v, s in classify_vertices(state).items() if s == VertexState.UNSTABLE]


def pick_order(state: GlueState) -> List[int]:
    """Candidate next vertices, best first."""
    remaining = sorted(state.remaining)
    if not state.has_red:
        return remaining
    states = classify_vertices(state)
    unstable = [v for v in remaining if states[v] == VertexState.UNSTABLE]
    if unstable:
        return unstable
    fragile = [v for v in remaining if states[v] == VertexState.FRAGILE and _touches_red(state, v)]
    graph = state.h.graph
    next_to_solid = [
        v for v in fragile
        if any(w in state.remaining and states.get(w) == VertexState.SOLID for w in graph.neighbors(v))
    ]
    rest = [v for v in fragile if v not in next_to_solid] + [v for v in remaining if v not in fragile]
    return next_to_solid + rest


def _cascade(state: GlueState) -> bool:
    """Process unstable vertices until none is left; False when one has no choice."""
    pending = _unstable(state)
    while pending:
        u = pending[0]
        options = state.options(u)
        if not options:
            return False
        state.apply(u, options[0])
        pending = _unstable(state)
    return True


def _try_step(state: GlueState, v: int, choice: bool) -> Optional[bool]:
    """Apply ``v`` and its cascade; whether H stays 2-connected, None when the cascade is stuck.

    A stuck step is rolled back.
    """
    mark = state.mark()
    state.apply(v, choice)
    if not _cascade(state):
        state.undo(mark)
        return None
    return _two_connected(_remaining_graph(state))


def pick_next(state: GlueState) -> int:
    """Lowest-ranked vertex whose step leaves H 2-connected or empty.

    Raises:
        GlueError: Nothing is left to process, or no step keeps H 2-connected
    """
    order = pick_order(state)
    if not order:
        raise GlueError("H is empty", step=len(state.order))
    for v in order:
        for choice in state.options(v):
            mark = state.mark()
            kept = _try_step(state, v, choice)
            state.undo(mark)
            if kept:
                return v
    raise GlueError("No vertex keeps H 2-connected", step=len(state.order))


def reduce_vertex(state: GlueState, v: int, flip: Optional[bool] = None) -> bool:
    """Process ``v`` with the preferred admissible choice (or the one given), then the unstable cascade.

    A choice whose step keeps H 2-connected is preferred. Returns the choice
    made for ``v``.

    Raises:
        GlueError: No admissible choice merges three distinct regions
    """
    options = state.options(v)
    if flip is not None:
        if flip not in options:
            raise GlueError(f"Vertex {v} cannot be {'flipped' if flip else 'left'}", step=len(state.order))
        options = [flip]
    fallback: Optional[bool] = None
    for choice in options:
        mark = state.mark()
        kept = _try_step(state, v, choice)
        if kept:
            return choice
        if kept is False and fallback is None:
            fallback = choice
        state.undo(mark)
    if fallback is None:
        raise GlueError(f"Vertex {v} has no admissible choice", step=len(state.order))
    _try_step(state, v, fallback)
    return fallback


def _frame(state: GlueState, start: int) -> GlueFrame:
    counts: Dict[str, int] = {}
    for s in classify_vertices(state).values():
        counts[s.value] = counts.get(s.value, 0) + 1
    v = state.order[start]
    return GlueFrame(
        step=len(state.order),
        vertex=v,
        flipped=v in state.flips,
        regions=state.regions,
        states=counts,
        two_connected=_two_connected(_remaining_graph(state)),
        flips=tuple(state.flips),
        cascade=tuple(state.order[start + 1:]),
    )


class _Search:
    """Backtracking over steps; a step ends when no unstable vertex is left.

    Steps that leave H neither 2-connected nor empty are rolled back. H that
    starts as a single cycle is swept without the check.
    """

    def __init__(self, state: GlueState, budget: int, trace: bool):
        self.state = state
        self.budget = budget
        self.trace = trace
        self.nodes = 0
        self.rejected = 0
        self.frames: List[GlueFrame] = []
        self.sweep = _is_cycle(_remaining_graph(state))
        self._starts: List[int] = [0]

    def run(self) -> bool:
        state = self.state
        if not state.remaining:
            return state.regions == 2
        cascading = bool(_unstable(state))
        order = pick_order(state)
        for v in order[:1] if cascading else order:
            for choice in state.options(v):
                if self.nodes >= self.budget:
                    return False
                self.nodes += 1
                mark = state.mark()
                state.apply(v, choice)
                settled = not _unstable(state)
                if settled and not self.sweep and not _two_connected(_remaining_graph(state)):
                    self.rejected += 1
                    state.undo(mark)
                    continue
                if settled:
                    if self.trace:
                        self.frames.append(_frame(state, self._starts[-1]))
                    self._starts.append(len(state.order))
                if self.run():
                    return True
                state.undo(mark)
                if settled:
                    self._starts.pop()
                    if self.trace:
                        self.frames.pop()
        return False


def greedy_rescue(factor: TwoFactor) -> Optional[TwoFactor]:
    """Flip resonant hexagons one at a time while any is left."""
    current = factor
    while current.n_cycles > 1:
        candidates = sorted(current.resonant)
        if not candidates:
            return None
        current = current.flip(candidates[0])
    return current if current.is_hamiltonian() else None


def glue_all(
    embedding: PlanarEmbedding,
    factor: TwoFactor,
    budget: int = DEFAULT_GLUE_BUDGET,
    trace: bool = False,
) -> GlueResult:
    """Hamilton cycle from a factor with an odd number of cycles.

    Raises:
        GlueError: The reduction and the rescue both failed
    """
    started = time.perf_counter()
    if factor.is_hamiltonian():
        return GlueResult(cycle=list(factor.cycles[0]), elapsed=time.perf_counter() - started)
    if factor.n_cycles % 2 == 0:
        raise GlueError(f"Factor has an even number of cycles ({factor.n_cycles})")

    h = build_H(embedding, factor)
    state = GlueState(h)
    search = _Search(state, budget, trace)
    result: Optional[GlueResult] = None
    if search.run():
        try:
            glued = factor.flip_many(state.flips)
        except FactorInvalid as exc:
            glued = None
            logger.debug(f"Flip set does not give a factor: {exc}")
        if glued is not None and glued.is_hamiltonian():
            result = GlueResult(
                cycle=list(glued.cycles[0]), flips=list(state.flips), frames=search.frames, nodes=search.nodes
            )
    if result is None:
        logger.warning(
            f"Glue reduction failed on {embedding.name or 'graph'} after {search.nodes} nodes; trying rescue flips"
        )
        rescued = greedy_rescue(factor)
        if rescued is None:
            raise GlueError(f"Could not glue {factor.n_cycles} cycles", step=len(state.order))
        result = GlueResult(cycle=list(rescued.cycles[0]), rescued=True, nodes=search.nodes)

    check = verify_hamiltonian(embedding, result.cycle)
    if not check:
        raise GlueError(f"Glued cycle fails verification: {check.reason} {check.detail}")
    result.elapsed = time.perf_counter() - started
    logger.debug(
        f"Glued {factor.n_cycles} cycles with {len(result.flips)} flips in {search.nodes} nodes, "
        f"{search.rejected} step(s) rolled back for 2-connectivity"
    )
    return result
