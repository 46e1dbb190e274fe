"""Exact Hamilton cycle search for cubic graphs.

Every vertex of a cubic graph keeps exactly two of its three edges in a
Hamilton cycle, so the search assigns edges IN or OUT and propagates:

- a vertex with two IN edges forces its third edge OUT
- a vertex with one OUT edge forces its other two edges IN
- a closed IN cycle shorter than n is a dead end
- the graph of non-OUT edges must stay connected

Planar face shortcuts are deliberately absent so the search stays easy to
audit.
"""

import time
from dataclasses import dataclass, field
from typing import Iterator, List, Optional

from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import CapExceeded
from planar.verify import verify_hamiltonian

logger = get_logger(__name__)

DEFAULT_CAP = 64

UNKNOWN, IN, OUT = 0, 1, 2


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    pruned: int = 0
    found: bool = False
    elapsed: float = 0.0


@dataclass
class SearchResult:
    cycle: Optional[List[int]]
    stats: SearchStats = field(default_factory=SearchStats)


class HamiltonSearch:
    """Branch-and-propagate search over edge states.

    Args:
        embedding: Cubic graph to search
        cap: Largest vertex count accepted
    """

    def __init__(self, embedding: PlanarEmbedding, cap: int = DEFAULT_CAP):
        if embedding.n_vertices > cap:
            raise CapExceeded(embedding.n_vertices, cap)
        self.embedding = embedding
        self.n = embedding.n_vertices
        self.ends = [(embedding.origin(d), embedding.target(d)) for d in embedding.edge_darts()]
        self.incident: List[List[int]] = [[] for _ in range(self.n)]
        for e, (u, w) in enumerate(self.ends):
            self.incident[u].append(e)
            self.incident[w].append(e)
        self.stats = SearchStats()

    # ------------------------------------------------------------------

    def _propagate(self, state: List[int], queue: List[int]) -> bool:
        while queue:
            v = queue.pop()
            ins = [e for e in self.incident[v] if state[e] == IN]
            outs = [e for e in self.incident[v] if state[e] == OUT]
            if len(ins) > 2 or len(outs) > 1:
                return False
            if len(ins) == 2:
                forced, value = [e for e in self.incident[v] if state[e] == UNKNOWN], OUT
            elif len(outs) == 1:
                forced, value = [e for e in self.incident[v] if state[e] == UNKNOWN], IN
            else:
                continue
            for e in forced:
                state[e] = value
                queue.extend(self.ends[e])
        return True

    def _closed_short_cycle(self, state: List[int]) -> Optional[bool]:
        """None if no closed IN cycle, True if a short one, False if Hamiltonian."""
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for e, s in enumerate(state):
            if s == IN:
                u, w = self.ends[e]
                adj[u].append(w)
                adj[w].append(u)
        seen = [False] * self.n
        for start in range(self.n):
            if seen[start] or len(adj[start]) != 2:
                continue
            length, prev, v, closed = 0, -1, start, False
            while True:
                seen[v] = True
                length += 1
                if len(adj[v]) != 2:
                    break
                nxt = adj[v][0] if adj[v][0] != prev else adj[v][1]
                prev, v = v, nxt
                if v == start:
                    closed = True
                    break
                if seen[v]:
                    break
            if closed:
                return length < self.n
        return None

    def _connected(self, state: List[int]) -> bool:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for e, s in enumerate(state):
            if s != OUT:
                u, w = self.ends[e]
                adj[u].append(w)
                adj[w].append(u)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def _branch_edge(self, state: List[int]) -> Optional[int]:
        # Extend a path end first
        for v in range(self.n):
            inc = self.incident[v]
            if sum(state[e] == IN for e in inc) == 1:
                for e in inc:
                    if state[e] == UNKNOWN:
                        return e
        for e, s in enumerate(state):
            if s == UNKNOWN:
                return e
        return None

    def _cycle_from(self, state: List[int]) -> List[int]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for e, s in enumerate(state):
            if s == IN:
                u, w = self.ends[e]
                adj[u].append(w)
                adj[w].append(u)
        cycle, prev, v = [0], -1, 0
        while True:
            nxt = adj[v][0] if adj[v][0] != prev else adj[v][1]
            if nxt == 0:
                return cycle
            cycle.append(nxt)
            prev, v = v, nxt

    def _solutions(self, state: List[int], queue: List[int]) -> Iterator[List[int]]:
        self.stats.nodes_expanded += 1
        if not self._propagate(state, queue):
            self.stats.pruned += 1
            return
        short = self._closed_short_cycle(state)
        if short is True:
            self.stats.pruned += 1
            return
        if short is False:
            yield self._cycle_from(state)
            return
        if not self._connected(state):
            self.stats.pruned += 1
            return
        e = self._branch_edge(state)
        if e is None:
            return
        for value in (IN, OUT):
            child = list(state)
            child[e] = value
            yield from self._solutions(child, list(self.ends[e]))

    def iter_cycles(self) -> Iterator[List[int]]:
        """Every Hamilton cycle once per edge set, starting at vertex 0."""
        if self.n < 3:
            return
        yield from self._solutions([UNKNOWN] * len(self.ends), [])

    def run(self) -> SearchResult:
        started = time.perf_counter()
        cycle = next(self.iter_cycles(), None)
        self.stats.elapsed = time.perf_counter() - started
        if cycle is not None:
            check = verify_hamiltonian(self.embedding, cycle)
            if not check:
                raise AssertionError(f"Search produced an invalid certificate: {check.reason}")
            self.stats.found = True
        logger.debug(
            f"Exact search n={self.n}: found={self.stats.found} "
            f"nodes={self.stats.nodes_expanded} pruned={self.stats.pruned} "
            f"in {self.stats.elapsed:.3f}s"
        )
        return SearchResult(cycle=cycle, stats=self.stats)


def brute_hamilton(embedding: PlanarEmbedding, cap: int = DEFAULT_CAP) -> Optional[List[int]]:
    """Hamilton cycle of ``embedding`` or None if none exists.

    Raises:
        CapExceeded: More than ``cap`` vertices
    """
    return HamiltonSearch(embedding, cap=cap).run().cycle


def all_hamilton_cycles(embedding: PlanarEmbedding, cap: int = DEFAULT_CAP) -> List[List[int]]:
    """All Hamilton cycles as vertex sequences (one orientation each)."""
    return list(HamiltonSearch(embedding, cap=cap).iter_cycles())


def fallback_hamilton(
    embedding: PlanarEmbedding, failed_stage: str, cap: int = DEFAULT_CAP
) -> List[int]:
    """Exact-search safety net for pipeline gaps.

    Raises:
        CapExceeded: Graph too large for exact search
        ValueError: The graph has no Hamilton cycle
    """
    logger.warning(
        f"Falling back to exact search for {embedding.name or 'graph'} "
        f"(n={embedding.n_vertices}) after failure in stage '{failed_stage}'"
    )
    cycle = brute_hamilton(embedding, cap=cap)
    if cycle is None:
        logger.error(f"{embedding.name or 'graph'} has no Hamilton cycle")
        raise ValueError(f"{embedding.name or 'graph'} is not hamiltonian")
    return cycle
