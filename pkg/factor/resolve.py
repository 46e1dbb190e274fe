"""Local repair of a colouring around its defects.

A window is cut out around the faces next to each defect, widened to the
whole cluster of any configuration it touches. Face toggles inside the window
are tried by iterative deepening, fewest changes first, and the first change
set that lowers the defect count is kept. Rounds repeat until the colouring
gives a usable factor.
"""

from typing import Callable, Iterable, List, Optional, Sequence, Set, Tuple

from factor.assemble import assess
from factor.coloring import GWColoring
from factor.configurations import Configuration, configurations
from logging_system import get_logger
from planar.dual import DualGraph
from planar.embedding import PlanarEmbedding
from planar.exceptions import ClusterUnresolvable

logger = get_logger(__name__)

DEFAULT_BUDGET = 20000
DEFAULT_MAX_CHANGES = 4
WINDOW_RADIUS = 2


def _objective(embedding: PlanarEmbedding, grey, require_odd: bool) -> Tuple[int, int]:
    result = assess(embedding, grey)
    parity_bad = 0
    if require_odd and (not result.valid or result.factor.n_cycles % 2 == 0):
        parity_bad = 1
    return result.score, parity_bad


def repair_window(
    dual: DualGraph,
    focus: Iterable[int],
    configs: Sequence[Configuration],
    radius: int = WINDOW_RADIUS,
) -> List[int]:
    """Faces the search may toggle, nearest to ``focus`` first."""
    dist = dual.bfs(list(focus), limit=radius)
    window: Set[int] = set(dist)
    for config in configs:
        if config.faces & window:
            window |= config.cluster.faces
    far = radius + 1
    return sorted(window, key=lambda f: (dist.get(f, far), f))


class LocalSearch:
    """Iterative-deepening search over face toggles.

    Args:
        embedding: The graph
        grey: Starting grey faces
        window: Faces allowed to change, in preference order
        budget: Search nodes allowed in total
        max_changes: Largest change set tried
        require_odd: Count an even number of cycles as a defect
        objective: Score to lower instead of the factor defects
    """

    def __init__(
        self,
        embedding: PlanarEmbedding,
        grey,
        window: Sequence[int],
        budget: int = DEFAULT_BUDGET,
        max_changes: int = DEFAULT_MAX_CHANGES,
        require_odd: bool = False,
        objective: Optional[Callable[[Set[int]], Tuple[int, ...]]] = None,
    ):
        self.embedding = embedding
        self.grey = set(grey)
        self.window = list(window)
        self.budget = budget
        self.max_changes = max_changes
        self.require_odd = require_odd
        self.nodes = 0
        self.objective = objective or (lambda grey: _objective(embedding, grey, require_odd))
        self.baseline = self.objective(self.grey)

    def _creates_all_grey(self, f: int) -> bool:
        if f not in self.grey:
            return False
        for d in self.embedding.face(f).darts:
            v = self.embedding.origin(d)
            if all(g in self.grey for g in self.embedding.faces_at(v)):
                return True
        return False

    def _dfs(self, start: int, depth: int, chosen: List[int]) -> Optional[List[int]]:
        if len(chosen) == depth:
            if self.objective(self.grey) < self.baseline:
                return list(chosen)
            return None
        for i in range(start, len(self.window)):
            if self.nodes >= self.budget:
                return None
            self.nodes += 1
            f = self.window[i]
            self.grey ^= {f}
            chosen.append(f)
            if not self._creates_all_grey(f):
                found = self._dfs(i + 1, depth, chosen)
                if found is not None:
                    self.grey ^= {f}
                    chosen.pop()
                    return found
            self.grey ^= {f}
            chosen.pop()
        return None

    def run(self) -> Optional[List[int]]:
        """Smallest improving change set found within the budget."""
        for depth in range(1, self.max_changes + 1):
            found = self._dfs(0, depth, [])
            if found is not None:
                return found
            if self.nodes >= self.budget:
                break
        return None


def resolve_clusters(
    embedding: PlanarEmbedding,
    coloring: GWColoring,
    budget: int = DEFAULT_BUDGET,
    max_changes: int = DEFAULT_MAX_CHANGES,
    require_odd: bool = False,
    focus: Optional[Iterable[int]] = None,
    configs: Optional[Sequence[Configuration]] = None,
    dual: Optional[DualGraph] = None,
    max_rounds: int = 64,
) -> GWColoring:
    """Repair ``coloring`` until it gives a usable factor.

    With ``require_odd`` the factor must also have an odd number of cycles;
    ``focus`` then says where to search when the colouring has no defect.

    Raises:
        ClusterUnresolvable: No improving change exists in a window within the budget
    """
    dual = dual or DualGraph.of(embedding)
    configs = list(configs) if configs is not None else configurations(embedding, dual)
    current = coloring
    for _ in range(max_rounds):
        result = assess(embedding, current.grey)
        parity_ok = not require_odd or (result.valid and result.factor.n_cycles % 2 == 1)
        if result.valid and parity_ok:
            return current
        anchor = set(result.defects)
        if focus is not None:
            anchor |= set(focus)
        if not anchor:
            anchor = set(dual.small_faces) or {0}
        window = repair_window(dual, anchor, configs)
        search = LocalSearch(embedding, current.grey, window, budget, max_changes, require_odd)
        changes = search.run()
        if changes is None:
            logger.debug(f"Local search failed after {search.nodes} nodes: {result.reasons[:2]}")
            raise ClusterUnresolvable(window, budget)
        current = current.toggled(changes, note=f"resolve {sorted(changes)}")
        logger.debug(f"Toggled faces {sorted(changes)} after {search.nodes} nodes")
    raise ClusterUnresolvable(sorted(current.grey), budget)
