"""Hamilton cycle certificates."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from planar.embedding import PlanarEmbedding


class CycleDefect(str, Enum):
    """Why a vertex sequence is not a Hamilton cycle."""
    NOT_SPANNING = "not_spanning"
    REPEATED_VERTEX = "repeated_vertex"
    NON_EDGE = "non_edge"
    TOO_SHORT = "too_short"
    OUT_OF_RANGE = "out_of_range"


@dataclass(frozen=True)
class CycleCheck:
    ok: bool
    reason: Optional[CycleDefect] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_hamiltonian(embedding: PlanarEmbedding, cycle: Sequence[int]) -> CycleCheck:
    """Check that ``cycle`` (0-based, closing edge implied) is a Hamilton cycle."""
    n = embedding.n_vertices
    if len(cycle) < 3:
        return CycleCheck(False, CycleDefect.TOO_SHORT, f"length {len(cycle)}")
    for v in cycle:
        if not 0 <= v < n:
            return CycleCheck(False, CycleDefect.OUT_OF_RANGE, f"vertex {v}")
    if len(set(cycle)) != len(cycle):
        return CycleCheck(False, CycleDefect.REPEATED_VERTEX)
    if len(cycle) != n:
        return CycleCheck(False, CycleDefect.NOT_SPANNING, f"{len(cycle)} of {n} vertices")
    for i, u in enumerate(cycle):
        w = cycle[(i + 1) % n]
        if not embedding.has_edge(u, w):
            return CycleCheck(False, CycleDefect.NON_EDGE, f"{u}-{w}")
    return CycleCheck(True)
