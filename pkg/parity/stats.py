"""Counting identities linking the colouring to the number of factor cycles.

With no holes every factor cycle around a grey region of c4, c5, c6 faces has
length 2 + 2 c4 + 3 c5 + 4 c6 and every 2-cycle covers two vertices, so
n = 2c + 2 x4 + 3 x5 + 4 x6. Together with n = 8 + f5 + 2 f6 and
x5 = f5 - 2q this gives f6 + f5 + x4 + q + c = 0 (mod 2).
"""

from dataclasses import asdict, dataclass
from typing import Dict, List, Optional

from factor.coloring import GWColoring
from factor.two_factor import TwoFactor
from factor.x_paths import XPath, count_q, trace_x_paths
from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import FactorInvalid

logger = get_logger(__name__)


@dataclass
class ParityStats:
    f4: int
    f5: int
    f6: int
    x4: int
    x5: int
    x6: int
    q: int
    c: int

    @property
    def parity_sum(self) -> int:
        return self.f6 + self.f5 + self.x4 + self.q + self.c

    @property
    def c_odd(self) -> bool:
        return self.c % 2 == 1

    def violations(self, n: Optional[int] = None) -> List[str]:
        """Identities that do not hold (empty when consistent)."""
        problems: List[str] = []
        if self.parity_sum % 2:
            problems.append(f"f6 + f5 + x4 + q + c = {self.parity_sum} is odd")
        if self.x5 != self.f5 - 2 * self.q:
            problems.append(f"x5 = {self.x5} but f5 - 2q = {self.f5 - 2 * self.q}")
        if n is not None and n != 2 * self.c + 2 * self.x4 + 3 * self.x5 + 4 * self.x6:
            problems.append(f"n = {n} does not match 2c + 2x4 + 3x5 + 4x6")
        return problems

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def parity_stats(
    embedding: PlanarEmbedding,
    coloring: GWColoring,
    factor: TwoFactor,
    paths: Optional[List[XPath]] = None,
    strict: bool = True,
) -> ParityStats:
    """Face, grey-face, ×-path and cycle counts of a colouring/factor pair.

    Raises:
        FactorInvalid: ``strict`` and an identity fails
    """
    census = embedding.face_census()
    if paths is None:
        matching = {}
        for e in factor.two_cycles:
            u, w = factor.endpoints(e)
            matching[u], matching[w] = w, u
        paths = trace_x_paths(coloring, matching)
    stats = ParityStats(
        f4=census.get(4, 0),
        f5=census.get(5, 0),
        f6=census.get(6, 0),
        x4=coloring.grey_count(4),
        x5=coloring.grey_count(5),
        x6=coloring.grey_count(6),
        q=count_q(paths),
        c=factor.n_cycles,
    )
    problems = stats.violations(embedding.n_vertices)
    if problems:
        logger.error(f"Inconsistent parity counts for {embedding.name or 'graph'}: {problems}")
        if strict:
            raise FactorInvalid("; ".join(problems))
    return stats
