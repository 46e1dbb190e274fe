"""Exhaustive enumeration of 2-factors (isolated edges counted as 2-cycles)."""

from typing import Dict, Iterator, List

from factor.two_factor import TwoFactor
from planar.embedding import PlanarEmbedding
from planar.exceptions import CapExceeded

DEFAULT_TWO_FACTOR_CAP = 28


def enumerate_2factors(
    embedding: PlanarEmbedding, cap: int = DEFAULT_TWO_FACTOR_CAP
) -> Iterator[TwoFactor]:
    """Yield every spanning subgraph whose components are cycles or single edges.

    Raises:
        CapExceeded: More than ``cap`` vertices
    """
    n = embedding.n_vertices
    if n > cap:
        raise CapExceeded(n, cap)
    edges = embedding.edge_darts()
    ends = [(embedding.origin(e), embedding.target(e)) for e in edges]
    need = [2] * n
    open_count = [3] * n
    chosen: Dict[int, int] = {}

    def feasible(v: int) -> bool:
        return 0 <= need[v] <= 2 * open_count[v]

    def place(i: int) -> Iterator[TwoFactor]:
        if i == len(edges):
            if not any(need):
                yield TwoFactor(embedding, dict(chosen))
            return
        u, w = ends[i]
        open_count[u] -= 1
        open_count[w] -= 1
        for m in (0, 1, 2):
            if m > need[u] or m > need[w]:
                break
            need[u] -= m
            need[w] -= m
            if feasible(u) and feasible(w):
                if m:
                    chosen[edges[i]] = m
                yield from place(i + 1)
                chosen.pop(edges[i], None)
            need[u] += m
            need[w] += m
        open_count[u] += 1
        open_count[w] += 1

    yield from place(0)


def count_2factors(embedding: PlanarEmbedding, cap: int = DEFAULT_TWO_FACTOR_CAP) -> Dict[str, int]:
    """Counts by kind: all factors, perfect matchings, Hamilton cycles."""
    counts = {"total": 0, "perfect_matchings": 0, "hamiltonian": 0}
    for factor in enumerate_2factors(embedding, cap=cap):
        counts["total"] += 1
        if all(m == 2 for m in factor.multiplicity.values()):
            counts["perfect_matchings"] += 1
        if factor.is_hamiltonian():
            counts["hamiltonian"] += 1
    return counts


def factors_by_cycle_count(factors: List[TwoFactor]) -> Dict[int, int]:
    table: Dict[int, int] = {}
    for factor in factors:
        table[factor.n_cycles] = table.get(factor.n_cycles, 0) + 1
    return table
