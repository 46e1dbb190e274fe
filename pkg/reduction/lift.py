"""Lift tables: how a Hamilton cycle crossing a reduced site expands.

A Hamilton cycle of the reduced graph crosses a gadget in one or more runs,
each entering and leaving through a port. The set of runs (as unordered port
pairs) is the traversal pattern. For every pattern the original site must
admit vertex-disjoint paths that cover it and join the same port vertices;
the table stores those paths, found by exhaustive search on the site.
"""

from typing import Dict, FrozenSet, Iterator, List, Sequence, Set, Tuple

from planar.embedding import PlanarEmbedding
from planar.exceptions import LiftError

PortPair = FrozenSet[int]
Pattern = FrozenSet[PortPair]


def path_covers(
    adjacency: Dict[int, Set[int]],
    terminals: Sequence[Tuple[int, int]],
) -> Iterator[List[List[int]]]:
    """Vertex-disjoint paths joining each terminal pair and covering every vertex."""
    vertices = set(adjacency)

    def extend(i: int, used: Set[int], paths: List[List[int]]) -> Iterator[List[List[int]]]:
        if i == len(terminals):
            if used == vertices:
                yield [list(p) for p in paths]
            return
        source, target = terminals[i]
        if source in used or (target in used and target != source):
            return
        if source == target:
            paths.append([source])
            yield from extend(i + 1, used | {source}, paths)
            paths.pop()
            return
        reserved = {t for pair in terminals[i + 1:] for t in pair}

        def walk(v: int, path: List[int], seen: Set[int]) -> Iterator[List[List[int]]]:
            if v == target:
                paths.append(list(path))
                yield from extend(i + 1, used | seen, paths)
                paths.pop()
                return
            for w in sorted(adjacency[v]):
                if w in seen or w in used or (w in reserved and w != target):
                    continue
                path.append(w)
                seen.add(w)
                yield from walk(w, path, seen)
                seen.discard(w)
                path.pop()

        yield from walk(source, [source], {source})

    yield from extend(0, set(), [])


def site_adjacency(embedding: PlanarEmbedding, site: FrozenSet[int]) -> Dict[int, Set[int]]:
    return {v: {w for w in embedding.neighbors(v) if w in site} for v in site}


def reduced_patterns(
    adjacency: Dict[int, Set[int]], port_vertex: Dict[int, int]
) -> List[Pattern]:
    """Every way a Hamilton cycle can cross a gadget, as port-pair sets."""
    ports = sorted(port_vertex)
    patterns: Set[Pattern] = set()

    def choose(remaining: List[int], pairs: List[Tuple[int, int]]) -> None:
        if pairs:
            terminals = [(port_vertex[a], port_vertex[b]) for a, b in pairs]
            if next(path_covers(adjacency, terminals), None) is not None:
                patterns.add(frozenset(frozenset(p) for p in pairs))
        for i, a in enumerate(remaining):
            for b in remaining[i + 1:]:
                if pairs and (a, b) <= pairs[-1]:
                    continue
                rest = [p for p in remaining if p not in (a, b)]
                choose(rest, pairs + [(a, b)])

    choose(ports, [])
    return sorted(patterns, key=lambda p: sorted(sorted(x) for x in p))


def build_lift_table(
    original_adjacency: Dict[int, Set[int]],
    original_port_vertex: Dict[int, int],
    patterns: Sequence[Pattern],
) -> Dict[Pattern, Dict[PortPair, List[int]]]:
    """Original-site paths for each reduced traversal pattern.

    Raises:
        LiftError: Some pattern has no covering path system in the original site
    """
    table: Dict[Pattern, Dict[PortPair, List[int]]] = {}
    for pattern in patterns:
        pairs = [tuple(sorted(pair)) for pair in sorted(pattern, key=sorted)]
        terminals = [(original_port_vertex[a], original_port_vertex[b]) for a, b in pairs]
        cover = next(path_covers(original_adjacency, terminals), None)
        if cover is None:
            raise LiftError(f"No lift for traversal pattern {[list(p) for p in pairs]}")
        table[pattern] = {frozenset(pair): path for pair, path in zip(pairs, cover)}
    return table


def lift_runs(
    cycle: Sequence[int],
    gadget: Set[int],
    port_of: Dict[Tuple[int, int], int],
) -> Tuple[List[int], List[Tuple[int, int, int]]]:
    """Split a reduced cycle at the gadget.

    Args:
        cycle: Reduced Hamilton cycle
        gadget: Reduced ids of gadget vertices
        port_of: (outside vertex, gadget vertex) -> port index

    Returns:
        The cycle rotated to start outside the gadget, and a list of runs
        (start index, entry port, exit port) where start index is the
        position of the first gadget vertex of the run
    """
    n = len(cycle)
    start = next((i for i, v in enumerate(cycle) if v not in gadget), None)
    if start is None:
        raise LiftError("Cycle never leaves the reduced site")
    rotated = list(cycle[start:]) + list(cycle[:start])
    runs: List[Tuple[int, int, int]] = []
    i = 0
    while i < n:
        if rotated[i] in gadget:
            j = i
            while j < n and rotated[j] in gadget:
                j += 1
            before = rotated[i - 1]
            after = rotated[j % n]
            try:
                entry = port_of[(before, rotated[i])]
                leave = port_of[(after, rotated[j - 1])]
            except KeyError as e:
                raise LiftError(f"Run enters the site through a non-port edge {e}") from None
            runs.append((i, entry, leave))
            i = j
        else:
            i += 1
    return rotated, runs
