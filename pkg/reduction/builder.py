"""Copy-and-edit builder that replaces a vertex set by a small gadget.

The removed set S is walked around in rotation order to list its ports (the
darts leaving S) cyclically. A gadget is a list of new vertices whose
rotations mention ports by index or other gadget vertices; every outside
vertex that pointed into S is rewired to the gadget vertex owning its port.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

from planar.embedding import PlanarEmbedding
from planar.exceptions import EmbeddingError, ReductionError

# ("port", k) refers to port k, ("new", j) to gadget vertex j
Token = Tuple[str, int]


def boundary_ports(embedding: PlanarEmbedding, site: FrozenSet[int]) -> List[int]:
    """Darts leaving ``site`` in cyclic order around it."""
    start = next(
        (d for v in sorted(site) for d in embedding.darts_at(v) if embedding.target(d) not in site),
        None,
    )
    if start is None:
        raise ReductionError("Site has no boundary")
    ports = [start]
    d = embedding.next(start)
    guard = 0
    while d != start:
        if embedding.target(d) not in site:
            ports.append(d)
            d = embedding.next(d)
        else:
            d = embedding.next(embedding.twin(d))
        guard += 1
        if guard > 4 * embedding.n_darts:
            raise ReductionError("Boundary walk did not close")
    return ports


@dataclass
class Replacement:
    """Result of a site replacement.

    Attributes:
        embedding: The reduced graph
        old_to_new: Outside vertices of the original -> their reduced ids
        new_to_old: Reduced ids -> original ids (gadget vertices map to -1)
        gadget: Reduced ids of the gadget vertices, in gadget order
        ports: Port darts of the original, cyclic
        port_owner: Port index -> gadget index that received it
        port_outside: Port index -> original outside endpoint
    """

    embedding: PlanarEmbedding
    old_to_new: Dict[int, int]
    new_to_old: List[int]
    gadget: List[int]
    ports: List[int]
    port_owner: Dict[int, int]
    port_outside: Dict[int, int]


def replace_site(
    embedding: PlanarEmbedding,
    site: FrozenSet[int],
    gadget: Sequence[Sequence[Token]],
    ports: Sequence[int],
    name: Union[str, None] = None,
) -> Replacement:
    """Remove ``site`` and insert ``gadget`` wired to ``ports``.

    Raises:
        ReductionError: A port is unassigned or the result is not a valid embedding
    """
    outside = [v for v in range(embedding.n_vertices) if v not in site]
    old_to_new = {v: i for i, v in enumerate(outside)}
    base = len(outside)
    gadget_ids = [base + j for j in range(len(gadget))]

    port_owner: Dict[int, int] = {}
    for j, rotation in enumerate(gadget):
        for kind, k in rotation:
            if kind == "port":
                port_owner[k] = j
    if set(port_owner) != set(range(len(ports))):
        raise ReductionError(f"Gadget covers ports {sorted(port_owner)} of {len(ports)}")

    # outside endpoint dart of each port -> gadget vertex
    rewire = {embedding.twin(p): gadget_ids[port_owner[k]] for k, p in enumerate(ports)}

    rotations: List[List[int]] = []
    for v in outside:
        row = []
        for d in embedding.darts_at(v):
            w = embedding.target(d)
            row.append(rewire[d] if w in site else old_to_new[w])
        rotations.append(row)
    for rotation in gadget:
        row = []
        for kind, k in rotation:
            if kind == "port":
                row.append(old_to_new[embedding.target(ports[k])])
            else:
                row.append(gadget_ids[k])
        rotations.append(row)

    try:
        reduced = PlanarEmbedding(rotations, name=name or embedding.name)
    except EmbeddingError as e:
        raise ReductionError(f"Replacement is not a simple cubic embedding: {e}") from e
    if reduced.genus != 0:
        raise ReductionError("Replacement changed the genus")

    return Replacement(
        embedding=reduced,
        old_to_new=old_to_new,
        new_to_old=outside + [-1] * len(gadget),
        gadget=gadget_ids,
        ports=list(ports),
        port_owner=port_owner,
        port_outside={k: embedding.target(p) for k, p in enumerate(ports)},
    )
