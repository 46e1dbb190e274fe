"""Named cubic plane graphs used as fixtures, base cases and benchmarks.

Every builder produces a plain edge list and lets the planarity test recover
the rotation system, which is unique for 3-connected graphs.

Usage:
    from planar.catalog import build, nanotube
    dodeca = build("dodecahedron")
    tube = nanotube(9)   # 100 vertices
"""

from typing import Callable, Dict, List, Tuple

import networkx as nx

from planar.embedding import PlanarEmbedding

Edge = Tuple[int, int]


def k4() -> PlanarEmbedding:
    return PlanarEmbedding.from_networkx(nx.complete_graph(4), name="K4")


def prism(k: int) -> PlanarEmbedding:
    """k-gonal prism: two k-cycles joined by a perfect matching."""
    edges: List[Edge] = []
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((k + i, k + (i + 1) % k))
        edges.append((i, k + i))
    return PlanarEmbedding.from_edges(edges, name=f"prism_{k}")


def cube() -> PlanarEmbedding:
    return PlanarEmbedding.from_edges(prism(4).edges(), name="cube")


def dodecahedron() -> PlanarEmbedding:
    return PlanarEmbedding.from_networkx(nx.dodecahedral_graph(), name="dodecahedron")


def tutte() -> PlanarEmbedding:
    """Tutte's 46-vertex non-hamiltonian cubic polyhedron."""
    return PlanarEmbedding.from_networkx(nx.tutte_graph(), name="tutte")


NON_HAMILTONIAN_38_EDGES = [
    (0, 17), (0, 31), (0, 1), (1, 5), (1, 2), (2, 8), (2, 3), (3, 6),
    (3, 4), (4, 16), (4, 7), (5, 23), (5, 6), (6, 7), (7, 32), (8, 22),
    (8, 9), (9, 10), (9, 21), (10, 11), (10, 22), (11, 12), (11, 20), (12, 13),
    (12, 21), (13, 14), (13, 19), (14, 20), (14, 15), (15, 16), (15, 17), (16, 19),
    (17, 18), (18, 20), (18, 22), (19, 21), (23, 37), (23, 24), (24, 25), (24, 36),
    (25, 26), (25, 37), (26, 27), (26, 35), (27, 28), (27, 36), (28, 29), (28, 34),
    (29, 35), (29, 30), (30, 31), (30, 32), (31, 34), (32, 33), (33, 35), (33, 37),
    (34, 36),
]


def non_hamiltonian_38() -> PlanarEmbedding:
    """A 38-vertex non-hamiltonian cubic polyhedron.

    Two vertices of a 10-vertex cubic polyhedron are each replaced by the
    15-vertex fragment Tutte's graph is built from.
    """
    return PlanarEmbedding.from_edges(NON_HAMILTONIAN_38_EDGES, name="non_hamiltonian_38")


def truncate(graph: nx.Graph, name: str) -> PlanarEmbedding:
    """Replace every vertex of a plane graph by a cycle through its edge ends.

    Truncating the dual of a fullerene gives its leapfrog.
    """
    is_planar, cert = nx.check_planarity(graph)
    if not is_planar:
        raise ValueError(f"{name}: graph is not planar")
    index: Dict[Tuple, int] = {}

    def node(v, w) -> int:
        return index.setdefault((v, w), len(index))

    edges: List[Edge] = []
    for v in graph.nodes():
        ring = list(cert.neighbors_cw_order(v))
        for i, w in enumerate(ring):
            edges.append((node(v, w), node(v, ring[(i + 1) % len(ring)])))
    for v, w in graph.edges():
        edges.append((node(v, w), node(w, v)))
    return PlanarEmbedding.from_edges(edges, name=name)


def truncate_vertex(embedding: PlanarEmbedding, v: int, name: str) -> PlanarEmbedding:
    """Replace one vertex of a cubic graph by a triangle."""
    graph = embedding.to_networkx()
    neighbours = list(graph.neighbors(v))
    graph.remove_node(v)
    fresh = [embedding.n_vertices + i for i in range(3)]
    for a, w in zip(fresh, neighbours):
        graph.add_edge(a, w)
    graph.add_edges_from([(fresh[0], fresh[1]), (fresh[1], fresh[2]), (fresh[2], fresh[0])])
    return PlanarEmbedding.from_networkx(nx.convert_node_labels_to_integers(graph), name=name)


def nanotube(m: int) -> PlanarEmbedding:
    """Capped (5,0) nanotube on 10(m+1) vertices.

    Rings R_0..R_{2m+1} of five vertices; the end rings are 5-cycles, even
    rings attach straight to the next ring and odd rings zigzag into it.
    ``nanotube(1)`` is the dodecahedron.
    """
    if m < 1:
        raise ValueError("nanotube needs m >= 1")
    rings = 2 * m + 2

    def r(j: int, i: int) -> int:
        return 5 * j + i % 5

    edges: List[Edge] = []
    for i in range(5):
        edges.append((r(0, i), r(0, i + 1)))
        edges.append((r(rings - 1, i), r(rings - 1, i + 1)))
    for j in range(rings - 1):
        for i in range(5):
            edges.append((r(j, i), r(j + 1, i)))
            if j % 2 == 1:
                edges.append((r(j, i), r(j + 1, i + 1)))
    return PlanarEmbedding.from_edges(edges, name=f"nanotube_{10 * (m + 1)}")


def truncated_octahedron() -> PlanarEmbedding:
    """Barnette graph with six pairwise non-adjacent quadrangles and no pentagons."""
    return truncate(nx.octahedral_graph(), name="truncated_octahedron")


def buckminsterfullerene() -> PlanarEmbedding:
    """C60, the leapfrog of the dodecahedron."""
    return truncate(nx.icosahedral_graph(), name="c60")


CATALOG: Dict[str, Callable[[], PlanarEmbedding]] = {
    "K4": k4,
    "triangular_prism": lambda: prism(3),
    "cube": cube,
    "pentagonal_prism": lambda: prism(5),
    "hexagonal_prism": lambda: prism(6),
    "dodecahedron": dodecahedron,
    "truncated_octahedron": truncated_octahedron,
    "c60": buckminsterfullerene,
    "tutte": tutte,
    "non_hamiltonian_38": non_hamiltonian_38,
    "truncated_dodecahedron_vertex": lambda: truncate_vertex(
        dodecahedron(), 0, name="truncated_dodecahedron_vertex"
    ),
    "truncated_cube_vertex": lambda: truncate_vertex(cube(), 0, name="truncated_cube_vertex"),
}


def build(name: str) -> PlanarEmbedding:
    """Build a catalog graph by name; ``nanotube_<n>`` builds the n-vertex tube."""
    if name.startswith("nanotube_"):
        n = int(name.split("_", 1)[1])
        if n % 10 != 0 or n < 20:
            raise ValueError(f"No (5,0) nanotube on {n} vertices")
        return nanotube(n // 10 - 1)
    try:
        return CATALOG[name]()
    except KeyError:
        raise ValueError(f"Unknown catalog graph: {name}") from None
