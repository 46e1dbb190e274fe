"""Cluster and graph databases built by the generator.

Records are kept once per canonical key. Completed graphs are kept once per
isomorphism class: a Weisfeiler-Lehman hash picks the bucket and networkx
settles the rest.

On disk a database is one JSON object per line:

    {"f4": 0, "f5": 2, "mu": 2, "delta": 14, "code": [...], "faces": [[...]], "outer": [...]}
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterator, List, Tuple, Union

import networkx as nx

from clusters.patch import CanonicalKey, ClusterRecord, Patch
from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.planar_code import encode_planar_code

logger = get_logger(__name__)


@dataclass
class ClusterDatabase:
    """Clusters of one (f4, f5) cell plus the graphs completed on the way.

    Attributes:
        f4: Quadrangles per cluster
        f5: Pentagons per cluster
        records: Canonical key -> cluster
        capped: Patches with curvature >= 7 and perimeter <= curvature, left to
            ``enumerate_capped_graphs``
        graphs: Completed graphs, pairwise non-isomorphic
        incomplete: The node budget ran out before the search finished
        nodes: Patches visited
    """

    f4: int
    f5: int
    records: Dict[CanonicalKey, ClusterRecord] = field(default_factory=dict)
    capped: Dict[CanonicalKey, ClusterRecord] = field(default_factory=dict)
    graphs: List[PlanarEmbedding] = field(default_factory=list)
    incomplete: bool = False
    nodes: int = 0
    _graph_buckets: Dict[str, List[nx.Graph]] = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[ClusterRecord]:
        return iter(self.records.values())

    def add(self, record: ClusterRecord) -> bool:
        """Insert unless an isomorphic record is already present."""
        key = record.canonical_key
        if key is None or key in self.records:
            return False
        self.records[key] = record
        return True

    def add_capped(self, record: ClusterRecord) -> bool:
        key = record.canonical_key
        if key is None or key in self.capped:
            return False
        self.capped[key] = record
        return True

    def add_graph(self, embedding: PlanarEmbedding) -> bool:
        """Insert unless an isomorphic graph is already present."""
        graph = embedding.to_networkx()
        bucket = self._graph_buckets.setdefault(nx.weisfeiler_lehman_graph_hash(graph), [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return False
        bucket.append(graph)
        self.graphs.append(embedding)
        return True

    def counts(self) -> Dict[Tuple[int, int], int]:
        """Clusters per (f4, f5) under the counting convention.

        Clusters with curvature above 6 count only when their perimeter
        exceeds their curvature.
        """
        table: Dict[Tuple[int, int], int] = {}
        for record in self.records.values():
            if record.mu > 6 and record.delta <= record.mu:
                continue
            cell = (record.f4, record.f5)
            table[cell] = table.get(cell, 0) + 1
        return table

    @property
    def count(self) -> int:
        return self.counts().get((self.f4, self.f5), 0)

    def summary(self) -> dict:
        return {
            "f4": self.f4,
            "f5": self.f5,
            "clusters": self.count,
            "capped": len(self.capped),
            "graphs": len(self.graphs),
            "nodes": self.nodes,
            "incomplete": self.incomplete,
        }


def record_to_line(record: ClusterRecord) -> str:
    patch = record.patch
    if patch is None:
        raise ValueError("Only clusters with a patch can be stored")
    payload = {
        "f4": record.f4,
        "f5": record.f5,
        "mu": record.mu,
        "delta": record.delta,
        "code": list(patch.canonical_key),
        "faces": [list(f) for f in patch.faces],
        "outer": list(patch.outer),
        "tags": list(record.tags),
    }
    return json.dumps(payload)


def record_from_line(line: str) -> ClusterRecord:
    """Rebuild a record; the stored code must match the rebuilt patch.

    Raises:
        ValueError: Malformed line or a code mismatch
    """
    try:
        payload = json.loads(line)
        patch = Patch(payload["faces"], payload["outer"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValueError(f"Malformed cluster line: {exc}") from exc
    if list(patch.canonical_key) != payload["code"]:
        raise ValueError("Stored canonical code does not match the patch")
    record = ClusterRecord.from_patch(patch)
    record.tags = list(payload.get("tags", []))
    return record


def save_database(db: ClusterDatabase, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        for record in db.records.values():
            f.write(record_to_line(record) + "\n")
    logger.info(f"Saved {len(db)} clusters of cell ({db.f4}, {db.f5}) to {path}")
    return path


def load_database(path: Union[str, Path]) -> ClusterDatabase:
    """Read a database written by ``save_database``; the cell is taken from the first record.

    Raises:
        FileNotFoundError: No such file
        ValueError: A line cannot be parsed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Cluster database not found: {path}")
    records: List[ClusterRecord] = []
    with open(path) as f:
        for number, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                records.append(record_from_line(line))
            except ValueError as exc:
                raise ValueError(f"{path}:{number}: {exc}") from exc
    first = records[0] if records else None
    db = ClusterDatabase(f4=first.f4 if first else 0, f5=first.f5 if first else 0)
    for record in records:
        db.add(record)
    logger.debug(f"Loaded {len(db)} clusters from {path}")
    return db


def save_graphs(db: ClusterDatabase, path: Union[str, Path]) -> Path:
    """Write the completed graphs in planar_code."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_planar_code(db.graphs))
    return path
