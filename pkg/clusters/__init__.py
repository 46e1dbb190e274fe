"""
Patches, clusters and the cluster database.

The extension checker lives in ``clusters.checker``; it needs the factor and
parity packages, which in turn build on ``clusters.patch``.

Usage:
    from clusters import generate_clusters
    db = generate_clusters(f4=0, f5=2)
"""

from .patch import ClusterRecord, Patch, closure, closure_faces, k_disc
from .database import ClusterDatabase, load_database, save_database, save_graphs
from .generator import complete_patch, enumerate_capped_graphs, generate_clusters

__all__ = [
    "Patch",
    "ClusterRecord",
    "k_disc",
    "closure",
    "closure_faces",
    "ClusterDatabase",
    "load_database",
    "save_database",
    "save_graphs",
    "generate_clusters",
    "complete_patch",
    "enumerate_capped_graphs",
]
