#!/usr/bin/env python3
"""
Build planar_code corpora for the pipeline.

This script:
1. Writes the catalog graphs and (5,0) nanotubes
2. Calls buckygen (fullerenes) or plantri (cubic polyhedra) when installed
3. Keeps the graphs of the requested class and summarises them as CSV

Usage:
    python scripts/build_corpus.py catalog --out data/catalog.pc
    python scripts/build_corpus.py fullerenes --n-min 20 --n-max 60 --out data/fullerenes_20_60.pc
    python scripts/build_corpus.py barnette --n-min 8 --n-max 24 --out data/barnette_8_24.pc
"""

import argparse
import shutil
import subprocess
import sys
from pathlib import Path
from typing import List

# Add parent directory to path so we can import the packages
sys.path.insert(0, str(Path(__file__).parent.parent))

import pandas as pd

from logging_system import get_logger, setup_logging
from planar.catalog import CATALOG, build
from planar.classify import GraphKind, classify
from planar.embedding import PlanarEmbedding
from planar.exceptions import PlanarCodeError
from planar.planar_code import decode_planar_code, encode_planar_code

logger = get_logger(__name__)

NANOTUBE_SIZES = range(20, 410, 20)


def run_generator(command: List[str]) -> bytes:
    """Run an external generator and return its planar_code output.

    Raises:
        FileNotFoundError: The generator is not on PATH
        RuntimeError: The generator exited with an error
    """
    if shutil.which(command[0]) is None:
        raise FileNotFoundError(f"{command[0]} not found on PATH")
    logger.info(f"Running {' '.join(command)}")
    result = subprocess.run(command, capture_output=True, check=False)
    if result.returncode != 0:
        raise RuntimeError(f"{command[0]} failed: {result.stderr.decode(errors='replace').strip()}")
    return result.stdout


def fullerenes(n: int) -> List[PlanarEmbedding]:
    # -d: output the fullerenes themselves instead of their dual triangulations
    return decode_planar_code(run_generator(["buckygen", "-d", str(n), "stdout"]))


def cubic_polyhedra(n: int) -> List[PlanarEmbedding]:
    # duals of 3-connected triangulations on n/2 + 2 vertices
    faces = n // 2 + 2
    return decode_planar_code(run_generator(["plantri", "-pc3m3", "-d", str(faces), "stdout"]))


def summarise(graphs: List[PlanarEmbedding]) -> pd.DataFrame:
    rows = []
    for g in graphs:
        c = classify(g)
        rows.append(
            {
                "name": g.name,
                "n": g.n_vertices,
                "kind": c.kind.value,
                "f4": c.census.get(4, 0),
                "f5": c.census.get(5, 0),
                "f6": c.census.get(6, 0),
            }
        )
    return pd.DataFrame(rows)


def main() -> int:
    parser = argparse.ArgumentParser(description="Build planar_code graph corpora")
    parser.add_argument("source", choices=["catalog", "fullerenes", "barnette"])
    parser.add_argument("--n-min", type=int, default=20)
    parser.add_argument("--n-max", type=int, default=60)
    parser.add_argument("--out", type=str, required=True, help="planar_code output file")
    parser.add_argument("--log-level", type=str, default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    args = parser.parse_args()
    setup_logging(level=args.log_level)

    graphs: List[PlanarEmbedding] = []
    try:
        if args.source == "catalog":
            graphs = [build(name) for name in CATALOG]
            graphs += [build(f"nanotube_{n}") for n in NANOTUBE_SIZES]
        else:
            for n in range(args.n_min, args.n_max + 1, 2):
                batch = fullerenes(n) if args.source == "fullerenes" else cubic_polyhedra(n)
                for i, g in enumerate(batch):
                    g.name = f"{args.source}_{n}_{i}"
                if args.source == "barnette":
                    batch = [g for g in batch if classify(g).kind in (GraphKind.BARNETTE, GraphKind.FULLERENE)]
                logger.info(f"n={n}: {len(batch)} graphs")
                graphs.extend(batch)
    except (FileNotFoundError, RuntimeError, PlanarCodeError) as e:
        logger.error(f"{e}")
        return 1

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(encode_planar_code(graphs))
    summary = summarise(graphs)
    summary.to_csv(out.with_suffix(".csv"), index=False)
    logger.info(f"Wrote {len(graphs)} graphs to {out}")
    logger.info(f"Kinds: {summary['kind'].value_counts().to_dict() if len(summary) else {}}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
