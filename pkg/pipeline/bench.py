"""Nanotube benchmark: pipeline wall time against n with a linear fit.

Usage:
    frame = run_bench(orchestrator)
    fit = fit_linear(frame)
    print(fit.slope, fit.r2)
"""

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from logging_system import get_logger
from pipeline.hamilton_orchestrator import HamiltonOrchestrator
from pipeline.models import BenchRow, BenchSettings
from planar.catalog import build

logger = get_logger(__name__)


@dataclass
class LinearFit:
    slope: float
    intercept: float
    r2: float
    points: int

    def to_dict(self) -> dict:
        return asdict(self)


def tube_sizes(settings: BenchSettings) -> List[int]:
    """Vertex counts of the sweep; (5,0) tubes exist for multiples of ten from 20."""
    if settings.n_max < settings.n_min:
        raise ValueError(f"Empty sweep: n_min={settings.n_min} > n_max={settings.n_max}")
    sizes = [n for n in range(settings.n_min, settings.n_max + 1, settings.step) if n % 10 == 0]
    if not sizes:
        raise ValueError("Sweep contains no nanotube sizes (multiples of 10)")
    return sizes


def run_bench(orchestrator: HamiltonOrchestrator, settings: Optional[BenchSettings] = None) -> pd.DataFrame:
    """Time the pipeline on each tube ``repeats`` times, in a seeded shuffled order."""
    settings = settings or orchestrator.config.bench
    sizes = tube_sizes(settings)
    runs = [(n, r) for n in sizes for r in range(settings.repeats)]
    order = np.random.default_rng(orchestrator.config.seed).permutation(len(runs))
    graphs = {n: build(f"nanotube_{n}") for n in sizes}

    rows: List[dict] = []
    for i in order:
        n, repeat = runs[i]
        report = orchestrator.run_graph(graphs[n], index=int(i))
        stage_seconds = {}
        for timing in report.timings:
            stage_seconds[timing.stage.value] = stage_seconds.get(timing.stage.value, 0.0) + timing.seconds
        row = BenchRow(
            n=n,
            repeat=repeat,
            seconds=report.total_seconds(),
            route=report.route,
            certified=report.certified,
            stage_seconds=stage_seconds,
        )
        logger.debug(f"bench n={n} repeat={repeat}: {row.seconds:.4f}s via {row.route.value}")
        flat = row.model_dump(mode="json", exclude={"stage_seconds"})
        flat.update({f"t_{stage}": seconds for stage, seconds in stage_seconds.items()})
        rows.append(flat)

    frame = pd.DataFrame(rows).sort_values(["n", "repeat"]).reset_index(drop=True)
    frame = frame.fillna(0.0)
    uncertified = int((~frame["certified"]).sum())
    if uncertified:
        logger.error(f"{uncertified} benchmark runs produced no certified cycle")
    logger.info(f"Benchmark: {len(frame)} runs over n = {sizes[0]}..{sizes[-1]}")
    return frame


def fit_linear(frame: pd.DataFrame, column: str = "seconds") -> LinearFit:
    """Least-squares fit of the median time per n against n.

    Raises:
        ValueError: Fewer than two distinct sizes
    """
    medians = frame.groupby("n")[column].median()
    if len(medians) < 2:
        raise ValueError("A linear fit needs at least two sizes")
    x = medians.index.to_numpy(dtype=float)
    y = medians.to_numpy(dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(residual ** 2)) / total if total > 0 else 1.0
    fit = LinearFit(slope=float(slope), intercept=float(intercept), r2=r2, points=len(medians))
    logger.info(f"time = {fit.slope:.3e} * n + {fit.intercept:.3e} (R^2 = {fit.r2:.4f})")
    return fit


def save_bench(frame: pd.DataFrame, fit: LinearFit, path: Union[str, Path]) -> Path:
    """Write the runs as CSV and the fit next to it as JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    path.with_suffix(".fit.json").write_text(pd.Series(fit.to_dict()).to_json(indent=2))
    return path
