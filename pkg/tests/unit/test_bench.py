"""Unit tests for the nanotube benchmark."""

import json

import pandas as pd
import pytest

from pipeline.bench import fit_linear, run_bench, save_bench, tube_sizes
from pipeline.hamilton_orchestrator import HamiltonOrchestrator
from pipeline.models import BenchSettings


def test_tube_sizes():
    """Only multiples of ten are (5,0) tubes."""
    assert tube_sizes(BenchSettings(n_min=20, n_max=60, step=10)) == [20, 30, 40, 50, 60]
    assert tube_sizes(BenchSettings(n_min=40, n_max=100, step=20)) == [40, 60, 80, 100]


def test_tube_sizes_rejects_empty():
    with pytest.raises(ValueError, match="Empty sweep"):
        tube_sizes(BenchSettings(n_min=60, n_max=40))
    with pytest.raises(ValueError, match="no nanotube sizes"):
        tube_sizes(BenchSettings(n_min=25, n_max=29, step=10))


def test_fit_linear_exact():
    """Medians per n are fitted, so outliers in one repeat do not move the line."""
    rows = [
        {"n": n, "repeat": r, "seconds": 2 * n + 1 + (100 if r == 2 else 0)}
        for n in (20, 40, 60)
        for r in range(3)
    ]
    fit = fit_linear(pd.DataFrame(rows))
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.r2 == pytest.approx(1.0)
    assert fit.points == 3


def test_fit_linear_needs_two_sizes():
    with pytest.raises(ValueError):
        fit_linear(pd.DataFrame([{"n": 20, "seconds": 1.0}, {"n": 20, "seconds": 2.0}]))


def test_save_bench(tmp_path):
    frame = pd.DataFrame([{"n": 20, "seconds": 1.0}, {"n": 30, "seconds": 2.0}])
    path = save_bench(frame, fit_linear(frame), tmp_path / "out" / "bench.csv")
    assert pd.read_csv(path)["n"].tolist() == [20, 30]
    fit = json.loads(path.with_suffix(".fit.json").read_text())
    assert fit["slope"] == pytest.approx(0.1)


@pytest.mark.slow
def test_run_bench_small_sweep():
    """Every tube of a short sweep is certified."""
    orch = HamiltonOrchestrator(overrides={"bench": {"n_min": 20, "n_max": 40, "step": 10, "repeats": 2}})
    frame = run_bench(orch)
    assert frame["n"].tolist() == [20, 20, 30, 30, 40, 40]
    assert frame["certified"].all()
    assert (frame["seconds"] > 0).all()
