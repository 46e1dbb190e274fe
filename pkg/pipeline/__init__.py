"""
Pipeline orchestration, run configuration, reports, rendering and benchmarks.

Usage:
    from pipeline import HamiltonOrchestrator, read_graphs

    orchestrator = HamiltonOrchestrator("config/pipeline_config.json")
    for report in orchestrator.run_stream(read_graphs("graphs.pc")):
        print(report.to_json())
"""

from .hamilton_orchestrator import HamiltonOrchestrator, PipelineArtifacts, read_graphs
from .layout import default_outer_face, to_canvas, tutte_layout
from .models import (
    BenchRow,
    FactorSummary,
    GraphReport,
    InputFormat,
    OutputFormat,
    Overlay,
    Route,
    RunConfig,
    Stage,
    StageTiming,
)
from .svg_render import render_svg

__all__ = [
    "HamiltonOrchestrator",
    "PipelineArtifacts",
    "read_graphs",
    "RunConfig",
    "GraphReport",
    "FactorSummary",
    "StageTiming",
    "BenchRow",
    "InputFormat",
    "OutputFormat",
    "Overlay",
    "Route",
    "Stage",
    "render_svg",
    "tutte_layout",
    "to_canvas",
    "default_outer_face",
]
