"""Hamilton Cycle Orchestrator.

Runs the whole pipeline on a stream of graphs:

    classify
        → reduce_to_barnette (triangles, adjacent quadrangles)
        → direct check (capped clusters) | build_factor
        → parity_stats → fix_parity | special family
        → glue_all
        → lift_cycle
        → verify_hamiltonian

A stage that raises a ``BarnetteError`` is recorded in the report with its
name; unless the run is strict the exact search then takes over.

Usage:
    orchestrator = HamiltonOrchestrator("config/pipeline_config.json")
    for report in orchestrator.run_stream(read_graphs("c60.pc")):
        print(report.to_text())
"""

import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from dotenv import load_dotenv

from factor.coloring import GWColoring
from factor.configurations import Configuration, configurations
from factor.ladder import build_factor, direct_check_configs
from factor.two_factor import TwoFactor
from glue.reducer import GlueFrame, glue_all
from logging_system import get_logger
from oracle.search import brute_hamilton, fallback_hamilton
from oracle.two_factors import count_2factors
from parity.handlers import cluster_tags, fix_parity, solve_by_truncation, special_family
from parity.stats import ParityStats, parity_stats
from pipeline.models import (
    FactorSummary,
    GraphReport,
    InputFormat,
    Overlay,
    Route,
    RunConfig,
    Stage,
    StageTiming,
)
from pipeline.svg_render import render_svg
from planar.classify import classify
from planar.dual import DualGraph
from planar.edge_list import iter_edge_list
from planar.embedding import PlanarEmbedding
from planar.exceptions import BarnetteError, NotApplicable, PlanarCodeError
from planar.planar_code import iter_planar_records
from planar.verify import CycleCheck, verify_hamiltonian
from reduction.steps import ReductionTrace, lift_cycle, reduce_to_barnette, terminal_cycle

logger = get_logger(__name__)

REQUIRED_SECTIONS = ["oracle", "pipeline", "clusters", "bench", "render"]
TRUNCATION_FAMILIES = ("four_c3", "three_c3_three_c0")

GraphItem = Union[PlanarEmbedding, PlanarCodeError]


@dataclass
class PipelineArtifacts:
    """Intermediate objects of one run, kept for rendering and the factor command."""

    target: Optional[PlanarEmbedding] = None
    trace: Optional[ReductionTrace] = None
    coloring: Optional[GWColoring] = None
    factor: Optional[TwoFactor] = None
    configs: List[Configuration] = field(default_factory=list)
    stats: Optional[ParityStats] = None
    frames: List[GlueFrame] = field(default_factory=list)


def read_graphs(path: Optional[Union[str, Path]], fmt: InputFormat = InputFormat.PLANAR_CODE) -> Iterator[GraphItem]:
    """Stream graphs from a file, or stdin when ``path`` is None or ``-``.

    A record that fails to parse is yielded as its ``PlanarCodeError`` and
    decoding goes on with the next one; a truncated planar_code record ends
    the stream.
    """
    fmt = InputFormat(fmt)
    use_stdin = path is None or str(path) == "-"
    if fmt == InputFormat.PLANAR_CODE:
        data = sys.stdin.buffer.read() if use_stdin else Path(path).read_bytes()
        try:
            yield from iter_planar_records(data)
        except PlanarCodeError as exc:
            yield exc
        return
    text = sys.stdin.read() if use_stdin else Path(path).read_text()
    yield from iter_edge_list(text)


def _merge(base: dict, overrides: dict) -> dict:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict):
            merged[key] = _merge(merged.get(key) or {}, value)
        elif value is not None:
            merged[key] = value
    return merged


def _solve_in_worker(payload: Tuple[dict, PlanarEmbedding, int]) -> GraphReport:
    config, embedding, index = payload
    return HamiltonOrchestrator.from_run_config(RunConfig.model_validate(config)).run_graph(embedding, index)


class HamiltonOrchestrator:
    """Runs the Hamilton cycle pipeline with a validated configuration.

    Args:
        config_path: JSON file with the sections in ``REQUIRED_SECTIONS``;
            defaults are used when None
        overrides: Nested values (usually from CLI flags) applied on top
    """

    def __init__(self, config_path: Optional[Union[str, Path]] = None, overrides: Optional[dict] = None):
        load_dotenv()

        self.config_path = Path(config_path) if config_path else None
        self.raw: Dict = {}
        if self.config_path is not None:
            self._load_config()
        self.config = RunConfig.model_validate(_merge(self.raw, overrides or {}))
        logger.debug(f"Run configuration: {self.config.model_dump()}")

    @classmethod
    def from_run_config(cls, config: RunConfig) -> "HamiltonOrchestrator":
        orchestrator = cls.__new__(cls)
        orchestrator.config_path = None
        orchestrator.raw = config.model_dump(mode="json")
        orchestrator.config = config
        return orchestrator

    def _load_config(self) -> None:
        """Load and validate the configuration file.

        Raises:
            FileNotFoundError: If config file doesn't exist
            ValueError: If a required section is missing
        """
        if not self.config_path.exists():
            raise FileNotFoundError(f"Config file not found: {self.config_path}")

        logger.info(f"Loading config from {self.config_path}")
        with open(self.config_path) as f:
            self.raw = json.load(f)

        self._replace_env_vars()

        for section in REQUIRED_SECTIONS:
            if section not in self.raw:
                raise ValueError(f"Missing required config section: {section}")

    def _replace_env_vars(self) -> None:
        """Replace ${VAR} placeholders with environment variables."""
        config_str = json.dumps(self.raw)
        for var in re.findall(r"\$\{([^}]+)\}", config_str):
            value = os.getenv(var, "")
            if not value:
                logger.warning(f"Environment variable {var} not set")
            config_str = config_str.replace(f"${{{var}}}", value)
        self.raw = json.loads(config_str)

    # ------------------------------------------------------------------
    # stage bookkeeping

    @contextmanager
    def _stage(self, report: GraphReport, stage: Stage):
        timing = StageTiming(stage=stage, seconds=0.0)
        started = time.perf_counter()
        try:
            yield timing
        except Exception as exc:
            timing.ok = False
            timing.error = f"{type(exc).__name__}: {exc}"
            raise
        finally:
            timing.seconds = time.perf_counter() - started
            report.timings.append(timing)

    @staticmethod
    def _failed_stage(report: GraphReport) -> Optional[Stage]:
        for timing in reversed(report.timings):
            if not timing.ok:
                return timing.stage
        return None

    # ------------------------------------------------------------------
    # Barnette pipeline

    def _summary(self, stats: ParityStats, choice: int, attempts: int) -> FactorSummary:
        return FactorSummary(
            c=stats.c, q=stats.q, x4=stats.x4, x5=stats.x5, x6=stats.x6,
            f4=stats.f4, f5=stats.f5, f6=stats.f6, choice=choice, attempts=attempts,
        )

    def odd_factor(
        self, embedding: PlanarEmbedding, report: GraphReport, artifacts: PipelineArtifacts
    ) -> Optional[str]:
        """Build a factor with an odd number of cycles into ``artifacts``.

        Returns the special family name when parity had to be left to its
        handler, else None.

        Raises:
            FactorInvalid: No colouring attempt produced a factor
            NotApplicable: c stayed even and no special family applies
        """
        settings = self.config.pipeline
        dual = DualGraph.of(embedding)
        configs = configurations(embedding, dual)
        artifacts.configs = configs

        with self._stage(report, Stage.FACTOR):
            outcome = build_factor(embedding, settings.color_choices, settings.cluster_budget, configs, dual)
        artifacts.coloring, artifacts.factor = outcome.coloring, outcome.factor

        with self._stage(report, Stage.PARITY):
            stats = parity_stats(embedding, outcome.coloring, outcome.factor, strict=True)
            report.factor = self._summary(stats, outcome.choice, outcome.attempts)
            if stats.c_odd:
                artifacts.stats = stats
                return None
            family = special_family(cluster_tags(embedding, configs, dual))
            if family == "double_cap":
                report.special = family
                raise NotApplicable("Two capped clusters: parity left to the exact search")
            try:
                fixed = fix_parity(
                    embedding, outcome.coloring, outcome.factor, settings.cluster_budget, configs, dual
                )
            except NotApplicable:
                if family not in TRUNCATION_FAMILIES:
                    raise
                report.special = family
                return family
            artifacts.coloring, artifacts.factor = fixed.coloring, fixed.factor
            if fixed.op is not None:
                report.parity_op = fixed.op.to_dict()
            stats = parity_stats(embedding, fixed.coloring, fixed.factor, strict=True)
            report.factor = self._summary(stats, outcome.choice, outcome.attempts)
            artifacts.stats = stats
        return None

    def _solve_barnette(
        self, embedding: PlanarEmbedding, report: GraphReport, artifacts: PipelineArtifacts
    ) -> List[int]:
        cap = self.config.oracle.cap
        configs = configurations(embedding)
        capped = direct_check_configs(configs)
        if capped:
            logger.info(
                f"{embedding.name or 'graph'}: {len(capped)} capped cluster(s), checking the graph directly"
            )
            with self._stage(report, Stage.DIRECT_CHECK):
                cycle = brute_hamilton(embedding, cap=cap)
                if cycle is None:
                    raise NotApplicable("Capped cluster graph has no Hamilton cycle")
            report.route = Route.DIRECT_CHECK
            return cycle

        family = self.odd_factor(embedding, report, artifacts)
        if family is not None:
            with self._stage(report, Stage.SPECIAL):
                cycle = solve_by_truncation(embedding, artifacts.configs, cap)
                if cycle is None:
                    raise NotApplicable(f"Special family {family} left unresolved")
            report.route = Route.SPECIAL
            return cycle

        with self._stage(report, Stage.GLUE):
            result = glue_all(embedding, artifacts.factor, self.config.pipeline.glue_budget, self.config.trace)
        artifacts.frames = result.frames
        if self.config.trace:
            report.glue_frames = [frame.to_dict() for frame in result.frames]
        report.route = Route.PIPELINE
        return result.cycle

    # ------------------------------------------------------------------
    # per-graph entry points

    def solve(self, embedding: PlanarEmbedding, index: int = 0) -> Tuple[GraphReport, PipelineArtifacts]:
        """Run the pipeline on one graph; failures are recorded, not raised."""
        report = GraphReport(index=index, name=embedding.name, n=embedding.n_vertices, kind="unknown")
        artifacts = PipelineArtifacts(target=embedding)

        with self._stage(report, Stage.CLASSIFY):
            classification = classify(embedding)
        report.kind = classification.kind.value
        report.violated = classification.violated
        report.census = dict(classification.census)
        if not classification.in_scope:
            report.route = Route.OUT_OF_SCOPE
            logger.info(f"#{index} {embedding.name or ''}: out of scope ({classification.violated})")
            return report, artifacts

        cycle: Optional[List[int]] = None
        try:
            if not classification.is_barnette:
                with self._stage(report, Stage.REDUCE):
                    artifacts.trace = reduce_to_barnette(embedding)
                report.reduction = artifacts.trace.to_dict()
                artifacts.target = artifacts.trace.final

            if artifacts.trace is not None and artifacts.trace.terminal is not None:
                cycle = terminal_cycle(artifacts.trace.terminal, artifacts.target)
                report.route = Route.TERMINAL
            else:
                cycle = self._solve_barnette(artifacts.target, report, artifacts)

            if artifacts.trace is not None:
                with self._stage(report, Stage.LIFT):
                    cycle = lift_cycle(artifacts.trace, cycle)
        except BarnetteError as exc:
            cycle = self._fallback(embedding, report, exc)

        if cycle is not None:
            with self._stage(report, Stage.VERIFY):
                check = verify_hamiltonian(embedding, cycle)
            report.certified = bool(check)
            report.cycle = [v + 1 for v in cycle]
            if not check:
                report.error = f"certificate rejected: {check.reason.value} {check.detail}".strip()

        if report.certified:
            logger.info(
                f"#{index} {embedding.name or ''} n={embedding.n_vertices}: certified via {report.route.value} "
                f"in {report.total_seconds():.3f}s"
            )
        else:
            logger.error(
                f"#{index} {embedding.name or ''} n={embedding.n_vertices}: no certified cycle "
                f"(stage {report.failed_stage.value if report.failed_stage else 'verify'}: {report.error})"
            )
        return report, artifacts

    def _fallback(self, embedding: PlanarEmbedding, report: GraphReport, exc: BarnetteError) -> Optional[List[int]]:
        report.failed_stage = self._failed_stage(report)
        report.error = str(exc)
        stage = report.failed_stage.value if report.failed_stage else "pipeline"
        logger.warning(f"{embedding.name or 'graph'}: stage '{stage}' failed: {exc}")
        settings = self.config.pipeline
        if settings.strict or not settings.fallback:
            report.route = Route.FAILED
            return None
        try:
            with self._stage(report, Stage.FALLBACK):
                cycle = fallback_hamilton(embedding, stage, self.config.oracle.cap)
        except (BarnetteError, ValueError) as fallback_exc:
            report.route = Route.FAILED
            report.error = f"{exc}; fallback: {fallback_exc}"
            return None
        report.route = Route.FALLBACK
        return cycle

    def run_graph(self, embedding: PlanarEmbedding, index: int = 0) -> GraphReport:
        return self.solve(embedding, index)[0]

    def run_oracle(self, embedding: PlanarEmbedding, index: int = 0) -> GraphReport:
        """Exact search only; a graph without a cycle is reported, not raised.

        Small graphs also get their 2-factors counted for cross-checks.
        """
        report = GraphReport(index=index, name=embedding.name, n=embedding.n_vertices, kind="unknown")
        with self._stage(report, Stage.CLASSIFY):
            classification = classify(embedding)
        report.kind = classification.kind.value
        report.violated = classification.violated
        report.census = dict(classification.census)
        try:
            with self._stage(report, Stage.FALLBACK):
                cycle = brute_hamilton(embedding, cap=self.config.oracle.cap)
        except BarnetteError as exc:
            report.route = Route.FAILED
            report.failed_stage = Stage.FALLBACK
            report.error = str(exc)
            return report
        if cycle is None:
            report.route = Route.OUT_OF_SCOPE if not classification.in_scope else Route.FAILED
            report.error = "no Hamilton cycle"
            return report
        report.route = Route.ORACLE
        report.cycle = [v + 1 for v in cycle]
        report.certified = bool(verify_hamiltonian(embedding, cycle))
        if embedding.n_vertices <= self.config.oracle.two_factor_cap:
            report.two_factors = count_2factors(embedding, cap=self.config.oracle.two_factor_cap)
        return report

    def factor_graph(self, embedding: PlanarEmbedding, odd: bool = False) -> dict:
        """Factor and parity counts of a Barnette graph, optionally with c made odd.

        Raises:
            ValueError: The graph is not a Barnette graph
            BarnetteError: Factor construction or parity repair failed
        """
        classification = classify(embedding)
        if not classification.is_barnette:
            raise ValueError(f"{embedding.name or 'graph'} is {classification.kind.value}, not Barnette")
        report = GraphReport(index=0, name=embedding.name, n=embedding.n_vertices, kind=classification.kind.value)
        artifacts = PipelineArtifacts(target=embedding)
        if odd:
            family = self.odd_factor(embedding, report, artifacts)
            if family is not None:
                raise NotApplicable(f"Parity of {embedding.name or 'graph'} needs the {family} handler")
        else:
            settings = self.config.pipeline
            outcome = build_factor(embedding, settings.color_choices, settings.cluster_budget)
            stats = parity_stats(embedding, outcome.coloring, outcome.factor, strict=True)
            report.factor = self._summary(stats, outcome.choice, outcome.attempts)
            artifacts.coloring, artifacts.factor = outcome.coloring, outcome.factor
        return {
            "name": embedding.name,
            "n": embedding.n_vertices,
            "counts": report.factor.model_dump(),
            "parity_op": report.parity_op,
            "grey": sorted(f + 1 for f in artifacts.coloring.grey),
            "cycles": artifacts.factor.as_cycles_1based(),
        }

    def reduce_graph(self, embedding: PlanarEmbedding) -> dict:
        """Reduction trace summary of a graph in the <=6 class."""
        classification = classify(embedding)
        if not classification.in_scope:
            return {"name": embedding.name, "kind": classification.kind.value, "violated": classification.violated}
        trace = reduce_to_barnette(embedding)
        return {"name": embedding.name, "kind": classification.kind.value, **trace.to_dict()}

    @staticmethod
    def verify_cycle(embedding: PlanarEmbedding, cycle_1based: Sequence[int]) -> CycleCheck:
        return verify_hamiltonian(embedding, [v - 1 for v in cycle_1based])

    def render(self, embedding: PlanarEmbedding, overlay: Overlay = Overlay.NONE) -> bytes:
        """SVG of a graph; factor overlays draw the graph the pipeline glued.

        Raises:
            ValueError: The pipeline produced nothing for the overlay to draw
        """
        overlay = Overlay(overlay)
        size = self.config.render.size
        if overlay == Overlay.NONE:
            return render_svg(embedding, overlay, size=size)
        if overlay == Overlay.H_TRACE and not self.config.trace:
            self.config = self.config.model_copy(update={"trace": True})
        _, artifacts = self.solve(embedding)
        if artifacts.factor is None:
            raise ValueError(f"No factor was built for {embedding.name or 'graph'}; nothing to overlay")
        return render_svg(
            artifacts.target,
            overlay,
            coloring=artifacts.coloring,
            factor=artifacts.factor,
            frames=artifacts.frames,
            size=size,
        )

    # ------------------------------------------------------------------
    # streams

    def parse_failure(self, index: int, exc: PlanarCodeError) -> GraphReport:
        logger.error(f"Record #{index} skipped: {exc}")
        return GraphReport(index=index, n=0, kind="parse_error", route=Route.PARSE_ERROR, error=str(exc))

    def run_stream(self, graphs: Iterable[GraphItem]) -> Iterator[GraphReport]:
        """Reports in input order; ``jobs`` > 1 spreads graphs over worker processes."""
        if self.config.jobs <= 1:
            for index, item in enumerate(graphs):
                if isinstance(item, PlanarCodeError):
                    yield self.parse_failure(index, item)
                else:
                    yield self.run_graph(item, index)
            return

        config = self.config.model_dump(mode="json")
        batch: List[Tuple[int, GraphItem]] = []
        with ProcessPoolExecutor(max_workers=self.config.jobs) as pool:
            for index, item in enumerate(graphs):
                batch.append((index, item))
                if len(batch) >= 4 * self.config.jobs:
                    yield from self._run_batch(pool, config, batch)
                    batch = []
            if batch:
                yield from self._run_batch(pool, config, batch)

    def _run_batch(self, pool: ProcessPoolExecutor, config: dict, batch: List[Tuple[int, GraphItem]]):
        payloads = [(config, item, index) for index, item in batch if not isinstance(item, PlanarCodeError)]
        solved = iter(pool.map(_solve_in_worker, payloads))
        for index, item in batch:
            if isinstance(item, PlanarCodeError):
                yield self.parse_failure(index, item)
            else:
                yield next(solved)

    def get_status(self) -> Dict:
        return {
            "config_path": str(self.config_path) if self.config_path else None,
            "strict": self.config.pipeline.strict,
            "fallback": self.config.pipeline.fallback,
            "oracle_cap": self.config.oracle.cap,
            "jobs": self.config.jobs,
        }
