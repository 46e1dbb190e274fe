"""
Pipeline Data Models

Pydantic models for run configuration and per-graph reports.
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

SCHEMA_VERSION = 1


class InputFormat(str, Enum):
    """Graph input format."""
    PLANAR_CODE = "planar_code"
    EDGE_LIST = "edge_list"


class OutputFormat(str, Enum):
    """Report output format."""
    JSON = "json"
    TEXT = "text"
    SVG = "svg"


class Overlay(str, Enum):
    """What a rendering draws over the graph."""
    NONE = "none"
    COLORING = "coloring"
    FACTOR = "factor"
    H_TRACE = "h_trace"


class Stage(str, Enum):
    """Pipeline stage, used for timings and failure attribution."""
    CLASSIFY = "classify"
    REDUCE = "reduce"
    DIRECT_CHECK = "direct_check"
    FACTOR = "factor"
    PARITY = "parity"
    SPECIAL = "special"
    GLUE = "glue"
    LIFT = "lift"
    VERIFY = "verify"
    FALLBACK = "fallback"


class Route(str, Enum):
    """How the cycle of a graph was obtained."""
    PIPELINE = "pipeline"
    TERMINAL = "terminal"
    DIRECT_CHECK = "direct_check"
    SPECIAL = "special"
    FALLBACK = "fallback"
    ORACLE = "oracle"
    PARSE_ERROR = "parse_error"
    OUT_OF_SCOPE = "out_of_scope"
    FAILED = "failed"


class OracleSettings(BaseModel):
    """Exact search limits."""
    cap: int = Field(64, ge=4)
    two_factor_cap: int = Field(28, ge=4)


class PipelineSettings(BaseModel):
    """Pipeline behaviour."""
    strict: bool = False
    fallback: bool = True
    color_choices: List[int] = Field(default_factory=lambda: [0, 1, 2])
    cluster_budget: int = Field(20000, ge=1)
    glue_budget: int = Field(200000, ge=1)


class ClusterSettings(BaseModel):
    """Cluster generation and checking budgets."""
    node_budget: int = Field(10_000_000, ge=1)
    check_budget: int = Field(4000, ge=1)


class BenchSettings(BaseModel):
    """Nanotube benchmark sweep."""
    n_min: int = Field(40, ge=20)
    n_max: int = Field(400, ge=20)
    step: int = Field(20, ge=10)
    repeats: int = Field(3, ge=1)


class RenderSettings(BaseModel):
    """SVG canvas."""
    size: int = Field(600, ge=100)


class RunConfig(BaseModel):
    """Everything a run needs besides its input."""
    oracle: OracleSettings = Field(default_factory=OracleSettings)
    pipeline: PipelineSettings = Field(default_factory=PipelineSettings)
    clusters: ClusterSettings = Field(default_factory=ClusterSettings)
    bench: BenchSettings = Field(default_factory=BenchSettings)
    render: RenderSettings = Field(default_factory=RenderSettings)
    input_format: InputFormat = InputFormat.PLANAR_CODE
    output: OutputFormat = OutputFormat.JSON
    seed: int = 0
    jobs: int = Field(1, ge=1)
    trace: bool = False


class StageTiming(BaseModel):
    """Wall time of one stage."""
    stage: Stage
    seconds: float
    ok: bool = True
    error: Optional[str] = None


class FactorSummary(BaseModel):
    """Counts of the factor the pipeline glued."""
    c: int
    q: int
    x4: int
    x5: int
    x6: int
    f4: int
    f5: int
    f6: int
    choice: int
    attempts: int


class GraphReport(BaseModel):
    """Outcome for one input graph."""
    schema_version: int = SCHEMA_VERSION
    index: int
    name: Optional[str] = None
    n: int
    kind: str
    violated: Optional[str] = None
    census: Dict[int, int] = Field(default_factory=dict)
    reduction: Optional[dict] = None
    factor: Optional[FactorSummary] = None
    parity_op: Optional[dict] = None
    special: Optional[str] = None
    route: Route = Route.FAILED
    cycle: Optional[List[int]] = None
    certified: bool = False
    failed_stage: Optional[Stage] = None
    error: Optional[str] = None
    glue_frames: Optional[List[dict]] = None
    two_factors: Optional[Dict[str, int]] = None
    timings: List[StageTiming] = Field(default_factory=list)

    @property
    def acceptable(self) -> bool:
        """Certified, explicitly out of scope, or a skipped unparsable record."""
        return self.certified or self.route in (Route.OUT_OF_SCOPE, Route.PARSE_ERROR)

    def total_seconds(self) -> float:
        return sum(t.seconds for t in self.timings)

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)

    def to_text(self) -> str:
        status = "certified" if self.certified else self.route.value
        parts = [f"#{self.index} {self.name or ''} n={self.n} {self.kind}: {status} via {self.route.value}"]
        if self.factor is not None:
            parts.append(f"c={self.factor.c} q={self.factor.q}")
        if self.parity_op:
            parts.append(f"parity={self.parity_op.get('kind')}")
        if self.failed_stage is not None:
            parts.append(f"failed_stage={self.failed_stage.value}")
        parts.append(f"{self.total_seconds():.3f}s")
        return " ".join(parts)


class BenchRow(BaseModel):
    """One timed pipeline run of the benchmark."""
    n: int
    repeat: int
    seconds: float
    route: Route
    certified: bool
    stage_seconds: Dict[str, float] = Field(default_factory=dict)
