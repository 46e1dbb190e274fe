"""Unit tests for HamiltonOrchestrator.

Tests cover:
1. Config loading, environment substitution and validation
2. Routing of catalog graphs (terminal, direct check, out of scope)
3. Failure attribution and the exact-search fallback
4. Parse errors and ordered parallel streams
5. The factor, reduce and verify entry points
"""

import json

import pytest

from pipeline.hamilton_orchestrator import HamiltonOrchestrator, read_graphs
from pipeline.models import InputFormat, Route, Stage
from planar.catalog import build, cube, dodecahedron, k4, nanotube, truncated_octahedron, tutte
from planar.edge_list import format_edge_list
from planar.exceptions import FactorInvalid, PlanarCodeError
from planar.planar_code import encode_planar_code


@pytest.fixture
def test_config():
    """Full config with defaults, as a dict."""
    return {
        "oracle": {"cap": 64, "two_factor_cap": 28},
        "pipeline": {
            "strict": False,
            "fallback": True,
            "color_choices": [0, 1, 2],
            "cluster_budget": 20000,
            "glue_budget": 200000,
        },
        "clusters": {"node_budget": 10000000, "check_budget": 4000},
        "bench": {"n_min": 20, "n_max": 60, "step": 10, "repeats": 1},
        "render": {"size": 400},
        "seed": 0,
        "jobs": 1,
    }


@pytest.fixture
def test_config_path(tmp_path, test_config):
    """Write the config to a temporary file."""
    config_file = tmp_path / "test_config.json"
    config_file.write_text(json.dumps(test_config))
    return str(config_file)


@pytest.fixture
def orchestrator():
    return HamiltonOrchestrator()


# ===================================================================
# Config


def test_defaults_without_config_file(orchestrator):
    """No file means built-in defaults."""
    assert orchestrator.config.oracle.cap == 64
    assert orchestrator.config.pipeline.fallback
    assert orchestrator.get_status()["config_path"] is None


def test_config_loading(test_config_path):
    """Values come from the file."""
    orch = HamiltonOrchestrator(test_config_path)
    assert orch.config.render.size == 400
    assert orch.config.bench.n_max == 60
    assert orch.get_status()["config_path"] == test_config_path


def test_overrides_beat_file(test_config_path):
    """CLI overrides win; None values leave the file alone."""
    orch = HamiltonOrchestrator(test_config_path, {"pipeline": {"strict": True, "glue_budget": None}, "jobs": 3})
    assert orch.config.pipeline.strict
    assert orch.config.pipeline.glue_budget == 200000
    assert orch.config.jobs == 3


def test_env_var_substitution(tmp_path, test_config, monkeypatch):
    """${VAR} placeholders are filled from the environment."""
    monkeypatch.setenv("BARNETTE_TEST_SEED", "7")
    test_config["seed"] = "${BARNETTE_TEST_SEED}"
    path = tmp_path / "env.json"
    path.write_text(json.dumps(test_config))
    assert HamiltonOrchestrator(path).config.seed == 7


def test_missing_section(tmp_path, test_config):
    """Every required section must be present."""
    del test_config["bench"]
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(test_config))
    with pytest.raises(ValueError, match="bench"):
        HamiltonOrchestrator(path)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        HamiltonOrchestrator(tmp_path / "nope.json")


# ===================================================================
# Routing


def test_k4_reduces_to_terminal(orchestrator):
    """K4 is a terminal graph of the reduction."""
    report = orchestrator.run_graph(k4())
    assert report.route == Route.TERMINAL
    assert report.certified
    assert sorted(report.cycle) == [1, 2, 3, 4]


def test_truncated_vertex_lifts(orchestrator):
    """A triangle is contracted, solved and lifted back."""
    emb = build("truncated_dodecahedron_vertex")
    report = orchestrator.run_graph(emb)
    assert report.certified
    assert report.reduction is not None
    assert len(report.cycle) == emb.n_vertices
    assert any(t.stage == Stage.LIFT for t in report.timings)


def test_dodecahedron_direct_check(orchestrator):
    """Twelve pentagons form one capped cluster, checked directly."""
    report = orchestrator.run_graph(dodecahedron())
    assert report.route == Route.DIRECT_CHECK
    assert report.certified
    assert report.kind == "fullerene"


def test_tutte_out_of_scope(orchestrator):
    """An 11-face is outside both graph classes."""
    report = orchestrator.run_graph(tutte())
    assert report.route == Route.OUT_OF_SCOPE
    assert report.violated == "face_size"
    assert report.acceptable
    assert not report.certified
    assert report.cycle is None


def _failing_factor(*args, **kwargs):
    raise FactorInvalid("forced")


@pytest.fixture
def broken_factor(monkeypatch):
    """Make every factor attempt fail."""
    monkeypatch.setattr("pipeline.hamilton_orchestrator.direct_check_configs", lambda configs: [])
    monkeypatch.setattr("pipeline.hamilton_orchestrator.build_factor", _failing_factor)


def test_strict_failure_names_stage(broken_factor):
    """Strict runs report the failing stage and give up."""
    orch = HamiltonOrchestrator(overrides={"pipeline": {"strict": True}})
    report = orch.run_graph(nanotube(5))
    assert report.route == Route.FAILED
    assert report.failed_stage == Stage.FACTOR
    assert "forced" in report.error
    assert not report.certified
    assert not report.acceptable


def test_fallback_after_failure(broken_factor, orchestrator):
    """Non-strict runs fall back to exact search and still certify."""
    report = orchestrator.run_graph(nanotube(5))
    assert report.route == Route.FALLBACK
    assert report.failed_stage == Stage.FACTOR
    assert report.certified
    assert len(report.cycle) == 60


def test_fallback_disabled(broken_factor):
    orch = HamiltonOrchestrator(overrides={"pipeline": {"fallback": False}})
    assert orch.run_graph(nanotube(5)).route == Route.FAILED


# ===================================================================
# Streams


def test_parse_error_in_stream(orchestrator):
    """A bad record becomes a parse_error report and the rest still run."""
    items = [k4(), PlanarCodeError("truncated record", 12), cube()]
    reports = list(orchestrator.run_stream(items))
    assert [r.index for r in reports] == [0, 1, 2]
    assert reports[1].route == Route.PARSE_ERROR
    assert "at byte 12" in reports[1].error
    assert all(r.acceptable for r in reports)


def test_parallel_stream_keeps_order():
    """Worker processes do not reorder the reports."""
    orch = HamiltonOrchestrator(overrides={"jobs": 2})
    items = [k4(), cube(), PlanarCodeError("bad"), tutte(), dodecahedron()]
    reports = list(orch.run_stream(items))
    assert [r.index for r in reports] == [0, 1, 2, 3, 4]
    assert [r.name for r in reports] == ["K4", "cube", None, "tutte", "dodecahedron"]
    assert reports[2].route == Route.PARSE_ERROR


def test_read_graphs_edge_list(tmp_path):
    path = tmp_path / "graphs.txt"
    path.write_text(format_edge_list([k4(), cube()]))
    graphs = list(read_graphs(path, InputFormat.EDGE_LIST))
    assert [g.n_vertices for g in graphs] == [4, 8]


def test_read_graphs_stops_at_bad_planar_code(tmp_path):
    """A planar_code stream ends at its first broken record."""
    path = tmp_path / "graphs.pc"
    data = encode_planar_code([k4(), cube()])
    path.write_bytes(data[:-3])
    items = list(read_graphs(path))
    assert items[0].n_vertices == 4
    assert isinstance(items[-1], PlanarCodeError)


# ===================================================================
# Other entry points


def test_factor_graph_counts(orchestrator):
    """The truncated octahedron factors on the first attempt."""
    payload = orchestrator.factor_graph(truncated_octahedron())
    counts = payload["counts"]
    assert counts["attempts"] == 1
    assert counts["c"] in (4, 6)
    assert len(payload["cycles"]) == counts["c"]
    assert all(min(cycle) >= 1 for cycle in payload["cycles"])


def test_factor_graph_rejects_non_barnette(orchestrator):
    with pytest.raises(ValueError, match="not Barnette"):
        orchestrator.factor_graph(k4())


def test_reduce_graph(orchestrator):
    assert orchestrator.reduce_graph(tutte())["violated"] == "face_size"
    summary = orchestrator.reduce_graph(k4())
    assert summary["name"] == "K4"


def test_verify_cycle(orchestrator):
    assert orchestrator.verify_cycle(cube(), [1, 2, 3, 4, 8, 7, 6, 5]).ok
    assert not orchestrator.verify_cycle(cube(), [1, 2, 3, 4, 5, 6, 7, 8]).ok


def test_render_plain(orchestrator):
    svg = orchestrator.render(cube())
    assert svg.startswith(b"<svg")
    assert svg.count(b'class="vertex"') == 8


def test_run_oracle_counts_small_factors(orchestrator):
    """Graphs under the 2-factor cap get factor counts next to the cycle."""
    report = orchestrator.run_oracle(k4())
    assert report.route == Route.ORACLE
    assert report.certified
    assert report.two_factors == {"total": 6, "perfect_matchings": 3, "hamiltonian": 3}
    big = orchestrator.run_oracle(nanotube(2))
    assert big.certified
    assert big.two_factors is None
