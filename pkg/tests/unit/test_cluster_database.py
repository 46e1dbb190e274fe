"""Unit tests for ClusterDatabase persistence and deduplication."""

import json

import pytest

from clusters.database import ClusterDatabase, load_database, record_from_line, record_to_line, save_database, save_graphs
from clusters.patch import ClusterRecord, Patch
from planar.catalog import cube, dodecahedron
from planar.planar_code import HEADER, decode_planar_code


def pentagon_records():
    base = Patch.single_face(5)
    return [
        ClusterRecord.from_patch(base),
        ClusterRecord.from_patch(base.add_face(0, 1, 6)),
        ClusterRecord.from_patch(base.add_face(2, 1, 6)),
    ]


def test_add_deduplicates_by_canonical_key():
    """Isomorphic patches are stored once."""
    db = ClusterDatabase(f4=0, f5=1)
    added = [db.add(r) for r in pentagon_records()]
    assert added == [True, True, False]
    assert len(db) == 2


def test_add_rejects_records_without_patch():
    """Records cut from a whole graph have no key."""
    db = ClusterDatabase(f4=0, f5=12)
    assert not db.add(ClusterRecord(frozenset(), 0, 12, 12, 0))


def test_counts_skip_capped_records():
    """Records with mu > 6 and delta <= mu do not count."""
    db = ClusterDatabase(f4=0, f5=1)
    first, second, _ = pentagon_records()
    second.mu, second.delta = 8, 5
    db.add(first)
    db.add(second)
    assert db.counts() == {(0, 1): 1}
    assert db.count == 1
    assert db.summary()["clusters"] == 1


def test_add_graph_deduplicates_isomorphic_graphs():
    """A relabelled copy is recognised."""
    db = ClusterDatabase(f4=0, f5=12)
    emb = dodecahedron()
    assert db.add_graph(emb)
    assert not db.add_graph(emb.relabel(list(reversed(range(20)))))
    assert db.add_graph(cube())
    assert len(db.graphs) == 2


def test_save_and_load(tmp_path):
    """Saved clusters load back with the same keys."""
    db = ClusterDatabase(f4=0, f5=1)
    for record in pentagon_records():
        db.add(record)
    path = save_database(db, tmp_path / "db" / "c01.jsonl")
    loaded = load_database(path)
    assert (loaded.f4, loaded.f5) == (0, 1)
    assert set(loaded.records) == set(db.records)


def test_line_format():
    """One JSON object per record, carrying the canonical code."""
    record = pentagon_records()[0]
    payload = json.loads(record_to_line(record))
    assert payload["mu"] == 1 and payload["delta"] == 5
    assert tuple(payload["code"]) == record.canonical_key
    assert record_from_line(record_to_line(record)).canonical_key == record.canonical_key


def test_tampered_code_rejected():
    """A code that does not match the patch is an error."""
    payload = json.loads(record_to_line(pentagon_records()[0]))
    payload["code"] = [0]
    with pytest.raises(ValueError):
        record_from_line(json.dumps(payload))
    with pytest.raises(ValueError):
        record_from_line("{not json")


def test_load_errors(tmp_path):
    """Missing files and bad lines are reported with their location."""
    with pytest.raises(FileNotFoundError):
        load_database(tmp_path / "missing.jsonl")
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"f4": 0}\n')
    with pytest.raises(ValueError, match="bad.jsonl:1"):
        load_database(bad)


def test_save_graphs(tmp_path):
    """Completed graphs are written as planar_code."""
    db = ClusterDatabase(f4=0, f5=12)
    db.add_graph(dodecahedron())
    path = save_graphs(db, tmp_path / "graphs.pc")
    data = path.read_bytes()
    assert data.startswith(HEADER)
    assert decode_planar_code(data)[0].n_vertices == 20
