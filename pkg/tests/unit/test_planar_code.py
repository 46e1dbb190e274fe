"""Unit tests for the planar_code reader and writer.

Tests cover:
1. Encode/decode preserving rotation systems (8-bit and 16-bit records)
2. Streaming decode
3. Header, truncation, range and degree errors with byte offsets
4. Skipping bad records without losing the ones after them
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planar.catalog import CATALOG, build, nanotube
from planar.exceptions import PlanarCodeError
from planar.planar_code import (
    HEADER,
    HEADER_BE,
    decode_planar_code,
    encode_planar_code,
    iter_planar_code,
    iter_planar_records,
    read_planar_code,
)


def test_catalog_round_trip():
    """Every catalog graph decodes to the rotations it was encoded from."""
    graphs = [build(name) for name in CATALOG]
    decoded = decode_planar_code(encode_planar_code(graphs))
    assert [g.rotations() for g in decoded] == [g.rotations() for g in graphs]


@settings(max_examples=20, deadline=None)
@given(m=st.integers(min_value=1, max_value=30))
def test_nanotube_round_trip(m):
    """Nanotubes of any length survive encoding, including 16-bit records."""
    tube = nanotube(m)
    (decoded,) = decode_planar_code(encode_planar_code([tube]))
    assert decoded.rotations() == tube.rotations()
    assert decoded.face_census() == tube.face_census()


def test_large_graph_uses_wide_record():
    """n > 255 switches the record to 16-bit entries."""
    tube = nanotube(25)
    assert tube.n_vertices == 260
    data = encode_planar_code([tube])
    assert data.startswith(HEADER)
    assert data[len(HEADER)] == 0


def test_big_endian_header():
    """A 'be' header reads 16-bit words big-endian."""
    k4_rotations = [[2, 3, 4], [1, 4, 3], [1, 2, 4], [1, 3, 2]]
    body = bytearray([0, 0, 4])
    for rot in k4_rotations:
        for w in rot + [0]:
            body.extend(w.to_bytes(2, "big"))
    (emb,) = decode_planar_code(HEADER_BE + bytes(body))
    assert emb.n_vertices == 4
    assert emb.rotations() == [[w - 1 for w in rot] for rot in k4_rotations]


def test_streaming_decode_yields_in_order():
    """iter_planar_code yields one embedding per record, named by position."""
    data = encode_planar_code([build("K4"), build("cube")])
    names = [g.name for g in iter_planar_code(data)]
    sizes = [g.n_vertices for g in iter_planar_code(data)]
    assert names == ["record_1", "record_2"]
    assert sizes == [4, 8]


def test_read_from_file(tmp_path):
    """read_planar_code streams from disk."""
    path = tmp_path / "graphs.pc"
    path.write_bytes(encode_planar_code([build("dodecahedron")]))
    graphs = list(read_planar_code(path))
    assert len(graphs) == 1
    assert graphs[0].face_census() == {5: 12}


def test_missing_header():
    """Data without the header is rejected at offset 0."""
    with pytest.raises(PlanarCodeError) as excinfo:
        decode_planar_code(b"\x04\x02\x03\x04\x00")
    assert excinfo.value.offset == 0


def test_truncated_record():
    """A record cut short reports the byte offset."""
    data = encode_planar_code([build("K4")])
    with pytest.raises(PlanarCodeError) as excinfo:
        decode_planar_code(data[:-1])
    assert excinfo.value.offset is not None


def test_neighbour_out_of_range():
    """Neighbours above n are rejected."""
    data = HEADER + bytes([4, 2, 3, 9, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])
    with pytest.raises(PlanarCodeError):
        decode_planar_code(data)


def test_non_cubic_record():
    """A triangle is rejected under cubic_only and skipped otherwise."""
    data = HEADER + bytes([3, 2, 3, 0, 1, 3, 0, 1, 2, 0])
    with pytest.raises(PlanarCodeError):
        decode_planar_code(data)
    assert decode_planar_code(data, cubic_only=False) == []


def test_empty_stream():
    """A header alone holds no graphs."""
    assert decode_planar_code(HEADER) == []


def test_bad_records_do_not_hide_later_ones():
    """An out-of-range record and a non-cubic one are reported in place."""
    out_of_range = bytes([4, 2, 3, 9, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])
    triangle = bytes([3, 2, 3, 0, 1, 3, 0, 1, 2, 0])
    k4, cube = encode_planar_code([build("K4")]), encode_planar_code([build("cube")])
    data = k4 + out_of_range + triangle + cube[len(HEADER):]
    items = list(iter_planar_records(data))
    assert len(items) == 4
    assert items[0].n_vertices == 4
    assert isinstance(items[1], PlanarCodeError)
    assert "Record 2" in str(items[1])
    assert isinstance(items[2], PlanarCodeError)
    assert "not cubic" in str(items[2])
    assert items[3].name == "record_4"
    assert items[3].n_vertices == 8


def test_truncated_tail_ends_the_stream():
    data = encode_planar_code([build("K4"), build("cube")])[:-2]
    items = list(iter_planar_records(data))
    assert items[0].n_vertices == 4
    assert isinstance(items[-1], PlanarCodeError)
    assert items[-1].offset is not None
