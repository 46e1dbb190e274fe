"""planar_code reader and writer.

Binary format produced by plantri and buckygen:

    header   ">>planar_code<<"  (or ">>planar_code le<<" / ">>planar_code be<<")
    record   n, then for each vertex 1..n its neighbours in clockwise order,
             1-based, each list terminated by 0

Records with n <= 255 use one byte per entry. A leading 0 byte switches the
record to 16-bit entries (little-endian unless the header says ``be``) with
n stored in the first 16-bit word.

Usage:
    graphs = decode_planar_code(Path("fullerenes_20.pc").read_bytes())
    blob = encode_planar_code(graphs)
"""

import struct
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import EmbeddingError, PlanarCodeError

logger = get_logger(__name__)

HEADER = b">>planar_code<<"
HEADER_LE = b">>planar_code le<<"
HEADER_BE = b">>planar_code be<<"


def _read_header(data: bytes) -> Tuple[int, str]:
    """Return (offset after header, 16-bit byte order)."""
    for header, order in ((HEADER_LE, "<"), (HEADER_BE, ">"), (HEADER, "<")):
        if data.startswith(header):
            return len(header), order
    raise PlanarCodeError("Missing >>planar_code<< header", offset=0)


def iter_records(data: bytes) -> Iterator[Union[List[List[int]], PlanarCodeError]]:
    """Rotation lists per record, 0-based; a bad record is yielded as its error.

    A record with an out-of-range neighbour is still framed by its terminators,
    so decoding goes on after it. A truncated record ends the stream.
    """
    pos, order = _read_header(data)
    size = len(data)
    index = 0
    while pos < size:
        index += 1
        record_start = pos
        n = data[pos]
        pos += 1
        wide = n == 0
        if wide:
            if pos + 2 > size:
                yield PlanarCodeError(f"Record {index}: truncated 16-bit vertex count", offset=pos)
                return
            (n,) = struct.unpack_from(order + "H", data, pos)
            pos += 2
        rotations: List[List[int]] = []
        bad: Optional[PlanarCodeError] = None
        for v in range(n):
            neighbours: List[int] = []
            while True:
                if pos + (2 if wide else 1) > size:
                    yield PlanarCodeError(f"Record {index}: truncated at vertex {v + 1}", offset=pos)
                    return
                if wide:
                    (w,) = struct.unpack_from(order + "H", data, pos)
                    pos += 2
                else:
                    w = data[pos]
                    pos += 1
                if w == 0:
                    break
                if w > n and bad is None:
                    bad = PlanarCodeError(
                        f"Record {index}: neighbour {w} of vertex {v + 1} out of range 1..{n}", offset=pos
                    )
                neighbours.append(w - 1)
            rotations.append(neighbours)
        logger.debug(f"Decoded record {index} with {n} vertices at byte {record_start}")
        yield bad if bad is not None else rotations


def decode_planar_code(data: bytes, cubic_only: bool = True) -> List[PlanarEmbedding]:
    """Decode every graph in a planar_code byte stream.

    Args:
        data: Raw bytes including the header
        cubic_only: Raise on non-cubic records instead of skipping them

    Returns:
        One embedding per encoded cubic graph, rotations stored as given

    Raises:
        PlanarCodeError: Truncated stream, bad header, out-of-range neighbour,
            or a non-cubic record while ``cubic_only`` is set
    """
    return list(iter_planar_code(data, cubic_only=cubic_only))


def iter_planar_records(
    data: bytes, cubic_only: bool = True
) -> Iterator[Union[PlanarEmbedding, PlanarCodeError]]:
    """Embeddings in stream order, with each record that fails yielded as its error.

    Raises:
        PlanarCodeError: The header is missing
    """
    for index, item in enumerate(iter_records(data), start=1):
        if isinstance(item, PlanarCodeError):
            logger.warning(f"Skipping record {index}: {item}")
            yield item
            continue
        degrees = {len(r) for r in item}
        if degrees - {3}:
            if cubic_only:
                yield PlanarCodeError(f"Record {index} is not cubic (degrees {sorted(degrees)})")
            else:
                logger.warning(f"Skipping non-cubic record {index}")
            continue
        try:
            yield PlanarEmbedding(item, name=f"record_{index}")
        except EmbeddingError as e:
            yield PlanarCodeError(f"Record {index}: {e}")


def iter_planar_code(data: bytes, cubic_only: bool = True) -> Iterator[PlanarEmbedding]:
    """Streaming variant of :func:`decode_planar_code`."""
    for item in iter_planar_records(data, cubic_only=cubic_only):
        if isinstance(item, PlanarCodeError):
            raise item
        yield item


def read_planar_code(path: Union[str, Path], cubic_only: bool = True) -> Iterator[PlanarEmbedding]:
    """Stream embeddings from a planar_code file."""
    path = Path(path)
    logger.info(f"Reading planar_code from {path}")
    yield from iter_planar_code(path.read_bytes(), cubic_only=cubic_only)


def encode_planar_code(graphs: Sequence[PlanarEmbedding]) -> bytes:
    """Encode embeddings as a little-endian planar_code stream."""
    out = bytearray(HEADER)
    for graph in graphs:
        n = graph.n_vertices
        if n <= 255:
            out.append(n)
            for v in range(n):
                out.extend(w + 1 for w in graph.rotation(v))
                out.append(0)
        else:
            out.append(0)
            out.extend(struct.pack("<H", n))
            for v in range(n):
                for w in graph.rotation(v):
                    out.extend(struct.pack("<H", w + 1))
                out.extend(struct.pack("<H", 0))
    return bytes(out)
