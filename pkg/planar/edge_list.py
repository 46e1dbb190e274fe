"""Plain-text rotation format.

First non-comment line holds n; each following line is ``v: w1 w2 w3`` with
1-based vertices listed in rotation order. Blank lines separate records and
``#`` starts a comment.
"""

from pathlib import Path
from typing import Iterator, List, Sequence, Union

from logging_system import get_logger
from planar.embedding import PlanarEmbedding
from planar.exceptions import EmbeddingError, PlanarCodeError

logger = get_logger(__name__)


def _records(text: str) -> Iterator[List[str]]:
    block: List[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        block.append(line)
    if block:
        yield block


def _parse_record(index: int, lines: List[str]) -> PlanarEmbedding:
    try:
        n = int(lines[0])
    except ValueError:
        raise PlanarCodeError(f"Record {index + 1}: expected vertex count, got {lines[0]!r}")
    rotations: List[List[int]] = [[] for _ in range(n)]
    for line in lines[1:]:
        head, _, tail = line.partition(":")
        try:
            v = int(head)
            neighbours = [int(tok) for tok in tail.split()]
        except ValueError:
            raise PlanarCodeError(f"Record {index + 1}: bad line {line!r}")
        if not 1 <= v <= n or any(not 1 <= w <= n for w in neighbours):
            raise PlanarCodeError(f"Record {index + 1}: vertex out of range in {line!r}")
        rotations[v - 1] = [w - 1 for w in neighbours]
    try:
        return PlanarEmbedding(rotations, name=f"record_{index + 1}")
    except EmbeddingError as e:
        raise PlanarCodeError(f"Record {index + 1}: {e}") from e


def iter_edge_list(text: str) -> Iterator[Union[PlanarEmbedding, PlanarCodeError]]:
    """Records one at a time; a malformed record is yielded as its error so later ones still arrive."""
    for index, lines in enumerate(_records(text)):
        try:
            yield _parse_record(index, lines)
        except PlanarCodeError as e:
            yield e


def parse_edge_list(text: str) -> List[PlanarEmbedding]:
    """Parse every record of an edge-list document.

    Raises:
        PlanarCodeError: Malformed header or vertex line
    """
    graphs = []
    for item in iter_edge_list(text):
        if isinstance(item, PlanarCodeError):
            raise item
        graphs.append(item)
    logger.debug(f"Parsed {len(graphs)} edge-list records")
    return graphs


def read_edge_list(path: Union[str, Path]) -> List[PlanarEmbedding]:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(graphs: Sequence[PlanarEmbedding]) -> str:
    blocks = []
    for graph in graphs:
        lines = [str(graph.n_vertices)]
        for v in range(graph.n_vertices):
            lines.append(f"{v + 1}: " + " ".join(str(w + 1) for w in graph.rotation(v)))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
