"""Unit tests for Hamilton cycle certificates."""

import pytest

from planar.catalog import cube
from planar.verify import CycleDefect, verify_hamiltonian


@pytest.fixture
def emb():
    return cube()


def test_valid_cycle(emb):
    """The cube's 8-cycle around the ring is accepted."""
    check = verify_hamiltonian(emb, [0, 1, 2, 3, 7, 6, 5, 4])
    assert check.ok
    assert bool(check)


def test_reversed_and_rotated_cycle(emb):
    """Direction and starting vertex do not matter."""
    assert verify_hamiltonian(emb, [3, 2, 1, 0, 4, 5, 6, 7]).ok
    assert verify_hamiltonian(emb, [7, 6, 5, 4, 0, 1, 2, 3]).ok


@pytest.mark.parametrize(
    "cycle,defect",
    [
        ([0, 1], CycleDefect.TOO_SHORT),
        ([0, 1, 2, 3, 7, 6, 5, 8], CycleDefect.OUT_OF_RANGE),
        ([0, 1, 2, 3, 7, 6, 5, 5], CycleDefect.REPEATED_VERTEX),
        ([0, 1, 2, 3], CycleDefect.NOT_SPANNING),
        ([0, 2, 1, 3, 7, 6, 5, 4], CycleDefect.NON_EDGE),
    ],
)
def test_defects(emb, cycle, defect):
    """Each failure names its reason."""
    check = verify_hamiltonian(emb, cycle)
    assert not check
    assert check.reason == defect
