"""Unit tests for TwoFactor.

Tests cover:
1. Construction from cycles and degree validation
2. Resonant hexagons and flips on the hexagonal prism
3. Flip semantics over every 2-factor of a small graph
4. Nesting and gluing-readiness checks
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factor.two_factor import TwoFactor
from oracle.two_factors import enumerate_2factors
from planar.catalog import cube, prism
from planar.exceptions import FactorInvalid
from planar.verify import verify_hamiltonian

HEX_PRISM = prism(6)
HEX_PRISM_FACTORS = list(enumerate_2factors(HEX_PRISM))


def hexagons(emb):
    return [f.id for f in emb.faces() if f.size == 6]


@pytest.fixture
def squares_factor():
    """Three 4-cycles each using one top and one bottom edge."""
    return TwoFactor.from_cycles(HEX_PRISM, [[0, 1, 7, 6], [2, 3, 9, 8], [4, 5, 11, 10]])


def test_from_cycles(squares_factor):
    """Cycles are recovered with their lengths."""
    assert squares_factor.n_cycles == 3
    assert sorted(len(c) for c in squares_factor.cycles) == [4, 4, 4]
    assert not squares_factor.is_hamiltonian()


def test_two_cycle_from_edge():
    """A two-vertex cycle is an isolated edge of multiplicity 2."""
    emb = cube()
    factor = TwoFactor.from_cycles(emb, [[0, 1], [2, 3], [4, 5], [6, 7]])
    assert factor.n_cycles == 4
    assert len(factor.two_cycles) == 4


def test_bad_degree_rejected():
    """A path is not a 2-factor."""
    with pytest.raises(FactorInvalid):
        TwoFactor.from_cycles(HEX_PRISM, [[0, 1, 7, 6]])


def test_both_hexagons_resonant(squares_factor):
    """Top and bottom hexagons alternate through three different cycles."""
    assert squares_factor.resonant == frozenset(hexagons(HEX_PRISM))
    assert squares_factor.resonant_counts() == {0: 2, 1: 2, 2: 2}


def test_flip_merges_three_cycles(squares_factor):
    """Flipping one resonant hexagon yields a Hamilton cycle here."""
    flipped = squares_factor.flip(hexagons(HEX_PRISM)[0])
    assert flipped.is_hamiltonian()
    assert verify_hamiltonian(HEX_PRISM, list(flipped.cycles[0])).ok


def test_flip_rejects_non_resonant():
    """The two hexagon cycles leave no resonant face."""
    top_bottom = TwoFactor.from_cycles(HEX_PRISM, [[0, 1, 2, 3, 4, 5], [6, 7, 8, 9, 10, 11]])
    assert top_bottom.resonant == frozenset()
    with pytest.raises(FactorInvalid):
        top_bottom.flip(hexagons(HEX_PRISM)[0])
    assert not top_bottom.is_nested()
    assert len(top_bottom.property_violations()) == 2


def test_flip_many_matches_single_flip(squares_factor):
    """Flipping a one-element set equals flip."""
    h = hexagons(HEX_PRISM)[1]
    assert squares_factor.flip_many([h]).multiplicity == squares_factor.flip(h).multiplicity
    assert squares_factor.flip_many([]).multiplicity == squares_factor.multiplicity


@settings(max_examples=50, deadline=None)
@given(index=st.integers(min_value=0, max_value=len(HEX_PRISM_FACTORS) - 1))
def test_flip_reduces_cycle_count_by_two(index):
    """Each resonant flip keeps a 2-factor and removes exactly two cycles."""
    factor = HEX_PRISM_FACTORS[index]
    for h in factor.resonant:
        flipped = factor.flip(h)
        assert flipped.n_cycles == factor.n_cycles - 2


def test_one_based_cycles(squares_factor):
    """I/O cycles are 1-based."""
    cycles = squares_factor.as_cycles_1based()
    assert min(min(c) for c in cycles) == 1
    assert max(max(c) for c in cycles) == 12


def test_hamiltonian_factor_has_no_violations(squares_factor):
    """A single cycle is always ready."""
    ham = squares_factor.flip(hexagons(HEX_PRISM)[0])
    assert ham.property_violations() == []
