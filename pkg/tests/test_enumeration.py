from fractions import Fraction

import pytest

from bwlat.errors import TooLarge
from bwlat.gf2_codes import extended_hamming
from bwlat.lattice_core import ScaledLattice, direct_sum, lattice_from_code, same_lattice
from bwlat.enumeration import certified_short_vectors, kneser_decompose, minimum_norm


def test_e8_roots():
    e8 = lattice_from_code(1, extended_hamming(3))
    short = certified_short_vectors(e8, 2)
    assert len(short) == 240
    assert set(short.norms) == {Fraction(2)}


def test_d4_roots(bw):
    short = certified_short_vectors(bw(2).lattice, 2)
    assert len(short) == 24
    assert short.minimum == 2


def test_empty_below_minimum():
    assert len(certified_short_vectors(ScaledLattice.standard(2), Fraction(1, 2))) == 0


def test_short_vectors_closed_under_negation(bw):
    short = certified_short_vectors(bw(3).lattice, 2)
    vectors = short.as_set()
    assert all(tuple(-x for x in v) in vectors for v in vectors)
    assert len(vectors) == 240


def test_code_lattice_of_extended_hamming_2_has_24_roots():
    short = certified_short_vectors(lattice_from_code(1, extended_hamming(2)), 2)
    assert short.minimum == 2
    assert len(short.minimal()) == 24


def test_minimum_norm(bw):
    assert minimum_norm(ScaledLattice.standard(3)) == 1
    assert minimum_norm(bw(3).lattice) == 2


@pytest.mark.slow
def test_minimum_norm_bw4(bw):
    assert minimum_norm(bw(4).lattice) == 4


def test_rank_cap(bw):
    with pytest.raises(TooLarge):
        certified_short_vectors(bw(5).lattice, 4)


def test_kneser_square_lattice():
    result = kneser_decompose(ScaledLattice.standard(2))
    assert result.count == 2
    assert [l.rank for l in result.summand_lattices] == [1, 1]


def test_kneser_d4_is_indecomposable(bw):
    result = kneser_decompose(bw(2).lattice)
    assert result.count == 1
    assert same_lattice(result.summand_lattices[0], bw(2).lattice)


def test_kneser_e8_plus_e8(bw):
    e8 = bw(3).lattice
    result = kneser_decompose(direct_sum(e8, e8))
    assert result.count == 2
    assert sorted(l.rank for l in result.summand_lattices) == [8, 8]
