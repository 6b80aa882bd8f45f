from itertools import combinations

import numpy as np
import pytest

from bwlat.errors import InvalidParameter, TooLarge
from bwlat.gf2_codes import (
    AffineSubspace,
    BinaryCode,
    affine_subspaces,
    annihilator,
    bits_from_string,
    bits_to_string,
    code_from_affine_codim2,
    code_properties,
    count_affine_subspaces,
    extended_hamming,
    extended_simplex,
    hamming,
    indecomposable_doubly_even,
    is_admissible_gluing_code,
    is_affine_subspace,
    is_doubly_even,
    is_self_orthogonal,
    meets_hyperplanes_evenly,
    sign_code,
    simplex,
    weight,
)


def test_bit_strings():
    assert bits_from_string("0110") == 6
    assert bits_to_string(6, 4) == "0110"
    with pytest.raises(InvalidParameter):
        bits_from_string("0120")


@pytest.mark.parametrize("r,n,k", [(2, 3, 1), (3, 7, 4), (4, 15, 11)])
def test_hamming_parameters(r, n, k):
    c = hamming(r)
    assert (c.length, c.dimension, c.min_weight()) == (n, k, 3)


@pytest.mark.parametrize("r,n,k", [(2, 4, 1), (3, 8, 4), (4, 16, 11)])
def test_extended_hamming_parameters(r, n, k):
    c = extended_hamming(r)
    assert (c.length, c.dimension, c.min_weight()) == (n, k, 4)
    assert c.contains((1 << n) - 1)


def test_small_r_rejected():
    for build in (hamming, extended_hamming, simplex, extended_simplex):
        with pytest.raises(InvalidParameter):
            build(1)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_simplex_constant_weight(r):
    dist = simplex(r).weight_distribution()
    assert dist == {0: 1, 1 << (r - 1): (1 << r) - 1}


def test_extended_simplex_parameters():
    c = extended_simplex(2)
    assert (c.length, c.dimension, c.min_weight()) == (4, 3, 2)
    c = extended_simplex(4)
    assert (c.length, c.dimension, c.min_weight()) == (16, 5, 8)


def test_simplex_is_annihilator_of_hamming():
    assert annihilator(hamming(3)) == simplex(3)
    assert set(annihilator(hamming(3)).codewords()) == set(simplex(3).codewords())


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_annihilator_dimension(r):
    for c in (hamming(r), extended_hamming(r), simplex(r)):
        assert annihilator(c).dimension + c.dimension == c.length


def test_annihilator_special_cases():
    assert annihilator(BinaryCode.full(5)) == BinaryCode.zero(5)
    assert annihilator(extended_hamming(3)) == extended_hamming(3)


def test_annihilator_is_involutive():
    rng = np.random.default_rng(7)
    for _ in range(20):
        rows = [int(x) for x in rng.integers(0, 1 << 12, size=5)]
        c = BinaryCode.span(12, rows)
        assert annihilator(annihilator(c)) == c


def test_dependent_generators_rejected():
    with pytest.raises(InvalidParameter):
        BinaryCode(4, (0b0011, 0b0101, 0b0110))
    assert BinaryCode.span(4, [0b0011, 0b0101, 0b0110]).dimension == 2


def test_code_properties_extended_hamming():
    props = code_properties(extended_hamming(3))
    assert props.min_weight == 4
    assert props.is_doubly_even
    assert props.is_self_orthogonal
    assert props.is_indecomposable
    assert len(props.decomposition_partition) == 1


def test_code_properties_direct_sum():
    h = extended_hamming(3)
    props = code_properties(h.direct_sum(h))
    assert not props.is_indecomposable
    assert props.decomposition_partition == (frozenset(range(8)), frozenset(range(8, 16)))


def test_code_properties_zero_code():
    props = code_properties(BinaryCode.zero(4))
    assert props.min_weight is None
    assert not props.is_indecomposable


def test_code_properties_too_large():
    with pytest.raises(TooLarge):
        code_properties(BinaryCode.full(30))


@pytest.mark.parametrize("d,k,w", [(2, 4, 1), (3, 7, 2), (4, 11, 4), (5, 16, 8)])
def test_code_from_affine_codim2(d, k, w):
    c = code_from_affine_codim2(d)
    assert (c.length, c.dimension, c.min_weight()) == (1 << d, k, w)


def test_code_from_affine_codim2_rejects_small_d():
    with pytest.raises(InvalidParameter):
        code_from_affine_codim2(1)


def test_sign_code():
    assert sign_code(1) == BinaryCode.full(2)
    assert sign_code(3) == code_from_affine_codim2(3)


def test_indecomposable_doubly_even_base_case():
    assert indecomposable_doubly_even(3) == extended_hamming(3)
    with pytest.raises(InvalidParameter):
        indecomposable_doubly_even(2)


@pytest.mark.parametrize("t", [4, 5])
def test_indecomposable_doubly_even(t):
    c = indecomposable_doubly_even(t)
    assert c.length == 1 << t
    assert all(weight(g) % 4 == 0 for g in c.generators)
    assert all(weight(a & b) % 2 == 0 for a in c.generators for b in c.generators)
    props = code_properties(c)
    assert props.is_doubly_even
    assert props.is_self_orthogonal
    assert props.is_indecomposable
    assert is_admissible_gluing_code(c)


def test_admissibility_fails_for_decomposable_and_odd_codes():
    h = extended_hamming(3)
    assert not is_admissible_gluing_code(h.direct_sum(h))
    assert not is_admissible_gluing_code(hamming(3))
    assert is_self_orthogonal(simplex(3))
    assert is_doubly_even(simplex(3))


def test_affine_subspace_points():
    a = AffineSubspace(3, 0b100, (0b001, 0b010))
    assert sorted(a.points()) == [4, 5, 6, 7]
    assert a.contains(0b111)
    assert not a.contains(0b011)
    assert a.indicator() == 0b11110000
    with pytest.raises(InvalidParameter):
        AffineSubspace(3, 0, (0b011, 0b011))


@pytest.mark.parametrize("d,a", [(3, 0), (3, 1), (3, 2), (4, 2), (4, 3)])
def test_affine_subspace_enumeration_counts(d, a):
    subspaces = list(affine_subspaces(d, a))
    assert len(subspaces) == count_affine_subspaces(d, a)
    assert len({s.indicator() for s in subspaces}) == len(subspaces)


def test_count_affine_subspaces():
    assert count_affine_subspaces(3, 1) == 28
    assert count_affine_subspaces(3, 2) == 14
    assert count_affine_subspaces(3, 4) == 0


def test_is_affine_subspace():
    assert is_affine_subspace([0b000, 0b001, 0b010, 0b011])
    assert not is_affine_subspace([0b000, 0b001, 0b010])
    assert not is_affine_subspace([0b000, 0b001, 0b010, 0b100])
    assert not is_affine_subspace([])


def test_extended_hamming_weight4_supports_are_planes():
    # coordinate c < 7 sits at point c + 1, the parity coordinate at 0
    h = extended_hamming(3)
    planes = 0
    for w in h.codewords():
        if weight(w) == 4:
            points = [(c + 1) % 8 for c in range(8) if (w >> c) & 1]
            assert is_affine_subspace(points)
            planes += 1
    assert planes == 14


@pytest.mark.parametrize("d,size", [(3, 2), (3, 4), (4, 4), (4, 8)])
def test_even_hyperplane_meeting_sets_are_affine(d, size):
    for points in combinations(range(1 << d), size):
        if meets_hyperplanes_evenly(points, d):
            assert is_affine_subspace(points)
