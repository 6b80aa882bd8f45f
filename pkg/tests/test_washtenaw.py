from fractions import Fraction

import pytest

from bwlat.barnes_wall import Fourvolution
from bwlat import washtenaw
from bwlat.errors import CodeNotAdmissible, InvalidParameter, NoDualityLevel, NotNormalized, ResourceCap
from bwlat.exact_algebra import IntMatrix
from bwlat.gf2_codes import extended_hamming, hamming, indecomposable_doubly_even
from bwlat.lattice_core import ScaledLattice, direct_sum, discriminant_invariants, log2_index
from bwlat.washtenaw import (
    ACCEPTED_MICHIGAN,
    CHECKED_TWO_SPECIAL,
    INHERITED_TWO_SPECIAL,
    TwoSpecialLattice,
    is_two_special,
    minimal_washtenawization,
    two_special_claim,
    washtenaw_data,
    washtenaw_series,
    washtenawize,
)


def rotation_p(n):
    return Fourvolution.standard(n).one_minus()


@pytest.mark.parametrize("d", [2, 3, 4])
def test_bw_is_two_special(bw, d):
    assert is_two_special(bw(d).lattice, rotation_p(bw(d).rank)) == (d + 1) % 2


def test_square_lattice_is_two_special():
    z2 = ScaledLattice.standard(2)
    assert is_two_special(z2, rotation_p(2)) == 0
    assert is_two_special(z2, IntMatrix.diagonal([2, 2])) is None
    assert is_two_special(z2, IntMatrix.identity(3)) is None


def test_plain_two_special_lattice():
    w = TwoSpecialLattice(ScaledLattice.standard(2), rotation_p(2), 0)
    assert w.pairwise
    assert w.minimum == 1
    assert w.twist(2).determinant == 16
    assert w.smv(0).rank == 2


def test_bw_history(bw):
    w = TwoSpecialLattice.from_bw(bw(3))
    assert ACCEPTED_MICHIGAN in w.provenance
    assert w.minimum == 2
    assert w.expected_ratio == 1


@pytest.mark.parametrize("d,mvd", [(3, 4), (4, 8)])
def test_washtenaw_data_of_bw(bw, d, mvd):
    data = washtenaw_data(TwoSpecialLattice.from_bw(bw(d)))
    assert data.mvd == mvd
    assert data.washtenaw_ratio == 1


def test_minimal_washtenawization_of_bw3(washtenaw_bw3):
    w = washtenaw_bw3
    assert w.rank == 64
    assert w.copies == 8
    assert w.duality_level == 1
    assert w.lattice.is_even
    assert w.lattice.determinant == 1 << 32
    assert w.minimum == 4
    assert w.expected_ratio == Fraction(1, 2)


def test_washtenawization_index(washtenaw_bw3):
    m = washtenaw_bw3.base
    glued = direct_sum(*([m.twist(1)] * 8))
    assert log2_index(glued, washtenaw_bw3.lattice) == 16


def test_washtenawization_ratio_halves(washtenaw_bw3):
    data = washtenaw_data(washtenaw_bw3)
    assert data.washtenaw_ratio == Fraction(1, 2)
    assert data.mvd == 16


def test_minimal_vectors_of_washtenawization(washtenaw_bw3):
    rows, e = washtenaw_bw3.minimal_vectors(0)
    assert len(rows) == 8 * 240
    assert all(int(r.dot(r)) == 4 << (2 * e) for r in rows[:50])


def test_minimal_washtenawization_of_bw2(bw):
    w = minimal_washtenawization(TwoSpecialLattice.from_bw(bw(2)))
    assert w.rank == 32
    assert w.duality_level == 0
    assert w.lattice.determinant == 1
    assert discriminant_invariants(w.lattice).invariant_factors == ()


@pytest.mark.slow
def test_degree_four_washtenawization_of_bw2(bw):
    w = washtenawize(TwoSpecialLattice.from_bw(bw(2)), indecomposable_doubly_even(4))
    assert w.rank == 64
    assert w.copies == 16
    assert w.duality_level == 0
    assert w.lattice.is_even


def test_washtenawize_rejects_bad_input(bw):
    m = TwoSpecialLattice.from_bw(bw(2))
    with pytest.raises(CodeNotAdmissible):
        washtenawize(m, hamming(3))
    with pytest.raises(CodeNotAdmissible):
        washtenawize(m, extended_hamming(3).direct_sum(extended_hamming(3)))
    unnormalized = TwoSpecialLattice(ScaledLattice.standard(2), rotation_p(2), 2)
    with pytest.raises(NotNormalized):
        washtenawize(unnormalized, extended_hamming(3))


def test_series_arguments():
    with pytest.raises(InvalidParameter):
        washtenaw_series(0, 8)
    with pytest.raises(InvalidParameter):
        washtenaw_series(1, 7)
    with pytest.raises(ResourceCap):
        washtenaw_series(1, 9)


def test_series_desk_scale_analogue():
    w = washtenaw_series(1, 6, allow_below_bound=True)
    assert w.rank == 64
    assert w.duality_level == 1
    assert w.expected_ratio == Fraction(1, 2)
    assert any("desk-scale analogue" in p for p in w.provenance)


@pytest.mark.slow
def test_series_first_member():
    w = washtenaw_series(1, 8)
    assert w.rank == 256
    assert w.duality_level == 1
    assert w.expected_ratio == Fraction(1, 2)
    assert w.lattice.is_even


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_bw_history_records_checked_two_special(bw, d):
    assert TwoSpecialLattice.from_bw(bw(d)).provenance[0] == CHECKED_TWO_SPECIAL


def test_two_special_claim_rejects_wrong_level():
    z2 = ScaledLattice.standard(2)
    assert two_special_claim(z2, rotation_p(2), 0) == CHECKED_TWO_SPECIAL
    with pytest.raises(NoDualityLevel):
        two_special_claim(z2, rotation_p(2), 1)
    with pytest.raises(NoDualityLevel):
        two_special_claim(z2, IntMatrix.diagonal([2, 2]), 0)


def test_two_special_claim_above_check_rank(bw, monkeypatch):
    monkeypatch.setattr(washtenaw, "MAX_TWO_SPECIAL_CHECK_RANK", 4)
    assert TwoSpecialLattice.from_bw(bw(2)).provenance[0] == CHECKED_TWO_SPECIAL
    assert TwoSpecialLattice.from_bw(bw(3)).provenance[0] == INHERITED_TWO_SPECIAL


def test_washtenawization_rechecks_two_special(washtenaw_bw3):
    p = washtenaw_bw3.provenance
    assert p.count(CHECKED_TWO_SPECIAL) == 1
    assert INHERITED_TWO_SPECIAL not in p
    assert p[-1] == "Washtenawization of degree 3"
