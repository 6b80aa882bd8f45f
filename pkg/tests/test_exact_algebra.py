from fractions import Fraction

import numpy as np
import pytest

from bwlat.errors import SingularMatrix
from bwlat.exact_algebra import (
    IntMatrix,
    determinant,
    gf2_rank,
    hnf_span,
    integer_inverse,
    rank_mod2,
    rational_inverse,
    smith_normal_form,
)
from bwlat.gf2_codes import extended_hamming
from bwlat.lattice_core import ScaledLattice, contains_vectors, lattice_from_code


def test_snf_diagonal():
    assert smith_normal_form(IntMatrix.diagonal([2, 2])).invariant_factors == (2, 2)
    assert smith_normal_form(IntMatrix.diagonal([2, 3])).invariant_factors == (1, 6)


def test_snf_e8_gram_is_unimodular():
    e8 = lattice_from_code(1, extended_hamming(3))
    snf = smith_normal_form(e8.integral_gram())
    assert snf.invariant_factors == (1,) * 8
    assert snf.nontrivial == ()


def test_snf_d4_gram(bw):
    snf = smith_normal_form(bw(2).lattice.integral_gram())
    assert snf.invariant_factors == (1, 1, 2, 2)
    assert snf.order == 4


def test_snf_invariant_under_unimodular_changes():
    rng = np.random.default_rng(0)
    n = 6
    for _ in range(50):
        lower = np.tril(rng.integers(-3, 4, size=(n, n)))
        np.fill_diagonal(lower, rng.integers(1, 5, size=n))
        m = IntMatrix.from_numpy(lower @ np.triu(rng.integers(-2, 3, size=(n, n)), 1) + lower)
        p = np.eye(n, dtype=np.int64) + np.triu(rng.integers(-2, 3, size=(n, n)), 1)
        q = np.eye(n, dtype=np.int64) + np.tril(rng.integers(-2, 3, size=(n, n)), -1)
        moved = IntMatrix.from_numpy(p) @ m @ IntMatrix.from_numpy(q)
        assert smith_normal_form(moved) == smith_normal_form(m)
        assert abs(determinant(moved)) == smith_normal_form(m).order


def test_rank_mod2():
    assert rank_mod2(IntMatrix.identity(4)) == 4
    assert rank_mod2(IntMatrix.from_rows([[2] * 4] * 4)) == 0
    assert gf2_rank([0b11, 0b01, 0b10]) == 2


def test_hnf_span_small_case():
    basis = hnf_span(IntMatrix.from_rows([[2, 0], [0, 2], [1, 1]]))
    assert basis.rows == 2
    assert abs(determinant(basis)) == 2
    l = ScaledLattice(basis, 0)
    assert contains_vectors(l, [[2, 0], [0, 2], [1, 1]])
    assert not contains_vectors(l, [[1, 0]])


def test_hnf_span_empty_and_idempotent():
    assert hnf_span(IntMatrix(0, 3, ())).rows == 0
    x = IntMatrix.from_rows([[4, 2, 0], [1, 3, 5], [0, 2, 2]])
    once = hnf_span(x)
    assert hnf_span(once) == once


def test_rational_inverse():
    inv = rational_inverse(IntMatrix.diagonal([2, 4]))
    assert inv == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]
    assert rational_inverse(IntMatrix.identity(3)) == [[1 if i == j else 0 for j in range(3)] for i in range(3)]


def test_rational_inverse_of_d4_gram(bw):
    g = bw(2).lattice.integral_gram()
    num, den = integer_inverse(g)
    assert 4 % den == 0
    product = (g @ num).to_rows()
    assert product == [[den if i == j else 0 for j in range(4)] for i in range(4)]


def test_rational_inverse_singular():
    with pytest.raises(SingularMatrix):
        rational_inverse(IntMatrix.from_rows([[1, 2], [2, 4]]))
