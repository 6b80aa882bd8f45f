from fractions import Fraction

import pytest

from bwlat.errors import InvalidParameter, NotAnIsometry, NotASublattice, SingularGram
from bwlat.exact_algebra import IntMatrix
from bwlat.gf2_codes import BinaryCode, code_properties, extended_hamming, hamming, simplex
from bwlat.lattice_core import (
    Involution,
    ScaledLattice,
    defect,
    direct_sum,
    discriminant_invariants,
    dual_lattice,
    eigenlattice,
    index,
    intersect,
    is_rssd,
    is_ssd,
    is_sublattice,
    lattice_coordinates,
    lattice_from_code,
    lattice_sum,
    quotient_rank,
    restrict_to_coordinates,
    same_lattice,
    ssd_involution,
)


def z(n):
    return ScaledLattice.standard(n)


def span(rows, e=0):
    return ScaledLattice.from_generators(rows, e)


def test_scaled_lattice_basics():
    l = ScaledLattice(IntMatrix.diagonal([2, 2]), 1)
    assert l.normalized().denom_exp == 0
    assert same_lattice(l, z(2))
    assert z(2).is_integral and not z(2).is_even
    assert z(2).scaled(1).determinant == 16
    assert z(2).scaled(-1).norms() == [Fraction(1, 4), Fraction(1, 4)]


def test_from_rational_rows_needs_power_of_two_denominators():
    half = ScaledLattice.from_rational_rows([[Fraction(1, 2), Fraction(1, 2)], [0, 1]])
    assert half.denom_exp == 1
    assert half.determinant == Fraction(1, 4)
    with pytest.raises(InvalidParameter):
        ScaledLattice.from_rational_rows([[Fraction(1, 3), 0], [0, 1]])


def test_dual_of_unimodular_is_itself():
    e8 = lattice_from_code(1, extended_hamming(3))
    assert e8.is_even
    assert e8.determinant == 1
    assert same_lattice(dual_lattice(e8), e8)


def test_dual_of_scaled_square_lattice():
    dual = dual_lattice(z(2).scaled(1))
    assert same_lattice(dual, ScaledLattice(IntMatrix.identity(2), 1))
    assert dual.gram() == [[Fraction(1, 4), 0], [0, Fraction(1, 4)]]


def test_dual_of_d4(bw):
    d4 = bw(2).lattice
    assert index(d4, dual_lattice(d4)) == 4


def test_dual_of_singular_basis():
    with pytest.raises(SingularGram):
        dual_lattice(ScaledLattice(IntMatrix.from_rows([[1, 1], [2, 2]]), 0))


def test_discriminant_invariants(bw):
    assert discriminant_invariants(bw(3).lattice).invariant_factors == ()
    assert discriminant_invariants(bw(4).lattice).invariant_factors == (2,) * 8
    assert discriminant_invariants(z(2).scaled(1)).invariant_factors == (4, 4)


def test_index_and_sublattice():
    assert index(z(2).scaled(1), z(2)) == 4
    assert is_sublattice(z(2).scaled(1), z(2))
    assert not is_sublattice(z(2), z(2).scaled(1))
    with pytest.raises(NotASublattice):
        index(z(2), z(2).scaled(1))


def test_sum_and_intersection():
    a = span([[2, 0], [0, 1]])
    b = span([[1, 0], [0, 2]])
    assert same_lattice(lattice_sum(a, b), z(2))
    assert same_lattice(intersect(a, b), z(2).scaled(1))


def test_direct_sum_shapes():
    s = direct_sum(z(2), z(1).scaled(1))
    assert (s.rank, s.ambient_dim) == (3, 3)
    assert s.determinant == 4


def test_restrict_to_coordinates():
    d3 = span([[1, 1, 0], [0, 1, 1], [0, 0, 2]])
    d2 = restrict_to_coordinates(d3, [0, 1])
    assert same_lattice(d2, span([[1, 1], [1, -1]]))


def test_lattice_coordinates():
    l = span([[1, 1], [1, -1]])
    coords = lattice_coordinates(l, [[2, 0], [0, 2]])
    back = [[sum(c[i] * l.basis[i, j] for i in range(2)) for j in range(2)] for c in coords]
    assert back == [[2, 0], [0, 2]]
    with pytest.raises(NotASublattice):
        lattice_coordinates(l, [[1, 0]])


def test_quotient_rank():
    l, m = z(2), z(2).scaled(1)
    assert quotient_rank(l, m, [[1, 0], [1, 0]]) == 1
    assert quotient_rank(l, m, [[1, 0], [0, 1]]) == 2
    assert quotient_rank(l, m, [[2, 0]]) == 0


def test_code_lattice_from_extended_hamming_2():
    l = lattice_from_code(1, extended_hamming(2))
    assert l.rank == 4
    assert l.determinant == 4
    assert l.is_even


def coset_weights(l, m):
    """Weights of the cosets of (2^(m/2) Z)^n in l, one entry per coset."""
    q = (1 << (m // 2)) << l.denom_exp
    gens = [tuple(x % q for x in row) for row in l.basis.to_rows()]
    seen = {(0,) * l.ambient_dim}
    frontier = list(seen)
    while frontier:
        found = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % q for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    found.append(w)
        frontier = found
    return sorted(sum(1 for x in v if x) for v in seen)


@pytest.mark.parametrize("m", [0, 2])
@pytest.mark.parametrize("code", [extended_hamming(3), hamming(3), simplex(3)])
def test_code_lattice_coset_weights(code, m):
    weights = coset_weights(lattice_from_code(m, code), m)
    assert len(weights) == 1 << code.dimension
    assert weights == sorted(bin(c).count("1") for c in code.codewords())
    assert min(weights[1:]) >= code_properties(code).min_weight


def test_code_lattice_of_zero_code():
    assert same_lattice(lattice_from_code(0, BinaryCode.zero(3)), z(3))
    with pytest.raises(InvalidParameter):
        lattice_from_code(-1, BinaryCode.zero(3))


def test_eigenlattices_of_minus_identity():
    t = Involution(IntMatrix.diagonal([-1, -1]))
    assert same_lattice(eigenlattice(z(2), t, -1), z(2))
    assert eigenlattice(z(2), t, 1).rank == 0
    assert defect(z(2), t) == 0


def test_eigenlattices_of_swap():
    t = Involution(IntMatrix.from_rows([[0, 1], [1, 0]]))
    assert same_lattice(eigenlattice(z(2), t, 1), span([[1, 1]]))
    assert same_lattice(eigenlattice(z(2), t, -1), span([[1, -1]]))
    assert defect(z(2), t) == 1


def test_diagonal_involution_has_no_defect():
    assert defect(z(4), Involution(IntMatrix.diagonal([1, 1, -1, -1]))) == 0


def test_involution_validation():
    with pytest.raises(NotAnIsometry):
        Involution(IntMatrix.from_rows([[1, 1], [0, 1]]))
    with pytest.raises(InvalidParameter):
        eigenlattice(z(2), Involution(IntMatrix.identity(2)), 0)


def test_even_unimodular_lattice_is_ssd_in_itself():
    e8 = lattice_from_code(1, extended_hamming(3))
    assert is_ssd(e8, e8)


def test_ssd_of_diagonal_line():
    m = ScaledLattice.from_generators([[1, 1]], 0)
    assert is_ssd(m, z(2))
    assert is_rssd(m, z(2))
    assert ssd_involution(m, z(2)).matrix == IntMatrix.from_rows([[0, -1], [-1, 0]])


def test_ssd_of_coordinate_axis():
    m = ScaledLattice.from_generators([[1, 0, 0]], 0)
    assert is_ssd(m, z(3))
    assert ssd_involution(m, z(3)).matrix == IntMatrix.diagonal([-1, 1, 1])


def test_ssd_requires_sublattice():
    with pytest.raises(NotASublattice):
        is_ssd(ScaledLattice.from_rational_rows([[Fraction(1, 2), 0]]), z(2))
