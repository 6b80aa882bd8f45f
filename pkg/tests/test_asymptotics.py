from fractions import Fraction

import pytest

from bwlat.asymptotics import (
    arbitrary_dimension_coefficient,
    bernoulli,
    bernoulli_classical,
    dtl_mass,
    dtl_minkowski,
    dtl_stabilizer,
    dtl_upsilon_lower,
    mass,
    mass_table,
    minimal_j_for_coefficient,
    minkowski_bound,
    minkowski_exponent,
    omega_plus_order,
    render_decimal,
    render_table,
    upsilon,
    upsilon_table,
)
from bwlat.errors import InvalidDimension, InvalidParameter, OutOfRange


def test_bernoulli_convention():
    assert [bernoulli(j) for j in (1, 2, 3)] == [Fraction(1, 6), Fraction(1, 30), Fraction(1, 42)]
    assert bernoulli_classical(4) == Fraction(-1, 30)
    with pytest.raises(InvalidParameter):
        bernoulli(0)
    with pytest.raises(InvalidParameter):
        bernoulli(201)


def test_mass_of_rank_8():
    m = mass(8)
    assert m.value == Fraction(1, 696729600)
    assert str(m) == "1/696729600"
    assert -9 < m.log10 < -8


def test_mass_of_rank_16():
    assert mass(16).value == Fraction(691, 277667181515243520000)


def test_mass_of_rank_32():
    assert 10 ** 7 < mass(32).value < 10 ** 8


def test_mass_table_is_increasing_from_rank_32():
    values = [m.value for m in mass_table([32, 40, 48])]
    assert values == sorted(values)


@pytest.mark.parametrize("n", [0, 12, -8, 264])
def test_mass_dimension_checks(n):
    with pytest.raises(InvalidDimension):
        mass(n)


def test_upsilon():
    assert upsilon(Fraction(1, 2)) == Fraction(11, 8)
    assert upsilon(Fraction(1, 8)) == Fraction(227, 128)
    for q in (0, Fraction(3, 4), 1):
        with pytest.raises(OutOfRange):
            upsilon(q)


def test_dominant_terms():
    assert str(dtl_mass()) == "1/4 * log2(x) * x^2"
    assert dtl_upsilon_lower(7, 1).ratio(dtl_mass()) == Fraction(11, 32)
    with pytest.raises(InvalidParameter):
        dtl_mass().ratio(dtl_minkowski())
    with pytest.raises(InvalidParameter):
        dtl_upsilon_lower(0, 1)


def test_stabilizer_exponent():
    assert dtl_stabilizer(1, 2) == 5
    assert dtl_stabilizer(0, 3) == 18
    with pytest.raises(InvalidParameter):
        dtl_stabilizer(3, 2)


def test_arbitrary_dimension_coefficients():
    assert arbitrary_dimension_coefficient(1) == Fraction(11, 512)
    assert all(arbitrary_dimension_coefficient(j) < Fraction(1, 32) for j in range(1, 20))
    assert minimal_j_for_coefficient(0) == 1
    assert minimal_j_for_coefficient(Fraction(1, 33)) == 4
    with pytest.raises(OutOfRange):
        minimal_j_for_coefficient(Fraction(1, 32))


def test_minkowski_bound():
    assert minkowski_exponent(8, 2) == 15
    assert minkowski_bound(1) == 2
    assert minkowski_bound(2) == 24
    assert minkowski_bound(8) % 696729600 == 0
    with pytest.raises(InvalidParameter):
        minkowski_bound(0)


def test_omega_plus_order():
    assert omega_plus_order(1, 2) == 1
    assert omega_plus_order(2, 2) == 36
    assert omega_plus_order(3, 2) == 20160
    with pytest.raises(InvalidParameter):
        omega_plus_order(2, 6)
    with pytest.raises(InvalidParameter):
        omega_plus_order(0, 2)


def test_render_decimal():
    assert render_decimal(Fraction(1, 2)) == ".5000000000"
    assert render_decimal(Fraction(1, 1024)) == ".0009765625000"
    assert render_decimal(Fraction(11, 8)) == "1.375000000"
    assert render_decimal(0) == "0"


def test_upsilon_table_rows():
    rows = upsilon_table()
    assert [r[0] for r in rows] == list(range(1, 11))
    assert all(r[3] == r[2] / 4 for r in rows)
    text = render_table(rows).splitlines()
    assert text[0] == "j q upsilon(q) ratio"
    assert text[1] == "1 .5000000000 1.375000000 .3437500000"
    assert text[3].split()[2] == "1.773437500"
    assert text[4].split()[3] == ".4702148438"
    assert text[8].split()[3] == ".4980525970"
