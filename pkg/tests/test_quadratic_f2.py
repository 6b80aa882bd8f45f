import pytest

from bwlat.errors import Exhausted, InvalidParameter, TooLarge
from bwlat.quadratic_f2 import (
    QuadraticSpaceF2,
    apply,
    avoiding_maps_survey,
    compose,
    general_linear_maps,
    identity_map,
    image_of_span,
    intersection_dim,
    is_avoiding,
    isometries,
    orthogonal_group,
    orthogonal_plus_order,
    parabolic_order,
    sample_avoiding_map,
    singular_count_formula,
    standard_singular_subspace,
    totally_singular_count_formula,
    totally_singular_subspaces,
)


def minus_plane():
    """Q(x) = x0 + x1 + x0 x1, anisotropic."""
    return QuadraticSpaceF2(2, (1, 1), (0b10, 0b01))


def test_hyperbolic_plane_values():
    h = QuadraticSpaceF2.hyperbolic(1)
    assert [h.q(x) for x in range(4)] == [0, 0, 0, 1]
    assert h.beta(0b01, 0b10) == 1
    assert h.beta(0b01, 0b01) == 0


def test_polar_form_validation():
    with pytest.raises(InvalidParameter):
        QuadraticSpaceF2(2, (0, 0), (0b01, 0b00))
    with pytest.raises(InvalidParameter):
        QuadraticSpaceF2(2, (0, 0), (0b10, 0b00))
    with pytest.raises(InvalidParameter):
        QuadraticSpaceF2.hyperbolic(-1)


@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_singular_counts(b):
    h = QuadraticSpaceF2.hyperbolic(b)
    assert h.count_singular() == singular_count_formula(b)
    assert len(list(h.singular_vectors())) == singular_count_formula(b) - 1


def test_q_values_agree_with_pointwise_q():
    space = QuadraticSpaceF2(4, (1, 0, 1, 1), (0b0110, 0b1001, 0b1001, 0b0110))
    assert [int(v) for v in space.q_values()] == [space.q(x) for x in range(16)]


def test_witt_type():
    h = QuadraticSpaceF2.hyperbolic(3)
    assert h.arf_invariant() == 0
    assert h.witt_type() == "plus"
    assert h.witt_index == 3
    m = minus_plane()
    assert m.witt_type() == "minus"
    assert m.witt_index == 0
    assert m.count_singular() == 1


def test_hyperbolic_basis_of_minus_type():
    space = QuadraticSpaceF2(4, (1, 1, 0, 0), (0b0010, 0b0001, 0b1000, 0b0100))
    pairs, leftover = space.hyperbolic_basis()
    assert len(pairs) == 1
    assert leftover is not None
    for u, v in pairs:
        assert space.q(u) == space.q(v) == 0
        assert space.beta(u, v) == 1


def test_degenerate_form():
    space = QuadraticSpaceF2(1, (0,), (0,))
    assert space.radical_dim == 1
    assert not space.is_nondegenerate
    with pytest.raises(InvalidParameter):
        space.symplectic_basis()


def test_perp_and_total_singularity():
    h = QuadraticSpaceF2.hyperbolic(2)
    w = standard_singular_subspace(2, 1)
    assert h.is_totally_singular(w)
    assert intersection_dim(h.perp(w), [0b0001, 0b0100, 0b1000]) == 3
    assert not h.is_totally_singular([0b0011])


@pytest.mark.parametrize("b,k", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_totally_singular_counts(b, k):
    h = QuadraticSpaceF2.hyperbolic(b)
    assert len(list(totally_singular_subspaces(h, k))) == totally_singular_count_formula(b, k)


@pytest.mark.parametrize("b", [1, 2])
def test_orthogonal_group_order(b):
    group = orthogonal_group(QuadraticSpaceF2.hyperbolic(b))
    assert len(group) == orthogonal_plus_order(b)
    assert len(set(group)) == len(group)


def test_orthogonal_orders():
    assert orthogonal_plus_order(2) == 72
    assert parabolic_order(2, 1) == 8
    with pytest.raises(InvalidParameter):
        parabolic_order(2, 3)


def test_isometry_enumeration_cap():
    with pytest.raises(TooLarge):
        next(isometries(QuadraticSpaceF2.hyperbolic(4)))


def test_general_linear_maps():
    assert len(list(general_linear_maps(2))) == 6
    assert len(list(general_linear_maps(3))) == 168
    with pytest.raises(TooLarge):
        next(general_linear_maps(5))


def test_apply_and_compose():
    swap = (0b10, 0b01)
    shear = (0b11, 0b10)
    assert apply(swap, 0b01) == 0b10
    assert compose(swap, swap) == identity_map(2)
    both = compose(swap, shear)
    assert all(apply(both, x) == apply(shear, apply(swap, x)) for x in range(4))
    assert image_of_span(swap, [0b01]) == (0b10,)


def test_reflection():
    h = QuadraticSpaceF2.hyperbolic(1)
    r = h.reflection(0b11)
    assert r == (0b10, 0b01)
    assert h.is_isometry(r)
    with pytest.raises(InvalidParameter):
        h.reflection(0b01)


def test_survey_b2_a1():
    survey = avoiding_maps_survey(2, 1)
    assert survey.group_order == 72
    assert survey.stabilizer_order == 8
    assert survey.nonempty_k == (0, 1)
    assert survey.nonempty_k == survey.expected_k
    assert survey.divisible
    assert sum(survey.orbit_multiplicities[k] * 8 for k in survey.nonempty_k) == sum(
        survey.class_sizes.values()
    )


def test_survey_general_linear_b1():
    survey = avoiding_maps_survey(1, 1, group="general_linear")
    assert survey.group_order == 6
    assert survey.stabilizer_order == 2
    assert survey.class_sizes == {0: 4}
    assert survey.orbit_multiplicities == {0: 2}


def test_survey_orthogonal_b1():
    survey = avoiding_maps_survey(1, 1)
    assert survey.group_order == 2
    assert survey.class_sizes == {0: 1}


def test_survey_arguments():
    with pytest.raises(InvalidParameter):
        avoiding_maps_survey(2, 0)
    with pytest.raises(InvalidParameter):
        avoiding_maps_survey(2, 1, group="symplectic")
    with pytest.raises(TooLarge):
        avoiding_maps_survey(4, 1)


def test_identity_is_tried_first():
    h = QuadraticSpaceF2.hyperbolic(2)
    found = sample_avoiding_map(h, (0b0001,), (0b0100,), seed=1)
    assert found.attempts == 1
    assert found.zeta == identity_map(4)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sampled_map_avoids(seed):
    h = QuadraticSpaceF2.hyperbolic(2)
    w = standard_singular_subspace(2, 1)
    found = sample_avoiding_map(h, w, w, seed=seed)
    assert found.attempts > 1
    assert found.seed == seed
    assert h.is_isometry(found.zeta)
    assert is_avoiding(found.zeta, w, w)
    assert found(w[0]) != w[0]


@pytest.mark.parametrize("k", [0, 1])
def test_sampled_map_with_prescribed_k(k):
    h = QuadraticSpaceF2.hyperbolic(2)
    w = standard_singular_subspace(2, 1)
    found = sample_avoiding_map(h, w, w, seed=5, k=k)
    img = image_of_span(found.zeta, w)
    assert intersection_dim(img, w) == 0
    assert intersection_dim(img, h.perp(w)) == k


def test_sampling_gives_up():
    h = QuadraticSpaceF2.hyperbolic(1)
    with pytest.raises(Exhausted):
        sample_avoiding_map(h, (0b01, 0b10), (0b01,), max_attempts=5)


@pytest.mark.slow
@pytest.mark.parametrize("a", [1, 2, 3])
def test_survey_b3(a):
    survey = avoiding_maps_survey(3, a)
    assert survey.group_order == 2 * 20160
    assert survey.nonempty_k == tuple(range(min(a, 3 - a) + 1))
    assert survey.divisible
