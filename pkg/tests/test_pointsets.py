import numpy as np
import pytest

from fqlab.errors import WrongDim
from fqlab.field import field_of_order, make_field
from fqlab.geometry import Subspace, decode, encode, enumerate_subspaces, unit
from fqlab.pointsets import (
    PointSet,
    WeightFn,
    full_space,
    intersect_subspace,
    is_general_position,
    is_product_like,
    line_set,
    parse_point_set,
    parse_scalar_set,
    plane_set,
    product_set,
    random_set,
    subfield_elements,
    subfield_set,
    subspace_growth_check,
)


def test_product_set_examples():
    F = make_field(5)
    assert len(product_set(F, [1, 2], 2)) == 4
    assert len(product_set(F, range(5), 3)) == 125
    origin = product_set(F, [0], 3)
    assert len(origin) == 1 and origin.contains_origin


def test_product_membership_probes():
    F = make_field(7)
    A = [1, 3, 4]
    E = product_set(F, A, 3)
    rng = np.random.default_rng(0)
    pts = rng.integers(0, 7, (1000, 3))
    expected = np.isin(pts, A).all(axis=1)
    assert np.array_equal(E.contains(encode(F, pts)), expected)


def test_subfield_examples():
    F9 = make_field(3, 2)
    assert list(subfield_elements(F9, 1)) == [0, 1, 2]
    assert len(subfield_set(F9, 1, 4)) == 81
    assert len(subfield_elements(make_field(2, 2), 1)) == 2
    assert list(subfield_elements(make_field(5), 1)) == [0, 1, 2, 3, 4]


def test_subfield_closed_under_operations():
    for p, n, m in [(2, 4, 2), (3, 2, 1), (2, 2, 1), (2, 6, 3)]:
        F = make_field(p, n)
        S = subfield_elements(F, m)
        assert len(S) == p**m
        assert set(F.add(S[:, None], S[None, :]).ravel()) <= set(S)
        assert set(F.mul(S[:, None], S[None, :]).ravel()) <= set(S)


def test_random_set_examples():
    F = make_field(3)
    assert len(random_set(F, 3, 27, seed=1)) == 27
    assert random_set(F, 3, 10, seed=4).codes.tolist() == random_set(F, 3, 10, seed=4).codes.tolist()
    assert len(random_set(F, 3, 0, seed=0)) == 0
    assert not random_set(F, 3, 26, seed=2, exclude_origin=True).contains_origin


def test_plane_set_examples():
    F = make_field(3)
    H = Subspace.span(F, [unit(3, 0), unit(3, 1)])
    E = plane_set(H)
    assert len(E) == 9 and E.contains_origin
    with pytest.raises(WrongDim):
        plane_set(Subspace.span(F, [unit(3, 0)]))


def test_intersect_subspace_examples():
    F = make_field(3)
    E = full_space(F, 3, exclude_origin=True)
    for H in enumerate_subspaces(F, 3, 2):
        assert intersect_subspace(E, H) == 8
    F9 = make_field(3, 2)
    E9 = subfield_set(F9, 1, 3)
    assert intersect_subspace(E9, Subspace.span(F9, [unit(3, 0)])) == 3
    assert intersect_subspace(PointSet(F, 3, []), H) == 0


def test_intersection_upper_bound():
    F = make_field(5)
    E = random_set(F, 3, 40, seed=9)
    for n in (1, 2):
        for H in enumerate_subspaces(F, 3, n):
            assert intersect_subspace(E, H) <= min(len(E), 5**n)


def test_product_like_examples():
    F9 = make_field(3, 2)
    assert is_product_like(subfield_set(F9, 1, 3), c=1).passed
    F = make_field(5)
    assert is_product_like(full_space(F, 3), c=1).worst_ratio == pytest.approx(1.0)
    rep = is_product_like(line_set(F, (1, 2, 3)), c=1)
    assert not rep.passed and rep.worst_dim == 1


def test_general_position_examples():
    F = make_field(3)
    assert is_general_position(full_space(F, 3, exclude_origin=True)).passed
    H = Subspace.span(F, [unit(3, 0), unit(3, 1)])
    assert not is_general_position(plane_set(H)).passed


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_large_sets_are_in_general_position(q):
    F = field_of_order(q)
    for seed in range(3):
        E = random_set(F, 3, q * q + 1, seed=seed)
        assert is_general_position(E, seed=seed).passed


def test_subspace_growth():
    F = make_field(5)
    assert subspace_growth_check(full_space(F, 3, exclude_origin=True), c=1).passed is False
    assert subspace_growth_check(random_set(F, 3, 30, seed=1), c=2).passed


def test_weight_fn_is_a_copy_and_read_only():
    F = make_field(3)
    w = np.zeros(9, dtype=np.int64)
    w[4] = 2
    f = WeightFn(F, 2, w)
    w[4] = 5
    assert f.weights[4] == 2
    with pytest.raises(ValueError):
        f.weights[0] = 1
    assert f.l1 == 2 and f.l2sq == 4


def test_transform_by_invertible_matrix():
    F = make_field(5)
    E = random_set(F, 3, 20, seed=3)
    M = ((1, 2, 0), (0, 1, 0), (3, 0, 1))
    assert len(E.transform(M)) == 20


def test_literal_parsers():
    F = make_field(7)
    assert parse_scalar_set(F, "1,2,3") == [1, 2, 3]
    assert parse_scalar_set(F, "A=3,1") == [1, 3]
    assert parse_scalar_set(F, "nonzero") == list(range(1, 7))
    assert parse_scalar_set(F, "random:size=4;seed=2") == parse_scalar_set(F, "random:size=4;seed=2")
    assert len(parse_point_set(F, "product:A=1,2,3;d=3")) == 27
    assert len(parse_point_set(F, "random:size=100;seed=7")) == 100
    E = parse_point_set(F, "plane:basis=(1,0,0),(0,1,0)")
    assert len(E) == 49 and set(decode(F, E.codes, 3)[:, 2]) == {0}
    assert len(parse_point_set(make_field(3, 2), "subfield:m=1;d=4")) == 81
    with pytest.raises(ValueError):
        parse_point_set(F, "sphere:r=1")
    with pytest.raises(ValueError):
        parse_scalar_set(F, "1,9")
