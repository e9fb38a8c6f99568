from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fqlab.errors import BudgetExceeded, DimMismatch, SingularForm, ZeroDirection
from fqlab.field import field_of_order, make_field
from fqlab.geometry import (
    BilinForm,
    Subspace,
    all_points,
    batch_det,
    batch_wedge,
    bilin,
    decode,
    dot,
    dot_matrix,
    encode,
    enumerate_subspaces,
    gaussian_binomial,
    line_of,
    rank,
    unit,
    vol,
    wedge,
)


def test_dot_examples():
    assert dot(make_field(5), (1, 2, 3), (1, 1, 1)) == 1
    assert dot(make_field(3), (1, 1), (1, 2)) == 0
    assert dot(make_field(7), (3, 4), (0, 0)) == 0


def test_dot_dimension_mismatch():
    with pytest.raises(DimMismatch):
        dot(make_field(5), (1, 2), (1, 2, 3))


def test_codes_are_lexicographic():
    F = make_field(3)
    pts = all_points(F, 3)
    assert [tuple(p) for p in pts] == sorted(tuple(p) for p in pts)
    assert np.array_equal(encode(F, pts), np.arange(27))
    assert np.array_equal(decode(F, 5, 2), [1, 2])


def test_dot_matrix_against_scalar_dot():
    for q in (4, 5, 9):
        F = field_of_order(q)
        rng = np.random.default_rng(q)
        X = rng.integers(0, q, (10, 3))
        Y = rng.integers(0, q, (7, 3))
        D = dot_matrix(F, X, Y)
        for i in range(10):
            for j in range(7):
                assert D[i, j] == dot(F, X[i], Y[j])


def test_bilinear_form_examples():
    F = make_field(5)
    B = BilinForm(F, ((2, 0), (0, 1)))
    assert bilin(F, (1, 1), (1, 1), B) == 3
    with pytest.raises(SingularForm):
        BilinForm(F, ((1, 2), (2, 4)))


def test_identity_form_equals_dot():
    F = make_field(7)
    I = BilinForm.identity(F, 3)
    rng = np.random.default_rng(1)
    for _ in range(100):
        x, y = rng.integers(0, 7, 3), rng.integers(0, 7, 3)
        assert bilin(F, x, y, I) == dot(F, x, y)


def test_wedge_examples():
    F3 = make_field(3)
    assert wedge(F3, unit(3, 0), unit(3, 1)) == unit(3, 2)
    assert wedge(F3, (1, 2, 1), (1, 2, 1)) == (0, 0, 0)
    F5 = make_field(5)
    assert wedge(F5, unit(4, 1), unit(4, 2), unit(4, 3)) == unit(4, 0)


def test_vol_examples():
    F5 = make_field(5)
    assert vol(F5, (1, 2), (3, 4)) == 3
    for d in (2, 3, 4):
        assert vol(F5, *[unit(d, i) for i in range(d)]) == 1
    assert vol(F5, (1, 2, 3), (2, 4, 1), (3, 1, 4)) == 0


@pytest.mark.parametrize("q,d", [(3, 3), (4, 3), (5, 4), (9, 2), (2, 5)])
def test_vol_is_first_row_dot_wedge(q, d):
    F = field_of_order(q)
    rng = np.random.default_rng(q * 10 + d)
    M = rng.integers(0, q, (50, d, d))
    dets = batch_det(F, M)
    w = batch_wedge(F, M[:, 1:, :])
    via_wedge = F.sum(F.mul(M[:, 0, :], w), axis=-1)
    assert np.array_equal(dets, via_wedge)
    for i in range(0, 50, 7):
        assert dets[i] == vol(F, *M[i])


def test_vol_sign_under_row_swap():
    F = make_field(7)
    rows = [(1, 2, 3), (0, 5, 6), (4, 0, 1)]
    base = vol(F, *rows)
    for perm in permutations(range(3)):
        inversions = sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3))
        expected = base if inversions % 2 == 0 else F.neg(base)
        assert vol(F, *[rows[i] for i in perm]) == expected


@pytest.mark.parametrize("q,d,n,count", [(3, 3, 2, 13), (3, 3, 1, 13), (5, 2, 1, 6), (2, 4, 2, 35), (4, 3, 1, 21)])
def test_subspace_counts(q, d, n, count):
    F = field_of_order(q)
    subs = enumerate_subspaces(F, d, n)
    assert len(subs) == count == gaussian_binomial(q, d, n)
    assert len({s.basis for s in subs}) == count
    assert all(s.dim == n and len(s.codes()) == q**n for s in subs)


def test_subspace_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_subspaces(make_field(7), 4, 2, budget=10)


def test_subspace_span_is_canonical():
    F = make_field(5)
    a = Subspace.span(F, [(1, 2, 3), (0, 1, 1)])
    b = Subspace.span(F, [(1, 3, 4), (2, 4, 1)])
    assert a.basis == b.basis
    assert rank(F, [(1, 2, 3), (2, 4, 1)]) == 1
    assert rank(F, [(1, 2, 3), (2, 4, 2)]) == 2


def test_line_examples():
    F = make_field(3)
    l = line_of(F, (1, 0, 0))
    assert set(map(tuple, l.points())) == {(1, 0, 0), (2, 0, 0)}
    assert line_of(F, (1, 2, 0)) == line_of(F, (2, 1, 0))
    assert len(line_of(make_field(7), (1, 2))) == 6
    with pytest.raises(ZeroDirection):
        line_of(F, (0, 0, 0))


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([3, 4, 5, 7, 8, 9]), st.integers(0, 2**32 - 1))
def test_det_multiplicative(q, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    A, B = rng.integers(0, q, (2, 3, 3))
    AB = np.array([[F.sum(F.mul(A[i], B[:, j])) for j in range(3)] for i in range(3)])
    assert vol(F, *AB) == F.mul(vol(F, *A), vol(F, *B))
