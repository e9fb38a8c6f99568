from itertools import product

import numpy as np
import pytest

from fqlab.errors import BudgetExceeded, WrongDim
from fqlab.field import field_of_order, make_field
from fqlab.geometry import Subspace, encode, unit, vol
from fqlab.pointsets import PointSet, full_space, plane_set, product_set, random_set, subfield_elements, subfield_set
from fqlab.volumes import (
    cauchy_schwarz_check,
    g_l2_check,
    nu_vol,
    nu_vol_direct,
    origin_mass_check,
    verify_mainproductvolume,
    verify_mainvolume,
    verify_product3d,
    verify_product4d,
    vol_set,
    wedge_counts,
)


def basis_set(F, d):
    return PointSet.from_points(F, [unit(d, i) for i in range(d)], d)


def a_plane(F):
    return plane_set(Subspace.span(F, [unit(3, 0), unit(3, 1)]))


def test_wedge_counts_of_standard_basis():
    F = make_field(3)
    w = wedge_counts(basis_set(F, 3))
    assert w.g0.l1 == 9
    assert w.origin_mass == 3
    assert w.g0.weights[encode(F, (0, 0, 1))] == 1
    assert w.g0.weights[encode(F, (0, 0, 2))] == 1
    assert w.g.weights[0] == 0 and w.g.l1 == 9 - 3


def test_wedge_counts_single_point():
    F = make_field(5)
    w = wedge_counts(PointSet.from_points(F, [(1, 2, 3)], 3))
    assert w.origin_mass == 1 and w.g0.l1 == 1


@pytest.mark.parametrize("q,d,size", [(3, 3, 8), (5, 3, 20), (4, 3, 15), (3, 4, 12), (7, 2, 30)])
def test_mass_identity(q, d, size):
    F = field_of_order(q)
    E = random_set(F, d, size, seed=q + d)
    assert wedge_counts(E).g0.l1 == size ** (d - 1)


def test_origin_mass_examples():
    F = make_field(3)
    rep = origin_mass_check(basis_set(F, 3))
    assert rep.origin_mass == 3 and rep.bound == 3 and rep.holds
    empty = origin_mass_check(PointSet(F, 3, []))
    assert empty.origin_mass == 0 and empty.holds


def test_origin_mass_plane_through_origin():
    F = make_field(3)
    rep = origin_mass_check(a_plane(F))
    assert rep.max_line == 3
    # 9 pairs from u = 0, then 8 nonzero u each with a 3-point line: 9 + 24
    assert rep.origin_mass == 33
    assert not rep.holds
    assert rep.refined_bound == 8 * 3 + 9 and rep.holds_refined


@pytest.mark.parametrize("seed", range(6))
def test_origin_mass_bound_on_origin_free_sets(seed):
    F = make_field(5)
    E = random_set(F, 3, 25, seed=seed, exclude_origin=True)
    assert origin_mass_check(E).holds


@pytest.mark.parametrize("q,d,size,seed", [(3, 3, 8, 0), (3, 3, 6, 1), (5, 3, 12, 2), (4, 3, 10, 3), (3, 4, 7, 4), (5, 2, 11, 5)])
def test_factored_profile_matches_direct(q, d, size, seed):
    F = field_of_order(q)
    E = random_set(F, d, size, seed=seed)
    direct = nu_vol_direct(E)
    assert nu_vol(E).nu == direct.nu
    assert sum(direct.nu) == size**d


def test_plane_profile_and_volume_set():
    F = make_field(5)
    E = a_plane(F)
    prof = nu_vol(E)
    assert prof.nu == (len(E) ** 3, 0, 0, 0, 0)
    assert vol_set(E, early_exit=False).vol_set == (0,)


def test_volume_set_contains_signed_units():
    F = make_field(7)
    rep = vol_set(basis_set(F, 3), early_exit=False)
    assert {0, 1, F.neg(1)} <= set(rep.vol_set)


def test_early_exit_is_flagged_and_seeded():
    F = make_field(5)
    E = product_set(F, [1, 2, 3], 4)
    a = vol_set(E, early_exit=True, seed=3)
    b = vol_set(E, early_exit=True, seed=3)
    assert a.truncated and a.nu is None and a.covers_all
    assert a.tuples_examined == b.tuples_examined
    exact = vol_set(E, early_exit=False)
    assert not exact.truncated and exact.vol_set == a.vol_set


def test_early_exit_falls_back_when_coverage_is_partial():
    F = make_field(3, 2)
    E = subfield_set(F, 1, 3)
    rep = vol_set(E, early_exit=True, seed=0, samples=4096)
    assert not rep.truncated and rep.vol_set == (0, 1, 2)


def test_budget():
    with pytest.raises(BudgetExceeded):
        vol_set(full_space(make_field(7), 3), early_exit=False, budget=100)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_subfield_closure(p, n):
    F = make_field(p, n)
    E = subfield_set(F, 1, 4)
    rep = vol_set(E, early_exit=False)
    assert set(rep.vol_set) == set(int(a) for a in subfield_elements(F, 1))


def test_row_permutation_leaves_volume_set_unchanged():
    F = make_field(5)
    E = random_set(F, 3, 9, seed=8)
    pts = E.coords
    seen = {}
    for perm in ((0, 1, 2), (2, 0, 1), (1, 0, 2)):
        vals = set()
        for i, j, k in product(range(len(E)), repeat=3):
            rows = [pts[i], pts[j], pts[k]]
            vals.add(vol(F, *[rows[p] for p in perm]))
        seen[perm] = vals
    assert len({frozenset(v) for v in seen.values()}) == 1
    assert seen[(0, 1, 2)] == set(vol_set(E, early_exit=False).vol_set)


@pytest.mark.parametrize("q,size", [(3, 10), (5, 30), (7, 50)])
def test_cauchy_schwarz(q, size):
    F = field_of_order(q)
    rep = vol_set(random_set(F, 3, size, seed=size), early_exit=False)
    cs = cauchy_schwarz_check(rep)
    assert cs["holds"] and cs["lower_bound_on_vol"] <= rep.size


def test_g_l2_examples():
    F = make_field(7)
    rep = g_l2_check(product_set(F, [1, 2, 3, 4], 3), "product-like", c=8)
    assert rep.passed and 0 < rep.ratio < 1
    for q in (3, 5):
        Fq = field_of_order(q)
        rep = g_l2_check(full_space(Fq, 3, exclude_origin=True), "generic", c=1)
        # each nonzero x is the wedge of q(q^2 - 1) ordered pairs
        assert rep.g_l2sq == (q**3 - 1) * (q * (q * q - 1)) ** 2
        # planes hold q^2 points, so the subspace-growth precondition fails
        assert rep.preconditions["subspace_growth"] is False
    empty = g_l2_check(PointSet(F, 3, []), "generic")
    assert empty.g_l2sq == 0 and empty.passed
    with pytest.raises(WrongDim):
        g_l2_check(full_space(F, 2))


def test_product4d_examples():
    assert verify_product4d(make_field(5), [1, 2, 3]).passed
    rep = verify_product4d(make_field(3, 2), [0, 1, 2])
    assert not rep.in_hypothesis and not rep.passed
    assert rep.volumes.vol_set == (0, 1, 2)
    rep4 = verify_product4d(make_field(2, 2), [0, 1])
    assert rep4.volumes.vol_set == (0, 1)


def test_product3d_examples():
    rep = verify_product3d(make_field(5), [1, 2, 3])
    assert rep.passed and rep.in_hypothesis and rep.volumes.size >= 3
    assert verify_product3d(make_field(7), [1, 2, 3]).passed
    sub = verify_product3d(make_field(3, 2), [0, 1, 2])
    assert not sub.in_hypothesis and sub.volumes.size == 3


def test_mainproductvolume_examples():
    F7 = make_field(7)
    rep = verify_mainproductvolume(product_set(F7, [1, 2, 3, 4], 3), C=1, product_like_c=1)
    assert rep.passed and rep.details["size_ok"]
    F5 = make_field(5)
    assert verify_mainproductvolume(full_space(F5, 3)).passed
    plane = verify_mainproductvolume(a_plane(F5))
    assert not plane.passed and not plane.in_hypothesis


def test_mainvolume_examples():
    F3 = make_field(3)
    rep = verify_mainvolume(full_space(F3, 3, exclude_origin=True), C=1, c=0.5)
    assert rep.passed and rep.volumes.coverage == 1
    plane = verify_mainvolume(a_plane(make_field(7)))
    assert not plane.in_hypothesis and plane.volumes.size == 1
    F7 = make_field(7)
    for seed in range(3):
        rep = verify_mainvolume(random_set(F7, 3, 98, seed=seed), C=2, c=0.5, seed=seed)
        assert rep.in_hypothesis and rep.passed
