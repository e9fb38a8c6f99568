"""The acceptance matrix and a fast smoke subset, as plain functions.

Each criterion returns a :class:`CriterionResult`; :func:`run_suite` runs a
named list of them. The same functions back ``fqlab suite`` and the test
suite, so both always check the same thing.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import field_of_order, make_field
from .geometry import Subspace
from .incidence import (
    l2_bound_check,
    nu_pairwise,
    nu_via_fourier,
    plane_sum_identity,
    pointwise_bound_check,
)
from .pointsets import (
    WeightFn,
    full_space,
    line_set,
    plane_set,
    product_set,
    random_set,
    subfield_elements,
)
from .sumprod import glibichuk_search, lemma_two_check, verify_kickass, witness_sweep
from .volumes import verify_mainproductvolume, verify_mainvolume, verify_product3d, verify_product4d, vol_set


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.id:2d} {self.name}: {self.detail.get('summary', '')}"


def random_weight_pairs(count: int, qs, ds, seed: int):
    """Seeded (f, g) pairs cycling through every (q, d) combination; f vanishes at 0."""
    rng = np.random.default_rng(seed)
    combos = list(itertools.product(qs, ds))
    out = []
    for i in range(count):
        q, d = combos[i % len(combos)]
        F = field_of_order(q)
        s1, s2 = (int(x) for x in rng.integers(0, 2**31, size=2))
        dens = float(rng.uniform(0.05, 0.6))
        mw = int(rng.integers(1, 6))
        f = WeightFn.random(F, d, s1, density=dens, max_weight=mw, exclude_origin=True)
        g = WeightFn.random(F, d, s2, density=float(rng.uniform(0.05, 0.6)), max_weight=int(rng.integers(1, 6)))
        out.append((f, g))
    return out


def random_origin_free(F, size: int, rng) -> list[int]:
    return sorted(int(a) for a in rng.choice(np.arange(1, F.q), size=size, replace=False))


def qualifying_sets(F, max_size: int | None = None):
    """Every origin-free A with |A|^2 > q (and |A| <= max_size if given)."""
    top = F.q - 1 if max_size is None else min(max_size, F.q - 1)
    for r in range(1, top + 1):
        if r * r <= F.q:
            continue
        yield from itertools.combinations(range(1, F.q), r)


# wall-clock allowance per criterion, in seconds
TIME_LIMITS = {
    "c01_pointwise": 60,
    "c02_l2": 60,
    "c05_product4d": 60,
    "c07_product3d": 90,
    "c08_mainvolume": 120,
    "c09_mainproductvolume": 30,
    "c10_witnesses": 120,
    "c12_kickass": 10,
}


def _timed(fn):
    limit = TIME_LIMITS.get(fn.__name__)

    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        res.detail["seconds"] = round(res.seconds, 3)
        if limit is not None:
            res.detail["time_limit"] = limit
            if res.seconds > limit:
                res.passed = False
                res.detail["summary"] = res.detail.get("summary", "") + f" (took {res.seconds:.1f}s > {limit}s)"
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- criteria ------------------------------------------------------------------


@_timed
def c01_pointwise(count=200, qs=(3, 5, 7, 11), ds=(2, 3), seed=2024):
    fails = []
    worst = 0.0
    for i, (f, g) in enumerate(random_weight_pairs(count, qs, ds, seed)):
        rep = pointwise_bound_check(f, g)
        worst = max(worst, rep.ratio)
        if not rep.passed:
            fails.append(i)
    return CriterionResult(
        1,
        "pointwise incidence bound (exact integers)",
        not fails,
        {"instances": count, "failures": fails, "worst_ratio": worst, "summary": f"{count} instances, worst lhs/rhs {worst:.4f}"},
    )


@_timed
def c02_l2(count=200, qs=(3, 5, 7, 11), ds=(2, 3), seed=2024):
    fails, gate_fails = [], []
    worst, worst_resid = 0.0, 0.0
    for i, (f, g) in enumerate(random_weight_pairs(count, qs, ds, seed)):
        rep = l2_bound_check(f, g)
        worst = max(worst, rep.ratio)
        worst_resid = max(worst_resid, rep.plancherel_residual)
        if not rep.gate_ok:
            gate_fails.append(i)
        if not rep.passed:
            fails.append(i)
    return CriterionResult(
        2,
        "L2 incidence bound with Plancherel gate",
        not fails and not gate_fails,
        {
            "instances": count,
            "failures": fails,
            "gate_failures": gate_fails,
            "worst_ratio": worst,
            "worst_plancherel_residual": worst_resid,
            "summary": f"{count} instances, worst lhs/rhs {worst:.4f}, max residual {worst_resid:.2e}",
        },
    )


@_timed
def c03_cross_validation(count=100, qs=(2, 3, 4, 5, 7, 8, 9), ds=(1, 2, 3), seed=7):
    mism = []
    rng = np.random.default_rng(seed)
    combos = list(itertools.product(qs, ds))
    for i in range(count):
        q, d = combos[i % len(combos)]
        F = field_of_order(q)
        s1, s2 = (int(x) for x in rng.integers(0, 2**31, size=2))
        f = WeightFn.random(F, d, s1, density=float(rng.uniform(0.1, 0.9)))
        g = WeightFn.random(F, d, s2, density=float(rng.uniform(0.1, 0.9)))
        if nu_via_fourier(f, g).nu != nu_pairwise(f, g).nu:
            mism.append(i)
    return CriterionResult(
        3, "Fourier nu equals pairwise nu", not mism, {"instances": count, "mismatches": mism, "summary": f"{count} instances, {len(mism)} mismatches"}
    )


@_timed
def c04_plane_identity(count=50, qs=(3, 5, 7), seed=11):
    rng = np.random.default_rng(seed)
    bad = []
    cases = []
    for i in range(count):
        q = qs[i % len(qs)]
        F = field_of_order(q)
        size = int(rng.integers(0, q**3 + 1))
        cases.append((f"random q={q} |E|={size}", random_set(F, 3, size, int(rng.integers(0, 2**31)))))
    for q in qs:
        F = field_of_order(q)
        plane = plane_set(Subspace.span(F, [(1, 0, 0), (0, 1, 1)]))
        line = line_set(F, (1, 2 % q, 1))
        cases += [
            (f"plane q={q}", plane),
            (f"line q={q}", line),
            (f"full minus origin q={q}", full_space(F, 3, exclude_origin=True)),
            (f"plane+line q={q}", plane.union(line_set(F, (0, 0, 1)))),
        ]
    for name, E in cases:
        if not plane_sum_identity(E).equal:
            bad.append(name)
    return CriterionResult(
        4, "plane-sum identity (exact)", not bad, {"cases": len(cases), "failures": bad, "summary": f"{len(cases)} sets, {len(bad)} unequal"}
    )


@_timed
def c05_product4d(seed=5, per_q=10):
    rng = np.random.default_rng(seed)
    cases = [(5, [1, 2, 3]), (7, [1, 2, 3])]
    for q in (5, 7, 11):
        F = field_of_order(q)
        lo = int(np.floor(np.sqrt(q))) + 1
        for _ in range(per_q):
            cases.append((q, random_origin_free(F, int(rng.integers(lo, q)), rng)))
    bad = []
    for i, (q, A) in enumerate(cases):
        rep = verify_product4d(field_of_order(q), A, seed=i)
        if not (rep.in_hypothesis and rep.passed):
            bad.append((q, A))
    return CriterionResult(
        5, "A^4 volumes cover F_q", not bad, {"cases": len(cases), "failures": bad, "summary": f"{len(cases)} sets, {len(bad)} incomplete"}
    )


@_timed
def c06_sharpness():
    out = {}
    ok = True
    for p, n in ((2, 2), (3, 2)):
        F = make_field(p, n)
        sub = [int(a) for a in subfield_elements(F, 1)]
        rep = vol_set(product_set(F, sub, 4), early_exit=False)
        out[F.q] = list(rep.vol_set)
        ok &= list(rep.vol_set) == sub and not rep.truncated and len(sub) < F.q
    return CriterionResult(6, "subfield sharpness vol(A^4) = subfield", ok, {"vol_sets": out, "summary": f"vol sets {out}"})


@_timed
def c07_product3d(sampled_q=11, samples=50, seed=3):
    bad, n = [], 0
    for q in (5, 7):
        F = field_of_order(q)
        for A in qualifying_sets(F, 5):
            n += 1
            if not verify_product3d(F, A).passed:
                bad.append((q, A))
    F = field_of_order(sampled_q)
    rng = np.random.default_rng(seed)
    pool = list(qualifying_sets(F, 5))
    for j in rng.choice(len(pool), size=samples, replace=False):
        n += 1
        A = pool[int(j)]
        if not verify_product3d(F, A).passed:
            bad.append((sampled_q, A))
    return CriterionResult(7, "|vol(A^3)| > q/2", not bad, {"cases": n, "failures": bad, "summary": f"{n} sets, {len(bad)} below q/2"})


@_timed
def c08_mainvolume(q=7, seeds=20, c=0.5):
    F = field_of_order(q)
    bad, coverages = [], []
    for s in range(seeds):
        E = random_set(F, 3, 2 * q * q, seed=s)
        rep = verify_mainvolume(E, C=1.0, c=c, seed=s)
        coverages.append(rep.details["coverage"])
        if not (rep.in_hypothesis and rep.passed):
            bad.append(s)
    plane = plane_set(Subspace.span(F, [(1, 0, 0), (0, 1, 0)]))
    prep = verify_mainvolume(plane, C=1.0, c=c)
    plane_ok = prep.volumes.size == 1 and not prep.in_hypothesis
    return CriterionResult(
        8,
        "random |E| = 2q^2 has |vol(E)| >= q/2; plane has one volume",
        not bad and plane_ok,
        {
            "failures": bad,
            "min_coverage": min(coverages),
            "plane_volumes": prep.volumes.size,
            "summary": f"{seeds} seeds, min coverage {min(coverages):.3f}, plane |vol| = {prep.volumes.size}",
        },
    )


@_timed
def c09_mainproductvolume():
    cases = [(7, [1, 2, 3, 4]), (5, [1, 2, 3])]
    bad = []
    for q, A in cases:
        rep = verify_mainproductvolume(product_set(field_of_order(q), A, 3), C=1.0)
        if not (rep.in_hypothesis and rep.passed):
            bad.append((q, A))
    return CriterionResult(9, "product-like E above q^(15/8) has all nonzero volumes", not bad, {"failures": bad, "summary": f"{len(cases)} sets, {len(bad)} failed"})


@_timed
def c10_witnesses(qs=(2, 3, 4, 5, 7, 8, 9, 11)):
    n, bad, failures = 0, [], 0
    for q in qs:
        F = field_of_order(q)
        for A in qualifying_sets(F):
            n += 1
            sw = witness_sweep(F, A)
            failures += sw.failures
            if not (sw.det4_complete and sw.det3_majority) or sw.failures:
                bad.append((q, A))
    return CriterionResult(
        10,
        "determinant witnesses (4x4 all t, 3x3 > q/2)",
        not bad and failures == 0,
        {"sets": n, "bad_sets": bad, "verification_failures": failures, "summary": f"{n} sets, {len(bad)} incomplete, {failures} verification failures"},
    )


@_timed
def c11_glibichuk_lemma_two(glib_qs=(2, 3, 4, 5, 7, 8, 9, 11), two_qs=(2, 3, 4, 5, 7)):
    bad_g, n_g = [], 0
    for q in glib_qs:
        F = field_of_order(q)
        for A in qualifying_sets(F):
            n_g += 1
            try:
                gp = glibichuk_search(F, A)
            except Exception:
                bad_g.append((q, A))
                continue
            if 2 * gp.size <= q:
                bad_g.append((q, A))
    bad_c, n_c = [], 0
    for q in two_qs:
        F = field_of_order(q)
        for r in range(q // 2 + 1, q + 1):
            for C in itertools.combinations(range(q), r):
                n_c += 1
                chk = lemma_two_check(F, C)
                if not (chk["large"] and chk["sum_covers"] and chk["difference_covers"]):
                    bad_c.append((q, C))
    return CriterionResult(
        11,
        "Glibichuk pairs exist; C +- C = F_q for |C| > q/2",
        not bad_g and not bad_c,
        {"glib_sets": n_g, "glib_failures": bad_g, "lemma_two_sets": n_c, "lemma_two_failures": bad_c,
         "summary": f"{n_g} Glibichuk sets, {n_c} large sets C"},
    )


@_timed
def c12_kickass(samples=50, seed=12):
    rng = np.random.default_rng(seed)
    bad = []
    for q, size in ((9, 6), (11, 7)):
        F = field_of_order(q)
        for _ in range(samples):
            A = sorted(int(a) for a in rng.choice(q, size=size, replace=False))
            rep = verify_kickass(F, A, 2)
            if not (rep.in_hypothesis and rep.passed):
                bad.append((q, A))
    return CriterionResult(12, "F_q^* inside 2A^2 for |A| > q^(3/4)", not bad, {"failures": bad, "summary": f"{2 * samples} sets, {len(bad)} failed"})


ACCEPTANCE = [
    c01_pointwise,
    c02_l2,
    c03_cross_validation,
    c04_plane_identity,
    c05_product4d,
    c06_sharpness,
    c07_product3d,
    c08_mainvolume,
    c09_mainproductvolume,
    c10_witnesses,
    c11_glibichuk_lemma_two,
    c12_kickass,
]


def _smoke():
    return [
        lambda: c01_pointwise(count=16, qs=(3, 5), ds=(2, 3)),
        lambda: c02_l2(count=16, qs=(3, 5), ds=(2, 3)),
        lambda: c03_cross_validation(count=12, qs=(3, 4, 5), ds=(1, 2)),
        lambda: c04_plane_identity(count=6, qs=(3, 5)),
        c06_sharpness,
        c09_mainproductvolume,
        lambda: c10_witnesses(qs=(3, 4, 5, 7)),
        lambda: c11_glibichuk_lemma_two(glib_qs=(3, 5, 7), two_qs=(3, 5)),
        lambda: c12_kickass(samples=5),
    ]


def suite_names():
    return ("acceptance", "smoke")


def run_suite(name: str, echo=None) -> list[CriterionResult]:
    if name == "acceptance":
        fns = ACCEPTANCE
    elif name == "smoke":
        fns = _smoke()
    else:
        from .errors import ConfigError

        raise ConfigError(f"unknown suite {name!r}; choose from {suite_names()}")
    results = []
    for fn in fns:
        res = fn()
        if echo:
            echo(res.line())
        results.append(res)
    return results
