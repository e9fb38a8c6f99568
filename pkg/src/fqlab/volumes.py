"""Volumes of parallelepipeds spanned by points of E, and the wedge-count function.

vol(x^1, ..., x^d) = x^1 . (x^2 ^ ... ^ x^d), so counting d-tuples by volume
reduces to an incidence count between E and the wedge-count function

    g0(w) = #{(u^2, ..., u^d) in E^(d-1) : u^2 ^ ... ^ u^d = w}.

That factorization is the default exact path; direct d-tuple enumeration is
kept as an independent oracle.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, WrongDim
from .field import FieldSpec
from .geometry import DEFAULT_BUDGET, batch_det, batch_wedge, encode, enumerate_subspaces
from .incidence import IncidenceProfile, nu_pairwise
from .pointsets import (
    PointSet,
    WeightFn,
    intersect_subspace,
    is_general_position,
    is_product_like,
    product_set,
    subspace_growth_check,
)

_BATCH = 2**16
EARLY_EXIT_SAMPLES = 2**18


def _tuples(coords: np.ndarray, k: int, lo: int, hi: int) -> np.ndarray:
    """Rows lo..hi of E^k in lexicographic index order, as an array (n, k, d)."""
    m = len(coords)
    idx = np.unravel_index(np.arange(lo, hi, dtype=np.int64), (m,) * k)
    return coords[np.stack(idx, axis=-1)]


@dataclass
class WedgeCount:
    g0: WeightFn
    g: WeightFn
    origin_mass: int


def wedge_counts(E: PointSet, budget: int = DEFAULT_BUDGET) -> WedgeCount:
    """Exact g0 over all (d-1)-tuples of E, and g = g0 with the origin weight removed."""
    F, d = E.field, E.d
    if d < 2:
        raise WrongDim("wedge counts need d >= 2")
    m = len(E)
    n_tuples = m ** (d - 1)
    if n_tuples > budget:
        raise BudgetExceeded(f"{n_tuples} wedge tuples exceed budget {budget}")
    size = F.q**d
    g0 = np.zeros(size, dtype=np.int64)
    for lo in range(0, n_tuples, _BATCH):
        U = _tuples(E.coords, d - 1, lo, min(lo + _BATCH, n_tuples))
        g0 += np.bincount(encode(F, batch_wedge(F, U)), minlength=size)
    origin = int(g0[0])
    g = g0.copy()
    g[0] = 0
    return WedgeCount(WeightFn(F, d, g0), WeightFn(F, d, g), origin)


def nu_vol_direct(E: PointSet, budget: int = DEFAULT_BUDGET) -> IncidenceProfile:
    """nu(t) = #{d-tuples of E with determinant t}, by evaluating every determinant."""
    F, d = E.field, E.d
    n_tuples = len(E) ** d
    if n_tuples > budget:
        raise BudgetExceeded(f"{n_tuples} determinant evaluations exceed budget {budget}")
    nu = np.zeros(F.q, dtype=np.int64)
    for lo in range(0, n_tuples, _BATCH):
        M = _tuples(E.coords, d, lo, min(lo + _BATCH, n_tuples))
        nu += np.bincount(batch_det(F, M), minlength=F.q)
    return IncidenceProfile(F.q, tuple(int(v) for v in nu), len(E), len(E) ** (d - 1))


def nu_vol(E: PointSet, wedges: WedgeCount | None = None, budget: int = DEFAULT_BUDGET) -> IncidenceProfile:
    """The same volume profile, as the incidence count of 1_E against g0."""
    wedges = wedges or wedge_counts(E, budget)
    return nu_pairwise(WeightFn.indicator(E), wedges.g0, budget=budget)


@dataclass
class VolumeReport:
    q: int
    vol_set: tuple[int, ...]
    nu: tuple[int, ...] | None
    truncated: bool
    tuples_examined: int
    method: str

    @property
    def size(self) -> int:
        return len(self.vol_set)

    @property
    def coverage(self) -> float:
        return len(self.vol_set) / self.q

    @property
    def covers_all_nonzero(self) -> bool:
        return set(range(1, self.q)) <= set(self.vol_set)

    @property
    def covers_all(self) -> bool:
        return len(self.vol_set) == self.q

    def to_dict(self) -> dict:
        out = asdict(self)
        out["vol_set"] = list(self.vol_set)
        out["nu"] = list(self.nu) if self.nu is not None else None
        out.update(coverage=self.coverage, covers_all=self.covers_all, covers_all_nonzero=self.covers_all_nonzero)
        return out


def vol_set(
    E: PointSet,
    early_exit: bool = True,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    samples: int = EARLY_EXIT_SAMPLES,
) -> VolumeReport:
    """The set of determinants of d-tuples from E.

    With ``early_exit`` the tuples are first drawn at random under ``seed``;
    once every element of F_q has appeared the answer is final and the report
    is flagged as truncated (no volume profile). Otherwise the exact profile
    is computed through the wedge factorization.
    """
    F, d, q = E.field, E.d, E.field.q
    m = len(E)
    if m == 0:
        return VolumeReport(q, (), tuple([0] * q), False, 0, "empty")
    examined = 0
    if early_exit:
        rng = np.random.default_rng(seed)
        seen = np.zeros(q, dtype=bool)
        while examined < samples:
            n = min(4096, samples - examined)
            idx = rng.integers(0, m, size=(n, d))
            seen[batch_det(F, E.coords[idx])] = True
            examined += n
            if seen.all():
                return VolumeReport(q, tuple(range(q)), None, True, examined, "sampled")
    prof = nu_vol(E, budget=budget)
    values = tuple(t for t, v in enumerate(prof.nu) if v)
    return VolumeReport(q, values, prof.nu, False, examined + m**d, "wedge-factored")


def cauchy_schwarz_check(report: VolumeReport) -> dict:
    """(sum nu)^2 <= |vol(E)| * sum nu^2, in exact integers."""
    if report.nu is None:
        raise ValueError("needs an untruncated volume profile")
    s1 = sum(report.nu)
    s2 = sum(v * v for v in report.nu)
    return {
        "sum_nu_sq": s1 * s1,
        "vol_times_sum_sq": report.size * s2,
        "holds": s1 * s1 <= report.size * s2,
        "lower_bound_on_vol": Fraction(s1 * s1, s2) if s2 else Fraction(0),
    }


# -- lemma checks in F_q^3 -----------------------------------------------------


@dataclass
class OriginMassReport:
    origin_mass: int
    max_line: int
    bound: int
    holds: bool
    contains_origin: bool
    refined_bound: int
    holds_refined: bool
    product_like_ratio: float


def origin_mass_check(E: PointSet, wedges: WedgeCount | None = None) -> OriginMassReport:
    """g0(0) against |E| * max over lines H_1 of |E cap H_1|.

    The count g0(0) is the number of linearly dependent pairs. For origin-free E
    each first vector u contributes |E cap span(u)|, so the bound is exact. If
    E contains the origin, u = 0 contributes |E| instead, and the refined bound
    (|E| - 1) max + |E| is the one that always holds.
    """
    if E.d != 3:
        raise WrongDim("origin mass is checked in F_q^3")
    wedges = wedges or wedge_counts(E)
    size = len(E)
    max_line = max((intersect_subspace(E, H) for H in enumerate_subspaces(E.field, 3, 1)), default=0)
    bound = size * max_line
    has0 = E.contains_origin
    refined = (size - 1) * max_line + size if has0 else bound
    g00 = wedges.origin_mass
    return OriginMassReport(
        origin_mass=g00,
        max_line=max_line,
        bound=bound,
        holds=g00 <= bound,
        contains_origin=has0,
        refined_bound=refined,
        holds_refined=g00 <= refined,
        product_like_ratio=g00 / size ** (4 / 3) if size else 0.0,
    )


@dataclass
class GL2Report:
    passed: bool
    regime: str
    g_l2sq: int
    bound: float
    ratio: float
    preconditions: dict = dc_field(default_factory=dict)


def g_l2_check(
    E: PointSet,
    regime: str = "product-like",
    c: float = 1.0,
    precondition_c: float = 1.0,
    wedges: WedgeCount | None = None,
) -> GL2Report:
    """Exact |g|_2^2 against c |E|^(7/3) q (product-like) or c |E|^2 q^2 (generic).

    Preconditions are evaluated and reported; they do not block the check.
    """
    if E.d != 3:
        raise WrongDim("the wedge L2 estimate is stated in F_q^3")
    q, size = E.field.q, len(E)
    wedges = wedges or wedge_counts(E)
    l2 = wedges.g.l2sq
    cf = Fraction(c)
    if regime == "product-like":
        # l2 <= c |E|^(7/3) q  <=>  l2^3 <= c^3 |E|^7 q^3
        passed = Fraction(l2) ** 3 <= cf**3 * size**7 * q**3
        unit_bound = size ** (7 / 3) * q
        pre = {
            "product_like": is_product_like(E, precondition_c).passed,
            "size_threshold": size * size >= q**3,
        }
    elif regime == "generic":
        passed = l2 <= cf * size * size * q * q
        unit_bound = float(size * size * q * q)
        pre = {
            "subspace_growth": subspace_growth_check(E, precondition_c).passed,
            "size_threshold": size >= q * q,
        }
    else:
        raise ValueError(f"unknown regime {regime!r}")
    return GL2Report(
        passed=bool(passed),
        regime=regime,
        g_l2sq=l2,
        bound=float(cf) * unit_bound,
        ratio=l2 / unit_bound if unit_bound else 0.0,
        preconditions=pre,
    )


# -- theorem verifiers ---------------------------------------------------------


@dataclass
class VerificationReport:
    name: str
    passed: bool
    in_hypothesis: bool
    details: dict = dc_field(default_factory=dict)
    volumes: VolumeReport | None = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "in_hypothesis": self.in_hypothesis,
            "details": self.details,
            "volumes": self.volumes.to_dict() if self.volumes else None,
        }


def _scalars(A) -> list[int]:
    return sorted({int(a) for a in A})


def verify_product4d(F: FieldSpec, A, seed: int = 0, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """E = A^4 with |A| > sqrt(q) should give every element of F_q as a volume."""
    A = _scalars(A)
    hyp = len(A) ** 2 > F.q
    rep = vol_set(product_set(F, A, 4), early_exit=True, seed=seed, budget=budget)
    return VerificationReport(
        "product4d",
        passed=rep.covers_all,
        in_hypothesis=hyp,
        details={"A": A, "q": F.q, "num_volumes": rep.size},
        volumes=rep,
    )


def verify_product3d(F: FieldSpec, A, seed: int = 0, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """E = A^3 with |A| > sqrt(q) should give more than q/2 distinct volumes."""
    A = _scalars(A)
    hyp = len(A) ** 2 > F.q
    rep = vol_set(product_set(F, A, 3), early_exit=True, seed=seed, budget=budget)
    return VerificationReport(
        "product3d",
        passed=2 * rep.size > F.q,
        in_hypothesis=hyp,
        details={"A": A, "q": F.q, "num_volumes": rep.size},
        volumes=rep,
    )


def verify_mainproductvolume(
    E: PointSet, C: float = 1.0, product_like_c: float = 1.0, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """Product-like E in F_q^3 with |E| >= C q^(15/8) should have every nonzero volume."""
    if E.d != 3:
        raise WrongDim("stated in F_q^3")
    q, size = E.field.q, len(E)
    pl = is_product_like(E, product_like_c)
    big = Fraction(size) ** 8 >= Fraction(C) ** 8 * q**15
    rep = vol_set(E, early_exit=True, seed=seed, budget=budget)
    return VerificationReport(
        "mainproductvolume",
        passed=rep.covers_all_nonzero,
        in_hypothesis=pl.passed and big,
        details={
            "size": size,
            "threshold": float(C) * q ** (15 / 8),
            "size_ok": big,
            "product_like": pl.passed,
            "product_like_worst_ratio": pl.worst_ratio,
        },
        volumes=rep,
    )


def verify_mainvolume(
    E: PointSet, C: float = 1.0, c: float = 0.5, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """E in general position with |E| >= C q^2 should have at least c q distinct volumes."""
    if E.d != 3:
        raise WrongDim("stated in F_q^3")
    q, size = E.field.q, len(E)
    gp = is_general_position(E, seed=seed, budget=budget)
    big = size >= Fraction(C) * q * q
    rep = vol_set(E, early_exit=True, seed=seed, budget=budget)
    return VerificationReport(
        "mainvolume",
        passed=rep.size >= Fraction(c) * q,
        in_hypothesis=gp.passed and big,
        details={
            "size": size,
            "general_position": gp.passed,
            "size_ok": bool(big),
            "c": c,
            "coverage": rep.coverage,
            "num_volumes": rep.size,
        },
        volumes=rep,
    )
