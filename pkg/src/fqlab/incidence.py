"""Weighted point/hyperplane incidences nu(t) = sum_{B(x,y)=t} f(x) g(y).

Two independent evaluations are provided: direct bucketing over pairs of
support points (:func:`nu_pairwise`) and the additive-character expansion
(:func:`nu_via_fourier`). The bound checks built on top are exact wherever
the quantities involved are integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, OriginInSupport, RoundingUnsafe, WrongDim
from .field import FieldSpec
from .geometry import (
    DEFAULT_BUDGET,
    BilinForm,
    all_points,
    decode,
    dot_matrix,
    encode,
    enumerate_subspaces,
)
from .pointsets import PointSet, WeightFn, intersect_subspace

ROUNDING_GUARD = 1e-6
PLANCHEREL_GATE = 1e-9
L2_REL_TOL = 1e-6
_CHUNK = 2**22


@dataclass
class IncidenceProfile:
    """nu(t) for every t in F_q, with main term |f|_1 |g|_1 / q and remainder R(t)."""

    q: int
    nu: tuple[int, ...]
    f_l1: int
    g_l1: int

    @property
    def main(self) -> Fraction:
        return Fraction(self.f_l1 * self.g_l1, self.q)

    def R(self, t: int) -> Fraction:
        return self.nu[t] - self.main

    @property
    def total(self) -> int:
        return sum(self.nu)

    def to_rows(self) -> list[tuple[int, int, int, int]]:
        rows = []
        for t, v in enumerate(self.nu):
            r = self.R(t)
            rows.append((t, v, r.numerator, r.denominator))
        return rows

    def to_csv(self) -> str:
        lines = ["t,nu,R_num,R_den"]
        lines += [",".join(map(str, row)) for row in self.to_rows()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        m = self.main
        return {
            "q": self.q,
            "nu": list(self.nu),
            "f_l1": self.f_l1,
            "g_l1": self.g_l1,
            "main": [m.numerator, m.denominator],
        }


def _check_compatible(f: WeightFn, g: WeightFn):
    if f.field is not g.field or f.d != g.d:
        raise ValueError("f and g must live on the same F_q^d")


def nu_pairwise(
    f: WeightFn, g: WeightFn, form: BilinForm | None = None, budget: int = DEFAULT_BUDGET
) -> IncidenceProfile:
    """Exact nu(t) by iterating support(f) x support(g) and bucketing by B(x, y)."""
    _check_compatible(f, g)
    F, d, q = f.field, f.d, f.field.q
    sx, sy = f.support_codes, g.support_codes
    if len(sx) * len(sy) > budget:
        raise BudgetExceeded(f"{len(sx)} x {len(sy)} pairs exceed budget {budget}")
    nu = np.zeros(q, dtype=np.int64)
    if len(sx) == 0 or len(sy) == 0:
        return IncidenceProfile(q, tuple(int(v) for v in nu), f.l1, g.l1)
    X = decode(F, sx, d)
    Y = decode(F, sy, d)
    if form is not None and not form.is_identity:
        Y = form.apply_right(Y)
    wf = f.weights[sx]
    wg = g.weights[sy]
    total = f.l1 * g.l1
    if total >= 2**62:
        raise BudgetExceeded("incidence totals beyond int64 are not supported")
    # float bincount is exact while every partial sum stays below 2^53
    use_float = total < 2**53
    step = max(1, _CHUNK // len(sy))
    for lo in range(0, len(sx), step):
        vals = dot_matrix(F, X[lo : lo + step], Y).ravel()
        w = (wf[lo : lo + step, None] * wg[None, :]).ravel()
        if use_float:
            nu += np.rint(np.bincount(vals, weights=w.astype(np.float64), minlength=q)).astype(np.int64)
        else:
            np.add.at(nu, vals, w)
    return IncidenceProfile(q, tuple(int(v) for v in nu), f.l1, g.l1)


@dataclass
class Spectrum:
    """Fourier coefficients g^(k) = q^-d sum_x chi(-x.k) g(x), indexed by point code."""

    field: FieldSpec
    d: int
    values: np.ndarray = dc_field(repr=False)
    plancherel_residual: float = 0.0

    @property
    def gate_ok(self) -> bool:
        return self.plancherel_residual <= PLANCHEREL_GATE


def _character_matrix(F: FieldSpec) -> np.ndarray:
    """W[k, x] = chi(-k x)."""
    k = F.elements
    return np.conj(F.chi_table[F.mul(k[:, None], k[None, :])])


def fourier(g: WeightFn, budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Full coefficient table of g.

    chi(-x.k) factors over coordinates, so the transform is applied one axis
    at a time with a q x q character matrix.
    """
    F, d, q = g.field, g.d, g.field.q
    if q**d * q > budget:
        raise BudgetExceeded(f"transform of size {q}^{d} exceeds budget")
    W = _character_matrix(F)
    G = g.weights.reshape((q,) * d).astype(np.complex128)
    for ax in range(d):
        G = np.moveaxis(np.tensordot(W, G, axes=([1], [ax])), 0, ax)
    vals = G.ravel() / float(q) ** d
    lhs = float(np.sum(np.abs(vals) ** 2))
    rhs = g.l2sq / float(q) ** d
    resid = abs(lhs - rhs) / rhs if rhs else lhs
    return Spectrum(F, d, vals, resid)


def pushforward(g: WeightFn, M) -> WeightFn:
    """(M_* g)(z) = sum of g(y) over y with M y = z."""
    from .geometry import mat_vec

    F, d = g.field, g.d
    sy = g.support_codes
    out = np.zeros(F.q**d, dtype=np.int64)
    if len(sy):
        img = encode(F, mat_vec(F, M, decode(F, sy, d)))
        np.add.at(out, np.atleast_1d(img), g.weights[sy])
    return WeightFn(F, d, out)


def nu_via_fourier(
    f: WeightFn,
    g: WeightFn,
    form: BilinForm | None = None,
    spectrum: Spectrum | None = None,
    check: bool = False,
) -> IncidenceProfile:
    """nu(t) from the character expansion

        nu(t) = q^-1 sum_s chi(-s t) sum_x f(x) q^d g^(-s x),

    rounded to integers. A general form B(x, y) = x . (M y) is reduced to
    the dot product by pushing g forward along M.

    With ``check=True`` the result is compared against :func:`nu_pairwise`
    and an AssertionError is raised on any difference.
    """
    _check_compatible(f, g)
    F, d, q = f.field, f.d, f.field.q
    g_eff = g
    if form is not None and not form.is_identity:
        g_eff = pushforward(g, form.matrix)
        spectrum = None
    if spectrum is None:
        spectrum = fourier(g_eff)
    sx = f.support_codes
    X = decode(F, sx, d)
    wf = f.weights[sx].astype(np.float64)
    S = np.zeros(q, dtype=np.complex128)
    scale = float(q) ** d
    for s in range(q):
        idx = np.atleast_1d(encode(F, F.mul(F.neg(s), X))) if len(sx) else np.zeros(0, np.int64)
        S[s] = scale * np.dot(wf, spectrum.values[idx])
    t = F.elements
    M = np.conj(F.chi_table[F.mul(t[:, None], t[None, :])])  # chi(-t s)
    raw = (M @ S) / q
    if np.max(np.abs(raw.imag), initial=0.0) > ROUNDING_GUARD:
        raise RoundingUnsafe(f"imaginary residue {np.max(np.abs(raw.imag))}")
    rounded = np.rint(raw.real)
    err = np.max(np.abs(raw.real - rounded), initial=0.0)
    if err > ROUNDING_GUARD:
        raise RoundingUnsafe(f"character sum {err} away from an integer")
    prof = IncidenceProfile(q, tuple(int(v) for v in rounded), f.l1, g.l1)
    if check:
        direct = nu_pairwise(f, g, form)
        if direct.nu != prof.nu:
            raise AssertionError(f"Fourier nu {prof.nu} != pairwise nu {direct.nu}")
    return prof


# -- bound checks --------------------------------------------------------------


@dataclass
class PointwiseReport:
    passed: bool
    worst_t: int | None
    lhs: int
    rhs: int
    # t = 0 analogue, reported but not part of the pass condition
    zero_lhs: int = 0
    zero_rhs: int = 0
    zero_holds: bool = True

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs else 0.0


def pointwise_bound_check(
    f: WeightFn, g: WeightFn, form: BilinForm | None = None, profile: IncidenceProfile | None = None
) -> PointwiseReport:
    """For every t != 0: (q nu(t) - |f|_1 |g|_1)^2 <= |f|_2^2 |g|_2^2 q^(d+1), in integers.

    This is |R(t)| <= |f|_2 |g|_2 q^((d-1)/2) multiplied through by q and squared.
    """
    F, d, q = f.field, f.d, f.field.q
    prof = profile or nu_pairwise(f, g, form)
    main = f.l1 * g.l1
    rhs = f.l2sq * g.l2sq * q ** (d + 1)
    worst_t, worst = None, -1
    for t in range(1, q):
        lhs = (q * prof.nu[t] - main) ** 2
        if lhs > worst:
            worst_t, worst = t, lhs
    zero_lhs = (q * prof.nu[0] - main) ** 2
    zero_rhs = f.l2sq * g.l2sq * q ** (d + 2)
    return PointwiseReport(
        passed=worst <= rhs,
        worst_t=worst_t,
        lhs=max(worst, 0),
        rhs=rhs,
        zero_lhs=zero_lhs,
        zero_rhs=zero_rhs,
        zero_holds=zero_lhs <= zero_rhs,
    )


def line_intersections(E: PointSet) -> np.ndarray:
    """|E cap l_k| for every k, indexed by the code of k (entry 0 unused, set to 0)."""
    F, d = E.field, E.d
    pts = all_points(F, d)
    counts = np.zeros(F.q**d, dtype=np.int64)
    if len(E) == 0:
        return counts
    mask = E.mask
    for s in range(1, F.q):
        counts += mask[encode(F, F.mul(s, pts))]
    counts[0] = 0
    return counts


@dataclass
class L2Report:
    passed: bool
    lhs: int
    rhs: float
    ratio: float
    main_part: float
    spectral_part: float
    plancherel_residual: float
    gate_ok: bool


def l2_bound_check(
    f: WeightFn,
    g: WeightFn,
    profile: IncidenceProfile | None = None,
    spectrum: Spectrum | None = None,
) -> L2Report:
    """sum_t nu(t)^2 against |f|_2^2 |E| |g|_1^2 / q + |f|_2^2 q^(2d-1) sum_{k!=0} |g^(k)|^2 |E cap l_k|.

    E is the support of f and must avoid the origin. The left side is an exact
    integer; the right side uses floating character sums, so the comparison
    allows a relative slack of 1e-6 and requires the Plancherel residual of
    the spectrum to be at most 1e-9.
    """
    E = f.support()
    if E.contains_origin:
        raise OriginInSupport("the L2 bound needs f to vanish at the origin")
    F, d, q = f.field, f.d, f.field.q
    prof = profile or nu_pairwise(f, g)
    lhs = sum(v * v for v in prof.nu)
    ft = spectrum or fourier(g)
    lines = line_intersections(E)
    main_part = f.l2sq * len(E) * g.l1**2 / q
    power = np.abs(ft.values) ** 2
    spectral_part = f.l2sq * float(q) ** (2 * d - 1) * float(np.dot(power[1:], lines[1:]))
    rhs = main_part + spectral_part
    return L2Report(
        passed=bool(lhs <= rhs * (1 + L2_REL_TOL) and ft.gate_ok),
        lhs=lhs,
        rhs=rhs,
        ratio=lhs / rhs if rhs else 0.0,
        main_part=main_part,
        spectral_part=spectral_part,
        plancherel_residual=ft.plancherel_residual,
        gate_ok=ft.gate_ok,
    )


# -- plane sums in F_q^3 -------------------------------------------------------


@dataclass
class PlaneSumIdentity:
    lhs: int
    rhs: int
    rhs_numerator: int
    equal: bool
    # the same normal-count sum with x = 0 included, divided by q - 1
    rhs_with_origin: Fraction


def plane_sum(E: PointSet) -> int:
    """sum over 2-dimensional subspaces H of |E cap H|^2, by enumerating each H."""
    if E.d != 3:
        raise WrongDim("plane sums are defined in F_q^3")
    return sum(intersect_subspace(E, H) ** 2 for H in enumerate_subspaces(E.field, 3, 2))


def normal_counts(E: PointSet) -> np.ndarray:
    """#{y in E : x.y = 0} for every nonzero x (in code order, starting at code 1)."""
    F = E.field
    X = all_points(F, E.d)[1:]
    if len(E) == 0:
        return np.zeros(len(X), dtype=np.int64)
    out = np.zeros(len(X), dtype=np.int64)
    step = max(1, _CHUNK // len(E))
    for lo in range(0, len(X), step):
        out[lo : lo + step] = (dot_matrix(F, X[lo : lo + step], E.coords) == 0).sum(axis=1)
    return out


def plane_sum_identity(E: PointSet) -> PlaneSumIdentity:
    """Compare sum_H |E cap H|^2 with (q-1)^-1 sum_{x != 0} (#{y in E : x.y = 0})^2.

    Each plane has exactly q - 1 nonzero normals, so the two agree exactly.
    """
    if E.d != 3:
        raise WrongDim("plane sums are defined in F_q^3")
    q = E.field.q
    lhs = plane_sum(E)
    counts = normal_counts(E)
    num = sum(int(c) * int(c) for c in counts)
    if num % (q - 1):
        raise AssertionError("normal-count sum not divisible by q - 1")
    rhs = num // (q - 1)
    with_origin = Fraction(num + len(E) ** 2, q - 1)
    return PlaneSumIdentity(lhs, rhs, num, lhs == rhs, with_origin)


@dataclass
class PlaneSumBoundReport:
    passed: bool
    regime: str
    total: int
    bound: float
    ratio: float
    threshold: float
    threshold_met: bool


def plane_sum_bound_check(E: PointSet, regime: str = "product-like", c: float = 1.0) -> PlaneSumBoundReport:
    """Check sum_H |E cap H|^2 <= c |E|^2 and report the ratio.

    The size threshold is |E| >= q^(3/2) in the product-like regime and
    |E| >= q^2 in the generic one; an unmet threshold is reported, not raised.
    """
    if E.d != 3:
        raise WrongDim("plane sums are defined in F_q^3")
    q, size = E.field.q, len(E)
    if regime == "product-like":
        threshold, met = q**1.5, size * size >= q**3
    elif regime == "generic":
        threshold, met = float(q * q), size >= q * q
    else:
        raise ValueError(f"unknown regime {regime!r}")
    total = plane_sum(E)
    bound = Fraction(c) * size * size
    return PlaneSumBoundReport(
        passed=total <= bound,
        regime=regime,
        total=total,
        bound=float(bound),
        ratio=total / (size * size) if size else 0.0,
        threshold=threshold,
        threshold_met=met,
    )
