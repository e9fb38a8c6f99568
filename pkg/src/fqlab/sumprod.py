"""Sum-product sets and explicit determinant witnesses with entries from A.

Scalar sets are handled as sorted tuples of element codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product

import warnings

import numpy as np

from .errors import HypothesisViolated, NoNonzeroMinor, NotFound, Unreached
from .field import FieldSpec
from .geometry import vol


def _arr(A) -> np.ndarray:
    return np.asarray(sorted({int(a) for a in A}), dtype=np.int64)


def _set(values) -> tuple[int, ...]:
    return tuple(int(v) for v in np.unique(np.asarray(values, dtype=np.int64)))


def sumset(F: FieldSpec, A, B) -> tuple[int, ...]:
    a, b = _arr(A), _arr(B)
    if not len(a) or not len(b):
        return ()
    return _set(F.add(a[:, None], b[None, :]))


def differenceset(F: FieldSpec, A, B) -> tuple[int, ...]:
    a, b = _arr(A), _arr(B)
    if not len(a) or not len(b):
        return ()
    return _set(F.sub(a[:, None], b[None, :]))


def productset(F: FieldSpec, A, B) -> tuple[int, ...]:
    a, b = _arr(A), _arr(B)
    if not len(a) or not len(b):
        return ()
    return _set(F.mul(a[:, None], b[None, :]))


def dilate(F: FieldSpec, s: int, A) -> tuple[int, ...]:
    return _set(F.mul(s, _arr(A)))


def dA2(F: FieldSpec, A, d: int) -> tuple[int, ...]:
    """A.A + ... + A.A with d summands."""
    if d < 1:
        raise ValueError("d must be >= 1")
    P = productset(F, A, A)
    out = P
    for _ in range(d - 1):
        out = sumset(F, out, P)
    return out


# -- Glibichuk pairs and 2x2 determinants --------------------------------------


@dataclass
class GlibichukPair:
    alpha: int
    beta: int
    sign: str  # "-" for alpha A - beta A, "+" for alpha A + beta A
    size: int
    in_hypothesis: bool


def _hypothesis(F: FieldSpec, A) -> bool:
    A = _arr(A)
    return bool(len(A) ** 2 > F.q and (len(A) == 0 or A[0] != 0))


def glibichuk_search(F: FieldSpec, A) -> GlibichukPair:
    """First (alpha, beta) in (A-A)^2, sorted scan, with |alpha A -/+ beta A| > q/2.

    The cardinality is measured, never assumed. Raises NotFound if no pair
    qualifies.
    """
    a = _arr(A)
    hyp = _hypothesis(F, a)
    B = differenceset(F, a, a)
    for alpha in B:
        aA = F.mul(alpha, a)
        for beta in B:
            bA = F.mul(beta, a)
            for sign, vals in (("-", F.sub(aA[:, None], bA[None, :])), ("+", F.add(aA[:, None], bA[None, :]))):
                size = len(np.unique(vals))
                if 2 * size > F.q:
                    return GlibichukPair(alpha, beta, sign, size, hyp)
    note = "" if hyp else " (A is outside the hypothesis |A|^2 > q, 0 not in A)"
    raise NotFound(f"no pair alpha, beta in A-A with |alpha A +- beta A| > q/2{note}")


@dataclass
class Det2Report:
    passed: bool
    in_hypothesis: bool
    covered: int
    missing: tuple[int, ...]


def _product_table(F: FieldSpec, B) -> dict[int, tuple[int, int]]:
    """One factorization (b, b') per value of B.B, first in sorted scan order."""
    table = {}
    for b1 in B:
        for b2 in B:
            table.setdefault(F.mul(b1, b2), (b1, b2))
    return table


def det2_cover_check(F: FieldSpec, A) -> Det2Report:
    """Do the 2x2 determinants b1 b4 - b2 b3 with entries in B = A - A cover F_q?

    Uses B.B - B.B, which is the same set since b1 b4 and b2 b3 vary
    independently.
    """
    a = _arr(A)
    B = differenceset(F, a, a)
    P = productset(F, B, B)
    D = set(differenceset(F, P, P))
    missing = tuple(t for t in range(F.q) if t not in D)
    return Det2Report(not missing, _hypothesis(F, a), len(D), missing)


def lemma_two_check(F: FieldSpec, C) -> dict:
    """For |C| > q/2, C + C and C - C are all of F_q."""
    c = _arr(C)
    plus = sumset(F, c, c)
    minus = differenceset(F, c, c)
    return {
        "large": 2 * len(c) > F.q,
        "sum_covers": len(plus) == F.q,
        "difference_covers": len(minus) == F.q,
    }


# -- witnesses -----------------------------------------------------------------


@dataclass
class WitnessMatrix:
    """A d x d matrix with entries from A whose determinant is ``target``.

    The determinant is recomputed by Gaussian elimination on construction.
    """

    field: FieldSpec = dc_field(repr=False)
    rows: tuple[tuple[int, ...], ...]
    target: int
    det_checked: bool = False

    def __post_init__(self):
        self.rows = tuple(tuple(int(c) for c in r) for r in self.rows)
        got = vol(self.field, *self.rows)
        if got != self.target:
            raise AssertionError(f"witness determinant {got} != target {self.target}")
        self.det_checked = True

    @property
    def d(self) -> int:
        return len(self.rows)

    def entries(self) -> set[int]:
        return {c for r in self.rows for c in r}

    def to_dict(self) -> dict:
        return {"t": self.target, "rows": [list(r) for r in self.rows], "verified": self.det_checked}


class WitnessFactory:
    """Builds determinant witnesses for a fixed origin-free A with |A|^2 > q.

    The lookup tables (difference lifts, factorizations of B.B, the
    Glibichuk pair) are computed once and reused for every target.
    """

    def __init__(self, F: FieldSpec, A):
        self.field = F
        a = tuple(int(x) for x in _arr(A))
        # 0 cannot serve as a Glibichuk multiplier, so it is dropped; the
        # size condition is then checked on what remains.
        self.stripped_zero = bool(a) and a[0] == 0
        if self.stripped_zero:
            warnings.warn("0 removed from A before witness extraction", stacklevel=2)
            a = a[1:]
        self.A = a
        if not _hypothesis(F, self.A):
            extra = " after removing 0" if self.stripped_zero else ""
            raise HypothesisViolated(f"need |A|^2 > q{extra}; got |A|={len(self.A)}, q={F.q}")
        self.lifts: dict[int, list[tuple[int, int]]] = {}
        for x, u in product(self.A, repeat=2):
            self.lifts.setdefault(F.sub(x, u), []).append((x, u))
        self.B = tuple(sorted(self.lifts))
        self.products = _product_table(F, self.B)
        self._glib: GlibichukPair | None = None
        self._minors: list[tuple[int, int, int, int, int]] | None = None

    @property
    def glib(self) -> GlibichukPair:
        if self._glib is None:
            self._glib = glibichuk_search(self.field, self.A)
        return self._glib

    def lift(self, b: int) -> tuple[int, int]:
        return self.lifts[b][0]

    def solve_det2(self, s: int) -> tuple[int, int, int, int] | None:
        """b1, b2, b3, b4 in B with b1 b4 - b2 b3 = s."""
        F = self.field
        for p, (b1, b4) in self.products.items():
            rest = self.products.get(F.sub(p, s))
            if rest is not None:
                b2, b3 = rest
                return b1, b2, b3, b4
        return None

    def _nonzero_minors(self):
        if self._minors is None:
            F = self.field
            self._minors = [
                (x3, x4, y3, y4, m)
                for x3, x4, y3, y4 in product(self.A, repeat=4)
                if (m := F.sub(F.mul(x3, y4), F.mul(y3, x4)))
            ]
        return self._minors

    def det4(self, t: int) -> WitnessMatrix:
        """Rows (x1 x2 x3 x4), (y1 y2 y3 y4), (u1 u2 x3 x4), (v1 v2 y3 y4).

        Subtracting rows 3, 4 from rows 1, 2 leaves a block-triangular matrix,
        so the determinant is (x3 y4 - y3 x4) times the 2x2 determinant of the
        differences x1-u1, x2-u2, y1-v1, y2-v2, which all lie in A - A.
        """
        F = self.field
        minors = self._nonzero_minors()
        if not minors:
            raise NoNonzeroMinor("every 2x2 minor with entries in A vanishes")
        for x3, x4, y3, y4, m in minors:
            sol = self.solve_det2(F.div(t, m))
            if sol is None:
                continue
            b1, b2, b3, b4 = sol
            x1, u1 = self.lift(b1)
            x2, u2 = self.lift(b2)
            y1, v1 = self.lift(b3)
            y2, v2 = self.lift(b4)
            rows = ((x1, x2, x3, x4), (y1, y2, y3, y4), (u1, u2, x3, x4), (v1, v2, y3, y4))
            return WitnessMatrix(F, rows, t)
        raise Unreached(t)

    def det3(self, t: int) -> WitnessMatrix:
        """Rows (x1 x2 u3), (y1 y2 y3), (u1 u2 u3).

        With alpha = x1 - u1 and beta = x2 - u2 the determinant is
        u3 (alpha y2 - beta y1) - y3 (alpha u2 - beta u1), so for fixed
        u1, u2, u3, y3 the reachable targets are an affine image of
        alpha A - beta A. The Glibichuk pair makes that set larger than q/2.
        Every choice of the free entries is tried before giving up.
        """
        F = self.field
        gp = self.glib
        alpha = gp.alpha
        beta = gp.beta if gp.sign == "-" else F.neg(gp.beta)
        # r -> (y1, y2) with alpha y2 - beta y1 = r
        reach: dict[int, tuple[int, int]] = {}
        for y1, y2 in product(self.A, repeat=2):
            reach.setdefault(F.sub(F.mul(alpha, y2), F.mul(beta, y1)), (y1, y2))
        for x1, u1 in self.lifts[alpha]:
            for x2, u2 in self.lifts[beta]:
                k = F.sub(F.mul(alpha, u2), F.mul(beta, u1))
                for u3 in self.A:
                    inv_u3 = F.inv(u3)
                    for y3 in self.A:
                        r = F.mul(F.add(t, F.mul(y3, k)), inv_u3)
                        hit = reach.get(r)
                        if hit is not None:
                            y1, y2 = hit
                            rows = ((x1, x2, u3), (y1, y2, y3), (u1, u2, u3))
                            return WitnessMatrix(F, rows, t)
        raise Unreached(t)


def witness_det3(F: FieldSpec, t: int, A) -> WitnessMatrix:
    return WitnessFactory(F, A).det3(t)


def witness_det4(F: FieldSpec, t: int, A) -> WitnessMatrix:
    return WitnessFactory(F, A).det4(t)


@dataclass
class WitnessSweep:
    q: int
    A: tuple[int, ...]
    det4_ok: tuple[int, ...]
    det3_ok: tuple[int, ...]
    failures: int

    @property
    def det4_complete(self) -> bool:
        return len(self.det4_ok) == self.q

    @property
    def det3_majority(self) -> bool:
        return 2 * len(self.det3_ok) > self.q


def witness_sweep(F: FieldSpec, A) -> WitnessSweep:
    """Try both constructions for every target t in F_q."""
    fac = WitnessFactory(F, A)
    ok4, ok3, failures = [], [], 0
    for t in range(F.q):
        for build, ok in ((fac.det4, ok4), (fac.det3, ok3)):
            try:
                w = build(t)
            except Unreached:
                continue
            except AssertionError:
                failures += 1
                continue
            if w.entries() <= set(fac.A):
                ok.append(t)
            else:
                failures += 1
    return WitnessSweep(F.q, fac.A, tuple(ok4), tuple(ok3), failures)


@dataclass
class KickassReport:
    passed: bool
    in_hypothesis: bool
    d: int
    size: int
    fraction: float
    missing_nonzero: tuple[int, ...]


def verify_kickass(F: FieldSpec, A, d: int) -> KickassReport:
    """Is every nonzero element a sum of d products a a' with a, a' in A?

    The hypothesis |A| > q^(1/2 + 1/(2d)) is checked as |A|^(2d) > q^(d+1).
    """
    a = _arr(A)
    S = set(dA2(F, a, d))
    missing = tuple(t for t in range(1, F.q) if t not in S)
    return KickassReport(
        passed=not missing,
        in_hypothesis=len(a) ** (2 * d) > F.q ** (d + 1),
        d=d,
        size=len(S),
        fraction=float(Fraction(len(S), F.q)),
        missing_nonzero=missing,
    )
