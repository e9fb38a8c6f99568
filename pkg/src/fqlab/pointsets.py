"""Point sets E in F_q^d, weight functions on F_q^d, and structural predicates."""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import BudgetExceeded, EmptyA, NotDivisor, SizeTooLarge, WrongDim
from .field import FieldSpec
from .geometry import (
    DEFAULT_BUDGET,
    Subspace,
    all_points,
    decode,
    encode,
    enumerate_subspaces,
    parse_vector,
    rref,
)

DENSE_LIMIT = 2**24


class PointSet:
    """A finite set E of points in F_q^d, held as sorted unique point codes."""

    def __init__(self, field: FieldSpec, d: int, codes):
        self.field = field
        self.d = d
        codes = np.unique(np.asarray(codes, dtype=np.int64).ravel())
        if codes.size and (codes[0] < 0 or codes[-1] >= field.q**d):
            raise ValueError("point code out of range")
        codes.setflags(write=False)
        self.codes = codes

    @classmethod
    def from_points(cls, field: FieldSpec, points, d: int | None = None) -> "PointSet":
        pts = np.asarray(points, dtype=np.int64)
        if d is None:
            d = pts.shape[-1]
        if pts.size == 0:
            return cls(field, d, [])
        return cls(field, d, encode(field, pts.reshape(-1, d)))

    def __len__(self):
        return int(self.codes.size)

    @property
    def size(self) -> int:
        return len(self)

    def __repr__(self):
        return f"PointSet(q={self.field.q}, d={self.d}, |E|={len(self)})"

    def __eq__(self, other):
        return (
            isinstance(other, PointSet)
            and self.field is other.field
            and self.d == other.d
            and np.array_equal(self.codes, other.codes)
        )

    def __hash__(self):
        return hash((self.field.q, self.d, self.codes.tobytes()))

    @cached_property
    def coords(self) -> np.ndarray:
        return decode(self.field, self.codes, self.d)

    @cached_property
    def mask(self) -> np.ndarray:
        """Dense membership indicator over all q^d codes."""
        n = self.field.q**self.d
        if n > DENSE_LIMIT:
            raise BudgetExceeded(f"dense indicator of size {n} exceeds {DENSE_LIMIT}")
        m = np.zeros(n, dtype=bool)
        m[self.codes] = True
        m.setflags(write=False)
        return m

    def contains(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        if self.field.q**self.d <= DENSE_LIMIT:
            return self.mask[codes]
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, max(len(self) - 1, 0))
        return (self.codes[idx] == codes) if len(self) else np.zeros(codes.shape, bool)

    def __contains__(self, point) -> bool:
        return bool(self.contains(encode(self.field, point)))

    @property
    def contains_origin(self) -> bool:
        return bool(len(self) and self.codes[0] == 0)

    def without_origin(self) -> "PointSet":
        return PointSet(self.field, self.d, self.codes[self.codes != 0])

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet(self.field, self.d, np.concatenate([self.codes, other.codes]))

    def transform(self, M) -> "PointSet":
        """The image {M x : x in E} under a d x d matrix."""
        from .geometry import mat_vec

        return PointSet.from_points(self.field, mat_vec(self.field, M, self.coords), self.d)


@dataclass(eq=False)
class WeightFn:
    """A non-negative integer weight on F_q^d, stored densely by point code."""

    field: FieldSpec
    d: int
    weights: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.int64)
        if w.shape != (self.field.q**self.d,):
            raise ValueError(f"weights must have length q^d = {self.field.q**self.d}")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        w.setflags(write=False)
        self.weights = w

    @classmethod
    def indicator(cls, E: PointSet) -> "WeightFn":
        return cls(E.field, E.d, E.mask.astype(np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, d: int) -> "WeightFn":
        return cls(field, d, np.zeros(field.q**d, dtype=np.int64))

    @classmethod
    def constant(cls, field: FieldSpec, d: int, value: int = 1) -> "WeightFn":
        return cls(field, d, np.full(field.q**d, value, dtype=np.int64))

    @classmethod
    def random(cls, field, d, seed, density=0.3, max_weight=4, exclude_origin=False) -> "WeightFn":
        rng = np.random.default_rng(seed)
        n = field.q**d
        w = rng.integers(1, max_weight + 1, size=n) * (rng.random(n) < density)
        if exclude_origin:
            w[0] = 0
        return cls(field, d, w)

    @cached_property
    def l1(self) -> int:
        return int(self.weights.sum())

    @cached_property
    def l2sq(self) -> int:
        return sum(int(v) * int(v) for v in self.weights[self.weights != 0])

    @cached_property
    def support_codes(self) -> np.ndarray:
        return np.flatnonzero(self.weights)

    def support(self) -> PointSet:
        return PointSet(self.field, self.d, self.support_codes)

    def __call__(self, point) -> int:
        return int(self.weights[encode(self.field, point)])


# -- constructors --------------------------------------------------------------


def product_set(field: FieldSpec, A, d: int) -> PointSet:
    """E = A x ... x A (d factors)."""
    A = sorted({int(a) for a in A})
    if not A:
        raise EmptyA("product_set needs a nonempty scalar set")
    grids = np.meshgrid(*([np.asarray(A, dtype=np.int64)] * d), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    return PointSet.from_points(field, pts, d)


def subfield_elements(field: FieldSpec, m: int) -> np.ndarray:
    """The subfield GF(p^m) of GF(p^n), as the fixed points of a -> a^(p^m)."""
    if m < 1 or field.n % m:
        raise NotDivisor(f"{m} does not divide the extension degree {field.n}")
    els = field.elements
    return els[field.is_subfield_element(els, m)]


def subfield_set(field: FieldSpec, m: int, d: int) -> PointSet:
    return product_set(field, subfield_elements(field, m), d)


def full_space(field: FieldSpec, d: int, exclude_origin: bool = False) -> PointSet:
    codes = np.arange(1 if exclude_origin else 0, field.q**d)
    return PointSet(field, d, codes)


def random_set(field: FieldSpec, d: int, size: int, seed: int, exclude_origin: bool = False) -> PointSet:
    """A uniformly random subset of the given size, reproducible from ``seed``."""
    n = field.q**d
    pool = n - 1 if exclude_origin else n
    if size > pool or size < 0:
        raise SizeTooLarge(f"cannot draw {size} points from {pool}")
    rng = np.random.default_rng(seed)
    codes = rng.choice(pool, size=size, replace=False)
    if exclude_origin:
        codes = codes + 1
    return PointSet(field, d, codes)


def plane_set(H: Subspace) -> PointSet:
    """All q^2 points of a 2-dimensional subspace of F_q^3."""
    if H.d != 3 or H.dim != 2:
        raise WrongDim("plane_set needs a 2-dimensional subspace of F_q^3")
    return subspace_set(H)


def subspace_set(H: Subspace) -> PointSet:
    return PointSet.from_points(H.field, H.points(), H.d)


def line_set(field: FieldSpec, k) -> PointSet:
    """The full line {t k : t in F_q}, origin included."""
    return subspace_set(Subspace.span(field, [k]))


# -- structural predicates -----------------------------------------------------


def intersect_subspace(E: PointSet, H: Subspace, budget: int = DEFAULT_BUDGET) -> int:
    """Exact |E cap H| by testing each point of H for membership."""
    if len(E) == 0:
        return 0
    if E.field.q**H.dim > budget:
        raise BudgetExceeded(f"subspace has {E.field.q**H.dim} points")
    return int(E.contains(encode(E.field, H.points())).sum())


def _exact_le(count: int, c: float, size: int, n: int, d: int) -> bool:
    """count <= c * size^(n/d), decided exactly as count^d <= c^d size^n."""
    c = Fraction(c)
    return Fraction(count) ** d <= c**d * Fraction(size) ** n


@dataclass
class ProductLikeReport:
    passed: bool
    c: float
    worst_dim: int | None
    worst_subspace: str | None
    worst_count: int
    worst_ratio: float
    ratios_by_dim: dict = dc_field(default_factory=dict)


def is_product_like(E: PointSet, c: float = 1.0, budget: int = DEFAULT_BUDGET) -> ProductLikeReport:
    """Check |E cap H_n| <= c |E|^(n/d) for every subspace H_n, 1 <= n < d."""
    F, d = E.field, E.d
    size = len(E)
    passed = True
    worst = (None, None, 0, 0.0)
    by_dim = {}
    for n in range(1, d):
        dim_worst = 0.0
        for H in enumerate_subspaces(F, d, n, budget):
            cnt = intersect_subspace(E, H, budget)
            ratio = cnt / size ** (n / d) if size else 0.0
            dim_worst = max(dim_worst, ratio)
            if not _exact_le(cnt, c, size, n, d):
                passed = False
            if ratio > worst[3]:
                worst = (n, str(H), cnt, ratio)
        by_dim[n] = dim_worst
    return ProductLikeReport(passed, c, worst[0], worst[1], worst[2], worst[3], by_dim)


@dataclass
class GeneralPositionReport:
    passed: bool
    failing_dim: int | None = None
    failing_subspace: str | None = None
    checked: int = 0


def _complement_in(F: FieldSpec, E: PointSet, H: Subspace, order) -> list | None:
    """Vectors of E extending a basis of H to a basis of F_q^d, chosen greedily.

    Independent sets containing H's basis form a matroid, so scanning E once
    and keeping each vector that raises the rank finds a complement whenever
    one exists.
    """
    d = E.d
    basis = [list(r) for r in H.basis]
    chosen = []
    if len(basis) == d:
        return chosen
    for idx in order:
        v = [int(c) for c in E.coords[idx]]
        if len(rref(F, basis + [v])) > len(basis):
            basis.append(v)
            chosen.append(tuple(v))
            if len(basis) == d:
                return chosen
    return None


def is_general_position(E: PointSet, seed: int = 0, budget: int = DEFAULT_BUDGET) -> GeneralPositionReport:
    """For every subspace H_n (0 <= n < d) look for d-n independent vectors of E
    whose span meets H_n only at the origin."""
    F, d = E.field, E.d
    order = np.random.default_rng(seed).permutation(len(E))
    checked = 0
    for n in range(0, d):
        for H in enumerate_subspaces(F, d, n, budget):
            checked += 1
            if _complement_in(F, E, H, order) is None:
                return GeneralPositionReport(False, n, str(H), checked)
    return GeneralPositionReport(True, None, None, checked)


@dataclass
class SubspaceBoundReport:
    passed: bool
    worst_dim: int | None
    worst_count: int
    worst_ratio: float


def subspace_growth_check(E: PointSet, c: float = 1.0, budget: int = DEFAULT_BUDGET) -> SubspaceBoundReport:
    """Check |E cap H_n| <= c q^((n+1)/2) for every subspace H_n, 1 <= n < d."""
    F, d = E.field, E.d
    passed, worst = True, (None, 0, 0.0)
    cf = Fraction(c)
    for n in range(1, d):
        for H in enumerate_subspaces(F, d, n, budget):
            cnt = intersect_subspace(E, H, budget)
            # cnt <= c q^((n+1)/2)  <=>  cnt^2 <= c^2 q^(n+1)
            if Fraction(cnt) ** 2 > cf**2 * F.q ** (n + 1):
                passed = False
            ratio = cnt / F.q ** ((n + 1) / 2)
            if ratio > worst[2]:
                worst = (n, cnt, ratio)
    return SubspaceBoundReport(passed, *worst)


# -- literal parsing -----------------------------------------------------------


def parse_scalar_set(field: FieldSpec, text: str, seed: int = 0) -> list[int]:
    """``"1,2,3"``, ``"subfield:1"``, ``"nonzero"`` or ``"random:size=5;seed=3"``."""
    text = text.strip()
    if text.startswith("A="):
        text = text[2:]
    if text.startswith("subfield:"):
        return [int(a) for a in subfield_elements(field, int(text.split(":", 1)[1]))]
    if text == "nonzero":
        return list(range(1, field.q))
    if text == "all":
        return list(range(field.q))
    if text.startswith("random:"):
        opts = _parse_opts(text.split(":", 1)[1])
        size = int(opts["size"])
        rng = np.random.default_rng(int(opts.get("seed", seed)))
        lo = 1 if opts.get("nonzero", "1") == "1" else 0
        return sorted(int(a) for a in rng.choice(np.arange(lo, field.q), size=size, replace=False))
    return sorted({field.element(a) for a in text.split(",") if a.strip()})


def _parse_opts(text: str) -> dict:
    out = {}
    for part in re.split(r";", text):
        if part.strip():
            k, _, v = part.partition("=")
            out[k.strip()] = v.strip()
    return out


def parse_point_set(field: FieldSpec, text: str, d: int | None = None, seed: int = 0) -> PointSet:
    """Parse ``"product:A=1,2,3;d=3"``, ``"subfield:m=1;d=4"``,
    ``"random:size=100;seed=7"``, ``"plane:basis=(1,0,0),(0,1,0)"``, ``"full"``
    or ``"full-nonzero"``."""
    kind, _, rest = text.strip().partition(":")
    opts = _parse_opts(rest)
    dd = int(opts.get("d", d or 3))
    if kind == "product":
        return product_set(field, parse_scalar_set(field, opts["A"]), dd)
    if kind == "subfield":
        return subfield_set(field, int(opts.get("m", 1)), dd)
    if kind == "random":
        return random_set(
            field,
            dd,
            int(opts["size"]),
            int(opts.get("seed", seed)),
            exclude_origin=opts.get("exclude_origin", "0") == "1",
        )
    if kind in ("plane", "subspace"):
        vecs = [parse_vector(v) for v in re.findall(r"\([^)]*\)", opts["basis"])]
        H = Subspace.span(field, vecs)
        return plane_set(H) if kind == "plane" else subspace_set(H)
    if kind == "full":
        return full_space(field, dd)
    if kind == "full-nonzero":
        return full_space(field, dd, exclude_origin=True)
    raise ValueError(f"unknown point set literal {text!r}")


__all__ = [
    "PointSet",
    "WeightFn",
    "product_set",
    "subfield_elements",
    "subfield_set",
    "full_space",
    "random_set",
    "plane_set",
    "subspace_set",
    "line_set",
    "intersect_subspace",
    "is_product_like",
    "is_general_position",
    "subspace_growth_check",
    "parse_scalar_set",
    "parse_point_set",
    "all_points",
]
