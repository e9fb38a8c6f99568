"""Vectors, bilinear forms, wedges, determinants and subspaces over F_q.

Vectors are tuples (or integer arrays) of element codes. A point of F_q^d
also has a single integer code, ``sum(v[i] * q**(d-1-i))``, so that code
order is lexicographic order on coordinates; :func:`encode` and
:func:`decode` convert between the two. Batched routines operate on arrays
with the coordinate axis last.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetExceeded, DimMismatch, SingularForm, ZeroDirection
from .field import FieldSpec

DEFAULT_BUDGET = 2**26


# -- point codes ---------------------------------------------------------------


def encode(F: FieldSpec, coords) -> np.ndarray | int:
    coords = np.asarray(coords, dtype=np.int64)
    d = coords.shape[-1]
    weights = F.q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    r = coords @ weights
    return int(r) if np.ndim(r) == 0 else r


def decode(F: FieldSpec, code, d: int) -> np.ndarray:
    code = np.asarray(code, dtype=np.int64)
    weights = F.q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return (code[..., None] // weights) % F.q


def all_points(F: FieldSpec, d: int) -> np.ndarray:
    """Every point of F_q^d as a (q^d, d) array, in code order."""
    return _all_points(F, d)


@lru_cache(maxsize=32)
def _all_points(F, d):
    pts = decode(F, np.arange(F.q**d, dtype=np.int64), d)
    pts.setflags(write=False)
    return pts


def unit(d: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(d))


def parse_vector(text: str) -> tuple[int, ...]:
    """``"(1,0,2)"`` -> ``(1, 0, 2)``."""
    body = text.strip().strip("()[] ")
    return tuple(int(x) for x in body.split(",") if x.strip())


# -- scalar and batched products ----------------------------------------------


def _check_dims(*vs):
    dims = {len(v) for v in vs}
    if len(dims) != 1:
        raise DimMismatch(f"vectors of different dimensions {sorted(dims)}")


def dot(F: FieldSpec, x, y) -> int:
    _check_dims(x, y)
    return int(F.sum(F.mul(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))))


def dot_matrix(F: FieldSpec, X, Y) -> np.ndarray:
    """All dot products x.y for rows x of X (m, d) and y of Y (k, d): shape (m, k)."""
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    if X.shape[-1] != Y.shape[-1]:
        raise DimMismatch("dot_matrix dimension mismatch")
    if F.n == 1 and X.shape[-1] * (F.p - 1) ** 2 < 2**62:
        return (X @ Y.T) % F.p
    acc = np.zeros((X.shape[0], Y.shape[0]), dtype=np.int64)
    for i in range(X.shape[-1]):
        acc = F.add(acc, F.mul(X[:, i, None], Y[None, :, i]))
    return acc


def mat_vec(F: FieldSpec, M, V) -> np.ndarray:
    """Apply matrix M (d, d) to each row of V (..., d): returns (..., d) with rows M v."""
    M = np.asarray(M, dtype=np.int64)
    V = np.asarray(V, dtype=np.int64)
    return dot_matrix(F, V.reshape(-1, V.shape[-1]), M).reshape(V.shape)


@dataclass(frozen=True)
class BilinForm:
    """B(x, y) = x^T M y for an invertible matrix M over F_q."""

    field: FieldSpec
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(c) for c in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if any(len(row) != len(m) for row in m):
            raise DimMismatch("bilinear form matrix must be square")
        if vol(self.field, *m) == 0:
            raise SingularForm("bilinear form matrix is singular")

    @classmethod
    def identity(cls, F: FieldSpec, d: int) -> "BilinForm":
        return cls(F, tuple(unit(d, i) for i in range(d)))

    @property
    def d(self) -> int:
        return len(self.matrix)

    @property
    def is_identity(self) -> bool:
        return self.matrix == tuple(unit(self.d, i) for i in range(self.d))

    def apply_right(self, Y) -> np.ndarray:
        """Rows of Y mapped to M y, so that B(x, y) = x . (M y)."""
        return mat_vec(self.field, self.matrix, Y)


def bilin(F: FieldSpec, x, y, B: BilinForm) -> int:
    _check_dims(x, y, B.matrix)
    return dot(F, x, B.apply_right(y))


# -- determinants and wedges ---------------------------------------------------


def vol(F: FieldSpec, *rows) -> int:
    """Determinant of the matrix whose rows are ``rows``, by Gaussian elimination."""
    d = len(rows)
    if any(len(r) != d for r in rows):
        raise DimMismatch(f"vol needs {d} vectors of dimension {d}")
    M = [[int(c) for c in r] for r in rows]
    det = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = F.neg(det)
        det = F.mul(det, M[col][col])
        inv = F.inv(M[col][col])
        for r in range(col + 1, d):
            if M[r][col]:
                f = F.mul(M[r][col], inv)
                M[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[r], M[col])]
    return det


@lru_cache(maxsize=8)
def _perms_with_sign(d):
    out = []
    for perm in itertools.permutations(range(d)):
        inversions = sum(1 for i in range(d) for j in range(i + 1, d) if perm[i] > perm[j])
        out.append((perm, inversions % 2))
    return tuple(out)


def batch_det(F: FieldSpec, M) -> np.ndarray:
    """Determinants of a stack of square matrices (..., d, d), by the Leibniz sum."""
    M = np.asarray(M, dtype=np.int64)
    d = M.shape[-1]
    if d == 0:
        return np.ones(M.shape[:-2], dtype=np.int64)
    if F.n == 1 and d * np.log2(max(F.p - 1, 1)) + np.log2(_factorial(d)) < 62:
        acc = np.zeros(M.shape[:-2], dtype=np.int64)
        for perm, odd in _perms_with_sign(d):
            term = M[..., 0, perm[0]].copy()
            for i in range(1, d):
                term *= M[..., i, perm[i]]
            acc += -term if odd else term
        return acc % F.p
    acc = np.zeros(M.shape[:-2], dtype=np.int64)
    for perm, odd in _perms_with_sign(d):
        term = M[..., 0, perm[0]]
        for i in range(1, d):
            term = F.mul(term, M[..., i, perm[i]])
        acc = F.sub(acc, term) if odd else F.add(acc, term)
    return np.asarray(acc)


def _factorial(d):
    r = 1
    for k in range(2, d + 1):
        r *= k
    return r


def batch_wedge(F: FieldSpec, U) -> np.ndarray:
    """Wedge of d-1 vectors, batched: U has shape (..., d-1, d), result (..., d).

    Coordinate j is (-1)^j times the minor with column j deleted (0-based j),
    i.e. the cofactor expansion along a symbolic first row.
    """
    U = np.asarray(U, dtype=np.int64)
    d = U.shape[-1]
    if U.shape[-2] != d - 1:
        raise DimMismatch(f"wedge needs {d - 1} vectors of dimension {d}")
    cols = []
    for j in range(d):
        keep = [c for c in range(d) if c != j]
        minor = batch_det(F, U[..., :, keep])
        cols.append(F.neg(minor) if j % 2 else minor)
    return np.stack([np.asarray(c, dtype=np.int64) for c in cols], axis=-1)


def wedge(F: FieldSpec, *vecs) -> tuple[int, ...]:
    """u^2 ^ ... ^ u^d for d-1 vectors of dimension d."""
    d = len(vecs) + 1
    if any(len(v) != d for v in vecs):
        raise DimMismatch(f"wedge needs {d - 1} vectors of dimension {d}")
    w = batch_wedge(F, np.asarray(vecs, dtype=np.int64).reshape(d - 1, d))
    return tuple(int(c) for c in w)


# -- row reduction and subspaces -----------------------------------------------


def rref(F: FieldSpec, rows) -> list[list[int]]:
    """Reduced row-echelon form with zero rows dropped."""
    M = [[int(c) for c in r] for r in rows]
    if not M:
        return []
    d = len(M[0])
    out_rows = 0
    for col in range(d):
        piv = next((r for r in range(out_rows, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[out_rows], M[piv] = M[piv], M[out_rows]
        inv = F.inv(M[out_rows][col])
        M[out_rows] = [F.mul(inv, a) for a in M[out_rows]]
        for r in range(len(M)):
            if r != out_rows and M[r][col]:
                f = M[r][col]
                M[r] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[r], M[out_rows])]
        out_rows += 1
        if out_rows == len(M):
            break
    return M[:out_rows]


def rank(F: FieldSpec, rows) -> int:
    return len(rref(F, rows))


@dataclass(frozen=True)
class Subspace:
    """An n-dimensional subspace of F_q^d, stored by its canonical RREF basis."""

    field: FieldSpec
    d: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, F: FieldSpec, vectors, d: int | None = None) -> "Subspace":
        vectors = [tuple(int(c) for c in v) for v in vectors]
        if d is None:
            d = len(vectors[0])
        return cls(F, d, tuple(tuple(r) for r in rref(F, vectors)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def points(self) -> np.ndarray:
        """All q^dim points as a (q^dim, d) array."""
        F = self.field
        if self.dim == 0:
            return np.zeros((1, self.d), dtype=np.int64)
        coeffs = all_points(F, self.dim)
        B = np.asarray(self.basis, dtype=np.int64)
        # sum_i c_i * b_i, coordinatewise
        out = np.zeros((coeffs.shape[0], self.d), dtype=np.int64)
        for i in range(self.dim):
            out = F.add(out, F.mul(coeffs[:, i, None], B[None, i, :]))
        return out

    def codes(self) -> np.ndarray:
        return np.sort(encode(self.field, self.points()))

    def __str__(self):
        return "[" + "; ".join("(" + ",".join(map(str, r)) + ")" for r in self.basis) + "]"


def gaussian_binomial(q: int, d: int, n: int) -> int:
    if n < 0 or n > d:
        return 0
    num = den = 1
    for i in range(n):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(F: FieldSpec, d: int, n: int, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    """Every n-dimensional subspace of F_q^d exactly once, via RREF representatives.

    Representatives are generated directly: choose pivot columns, then fill
    the free entries (right of each pivot, outside pivot columns) with all
    field values.
    """
    if not 0 <= n <= d:
        raise ValueError(f"need 0 <= n <= d, got n={n}, d={d}")
    count = gaussian_binomial(F.q, d, n)
    if count * max(F.q**n, 1) > budget:
        raise BudgetExceeded(f"{count} subspaces of dim {n} in F_{F.q}^{d} exceed budget {budget}")
    if n == 0:
        return [Subspace(F, d, ())]
    out = []
    q = F.q
    for pivots in itertools.combinations(range(d), n):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * d for _ in range(n)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            out.append(Subspace(F, d, tuple(tuple(r) for r in rows)))
    return out


@dataclass(frozen=True)
class Line:
    """l_k = {t k : t nonzero}, the punctured line through k."""

    field: FieldSpec
    direction: tuple[int, ...]

    def points(self) -> np.ndarray:
        F = self.field
        t = np.arange(1, F.q, dtype=np.int64)
        return np.asarray(F.mul(t[:, None], np.asarray(self.direction, dtype=np.int64)[None, :]))

    def codes(self) -> frozenset[int]:
        return frozenset(int(c) for c in np.atleast_1d(encode(self.field, self.points())))

    def __eq__(self, other):
        return isinstance(other, Line) and self.field is other.field and self.codes() == other.codes()

    def __hash__(self):
        return hash(self.codes())

    def __len__(self):
        return self.field.q - 1


def line_of(F: FieldSpec, k) -> Line:
    k = tuple(int(c) for c in k)
    if not any(k):
        raise ZeroDirection("l_k needs a nonzero direction")
    return Line(F, k)


def scale_codes(F: FieldSpec, s: int, codes, d: int) -> np.ndarray:
    """Codes of s*x for points x given by code."""
    return encode(F, F.mul(s, decode(F, codes, d)))
