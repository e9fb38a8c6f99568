"""Arithmetic in GF(p^n) on integer codes, plus the trace and additive character.

An element is an integer code in ``[0, q)``. Its base-``p`` digits are the
coefficients of the residue polynomial, lowest degree first, so for ``q = 9``
with modulus ``x^2 + 1`` the code ``3*b + a`` stands for ``a + b*x``.

Every operation accepts Python ints or integer numpy arrays and broadcasts.
Scalar inputs give Python ints back.
"""

from __future__ import annotations

import functools
import itertools
import math
import re

import numpy as np

from .errors import DegreeZero, DivByZero, NonPrime

MAX_ORDER = 2**16
# full q x q add/mul tables below this order, log/antilog lookups above
TABLE_LIMIT = 512


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % k for k in range(2, math.isqrt(p) + 1))


# polynomials over F_p are coefficient lists, lowest degree first


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % p
        a = _poly_trim(a)
    return a


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    n = len(m) - 1
    if n == 1:
        return True
    for k in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n (low-degree-first order)."""
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        m = list(low) + [1]
        if low[0] != 0 and _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("an irreducible polynomial exists for every degree")


class FieldSpec:
    """The finite field F_q, q = p^n, with precomputed lookup tables.

    Instances are immutable after construction and are cached by
    :func:`make_field`, so two calls with the same ``(p, n)`` return the same
    object.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.modulus = tuple(modulus)
        self.q = q = p**n
        self._pw = [p**i for i in range(n)]

        self.primitive = self._find_primitive()
        exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, self.primitive)
        exp[q - 1 :] = np.concatenate([exp[: q - 1], exp[:1]])
        self._exp = exp
        self._log = log

        codes = np.arange(q, dtype=np.int64)
        neg = np.zeros(q, dtype=np.int64)
        for i in range(n):
            neg += ((-(codes // self._pw[i])) % p) * self._pw[i]
        self._neg = neg
        inv = np.full(q, -1, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv

        if q <= TABLE_LIMIT:
            self._add_t = self._add_digits(codes[:, None], codes[None, :])
            self._mul_t = self._mul_log(codes[:, None], codes[None, :])
        else:
            self._add_t = self._mul_t = None

        # trace(a) = sum of a^(p^i), i < n
        tr = np.zeros(q, dtype=np.int64)
        for i in range(n):
            tr = self._add_digits(tr, self.pow(codes, p**i))
        if np.any(tr >= p):
            raise AssertionError("trace left the prime subfield")
        self._trace = tr
        self._chi = np.exp(2j * np.pi * tr / p)
        for arr in (exp, log, neg, inv, tr, self._chi):
            arr.setflags(write=False)

    # -- construction helpers -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        return [(a // w) % self.p for w in self._pw]

    def _from_digits(self, ds) -> int:
        return sum(int(c) * w for c, w in zip(ds, self._pw))

    def _slow_mul(self, a: int, b: int) -> int:
        p = self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.n)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self._from_digits(_poly_mod(prod, self.modulus, p))

    def _find_primitive(self) -> int:
        q = self.q
        if q == 2:
            return 1
        for g in range(2, q):
            x, order = g, 1
            while x != 1:
                x = self._slow_mul(x, g)
                order += 1
            if order == q - 1:
                return g
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def _add_digits(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        out = 0
        for w in self._pw:
            out = out + (((a // w) % self.p + (b // w) % self.p) % self.p) * w
        return out

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    # -- public arithmetic ----------------------------------------------------

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def add(self, a, b):
        if self._add_t is not None:
            return _out(self._add_t[a, b])
        return _out(self._add_digits(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)))

    def neg(self, a):
        return _out(self._neg[a])

    def sub(self, a, b):
        return self.add(a, self._neg[b])

    def mul(self, a, b):
        if self._mul_t is not None:
            return _out(self._mul_t[a, b])
        return _out(self._mul_log(a, b))

    def inv(self, a):
        a_arr = np.asarray(a)
        if np.any(a_arr == 0):
            raise DivByZero("inverse of zero")
        return _out(self._inv[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return _out(np.ones_like(a))
        r = self._exp[(self._log[a] * k) % (self.q - 1)]
        return _out(np.where(a == 0, 0, r))

    def trace(self, a):
        return _out(self._trace[a])

    def chi(self, a):
        """exp(2*pi*i*Tr(a)/p) as a complex number (or complex array)."""
        r = self._chi[a]
        return complex(r) if np.ndim(r) == 0 else r

    @property
    def chi_table(self) -> np.ndarray:
        return self._chi

    def sum(self, a, axis=None):
        """Field sum of an integer array along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return _out(a.sum(axis=axis) % self.p)
        if axis is None:
            a, axis = a.ravel(), 0
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for row in a:
            out = self._add_digits(out, row)
        return _out(out)

    def is_subfield_element(self, a, m: int):
        """True where ``a`` lies in GF(p^m), the fixed points of a -> a^(p^m)."""
        return np.asarray(self.pow(a, self.p**m)) == np.asarray(a)

    def element(self, s) -> int:
        """Parse an element code, rejecting out-of-range values."""
        v = int(s)
        if not 0 <= v < self.q:
            raise ValueError(f"element code {v} out of range for q={self.q}")
        return v

    def from_coeffs(self, coeffs) -> int:
        """Code of the polynomial with the given coefficients, lowest degree first."""
        coeffs = [int(c) % self.p for c in coeffs]
        if len(coeffs) > self.n:
            raise ValueError(f"degree {len(coeffs) - 1} too large for n={self.n}")
        return sum(c * w for c, w in zip(coeffs, self._pw))

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((int(a) // w) % self.p for w in self._pw)

    def __repr__(self):
        if self.n == 1:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.p}^{self.n}, modulus={self.modulus})"

    def describe(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "primitive": self.primitive,
        }


def _out(r):
    if np.ndim(r) == 0:
        return int(r)
    return r


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldSpec:
    """Build F_{p^n} with the lexicographically smallest monic irreducible modulus."""
    if n < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {n}")
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if p**n > MAX_ORDER:
        raise ValueError(f"q = {p}^{n} exceeds the supported order {MAX_ORDER}")
    return FieldSpec(p, n, smallest_irreducible(p, n))


def field_of_order(q: int) -> FieldSpec:
    """F_q for a prime power q."""
    if q < 2:
        raise NonPrime(f"{q} is not a prime power")
    p = next(k for k in range(2, q + 1) if q % k == 0)
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise NonPrime(f"{q} is not a prime power")
    return make_field(p, n)


_FIELD_RE = re.compile(r"^\s*(?:q\s*=\s*)?(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``"q=5"``, ``"q=3^2"``, ``"9"`` or ``"3^2"``."""
    m = _FIELD_RE.match(str(text))
    if not m:
        raise ValueError(f"cannot parse field literal {text!r}")
    base, exp = int(m.group(1)), m.group(2)
    if exp is not None:
        return make_field(base, int(exp))
    return field_of_order(base)
