"""Exact arithmetic in GF(p^m) and univariate polynomials over it.

Elements are carried as canonical integers in ``range(q)``.  For prime
fields the integer is the residue; for extension fields it is the encoding
``sum(c_i * p**i)`` of the coefficient vector modulo the field's monic
irreducible modulus.  Scalar methods (``add``, ``mul``, ...) work on Python
ints; the ``v``-prefixed methods work elementwise on numpy arrays and are
what the linear-algebra and enumeration code uses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    BadInput,
    CompositeCharacteristic,
    DivisionByZero,
    FieldMismatch,
    ReducibleModulus,
)

MAX_TABLE_Q = 1024
NEG_INF = float("-inf")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, m) with q = p**m, or raise CompositeCharacteristic."""
    if q < 2:
        raise CompositeCharacteristic(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not is_prime(p):
        raise CompositeCharacteristic(f"{q} is not a prime power")
    return p, m


# -- polynomials over the prime field, ascending coefficient lists ---------

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _fp_trim([x % p for x in a])
    b = _fp_trim([x % p for x in b])
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _fp_trim(a)
    return _fp_trim(quot), a


def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def _monic_polys_ordered(p: int, deg: int) -> Iterable[list[int]]:
    """Monic polynomials of degree ``deg`` in increasing integer encoding."""
    for code in range(p ** deg):
        low = []
        for _ in range(deg):
            low.append(code % p)
            code //= p
        yield low + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _fp_trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in _monic_polys_ordered(p, d):
            if not _fp_divmod(poly, divisor, p)[1]:
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    for cand in _monic_polys_ordered(p, m):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m).  Build with :func:`field_new`, not directly."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] = ()

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    @property
    def token(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}; modulus={','.join(map(str, self.modulus))})"

    def __repr__(self) -> str:
        return self.token

    def __call__(self, x: "ElementLike") -> "FieldElement":
        return FieldElement(self, self.coerce(x))

    # -- encoding ------------------------------------------------------------

    def coerce(self, x: "ElementLike") -> int:
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x!r} is not in {self.token}")
            return x.value
        if isinstance(x, (np.integer,)):
            x = int(x)
        if not isinstance(x, int):
            raise BadInput(f"cannot interpret {x!r} as an element of {self.token}")
        if self.m == 1:
            return x % self.p
        if not 0 <= x < self.q:
            raise BadInput(f"{x} is not a valid encoding in {self.token}")
        return x

    def coerce_all(self, xs: Iterable["ElementLike"]) -> list[int]:
        return [self.coerce(x) for x in xs]

    def digits(self, x: int) -> tuple[int, ...]:
        """Coefficient vector (length m, ascending) of an encoded element."""
        out = []
        for _ in range(self.m):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        coeffs = _fp_trim([c % self.p for c in coeffs])
        if self.m > 1 and coeffs:
            coeffs = _fp_divmod(coeffs, self.modulus, self.p)[1]
        return sum(c * self.p ** i for i, c in enumerate(coeffs))

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- extension-field tables ----------------------------------------------

    @cached_property
    def _digit_array(self) -> np.ndarray:
        xs = np.arange(self.q)
        return np.stack([(xs // self.p ** i) % self.p for i in range(self.m)], axis=1)

    @cached_property
    def _add_table(self) -> np.ndarray:
        d = self._digit_array
        s = (d[:, None, :] + d[None, :, :]) % self.p
        weights = self.p ** np.arange(self.m)
        return (s * weights).sum(axis=2)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        d = (-self._digit_array) % self.p
        return (d * self.p ** np.arange(self.m)).sum(axis=1)

    @cached_property
    def _mul_table(self) -> np.ndarray:
        p, m = self.p, self.m
        d = self._digit_array
        prod = np.zeros((self.q, self.q, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                prod[:, :, i + j] += d[:, None, i] * d[None, :, j]
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        # reduce x^t for t >= m using the monic modulus
        for t in range(2 * m - 2, m - 1, -1):
            c = prod[:, :, t].copy()
            prod[:, :, t] = 0
            for i in range(m):
                prod[:, :, t - m + i] = (prod[:, :, t - m + i] - c * mod[i]) % p
        return (prod[:, :, :m] * p ** np.arange(m)).sum(axis=2)

    @cached_property
    def _inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        for x in range(1, self.q):
            inv[x] = self._euclid_inverse(x)
        return inv

    @cached_property
    def _lists(self) -> tuple[list, list, list, list]:
        return (
            self._add_table.tolist(),
            self._mul_table.tolist(),
            self._neg_table.tolist(),
            self._inv_table.tolist(),
        )

    def _euclid_inverse(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero(f"0 has no inverse in {self.token}")
        p = self.p
        if self.m == 1:
            # extended Euclid on integers
            r0, r1, s0, s1 = p, x % p, 0, 1
            while r1:
                qt = r0 // r1
                r0, r1 = r1, r0 - qt * r1
                s0, s1 = s1, s0 - qt * s1
            return s0 % p
        # extended Euclid on polynomials over GF(p)
        r0, r1 = list(self.modulus), list(self.digits(x))
        _fp_trim(r1)
        s0, s1 = [], [1]
        while r1:
            qt, rem = _fp_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _fp_sub(s0, _fp_mul(qt, s1, p), p)
        # r0 is a nonzero constant
        c = pow(r0[0], -1, p)
        return self.encode([si * c for si in s0])

    def _check_table_size(self) -> None:
        if self.m > 1 and self.q > MAX_TABLE_Q:
            raise BadInput(f"extension fields above q={MAX_TABLE_Q} are not supported")

    # -- scalar arithmetic on encoded ints -------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return self._lists[0][a][b]

    def sub(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a - b) % self.p
        return self._lists[0][a][self._lists[2][b]]

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        return self._lists[2][a]

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        return self._lists[1][a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self.token}")
        if self.m == 1:
            return self._euclid_inverse(a)
        return self._lists[3][a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.m == 1:
            return pow(a, e, self.p)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def sum(self, xs: Iterable[int]) -> int:
        out = 0
        for x in xs:
            out = self.add(out, x)
        return out

    def prod(self, xs: Iterable[int]) -> int:
        out = 1
        for x in xs:
            out = self.mul(out, x)
        return out

    # -- vectorised arithmetic on int64 arrays -----------------------------------

    def vadd(self, a, b) -> np.ndarray:
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) + b) % self.p
        return self._add_table[a, b]

    def vsub(self, a, b) -> np.ndarray:
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) - b) % self.p
        return self._add_table[a, self._neg_table[b]]

    def vneg(self, a) -> np.ndarray:
        if self.m == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self._neg_table[a]

    def vmul(self, a, b) -> np.ndarray:
        if self.m == 1:
            return (np.asarray(a, dtype=np.int64) * b) % self.p
        return self._mul_table[a, b]

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"0 has no inverse in {self.token}")
        if self.m == 1:
            return np.vectorize(self._euclid_inverse, otypes=[np.int64])(a)
        return self._inv_table[a]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product over the field of int64 arrays (2-D @ 2-D)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            if a.shape[-1] * (self.p - 1) ** 2 < 2 ** 62:
                return (a @ b) % self.p
            out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
            for t in range(a.shape[1]):
                out = (out + (a[:, t, None] * b[None, t, :]) % self.p) % self.p
            return out
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        mt, at = self._mul_table, self._add_table
        for t in range(a.shape[1]):
            out = at[out, mt[a[:, t, None], b[None, t, :]]]
        return out


ElementLike = Union[int, "FieldElement", np.integer]


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated GF(p^m).

    With ``m > 1`` and no modulus, the monic irreducible of degree ``m`` with
    the smallest integer encoding is chosen.  A supplied modulus is an
    ascending coefficient list of length ``m + 1`` ending in 1.
    """
    if not is_prime(p):
        raise CompositeCharacteristic(f"characteristic {p} is not prime")
    if m < 1:
        raise BadInput("extension degree must be >= 1")
    if m == 1:
        if modulus not in (None, (), []):
            mod = [c % p for c in modulus]
            if len(mod) != 2 or mod[1] != 1:
                raise BadInput("modulus for a prime field must be monic of degree 1")
        return FieldSpec(p, 1, ())
    if modulus is None:
        mod = smallest_irreducible(p, m)
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise BadInput(f"modulus must be monic of degree {m}")
        if not is_irreducible(mod, p):
            raise ReducibleModulus(f"{mod} is reducible over GF({p})")
    spec = FieldSpec(p, m, tuple(mod))
    spec._check_table_size()
    return spec


def field_from_q(q: int) -> FieldSpec:
    p, m = prime_power(q)
    return field_new(p, m)


_TOKEN_RE = re.compile(r"^GF\((\d+)(?:\^(\d+)\s*;\s*modulus\s*=\s*([\d,\s]+))?\)$")


def parse_field_token(token: str) -> FieldSpec:
    mt = _TOKEN_RE.match(token.strip())
    if not mt:
        raise BadInput(f"bad field token {token!r}")
    p = int(mt.group(1))
    if mt.group(2) is None:
        return field_new(p)
    mod = [int(c) for c in mt.group(3).replace(" ", "").split(",") if c]
    return field_new(p, int(mt.group(2)), mod)


# -- element value type ------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """A single field element; compares equal to its integer encoding."""

    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.digits(self.value)

    def _other(self, other) -> int:
        return self.field.coerce(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            try:
                return self.value == self.field.coerce(int(other))
            except BadInput:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __int__(self) -> int:
        return self.value

    __index__ = __int__

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.value}@{self.field.token}"

    def inv(self) -> "FieldElement":
        return fe_inv(self)


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


# -- polynomials over GF(q) ----------------------------------------------------

@dataclass(frozen=True)
class Poly:
    """Univariate polynomial, ascending coefficients, trailing zeros stripped."""

    field: FieldSpec
    coeffs: tuple[int, ...] = dc_field(default=())

    def __post_init__(self):
        cs = [self.field.coerce(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_terms(cls, field: FieldSpec, terms: dict[int, ElementLike]) -> "Poly":
        if not terms:
            return cls(field, ())
        top = max(terms)
        cs = [0] * (top + 1)
        for e, c in terms.items():
            if e < 0:
                raise BadInput("negative exponent")
            cs[e] = field.coerce(c)
        return cls(field, tuple(cs))

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Poly") -> None:
        if other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, tuple(F.add(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(F, tuple(F.sub(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return Poly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return Poly(F, tuple(out))

    def scale(self, c: ElementLike) -> "Poly":
        c = self.field.coerce(c)
        return Poly(self.field, tuple(self.field.mul(c, a) for a in self.coeffs))

    def __call__(self, a: ElementLike) -> FieldElement:
        return poly_eval(self, a)

    def eval_int(self, a: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def eval_many(self, points: Sequence[int]) -> list[int]:
        return [self.eval_int(a) for a in points]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}x^{i}" if i > 1 else f"{c}x")
        return "+".join(terms)


def poly_eval(f: Poly, a: ElementLike) -> FieldElement:
    """Horner evaluation of ``f`` at ``a``."""
    if isinstance(a, FieldElement) and a.field != f.field:
        raise FieldMismatch(f"{a!r} is not in {f.field.token}")
    return FieldElement(f.field, f.eval_int(f.field.coerce(a)))


def vk_member(f: Poly, k: int) -> bool:
    """True iff deg f <= k and the x^(k-1) coefficient vanishes."""
    if k < 2:
        raise BadInput("vk_member needs k >= 2")
    return f.degree <= k and f.coeff(k - 1) == 0
