"""Exact arithmetic in GF(p^m).

Elements are stored as integer codes ``sum(c_i * p**i)`` where ``c_i`` are the
ascending coefficients of the representative polynomial modulo the field's
canonical modulus.  Scalar work goes through :class:`FieldElement`; bulk work
goes through the vectorized methods of :class:`GF`, which operate on numpy
integer arrays of codes and are backed by log/antilog tables.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DegreeZero,
    DivisionByZero,
    FieldMismatch,
    NotASubfieldTower,
    NotPrime,
    OrderTooLarge,
    ParseError,
)

MATERIALIZATION_CAP = 1 << 20
ADD_TABLE_CAP = 1 << 10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, s)`` with ``q == p**s``, or raise ``NotPrime``."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = ps[0]
    s = round(math.log(q, p))
    while p**s < q:
        s += 1
    while p**s > q:
        s -= 1
    if p**s != q:
        raise NotPrime(f"{q} is not a prime power")
    return p, s


# -- dense polynomials over Z_p (ascending int lists), used for field setup --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_mod(a: list[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _zp_mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zp_mod(out, f, p)


def _zp_powmod(base: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _zp_mod(list(base), f, p)
    while e:
        if e & 1:
            result = _zp_mulmod(result, base, f, p)
        base = _zp_mulmod(base, base, f, p)
        e >>= 1
    return result


def _zp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while b:
        a, b = b, _zp_mod(a, b, p)
    return a


def is_irreducible_zp(f: Sequence[int], p: int) -> bool:
    """Rabin-style test for a monic polynomial over Z_p (ascending coefficients)."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(m // 2):
        xp = _zp_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _zp_gcd(list(f), diff, p)
        if len(g) > 1:
            return False
    return True


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over Z_p.

    The order is on the tuple ``(c_0, ..., c_{m-1})`` of non-leading
    coefficients.  The result includes the leading 1.
    """
    for tail in itertools.product(range(p), repeat=m):
        f = tuple(tail) + (1,)
        if m > 1 and tail[0] == 0:
            continue
        if is_irreducible_zp(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def field_make(p: int, m: int = 1, cap: int = MATERIALIZATION_CAP) -> "GF":
    """Construct GF(p^m) with its canonical modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise DegreeZero("extension degree must be at least 1")
    if p**m > cap:
        raise OrderTooLarge(f"GF({p}^{m}) exceeds the materialization cap {cap}")
    return GF(p, m, canonical_modulus(p, m))


def field_of_order(q: int, cap: int = MATERIALIZATION_CAP) -> "GF":
    p, s = prime_power(q)
    return field_make(p, s, cap)


class GF:
    """Finite field descriptor plus vectorized arithmetic on integer codes.

    Instances are immutable and compare equal when ``(p, m, modulus)`` agree.
    Build them with :func:`field_make`, which caches by ``(p, m)``.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int]):
        self.p = p
        self.m = m
        self.modulus = tuple(int(c) for c in modulus)
        self.order = p**m
        self._weights = p ** np.arange(m, dtype=np.int64)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, d: dict) -> "GF":
        F = field_make(int(d["p"]), int(d.get("m", 1)))
        if "modulus" in d and tuple(d["modulus"]) != F.modulus:
            raise ParseError(f"modulus {d['modulus']} is not canonical for {F}")
        return F

    # -- tables ------------------------------------------------------------

    @functools.cached_property
    def _digit_table(self) -> np.ndarray:
        codes = np.arange(self.order, dtype=np.int64)
        return (codes[:, None] // self._weights[None, :]) % self.p

    def _slow_mul(self, a: int, b: int) -> int:
        da = [int(c) for c in self._digit_table[a]]
        db = [int(c) for c in self._digit_table[b]]
        return self._code(_zp_mulmod(_trim(da), _trim(db), self.modulus, self.p))

    def _code(self, coeffs: Sequence[int]) -> int:
        return int(sum(int(c) * self.p**i for i, c in enumerate(coeffs)))

    @functools.cached_property
    def primitive_element(self) -> int:
        q1 = self.order - 1
        if q1 == 1:
            return 1
        exps = [q1 // r for r in prime_factors(q1)]
        for g in self.elements()[1:]:
            g = int(g)
            dg = _trim([int(c) for c in self._digit_table[g]])
            if all(_zp_powmod(dg, e, self.modulus, self.p) != [1] for e in exps):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    @functools.cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        p, m, q1 = self.p, self.m, self.order - 1
        g = self.primitive_element
        # multiplication-by-g as an m x m matrix acting on digit columns
        cols = [self._digit_table[self._slow_mul(g, self._code([0] * j + [1]))] for j in range(m)]
        M = np.array(cols, dtype=np.int64).T
        P = np.zeros((1, m), dtype=np.int64)
        P[0, 0] = 1
        Mk = M
        while P.shape[0] < q1:
            P = np.vstack([P, (P @ Mk.T) % p])
            Mk = (Mk @ Mk) % p
        P = P[:q1]
        exp = P @ self._weights
        exp2 = np.concatenate([exp, exp]).astype(np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(q1, dtype=np.int64)
        log[0] = -1
        return exp2, log

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp_log[0]

    @property
    def log_table(self) -> np.ndarray:
        return self._exp_log[1]

    @functools.cached_property
    def _neg_table(self) -> np.ndarray:
        return ((-self._digit_table) % self.p) @ self._weights

    @functools.cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.p == 2 or self.order > ADD_TABLE_CAP:
            return None
        D = self._digit_table
        S = (D[:, None, :] + D[None, :, :]) % self.p
        return (S @ self._weights).astype(np.int64)

    @functools.cached_property
    def tpow_digits(self) -> np.ndarray:
        """Digit vectors of t**k for k < 2m - 1, shape (2m - 1, m)."""
        m = self.m
        out = np.zeros((2 * m - 1, m), dtype=np.int64)
        t = self.p if m > 1 else 1
        code = 1
        for k in range(2 * m - 1):
            out[k] = self._digit_table[code]
            code = self._slow_mul(code, t)
        return out

    def combine(self, C: np.ndarray) -> np.ndarray:
        """Fold integer coefficients of t**k (axis 0, length 2m - 1) into codes.

        ``C[k]`` holds integer (unreduced) coefficients of t**k; the result is
        the field element sum(C[k] * t**k) for each trailing index.
        """
        C = np.asarray(C, dtype=np.int64) % self.p
        D = np.tensordot(C, self.tpow_digits, axes=(0, 0)) % self.p
        return D @ self._weights

    # -- vectorized arithmetic on code arrays -------------------------------

    def digits(self, a) -> np.ndarray:
        return self._digit_table[np.asarray(a, dtype=np.int64)]

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._weights

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        T = self._add_table
        if T is not None:
            return T[a, b]
        D = self._digit_table
        return ((D[a] + D[b]) % self.p) @ self._weights

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.m == 1:
            return (-a) % self.p
        return self._neg_table[a]

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        exp, log = self._exp_log
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        exp, log = self._exp_log
        return exp[(self.order - 1 - log[a]) % (self.order - 1)]

    def pow(self, a, e: int) -> np.ndarray:
        """Entrywise power; ``0**0 == 1``."""
        a = np.asarray(a, dtype=np.int64)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return np.ones_like(a)
        exp, log = self._exp_log
        q1 = self.order - 1
        out = exp[(log[a] * (e % q1)) % q1]
        return np.where(a == 0, 0, out)

    def frobenius(self, a, k: int = 1) -> np.ndarray:
        return self.pow(a, self.p**k)

    def subfield_exponent(self, q: int) -> int:
        """Return s with q == p**s and s | m, else raise ``NotASubfieldTower``."""
        try:
            p, s = prime_power(q)
        except NotPrime:
            raise NotASubfieldTower(f"{q} is not a prime power") from None
        if p != self.p or self.m % s:
            raise NotASubfieldTower(f"GF({q}) is not a subfield of {self}")
        return s

    def in_subfield(self, a, q: int) -> np.ndarray:
        self.subfield_exponent(q)
        a = np.asarray(a, dtype=np.int64)
        return self.pow(a, q) == a

    def trace(self, a, q: int, r: int | None = None) -> np.ndarray:
        """Relative trace to GF(q): sum of a**(q**i) for i < r."""
        s = self.subfield_exponent(q)
        if r is None:
            r = self.m // s
        if q**r != self.order:
            raise NotASubfieldTower(f"{q}^{r} != {self.order}")
        a = np.asarray(a, dtype=np.int64)
        acc = a.copy()
        conj = a
        for _ in range(r - 1):
            conj = self.pow(conj, q)
            acc = self.add(acc, conj)
        return acc

    def elements(self) -> np.ndarray:
        """All codes in lexicographic order of (c_0, ..., c_{m-1})."""
        return self._enumeration

    @functools.cached_property
    def _enumeration(self) -> np.ndarray:
        idx = np.arange(self.order, dtype=np.int64)
        big_endian = (idx[:, None] // self._weights[None, ::-1]) % self.p
        return big_endian @ self._weights

    @functools.cached_property
    def enumeration_rank(self) -> np.ndarray:
        rank = np.empty(self.order, dtype=np.int64)
        rank[self._enumeration] = np.arange(self.order)
        return rank

    # -- scalar helpers ----------------------------------------------------

    def __call__(self, x) -> "FieldElement":
        return self.element(x)

    def element(self, x) -> "FieldElement":
        """Coerce an int code, coefficient list, text encoding or element."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldMismatch(f"{x.field} vs {self}")
            return x
        if isinstance(x, str):
            try:
                coeffs = [int(c) for c in x.split(",")]
            except ValueError:
                raise ParseError(f"bad element text {x!r}") from None
            return self.element(coeffs)
        if isinstance(x, (list, tuple, np.ndarray)) and np.ndim(x) == 1:
            coeffs = [int(c) for c in x]
            if len(coeffs) > self.m or any(not 0 <= c < self.p for c in coeffs):
                raise ParseError(f"bad coefficient vector {coeffs} for {self}")
            return FieldElement(self, self._code(coeffs))
        v = int(x)
        if not 0 <= v < self.order:
            raise ParseError(f"code {v} out of range for {self}")
        return FieldElement(self, v)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t (the prime-field generator 1 when m == 1)."""
        return FieldElement(self, self.p if self.m > 1 else 1)

    def prime_scalar(self, n: int) -> int:
        """Code of the image of the integer n."""
        return n % self.p

    def text(self, code: int) -> str:
        return ",".join(str(int(c)) for c in self._digit_table[int(code)])

    def short_text(self, code: int) -> str:
        """Bare integer for prime-field elements, (c0,c1,..) otherwise."""
        code = int(code)
        if code < self.p:
            return str(code)
        return "(" + self.text(code) + ")"


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field._digit_table[self.value])

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.prime_scalar(int(other))
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        o = self._other(other)
        return self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __truediv__(self, other):
        o = self._other(other)
        return self * FieldElement(self.field, o).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._wrap(self.field.pow(self.value, e))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.field.prime_scalar(int(other))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.text(self.value)

    def __repr__(self) -> str:
        return f"{self.field!r}({self.field.text(self.value)})"


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return a**e


def trace_rel(a: FieldElement, q: int, r: int) -> FieldElement:
    """Relative trace of a from GF(q^r) down to GF(q)."""
    return FieldElement(a.field, int(a.field.trace(a.value, q, r)))


def in_subfield(a: FieldElement, q: int) -> bool:
    return bool(a.field.in_subfield(a.value, q))


def enumerate_field(F: GF, cap: int = MATERIALIZATION_CAP) -> Iterator[FieldElement]:
    if F.order > cap:
        raise OrderTooLarge(f"{F} exceeds cap {cap}")
    for v in F.elements():
        yield FieldElement(F, int(v))


def elements_from(F: GF, values: Iterable) -> np.ndarray:
    """Convert an iterable of anything :meth:`GF.element` accepts to codes."""
    return np.array([F.element(v).value for v in values], dtype=np.int64)
