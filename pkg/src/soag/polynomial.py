"""Univariate polynomials over GF(p^m).

Coefficients are integer codes of the base field, ascending by degree.  The
zero polynomial has an empty coefficient vector and degree -1.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import (
    CoefficientsNotInSubfield,
    DivisionByZero,
    DuplicatePoint,
    FieldMismatch,
    NotASubfieldTower,
    OrderTooLarge,
    ZeroPolynomial,
)
from .finite_field import GF, MATERIALIZATION_CAP, FieldElement


def _trimmed(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class Polynomial:
    """Immutable univariate polynomial over a finite field.

    The constructor takes coefficients as anything ``GF.element`` accepts, so
    plain ints are element codes.  :meth:`from_terms` instead reads ints as
    prime-field scalars, which allows ``{0: -1}``.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable = ()):
        self.field = field
        arr = np.array([field.element(c).value for c in coeffs] if not isinstance(coeffs, np.ndarray)
                       else coeffs, dtype=np.int64)
        arr = _trimmed(arr.copy())
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def _raw(cls, field: GF, coeffs: np.ndarray) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.field = field
        arr = _trimmed(np.asarray(coeffs, dtype=np.int64))
        arr.setflags(write=False)
        obj.coeffs = arr
        return obj

    @classmethod
    def from_terms(cls, field: GF, terms: Mapping[int, object]) -> "Polynomial":
        """Build from ``{exponent: coefficient}``; ints are prime-field scalars."""
        if not terms:
            return cls._raw(field, np.zeros(0, dtype=np.int64))
        c = np.zeros(max(terms) + 1, dtype=np.int64)
        for e, v in terms.items():
            code = field.prime_scalar(v) if isinstance(v, (int, np.integer)) else field.element(v).value
            c[e] = field.add(c[e], code)
        return cls._raw(field, c)

    @classmethod
    def monomial(cls, field: GF, e: int, coeff=1) -> "Polynomial":
        return cls.from_terms(field, {e: coeff})

    @classmethod
    def constant(cls, field: GF, c) -> "Polynomial":
        return cls.from_terms(field, {0: c})

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def lead(self) -> int:
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return int(self.coeffs[-1])

    def is_monic(self) -> bool:
        return not self.is_zero() and self.lead == 1

    def coeff(self, e: int) -> int:
        return int(self.coeffs[e]) if 0 <= e < len(self.coeffs) else 0

    def terms(self) -> dict[int, int]:
        return {int(e): int(self.coeffs[e]) for e in np.nonzero(self.coeffs)[0]}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"Polynomial({self.field!r}, {self.text()})"

    def text(self, var: str = "z") -> str:
        """Ascending text form such as ``2 + z + (0,1)*z^3``."""
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.terms().items():
            cs = self.field.short_text(c)
            if e == 0:
                parts.append(cs)
                continue
            mono = var if e == 1 else f"{var}^{e}"
            parts.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(), "coeffs": [[int(d) for d in F.digits(c)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, d: dict) -> "Polynomial":
        F = GF.from_json(d["field"])
        return cls(F, [list(c) for c in d["coeffs"]])

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, np.integer, FieldElement)):
            return Polynomial.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return Polynomial._raw(F, F.add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        code = c.value if isinstance(c, FieldElement) else self.field.prime_scalar(int(c))
        return Polynomial._raw(self.field, self.field.mul(self.coeffs, code))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial._raw(self.field, np.zeros(0, dtype=np.int64))
        F = self.field
        A = F.digits(self.coeffs)
        B = F.digits(other.coeffs)
        m = F.m
        n = len(self.coeffs) + len(other.coeffs) - 1
        C = np.zeros((2 * m - 1, n), dtype=np.int64)
        for i in range(m):
            ai = A[:, i]
            if not ai.any():
                continue
            for j in range(m):
                bj = B[:, j]
                if bj.any():
                    C[i + j] += np.convolve(ai, bj)
        return Polynomial._raw(F, F.combine(C))

    __rmul__ = __mul__

    def shift(self, k: int) -> "Polynomial":
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return Polynomial._raw(self.field, np.concatenate([np.zeros(k, dtype=np.int64), self.coeffs]))

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        db = other.degree
        r = self.coeffs.copy()
        if len(r) - 1 < db:
            return Polynomial._raw(F, np.zeros(0, dtype=np.int64)), self
        qc = np.zeros(len(r) - db, dtype=np.int64)
        inv_lead = int(F.inv(other.lead))
        b = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = int(r[k + db])
            if c == 0:
                continue
            c = int(F.mul(c, inv_lead))
            qc[k] = c
            r[k : k + db + 1] = F.sub(r[k : k + db + 1], F.mul(b, c))
        return Polynomial._raw(F, qc), Polynomial._raw(F, r[:db])

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return Polynomial._raw(self.field, self.field.mul(self.coeffs, self.field.inv(self.lead)))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, x) -> np.ndarray:
        """Horner evaluation at an array of codes."""
        F = self.field
        x = np.asarray(x, dtype=np.int64)
        acc = np.zeros_like(x)
        for c in self.coeffs[::-1]:
            acc = F.add(F.mul(acc, x), int(c))
        return acc

    def __call__(self, x):
        if isinstance(x, FieldElement):
            if x.field != self.field:
                raise FieldMismatch(f"{x.field} vs {self.field}")
            return FieldElement(self.field, int(self.evaluate(x.value)))
        return self.evaluate(x)

    def derivative(self) -> "Polynomial":
        F = self.field
        if len(self.coeffs) <= 1:
            return Polynomial._raw(F, np.zeros(0, dtype=np.int64))
        idx = np.arange(1, len(self.coeffs), dtype=np.int64) % F.p
        return Polynomial._raw(F, F.mul(self.coeffs[1:], idx))

    def roots(self, cap: int = MATERIALIZATION_CAP) -> list[int]:
        return poly_roots(self, cap)[0]


# -- module-level operations --------------------------------------------------

def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    a._check(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_derivative(f: Polynomial) -> Polynomial:
    return f.derivative()


def poly_powmod(base: Polynomial, e: int, modpoly: Polynomial) -> Polynomial:
    """base**e mod modpoly by square-and-multiply."""
    if modpoly.is_zero():
        raise DivisionByZero("modulus is zero")
    if modpoly.degree < 1:
        raise DivisionByZero("modulus must have degree at least 1")
    F = base.field
    result = Polynomial.constant(F, 1)
    b = base % modpoly
    while e:
        if e & 1:
            result = (result * b) % modpoly
        e >>= 1
        if e:
            b = (b * b) % modpoly
    return result % modpoly


def poly_roots(f: Polynomial, cap: int = MATERIALIZATION_CAP) -> tuple[list[int], bool]:
    """Distinct roots in the base field by exhaustive scan.

    Returns the roots (codes, in field enumeration order) and whether f splits
    with distinct roots, i.e. the number of roots equals deg f.
    """
    if f.is_zero():
        raise ZeroPolynomial("every element is a root of 0")
    F = f.field
    if F.order > cap:
        raise OrderTooLarge(f"{F} exceeds cap {cap}")
    elems = F.elements()
    vals = f.evaluate(elems)
    roots = [int(v) for v in elems[vals == 0]]
    return roots, len(roots) == f.degree


def vanishing_poly(field: GF, points: Iterable) -> Polynomial:
    """Monic product of (z - a) over distinct points."""
    codes = [field.element(a).value if not isinstance(a, (int, np.integer)) else int(a) for a in points]
    if len(set(codes)) != len(codes):
        raise DuplicatePoint("points must be distinct")
    c = np.ones(1, dtype=np.int64)
    for a in codes:
        shifted = np.concatenate([[0], c])
        scaled = np.concatenate([field.mul(c, field.neg(a)), [0]])
        c = field.add(shifted, scaled)
    return Polynomial._raw(field, c)


def fold_exponent(e: int, order: int) -> int:
    """Reduce an exponent so z**e induces the same map on GF(order)."""
    if e == 0:
        return 0
    return (e - 1) % (order - 1) + 1


def trace_poly(G: Polynomial, q: int, n: int) -> Polynomial:
    """The reduced polynomial inducing a -> Tr_{GF(q^n)/GF(q)}(G(a)).

    ``G`` must live over GF(q^n) with every coefficient in the subfield GF(q).
    """
    K = G.field
    K.subfield_exponent(q)
    if q**n != K.order:
        raise NotASubfieldTower(f"{q}^{n} != |{K}| = {K.order}")
    if not K.in_subfield(G.coeffs, q).all():
        raise CoefficientsNotInSubfield(f"coefficients of {G.text('x')} not in GF({q})")
    out = np.zeros(K.order, dtype=np.int64)
    for j, c in G.terms().items():
        for i in range(n):
            e = fold_exponent(j * q**i, K.order)
            out[e] = K.add(out[e], c)
    return Polynomial._raw(K, out)


def is_separable(f: Polynomial) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def roots_in_field_count(f: Polynomial) -> int:
    """deg gcd(f, z^Q - z): distinct roots of f in GF(Q) without a scan."""
    F = f.field
    z = Polynomial.monomial(F, 1)
    zq = poly_powmod(z, F.order, f)
    return poly_gcd(f, zq - z).degree
