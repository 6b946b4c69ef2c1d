"""Shared fixtures and small independent oracles."""

from __future__ import annotations

import functools
import math

import pytest

from soag.curve import curve_from_terms, family_make, transversal_data
from soag.finite_field import field_make


def naive_mul(F, a: int, b: int) -> int:
    """Schoolbook product of two codes, reduced by the modulus; no tables."""
    p, m = F.p, F.m
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = list(F.modulus)  # monic, lowest degree first
    for k in range(2 * m - 2, m - 1, -1):
        c = prod[k]
        if c:
            for i in range(m + 1):
                prod[k - m + i] = (prod[k - m + i] - c * mod[i]) % p
    return sum(prod[i] * p**i for i in range(m))


def naive_pow(F, a: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = naive_mul(F, out, a)
    return out


@functools.lru_cache(maxsize=None)
def example_curve(name: str):
    """(spec, td) for the named worked-example curves."""
    if name == "max":
        spec = curve_from_terms(field_make(3, 6), {3: 1, 1: -1}, {2: 1, 10: -1}, "max")
    elif name == "tight":
        spec = curve_from_terms(field_make(3, 6), {27: 1, 1: -1}, {2: 1}, "tight")
    elif name == "gf64":
        spec = curve_from_terms(field_make(2, 6), {16: 1, 4: 1, 1: 1},
                                {e: 1 for e in (17, 13, 6, 4, 3, 1, 0)}, "gf64")
    elif name == "gf128":
        spec = curve_from_terms(field_make(2, 7), {8: 1, 4: 1, 1: 1},
                                {e: 1 for e in (29, 17, 15, 13, 12, 11, 9, 4, 1, 0)}, "gf128")
    elif name == "gf256":
        exps = (67, 63, 61, 58, 56, 54, 53, 52, 50, 49, 48, 46, 45, 44, 39, 37, 36, 35, 34, 33, 31,
                29, 23, 20, 16, 15, 14, 10, 8, 4, 3, 0)
        spec = curve_from_terms(field_make(2, 8), {64: 1, 16: 1, 4: 1, 1: 1}, {e: 1 for e in exps}, "gf256")
    else:
        raise KeyError(name)
    return spec, transversal_data(spec)


@functools.lru_cache(maxsize=None)
def family_curve(kind: str, **params):
    spec, fd = family_make(kind, **params)
    return spec, fd, transversal_data(spec)


# Small corpus for the end-to-end properties: every member has N <= 400.
SMALL_CORPUS = [
    ("A", dict(q=2, n=2, l=3)),
    ("A", dict(q=3, n=2, l=2)),
    ("A", dict(q=3, n=2, l=4)),
    ("A", dict(q=4, n=2, l=3)),
    ("A", dict(q=2, n=3, l=3)),
    ("A", dict(q=9, n=2, l=8)),
    ("C", dict(q=3, l=2)),
    ("C", dict(q=5, l=3)),
    ("C", dict(q=9, l=5)),
    ("B_Hk", dict(q=3, k=1)),
    ("B_Hk", dict(q=5, k=1)),
    ("B_Hk", dict(q=3, k=2)),
]


def corpus_id(item) -> str:
    kind, params = item
    return kind + "-" + "-".join(f"{k}{v}" for k, v in params.items())


@pytest.fixture(params=SMALL_CORPUS, ids=corpus_id)
def corpus_member(request):
    kind, params = request.param
    return family_curve(kind, **params)


def family_grid():
    """The A and C parameter grids (hypotheses not yet filtered), then the B_Hk list."""
    for q in (2, 3, 4, 5, 8, 9):
        for n in (1, 2, 3):
            if q**n > 2**13:
                continue
            for l in range(2, 14):
                yield "A", dict(q=q, n=n, l=l)
    for q in (3, 5, 7, 9, 27):
        for l in range(1, 14):
            yield "C", dict(q=q, l=l)
    for q, k in ((3, 1), (5, 1), (3, 2)):
        yield "B_Hk", dict(q=q, k=k)


def family_hypotheses_hold(kind: str, params: dict) -> bool:
    """The stated family hypotheses, written out independently of the constructors."""
    q = params["q"]
    p = min(d for d in range(2, q + 1) if q % d == 0)
    if kind == "A":
        n, l = params["n"], params["l"]
        return not (n == 1 and l == 1) and math.gcd(p, l) == 1
    if kind == "C":
        l = params["l"]
        return q % 2 == 1 and math.gcd(p, l) == 1 and (q + 1) % (2 * math.gcd(l, q + 1)) == 0
    if kind == "B_Hk":
        return q % 2 == 1 and math.gcd(p, 2 * params["k"]) == 1
    raise KeyError(kind)
