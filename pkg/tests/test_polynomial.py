import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_mul
from soag.errors import CoefficientsNotInSubfield, DivisionByZero, DuplicatePoint, FieldMismatch, ZeroPolynomial
from soag.finite_field import field_make
from soag.polynomial import (
    Polynomial,
    fold_exponent,
    is_separable,
    poly_gcd,
    poly_powmod,
    poly_roots,
    roots_in_field_count,
    trace_poly,
    vanishing_poly,
)

FIELDS = [field_make(2, 2), field_make(3), field_make(3, 2), field_make(5), field_make(2, 3)]


def schoolbook(f: Polynomial, g: Polynomial) -> list[int]:
    F = f.field
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        for j, b in enumerate(g.coeffs):
            out[i + j] = int(F.add(out[i + j], naive_mul(F, int(a), int(b))))
    return out


def horner(f: Polynomial, x: int) -> int:
    F = f.field
    acc = 0
    for c in reversed(f.coeffs):
        acc = int(F.add(naive_mul(F, acc, x), int(c)))
    return acc


def polys(F, max_deg=8):
    return st.lists(st.integers(0, F.order - 1), max_size=max_deg + 1).map(lambda c: Polynomial(F, c))


def test_from_terms_reads_prime_scalars():
    F = field_make(3, 2)
    f = Polynomial.from_terms(F, {0: -1, 2: 1})
    assert f.coeff(0) == 2 and f.degree == 2
    assert f.text() == "2 + z^2"


def test_text_uses_ascending_order_and_field_tuples():
    F = field_make(3, 2)
    t = F.gen
    f = Polynomial(F, [0, t.value, 0, 1])
    assert f.text() == "(0,1)*z + z^3"
    assert Polynomial(F, []).text() == "0"


def test_zero_polynomial():
    F = field_make(5)
    z = Polynomial(F, [0, 0])
    assert z.is_zero() and z.degree == -1
    with pytest.raises(ZeroPolynomial):
        z.lead
    with pytest.raises(ZeroPolynomial):
        poly_roots(z)


def test_derivative_in_char_p():
    F = field_make(3)
    f = Polynomial.from_terms(F, {3: 1, 1: 1})
    assert f.derivative() == Polynomial.constant(F, 1)
    assert Polynomial.from_terms(F, {9: 1}).derivative().is_zero()


def test_gcd_and_separability():
    F = field_make(5)
    a = vanishing_poly(F, [1, 2, 3])
    b = vanishing_poly(F, [2, 3, 4])
    assert poly_gcd(a, b) == vanishing_poly(F, [2, 3])
    assert is_separable(a)
    assert not is_separable(a * a)


def test_vanishing_poly_roots():
    F = field_make(3, 2)
    pts = [1, 4, 7]
    v = vanishing_poly(F, pts)
    roots, splits = poly_roots(v)
    assert sorted(roots) == sorted(pts) and splits
    with pytest.raises(DuplicatePoint):
        vanishing_poly(F, [1, 1])


def test_roots_count_without_scan():
    F = field_make(3, 2)
    f = Polynomial.from_terms(F, {9: 1, 1: -1})  # z^9 - z splits completely
    assert roots_in_field_count(f) == 9
    g = Polynomial.from_terms(F, {2: 1, 0: 1}) * Polynomial.from_terms(F, {1: 1, 0: 1})
    assert roots_in_field_count(g) == len(poly_roots(g)[0])


def test_divmod_by_zero_and_mismatch():
    F = field_make(5)
    with pytest.raises(DivisionByZero):
        divmod(Polynomial.monomial(F, 2), Polynomial(F, []))
    with pytest.raises(DivisionByZero):
        poly_powmod(Polynomial.monomial(F, 1), 3, Polynomial.constant(F, 2))
    with pytest.raises(FieldMismatch):
        Polynomial.monomial(F, 1) + Polynomial.monomial(field_make(7), 1)


def test_fold_exponent():
    assert fold_exponent(0, 9) == 0
    assert fold_exponent(8, 9) == 8
    assert fold_exponent(9, 9) == 1
    assert fold_exponent(17, 9) == 1


def test_trace_poly_induces_trace_map():
    K = field_make(3, 2)
    G = Polynomial.from_terms(K, {2: 1, 1: 1})
    T = trace_poly(G, 3, 2)
    x = K.elements()
    assert np.array_equal(T.evaluate(x), K.trace(G.evaluate(x), 3, 2))


def test_trace_poly_rejects_big_coefficients():
    K = field_make(3, 2)
    with pytest.raises(CoefficientsNotInSubfield):
        trace_poly(Polynomial(K, [0, K.gen.value]), 3, 2)


def test_json_roundtrip():
    F = field_make(2, 3)
    f = Polynomial(F, [3, 0, 5, 1])
    assert Polynomial.from_json(f.to_json()) == f


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda F: st.tuples(polys(F), polys(F))))
def test_mul_matches_schoolbook(fg):
    f, g = fg
    h = f * g
    if f.is_zero() or g.is_zero():
        assert h.is_zero()
    else:
        assert [int(c) for c in h.coeffs] == schoolbook(f, g)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda F: st.tuples(polys(F), polys(F, 5))))
def test_division_identity(fg):
    f, g = fg
    if g.is_zero():
        return
    qt, r = divmod(f, g)
    assert qt * g + r == f
    assert r.degree < g.degree


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda F: st.tuples(polys(F), st.integers(0, F.order - 1))))
def test_evaluate_matches_horner(fx):
    f, x = fx
    assert int(f.evaluate(x)) == horner(f, x)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FIELDS).flatmap(lambda F: st.tuples(polys(F, 4), polys(F, 3), st.integers(0, 12))))
def test_powmod_matches_repeated_product(args):
    b, m, e = args
    if m.degree < 1:
        return
    ref = Polynomial.constant(b.field, 1)
    for _ in range(e):
        ref = ref * b
    assert poly_powmod(b, e, m) == ref % m
