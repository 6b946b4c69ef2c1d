import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_mul
from soag.errors import FieldMismatch, MatrixGate, NotAQuadraticExtension, ParseError, ShapeMismatch
from soag.finite_field import field_make
from soag.linalg import (
    MAX_GATE_COLS,
    MAX_GATE_ROWS,
    FqMatrix,
    check_gate,
    conjugate,
    dump_matrix,
    gram_euclidean,
    gram_hermitian,
    in_rowspace,
    load_matrix,
    mat_nullspace,
    mat_rank,
    mat_rref_rank,
    prefix_ranks,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (3, 2), (5, 2), (2, 6), (7, 1)]


def naive_matmul(F, A, B):
    r, n = A.shape
    c = B.shape[1]
    out = np.zeros((r, c), dtype=np.int64)
    for i in range(r):
        for j in range(c):
            acc = 0
            for t in range(n):
                acc = int(F.add(acc, naive_mul(F, int(A[i, t]), int(B[t, j]))))
            out[i, j] = acc
    return out


def rank_by_elimination(F, A):
    """Plain Gaussian elimination, one pivot at a time."""
    M = [list(map(int, row)) for row in A]
    rank, cols = 0, A.shape[1] if A.size else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = int(F.inv(M[rank][c]))
        M[rank] = [naive_mul(F, inv, v) for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [int(F.sub(a, naive_mul(F, f, b))) for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@st.composite
def matrices(draw, max_r=6, max_c=7):
    F = field_make(*draw(st.sampled_from(FIELDS)))
    r = draw(st.integers(1, max_r))
    c = draw(st.integers(1, max_c))
    vals = draw(st.lists(st.integers(0, F.order - 1), min_size=r * c, max_size=r * c))
    return FqMatrix(F, np.array(vals).reshape(r, c))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_matmul_matches_naive(A, data):
    F = A.field
    c = data.draw(st.integers(1, 5))
    vals = data.draw(st.lists(st.integers(0, F.order - 1), min_size=A.cols * c, max_size=A.cols * c))
    B = FqMatrix(F, np.array(vals).reshape(A.cols, c))
    assert np.array_equal((A @ B).data, naive_matmul(F, A.data, B.data))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_and_nullspace(A):
    F = A.field
    r = mat_rank(A)
    assert r == rank_by_elimination(F, A.data)
    K = mat_nullspace(A)
    assert K.rows == A.cols - r
    if K.rows:
        assert (A @ K.T).is_zero()
        assert mat_rank(K) == K.rows


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_prefix_ranks(A):
    pr = prefix_ranks(A)
    for k in range(A.rows + 1):
        assert pr[k] == (mat_rank(A[:k]) if k else 0)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_dump_load_roundtrip(A):
    assert load_matrix(dump_matrix(A)) == A


def test_rref_of_identity():
    F = field_make(3, 2)
    R, r, piv = mat_rref_rank(FqMatrix.identity(F, 4))
    assert r == 4 and piv == [0, 1, 2, 3]


def test_in_rowspace():
    F = field_make(5)
    M = FqMatrix(F, [[1, 2, 3], [0, 1, 4]])
    assert in_rowspace(M, [2, 0, 0])  # 2*(r0) - 4*(r1) = [2, 0, -10]
    assert not in_rowspace(M, [0, 0, 1])


def test_large_inner_dimension_over_big_field():
    # long inner dimension: products are accumulated before the mod-p reduction
    F = field_make(3, 6)
    rng = np.random.default_rng(0)
    A = rng.integers(0, F.order, (3, 2000))
    B = rng.integers(0, F.order, (2000, 2))
    got = (FqMatrix(F, A) @ FqMatrix(F, B)).data
    # compare against a sum of small-block products
    acc = np.zeros((3, 2), dtype=np.int64)
    for s in range(0, 2000, 100):
        part = (FqMatrix(F, A[:, s : s + 100]) @ FqMatrix(F, B[s : s + 100])).data
        acc = F.add(acc, part)
    assert np.array_equal(got, acc)


def test_gf4_hermitian_example():
    F = field_make(2, 2)
    w = F.gen.value
    G = FqMatrix(F, [[1, w]])
    # 1 + w * w^2 = 1 + 1 = 0, so the single row is Hermitian self-orthogonal
    assert gram_hermitian(G, 2).is_zero()
    # but 1 + w^2 = w, so it is not Euclidean self-orthogonal
    assert not gram_euclidean(G).is_zero()
    assert conjugate(conjugate(G, 2), 2) == G
    with pytest.raises(NotAQuadraticExtension):
        conjugate(FqMatrix(field_make(2, 3), [[1]]), 2)


def test_gate_and_errors():
    check_gate(MAX_GATE_ROWS, MAX_GATE_COLS)
    with pytest.raises(MatrixGate):
        check_gate(MAX_GATE_ROWS + 1, 10)
    with pytest.raises(MatrixGate):
        check_gate(10, MAX_GATE_COLS + 1)
    F = field_make(3)
    with pytest.raises(ShapeMismatch):
        FqMatrix(F, [[1, 2]]) @ FqMatrix(F, [[1, 2]])
    with pytest.raises(FieldMismatch):
        FqMatrix(F, [[1]]) @ FqMatrix(field_make(5), [[1]])
    with pytest.raises(ParseError):
        FqMatrix(F, [[3]])
    with pytest.raises(ParseError):
        load_matrix("3 1 2 2\n1 2\n")
