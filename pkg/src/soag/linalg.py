"""Dense exact linear algebra over GF(p^m).

Matrices are 2-D numpy arrays of element codes wrapped in :class:`FqMatrix`.
Products split each entry into its m base-field digits, multiply the digit
planes with ordinary floating point BLAS (exact at these sizes) and fold the
powers of t back through the modulus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FieldMismatch, MatrixGate, NotAQuadraticExtension, ParseError, ShapeMismatch
from .finite_field import GF

MAX_GATE_ROWS = 512
MAX_GATE_COLS = 65536

_EXACT_FLOAT = 2**52


@dataclass(frozen=True, eq=False)
class FqMatrix:
    field: GF
    data: np.ndarray

    def __post_init__(self):
        d = np.array(self.data, dtype=np.int64, ndmin=2)
        if d.ndim != 2:
            raise ShapeMismatch("matrix data must be 2-D")
        if d.size and (d.min() < 0 or d.max() >= self.field.order):
            raise ParseError("entries out of range for the field")
        d.setflags(write=False)
        object.__setattr__(self, "data", d)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "FqMatrix":
        return FqMatrix(self.field, self.data.T)

    def is_zero(self) -> bool:
        return not self.data.any()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FqMatrix)
            and self.field == other.field
            and np.array_equal(self.data, other.data)
        )

    def __getitem__(self, idx) -> "FqMatrix":
        return FqMatrix(self.field, np.atleast_2d(self.data[idx]))

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"FqMatrix({self.field!r}, {self.rows}x{self.cols})"

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> "FqMatrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> "FqMatrix":
        return cls(field, np.eye(n, dtype=np.int64))


def check_gate(rows: int, cols: int) -> None:
    if rows > MAX_GATE_ROWS or cols > MAX_GATE_COLS:
        raise MatrixGate(
            f"{rows}x{cols} exceeds the matrix gate ({MAX_GATE_ROWS} rows, {MAX_GATE_COLS} cols); "
            "use formula-only mode"
        )


def matmul_codes(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of two code arrays over F."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"cannot multiply {A.shape} by {B.shape}")
    r, inner = A.shape
    c = B.shape[1]
    if r == 0 or c == 0 or inner == 0:
        return np.zeros((r, c), dtype=np.int64)
    m, p = F.m, F.p
    exact_float = inner * (p - 1) ** 2 * m < _EXACT_FLOAT
    dtype = np.float64 if exact_float else np.int64
    if m == 1:
        prod = A.astype(dtype) @ B.astype(dtype)
        return np.rint(prod).astype(np.int64) % p if exact_float else prod % p
    # one BLAS call: stacked digit planes (m*r, inner) @ (inner, m*c)
    Ad = np.moveaxis(F.digits(A), -1, 0).reshape(m * r, inner).astype(dtype)
    Bd = np.moveaxis(F.digits(B), -1, 1).reshape(inner, m * c).astype(dtype)
    prod = Ad @ Bd
    if exact_float:
        prod = np.rint(prod).astype(np.int64)
    prod = (prod % p).reshape(m, r, m, c)
    C = np.zeros((2 * m - 1, r, c), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            C[i + j] += prod[i, :, j, :]
    return F.combine(C)


def mat_mul(A: FqMatrix, B: FqMatrix) -> FqMatrix:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    return FqMatrix(A.field, matmul_codes(A.field, A.data, B.data))


def gram_euclidean(G: FqMatrix) -> FqMatrix:
    """G times G transpose."""
    return FqMatrix(G.field, matmul_codes(G.field, G.data, G.data.T))


def conjugate(G: FqMatrix, q0: int) -> FqMatrix:
    """Entrywise q0-power, the involution of GF(q0^2)."""
    F = G.field
    if q0 * q0 != F.order:
        raise NotAQuadraticExtension(f"|{F}| = {F.order} is not {q0}^2")
    return FqMatrix(F, F.pow(G.data, q0))


def gram_hermitian(G: FqMatrix, q0: int) -> FqMatrix:
    """G times the transpose of its entrywise q0-power."""
    Gs = conjugate(G, q0)
    return FqMatrix(G.field, matmul_codes(G.field, G.data, Gs.data.T))


def rref_codes(F: GF, M: np.ndarray, *, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Gauss(-Jordan) elimination on a private copy; returns (R, pivot columns)."""
    R = np.array(M, dtype=np.int64, copy=True)
    nrows, ncols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r, c:] = F.mul(R[r, c:], F.inv(lead))
        col = R[:, c] if reduced else np.concatenate([np.zeros(r + 1, dtype=np.int64), R[r + 1 :, c]])
        targets = np.flatnonzero(col)
        targets = targets[targets != r]
        if targets.size:
            factors = R[targets, c]
            R[targets, c:] = F.sub(R[targets, c:], F.mul(factors[:, None], R[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def mat_rref_rank(M: FqMatrix) -> tuple[FqMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns."""
    R, piv = rref_codes(M.field, M.data)
    return FqMatrix(M.field, R), len(piv), piv


def mat_rank(M: FqMatrix) -> int:
    _, piv = rref_codes(M.field, M.data, reduced=False)
    return len(piv)


def independent_rows(M: FqMatrix) -> list[int]:
    """Indices of rows not in the span of the rows above them.

    The rank of the first k rows equals the number of returned indices below k.
    """
    _, piv = rref_codes(M.field, M.data.T, reduced=False)
    return piv


def prefix_ranks(M: FqMatrix) -> np.ndarray:
    """``out[k]`` is the rank of the first k rows (k = 0..rows)."""
    marks = np.zeros(M.rows + 1, dtype=np.int64)
    for i in independent_rows(M):
        marks[i + 1] = 1
    return np.cumsum(marks)


def mat_nullspace(M: FqMatrix) -> FqMatrix:
    """Basis rows of the right kernel {v : M v^T = 0}."""
    F = M.field
    R, piv = rref_codes(F, M.data)
    ncols = M.cols
    free = [c for c in range(ncols) if c not in set(piv)]
    K = np.zeros((len(free), ncols), dtype=np.int64)
    if free:
        K[np.arange(len(free)), free] = 1
        if piv:
            K[:, piv] = F.neg(R[: len(piv)][:, free]).T
    return FqMatrix(F, K)


def in_rowspace(M: FqMatrix, v) -> bool:
    """Whether the row vector(s) v lie in the row space of M."""
    V = np.atleast_2d(np.asarray(v, dtype=np.int64))
    base = mat_rank(M)
    return mat_rank(FqMatrix(M.field, np.vstack([M.data, V]))) == base


def dump_matrix(M: FqMatrix) -> str:
    """Text dump: header ``p m rows cols`` then one line per row of coefficient tuples."""
    F = M.field
    lines = [f"{F.p} {F.m} {M.rows} {M.cols}"]
    for row in M.data:
        lines.append(" ".join(F.text(c) for c in row))
    return "\n".join(lines) + "\n"


def load_matrix(text: str) -> FqMatrix:
    from .finite_field import field_make

    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    try:
        p, m, rows, cols = (int(t) for t in lines[0].split())
    except (ValueError, IndexError):
        raise ParseError("bad matrix header") from None
    F = field_make(p, m)
    data = np.zeros((rows, cols), dtype=np.int64)
    if len(lines) - 1 != rows:
        raise ParseError(f"expected {rows} rows, found {len(lines) - 1}")
    for i, ln in enumerate(lines[1:]):
        toks = ln.split()
        if len(toks) != cols:
            raise ParseError(f"row {i} has {len(toks)} entries, expected {cols}")
        data[i] = [F.element(t).value for t in toks]
    return FqMatrix(F, data)
