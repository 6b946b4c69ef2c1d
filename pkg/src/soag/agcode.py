"""One-point AG codes C(D, m P_inf) and their self-orthogonality.

The Riemann-Roch space L(m P_inf) is realized by the reduced monomials
x^i y^j with j < deg F, whose pole orders i deg F + j deg H are pairwise
distinct because the two degrees are coprime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve import CurveSpec, FamilyDescriptor, TransversalData
from .errors import HermitianUnavailable, MOutOfRange, TooManyCodewords
from .finite_field import GF
from .linalg import (
    FqMatrix,
    check_gate,
    gram_euclidean,
    gram_hermitian,
    mat_nullspace,
    mat_rank,
    matmul_codes,
)


@dataclass(frozen=True)
class MonomialBasis:
    """Exponent pairs (i, j) of x^i y^j, sorted by pole order then j."""

    pairs: tuple[tuple[int, int], ...]
    degF: int
    degH: int

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def pole_orders(self) -> list[int]:
        return [i * self.degF + j * self.degH for i, j in self.pairs]


def rr_basis(spec: CurveSpec, m: int) -> MonomialBasis:
    return _basis(spec.degF, spec.degH, m)


def _basis(a: int, b: int, m: int) -> MonomialBasis:
    if m < 0:
        return MonomialBasis((), a, b)
    pairs = [(i, j) for j in range(min(a, m // b + 1)) for i in range((m - j * b) // a + 1)]
    pairs.sort(key=lambda ij: (ij[0] * a + ij[1] * b, ij[1]))
    return MonomialBasis(tuple(pairs), a, b)


def basis_size(degF: int, degH: int, m: int) -> int:
    """|L(m P_inf)| without listing the pairs."""
    if m < 0:
        return 0
    return sum((m - j * degH) // degF + 1 for j in range(min(degF, m // degH + 1)))


def evaluation_matrix(K: GF, td: TransversalData, basis: MonomialBasis) -> np.ndarray:
    """Codes array with entry [(i, j), P] = x_P^i y_P^j."""
    if not basis.pairs:
        return np.zeros((0, td.N), dtype=np.int64)
    imax = max(i for i, _ in basis.pairs)
    jmax = max(j for _, j in basis.pairs)
    xp = np.empty((imax + 1, td.N), dtype=np.int64)
    yp = np.empty((jmax + 1, td.N), dtype=np.int64)
    xp[0] = yp[0] = 1
    for i in range(1, imax + 1):
        xp[i] = K.mul(xp[i - 1], td.xs)
    for j in range(1, jmax + 1):
        yp[j] = K.mul(yp[j - 1], td.ys)
    ii = np.array([i for i, _ in basis.pairs])
    jj = np.array([j for _, j in basis.pairs])
    return K.mul(xp[ii], yp[jj])


@dataclass(eq=False)
class AGCode:
    curve: CurveSpec
    td: TransversalData
    m: int
    basis: MonomialBasis
    genmat: FqMatrix
    _dim: int | None = field(default=None, repr=False)

    @property
    def N(self) -> int:
        return self.td.N

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = mat_rank(self.genmat)
        return self._dim


def build_code(spec: CurveSpec, td: TransversalData, m: int, *, gate: bool = True) -> AGCode:
    if m < 0:
        raise MOutOfRange(f"m = {m} must be nonnegative")
    basis = rr_basis(spec, m)
    if gate:
        check_gate(len(basis), td.N)
    G = FqMatrix(spec.K, evaluation_matrix(spec.K, td, basis))
    return AGCode(spec, td, m, basis, G)


def designed_params(spec: CurveSpec, td: TransversalData, m: int) -> dict:
    return designed_params_raw(td.N, spec.genus, m)


def designed_params_raw(N: int, g: int, m: int) -> dict:
    if not 2 * g - 2 < m < N:
        raise MOutOfRange(f"need 2g-2 < m < N, got g={g}, m={m}, N={N}")
    return {
        "primal": [N, m - g + 1, N - m],
        "dual": [N, N - m + g - 1, m - 2 * g + 2],
    }


@dataclass(frozen=True)
class SORanges:
    genus: int
    N: int | None
    degF: int
    degM: int | None
    m_max_exact: int | None
    m_max_coarse: int
    q0: int | None = None
    m_max_hermitian_exact: int | None = None
    m_max_hermitian_coarse: int | None = None
    family_bound: int | None = None
    family_label: str | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def family_consistent(self) -> bool | None:
        """Whether the family bound never exceeds the exact bound."""
        if self.family_bound is None or self.m_max_exact is None:
            return None
        return self.family_bound <= self.m_max_exact

    def to_json(self) -> dict:
        out = {k: getattr(self, k) for k in (
            "genus", "N", "degF", "degM", "m_max_exact", "m_max_coarse", "q0",
            "m_max_hermitian_exact", "m_max_hermitian_coarse", "family_bound", "family_label")}
        out["family_consistent"] = self.family_consistent
        out["provenance"] = dict(self.provenance)
        return out


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def so_ranges(
    spec: CurveSpec | None = None,
    td: TransversalData | None = None,
    q0: int | None = None,
    fd: FamilyDescriptor | None = None,
    *,
    hermitian: bool = False,
) -> SORanges:
    """Self-orthogonality ranges from the exact, coarse and family bounds.

    Pass ``q0`` (or ``hermitian=True`` to infer it from |K|) for the
    Hermitian ranges.  With only ``fd`` the result is parameter-only.
    """
    if spec is not None:
        g, degF, order = spec.genus, spec.degF, spec.K.order
    elif fd is not None:
        g, degF, order = fd.predicted["genus"], fd.predicted["degF"], fd.predicted["field_order"]
    else:
        raise ValueError("need a curve or a family descriptor")
    if td is not None:
        N, degM = td.N, td.degM
    elif fd is not None:
        N, degM = fd.predicted["N"], fd.predicted["degM"]
    else:
        N = degM = None
    prov = {"m_max_coarse": "2m <= 2g-2+deg F"}
    exact = None
    if N is not None:
        exact = (2 * g - 2 + N - degM) // 2
        prov["m_max_exact"] = "2m <= 2g-2+deg D-deg M" + (" (brute force)" if td is not None else " (closed form)")
    coarse = (2 * g - 2 + degF) // 2
    if hermitian and q0 is None:
        q0 = _isqrt_exact(order)
        if q0 is None:
            raise HermitianUnavailable(f"|K| = {order} is not a square")
    h_exact = h_coarse = None
    if q0 is not None:
        if q0 * q0 != order:
            raise HermitianUnavailable(f"|K| = {order} is not {q0}^2")
        h_coarse = (2 * g - 2 + degF) // (q0 + 1)
        prov["m_max_hermitian_coarse"] = "(q0+1)m <= 2g-2+deg F"
        if N is not None:
            h_exact = (2 * g - 2 + N - degM) // (q0 + 1)
            prov["m_max_hermitian_exact"] = "(q0+1)m <= 2g-2+deg D-deg M"
    fam = fam_label = None
    if fd is not None:
        fam = fd.predicted["so_bound_m_max"]
        fam_label = fd.predicted["so_bound_label"]
        prov["family_bound"] = f"{fd.kind}: {fam_label}"
    return SORanges(g, N, degF, degM, exact, coarse, q0, h_exact, h_coarse, fam, fam_label, prov)


def check_so_euclidean(code: AGCode) -> bool:
    check_gate(code.genmat.rows, code.genmat.cols)
    return gram_euclidean(code.genmat).is_zero()


def check_so_hermitian(code: AGCode, q0: int) -> bool:
    check_gate(code.genmat.rows, code.genmat.cols)
    return gram_hermitian(code.genmat, q0).is_zero()


def so_limit(spec: CurveSpec, td: TransversalData, m_hi: int, q0: int | None = None) -> int:
    """Largest m <= m_hi with C(D, m P_inf) self-orthogonal, or -1.

    The codes are nested with the basis sorted by pole order, so one Gram
    matrix at m_hi answers every smaller m through its leading blocks.
    """
    code = build_code(spec, td, m_hi)
    G = code.genmat
    if q0 is None:
        gram = gram_euclidean(G).data
    else:
        gram = gram_hermitian(G, q0).data
    n = gram.shape[0]
    bad = gram != 0
    first_bad = np.where(bad.any(axis=1), bad.argmax(axis=1), n)
    # prefix k is clean iff min(first_bad[:k]) >= k; clean prefixes form an interval
    pm = np.minimum.accumulate(first_bad)
    k = int(np.count_nonzero(pm >= np.arange(1, n + 1)))
    poles = code.basis.pole_orders
    if k == 0:
        return -1
    return m_hi if k == n else poles[k] - 1


def dual_code(code: AGCode) -> FqMatrix:
    check_gate(code.genmat.rows, code.genmat.cols)
    return mat_nullspace(code.genmat)


# -- weights and dependent columns ----------------------------------------------

def _row_basis(genmat: FqMatrix) -> np.ndarray:
    from .linalg import rref_codes

    R, piv = rref_codes(genmat.field, genmat.data)
    return R[: len(piv)]


def min_weight_exhaustive(genmat: FqMatrix, cap: int = 1 << 22, chunk: int = 1 << 14) -> int | None:
    """Exact minimum weight of the row space; None for the zero code.

    Messages are enumerated up to scalars (first nonzero entry 1).
    """
    K = genmat.field
    B = _row_basis(genmat)
    k = B.shape[0]
    if k == 0:
        return None
    if K.order**k > cap:
        raise TooManyCodewords(f"{K.order}^{k} codewords exceed cap {cap}")
    q = K.order
    best = genmat.cols + 1
    for lead in range(k):
        tail = k - 1 - lead
        total = q**tail
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            msg = np.zeros((idx.size, k), dtype=np.int64)
            msg[:, lead] = 1
            rem = idx.copy()
            for c in range(k - 1, lead, -1):
                msg[:, c] = K.elements()[rem % q]
                rem //= q
            words = matmul_codes(K, msg, B)
            best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


def _normalize_columns(K: GF, V: np.ndarray) -> np.ndarray:
    """Scale each column so its first nonzero entry is 1 (zero columns stay zero)."""
    nz = V != 0
    has = nz.any(axis=0)
    first = nz.argmax(axis=0)
    lead = V[first, np.arange(V.shape[1])]
    lead = np.where(has, lead, 1)
    return K.mul(V, K.inv(lead)[None, :])


def _hash_columns(V: np.ndarray, w: np.ndarray) -> np.ndarray:
    return (V.astype(np.uint64).T @ w)


def min_dependent_columns(genmat: FqMatrix, wmax: int = 3) -> int | None:
    """Smallest number of linearly dependent columns, or None if none up to wmax.

    This is the minimum distance of the dual code when it is at most wmax.
    """
    K = genmat.field
    G = genmat.data
    k, n = G.shape
    if n == 0 or wmax < 1:
        return None
    if k == 0 or not G.any(axis=0).all():
        return 1
    if wmax < 2:
        return None
    norm = _normalize_columns(K, G)
    rng = np.random.default_rng(0x5EED)
    w = rng.integers(1, 1 << 31, size=k, dtype=np.uint64)
    h = _hash_columns(norm, w)
    if np.unique(h).size < n:
        # confirm by exact comparison
        _, counts = np.unique(norm.T, axis=0, return_counts=True)
        if (counts > 1).any():
            return 2
    if wmax < 3:
        return None
    order = np.argsort(h)
    hs = h[order]
    scal = np.array([a for a in K.elements() if a != 0], dtype=np.int64)
    for i in range(n - 1):
        rest = G[:, i + 1 :]
        # combos a*c_i + c_j for all a != 0 and j > i
        comb = K.add(K.mul(scal[:, None, None], G[None, :, i, None]), rest[None, :, :])
        comb = comb.transpose(1, 0, 2).reshape(k, -1)
        comb = comb[:, comb.any(axis=0)]
        if comb.size == 0:
            continue
        nc = _normalize_columns(K, comb)
        hc = _hash_columns(nc, w)
        pos = np.searchsorted(hs, hc)
        pos = np.minimum(pos, n - 1)
        cand = np.flatnonzero(hs[pos] == hc)
        for c in cand:
            j = order[pos[c]]
            if np.array_equal(norm[:, j], nc[:, c]):
                return 3
    if wmax < 4:
        return None
    return 4 if _has_four_dependent(K, G, norm, w) else None


def _has_four_dependent(K: GF, G: np.ndarray, norm: np.ndarray, w: np.ndarray, limit: int = 1 << 24) -> bool:
    """Two distinct pair spans sharing a normalized vector imply 4 dependent columns.

    Valid once no 3 columns are dependent.
    """
    k, n = G.shape
    if n < 4:
        return False
    scal = np.array([a for a in K.elements() if a != 0], dtype=np.int64)
    if n * (n - 1) // 2 * len(scal) > limit:
        raise TooManyCodewords("pair-span table exceeds the search limit")
    hashes, tags = [], []
    for i in range(n - 1):
        rest = G[:, i + 1 :]
        comb = K.add(K.mul(scal[:, None, None], G[None, :, i, None]), rest[None, :, :])
        comb = comb.transpose(1, 0, 2).reshape(k, -1)
        hashes.append(_hash_columns(_normalize_columns(K, comb), w))
        # comb columns are scalar-major: index a * (n - i - 1) + (j - i - 1)
        jj = np.tile(np.arange(i + 1, n), len(scal))
        tags.append(np.stack([np.full(jj.size, i), jj], axis=1))
    H = np.concatenate(hashes)
    T = np.concatenate(tags)
    order = np.argsort(H, kind="stable")
    Hs = H[order]
    dup = np.flatnonzero(Hs[1:] == Hs[:-1])
    for d in dup:
        (i1, j1), (i2, j2) = T[order[d]], T[order[d + 1]]
        if {int(i1), int(j1)} == {int(i2), int(j2)}:
            continue
        cols = sorted({int(i1), int(j1), int(i2), int(j2)})
        if len(cols) == 4 and mat_rank(FqMatrix(K, G[:, cols])) < 4:
            return True
    return False


__all__ = [
    "AGCode",
    "MonomialBasis",
    "SORanges",
    "basis_size",
    "build_code",
    "check_so_euclidean",
    "check_so_hermitian",
    "designed_params",
    "designed_params_raw",
    "dual_code",
    "evaluation_matrix",
    "min_dependent_columns",
    "min_weight_exhaustive",
    "rr_basis",
    "so_limit",
    "so_ranges",
]
