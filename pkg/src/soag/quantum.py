"""Quantum code parameters from self-orthogonal classical codes.

Includes the CSS-type construction [[N, N - 2k, >= d_dual]], the purity
conditions, the Feng-Ma Gilbert-Varshamov comparison in exact integer
arithmetic and the Jin-Xing bound used for even q.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import MOutOfRange, NegativeK, NotApplicable, PreconditionViolated, Unsupported

FLAVORS = ("euclidean", "hermitian")


@dataclass(frozen=True)
class QuantumParams:
    """An [[N, k, d]]_alphabet stabilizer code with flags.

    ``d_lb`` is a lower bound unless ``d_certified`` is set.
    """

    alphabet: int
    N: int
    k: int
    d_lb: int
    pure: bool | None = None
    gv: bool | None = None
    d_certified: bool = False
    flavor: str = "euclidean"

    def text(self) -> str:
        d = f"{self.d_lb}" if self.d_certified else f">={self.d_lb}"
        return f"[[{self.N},{self.k},{d}]]_{self.alphabet}"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.N, self.k, self.d_lb)

    def to_json(self) -> dict:
        return asdict(self)


def css_params(
    N: int,
    dim_classical: int,
    d_dual_lb: int,
    alphabet: int,
    flavor: str = "euclidean",
    *,
    certified: bool = False,
    gv: bool = False,
    d_primal: int | None = None,
) -> QuantumParams:
    """Parameters of the stabilizer code built from a self-orthogonal [N, dim] code.

    The caller is responsible for having checked self-orthogonality.  Purity
    is decided from ``d_primal``, a lower bound on the classical code's own
    minimum distance, and left as None without it.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    k = N - 2 * dim_classical
    if k < 0:
        raise NegativeK(f"N - 2 dim = {k} < 0")
    pure = purity_generic(d_primal, dim_classical) if d_primal is not None else None
    return QuantumParams(alphabet, N, k, d_dual_lb, pure, _gv_flag(alphabet, N, k, d_dual_lb) if gv else None,
                         certified, flavor)


def one_point_qparams(N: int, g: int, m: int, alphabet: int | None = None, *, gv: bool = False,
                      flavor: str = "euclidean") -> QuantumParams:
    """Designed parameters [[N, N - 2(m - g + 1), >= m - 2g + 2]]."""
    if not 2 * g - 2 < m < N:
        raise MOutOfRange(f"need 2g-2 < m < N, got g={g}, m={m}, N={N}")
    k = N - 2 * (m - g + 1)
    if k < 0:
        raise NegativeK(f"k = {k} < 0 at m = {m}")
    d = m - 2 * g + 2
    flag = _gv_flag(alphabet, N, k, d) if gv and alphabet else None
    return QuantumParams(alphabet or 0, N, k, d, purity_check(N, g, m), flag, False, flavor)


def purity_check(N: int, g: int, m: int) -> bool:
    return N > 2 * m - g + 2


def purity_generic(d: int, k: int) -> bool:
    return d > k + 1


def purity_m_cap(N: int, g: int) -> int:
    """Largest m with N > 2m - g + 2."""
    return (N + g - 3) // 2


def one_point_m_cap(N: int, g: int) -> int:
    """Largest m allowed by 2g - 2 < m < N, purity and k >= 0."""
    return min(N - 1, purity_m_cap(N, g), (N + 2 * g - 2) // 2)


def gv_lhs(q: int, N: int, d: int) -> int:
    """Sum over 1 <= i < d of (q^2 - 1)^(i-1) C(N, i), built incrementally."""
    total = 0
    binom = 1
    power = 1
    r = q * q - 1
    for i in range(1, d):
        nxt = binom * (N - i + 1) // i
        assert nxt * i == binom * (N - i + 1)
        binom = nxt
        total += power * binom
        power *= r
    return total


def gv_check(q: int, N: int, k: int, d: int) -> bool:
    """Whether [[N, k, d]]_q meets or beats the Feng-Ma existence bound.

    Main form (N > k >= 2, d >= 2, N = k mod 2):
        sum_{i<d} (q^2-1)^(i-1) C(N,i) >= (q^(N-k+2) - 1) / (q^2 - 1).
    For N odd and k = 1 the alternate sum is compared with q^N + 1.
    """
    if N % 2 == 0 and k == 0:
        raise Unsupported("the N even, k = 0 variant is not available")
    if N % 2 == 1 and k == 1:
        if d < 2:
            raise PreconditionViolated("d >= 2 required")
        total = 0
        binom = 1
        for i in range(1, d):
            binom = binom * (N - i + 1) // i
            total += binom * (q * (q * q - 1) ** (i - 1) + (-1) ** (i + 1) * (q + 1) ** (i - 1))
        return total >= q**N + 1
    if not (N > k >= 2 and d >= 2 and (N - k) % 2 == 0):
        raise PreconditionViolated(f"need N > k >= 2, d >= 2, N = k mod 2; got N={N}, k={k}, d={d}")
    return gv_lhs(q, N, d) * (q * q - 1) >= q ** (N - k + 2) - 1


def gv_check_many(q: int, N: int, pairs: list[tuple[int, int]]) -> list[bool | None]:
    """gv_check for many (k, d) at fixed q and N, sharing the partial sums.

    Entries outside the main form's preconditions come back as None.
    """
    dmax = max((d for _, d in pairs), default=0)
    lhs = [0] * max(dmax, 1)
    total, binom, power, r = 0, 1, 1, q * q - 1
    for i in range(1, dmax):
        binom = binom * (N - i + 1) // i
        total += power * binom
        power *= r
        lhs[i] = total
    out: list[bool | None] = []
    for k, d in pairs:
        if not (N > k >= 2 and d >= 2 and (N - k) % 2 == 0):
            out.append(None)
        else:
            out.append(lhs[d - 1] * r >= q ** (N - k + 2) - 1)
    return out


def _gv_flag(q: int | None, N: int, k: int, d: int) -> bool | None:
    if not q:
        return None
    try:
        return gv_check(q, N, k, d)
    except (PreconditionViolated, Unsupported):
        return None


@dataclass(frozen=True)
class JinXing:
    value: float
    floor: int
    caution: bool


def jin_xing_bound(N: int, q: int) -> JinXing:
    """N/2 (1 - 1/N + log_q(1 - 1/q) - log_q 2) for even q.

    ``caution`` flags values within 1e-6 of an integer, where the floor may
    be off by one in double precision.
    """
    if q % 2:
        raise NotApplicable("the bound is stated for even q only")
    val = N / 2 * (1 - 1 / N + math.log(1 - 1 / q, q) - math.log(2, q))
    fl = math.floor(val)
    return JinXing(val, fl, abs(val - round(val)) < 1e-6)


__all__ = [
    "FLAVORS",
    "JinXing",
    "QuantumParams",
    "css_params",
    "gv_check",
    "gv_check_many",
    "gv_lhs",
    "jin_xing_bound",
    "one_point_m_cap",
    "one_point_qparams",
    "purity_check",
    "purity_generic",
    "purity_m_cap",
]
