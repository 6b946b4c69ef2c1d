"""Jobs, caching, sweeps and the reproduction suite behind the ``soag`` command.

Every task returns plain JSON-ready dicts; serialization uses sorted keys
so identical jobs give byte-identical output.
"""

from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .agcode import (
    basis_size,
    build_code,
    check_so_euclidean,
    check_so_hermitian,
    designed_params_raw,
    dual_code,
    min_dependent_columns,
    so_limit,
    so_ranges,
)
from .curve import (
    CurveSpec,
    FamilyDescriptor,
    TransversalData,
    castle_status,
    classify_type,
    curve_validate,
    family_make,
    normalize_kind,
    predicted_check,
    transversal_data,
)
from .errors import (
    HermitianUnavailable,
    HypothesisViolated,
    MatrixGate,
    MOutOfRange,
    ParseError,
    PreconditionViolated,
    SoagError,
)
from .finite_field import GF, field_make
from .linalg import MAX_GATE_COLS, MAX_GATE_ROWS, dump_matrix
from .polynomial import Polynomial
from .quantum import (
    gv_check,
    gv_check_many,
    jin_xing_bound,
    one_point_qparams,
    purity_check,
    purity_generic,
    purity_m_cap,
)

TASKS = ("info", "points", "fa", "code", "so-check", "quantum", "sweep", "paper-suite")
FAMILY_PARAMS = {
    "A": ("q", "n", "l"),
    "B_Hk": ("q", "k"),
    "B_general": ("q", "n", "G"),
    "C": ("q", "l"),
    "C_s": ("q", "s", "l", "n"),
}


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# -- curves from JSON ------------------------------------------------------------

@dataclass(eq=False)
class CurveContext:
    """A curve together with its optional family descriptor and cached data."""

    source: dict
    spec: CurveSpec | None
    fd: FamilyDescriptor | None
    _td: TransversalData | None = None

    @property
    def name(self) -> str:
        if self.fd is not None:
            return self.fd.label
        return self.spec.name or self.spec.equation()

    @property
    def materialized(self) -> bool:
        return self.spec is not None

    def td(self) -> TransversalData:
        if self.spec is None:
            raise MatrixGate(f"{self.name}: field too large to materialize; formula-only mode")
        if self._td is None:
            self._td = transversal_data(self.spec)
        return self._td

    @property
    def genus(self) -> int:
        return self.spec.genus if self.spec is not None else self.fd.predicted["genus"]

    @property
    def field_order(self) -> int:
        return self.spec.K.order if self.spec is not None else self.fd.predicted["field_order"]

    def N_degM(self, prefer_formula: bool = False) -> tuple[int, int]:
        if self.fd is not None and (prefer_formula or self.spec is None):
            return self.fd.predicted["N"], self.fd.predicted["degM"]
        td = self.td()
        return td.N, td.degM


def _coeff_list(K: GF, coeffs) -> Polynomial:
    if isinstance(coeffs, dict):
        try:
            items = [(int(e), c) for e, c in coeffs.items()]
        except ValueError:
            raise ParseError("exponent keys must be integers") from None
    elif isinstance(coeffs, list):
        items = list(enumerate(coeffs))
    else:
        raise ParseError("coefficients must be a list (lowest degree first) or an {exponent: coeff} object")
    terms = {}
    for e, c in items:
        if e < 0:
            raise ParseError(f"negative exponent {e}")
        if isinstance(c, bool):
            raise ParseError(f"bad coefficient {c!r}")
        terms[e] = c if isinstance(c, int) else str(c)
    try:
        return Polynomial.from_terms(K, terms)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad coefficient list: {exc}") from None


def load_curve(obj: dict) -> CurveContext:
    """Curve from ``{"field": {"p", "m"}, "F": ..., "H": ...}`` or ``{"family": kind, ...}``.

    Coefficients are a list (lowest degree first) or an ``{exponent: coeff}``
    object.  Integer coefficients are prime-field scalars; strings use the
    element text encoding ``"c0,c1,..."``.
    """
    if not isinstance(obj, dict):
        raise ParseError("curve JSON must be an object")
    if "family" in obj:
        kind = normalize_kind(str(obj["family"]))
        params = {k: v for k, v in obj.items() if k != "family"}
        unknown = set(params) - set(FAMILY_PARAMS[kind])
        if unknown:
            raise ParseError(f"unknown parameters for family {kind}: {sorted(unknown)}")
        spec, fd = family_make(kind, **params)
        return CurveContext({"family": kind, **params}, spec, fd)
    try:
        fobj = obj["field"]
        K = field_make(int(fobj["p"]), int(fobj.get("m", 1)))
        F = _coeff_list(K, obj["F"])
        H = _coeff_list(K, obj["H"])
    except KeyError as exc:
        raise ParseError(f"curve JSON missing key {exc.args[0]!r}") from None
    spec = curve_validate(K, F, H, str(obj.get("name", "")))
    return CurveContext(obj, spec, None)


def load_curve_file(path: str | Path) -> CurveContext:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    return load_curve(obj)


# -- job specification and cache -------------------------------------------------

@dataclass(frozen=True)
class JobSpec:
    task: str
    curve: dict | None = None
    m: int | None = None
    m_range: tuple[int, int] | None = None
    flavor: str = "euclidean"
    wmax: int | None = None
    formula_only: bool = False
    grid: dict | None = None
    family: str | None = None

    def __post_init__(self):
        if self.task not in TASKS:
            raise ParseError(f"unknown task {self.task!r}")
        if self.flavor not in ("euclidean", "hermitian"):
            raise ParseError(f"unknown flavor {self.flavor!r}")
        if self.m is not None and self.m_range is not None:
            raise ParseError("give either m or an m-range, not both")
        if self.m_range is not None and self.m_range[0] > self.m_range[1]:
            raise ParseError(f"empty m-range {self.m_range[0]}..{self.m_range[1]}")

    def canonical(self) -> str:
        d = asdict(self)
        if d["m_range"] is not None:
            d["m_range"] = list(d["m_range"])
        return json.dumps(d, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()

    def m_values(self) -> list[int]:
        if self.m is not None:
            return [self.m]
        if self.m_range is not None:
            return list(range(self.m_range[0], self.m_range[1] + 1))
        raise ParseError(f"task {self.task} needs --m or --m-range")


@dataclass
class ResultRecord:
    job_hash: str
    job: dict
    output: Any
    verdict: str | None = None
    cached: bool = False

    def to_json(self) -> dict:
        return {"job_hash": self.job_hash, "job": self.job, "output": self.output, "verdict": self.verdict}


class ResultCache:
    """Append-only JSON-lines store keyed by job hash."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def get(self, job_hash: str) -> ResultRecord | None:
        if not self.path.exists():
            return None
        found = None
        with self.path.open() as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if rec.get("job_hash") == job_hash:
                    found = rec
        if found is None:
            return None
        return ResultRecord(found["job_hash"], found["job"], found["output"], found.get("verdict"), cached=True)

    def put(self, record: ResultRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(record.to_json(), sort_keys=True) + "\n")


def default_cache() -> ResultCache | None:
    path = os.environ.get("SOAG_CACHE")
    return ResultCache(path) if path else None


# -- tasks -------------------------------------------------------------------------

def _poly_text(p: Polynomial | None) -> str | None:
    return None if p is None else p.text()


def task_info(ctx: CurveContext, formula_only: bool = False) -> dict:
    out: dict[str, Any] = {"curve": ctx.name, "genus": ctx.genus, "field_order": ctx.field_order,
                           "materialized": ctx.materialized}
    if ctx.spec is not None:
        spec = ctx.spec
        out.update(equation=spec.equation(), degF=spec.degF, degH=spec.degH,
                   field={"p": spec.K.p, "m": spec.K.m, "modulus": list(spec.K.modulus)})
    if ctx.fd is not None:
        out["family"] = ctx.fd.to_json()
    square = math.isqrt(ctx.field_order) ** 2 == ctx.field_order
    if ctx.spec is not None and not formula_only:
        td = ctx.td()
        out.update(N=td.N, all_points=td.all_points, A_size=len(td.A), deg_fA=td.f_A.degree,
                   deg_fA_prime=max(td.f_A_prime.degree, 0), degM=td.degM, type=classify_type(td).value)
        r = so_ranges(ctx.spec, td, fd=ctx.fd, hermitian=square)
        out["castle"] = castle_status(ctx.spec, td, ctx.fd)
        if ctx.fd is not None:
            out["predicted_check"] = predicted_check(ctx.spec, ctx.fd, td)
    else:
        # without a family there is no closed form for N, only the coarse bound
        r = so_ranges(ctx.spec, None, fd=ctx.fd, hermitian=square)
        out.update(N=r.N, degM=r.degM, type=ctx.fd.predicted["type"] if ctx.fd is not None else None)
    out["so_ranges"] = r.to_json()
    if r.N is not None:
        out["purity_m_cap"] = purity_m_cap(r.N, ctx.genus)
    return out


def task_points(ctx: CurveContext) -> dict:
    td = ctx.td()
    K = ctx.spec.K
    return {"curve": ctx.name, "N": td.N,
            "points": [[K.text(x), K.text(y)] for x, y in zip(td.xs.tolist(), td.ys.tolist())]}


def points_csv(ctx: CurveContext) -> str:
    td = ctx.td()
    K = ctx.spec.K
    lines = ["x;y"] + [f"{K.text(x)};{K.text(y)}" for x, y in zip(td.xs.tolist(), td.ys.tolist())]
    return "\n".join(lines) + "\n"


def task_fa(ctx: CurveContext) -> dict:
    td = ctx.td()
    out = {"curve": ctx.name, "fA": td.f_A.text(), "fA_prime": td.f_A_prime.text(), "N": td.N,
           "deg_fA": td.f_A.degree, "deg_fA_prime": max(td.f_A_prime.degree, 0), "degM": td.degM,
           "type": classify_type(td).value}
    if ctx.fd is not None:
        out["fA_closed_form"] = ctx.fd.predicted["f_A_text"]
        out["predicted_check"] = predicted_check(ctx.spec, ctx.fd, td)
    return out


def _hermitian_q0(order: int) -> int:
    q0 = math.isqrt(order)
    if q0 * q0 != order:
        raise HermitianUnavailable(f"|K| = {order} is not a square")
    return q0


def task_code(ctx: CurveContext, m: int, wmax: int | None = None, dump_path: str | None = None) -> dict:
    td = ctx.td()
    code = build_code(ctx.spec, td, m)
    out = {"curve": ctx.name, "m": m, "N": td.N, "basis_size": len(code.basis), "dim": code.dim,
           "basis": [list(p) for p in code.basis.pairs] if len(code.basis) <= 64 else None}
    if 2 * ctx.genus - 2 < m < td.N:
        out["designed"] = designed_params_raw(td.N, ctx.genus, m)
    if wmax:
        t = min_dependent_columns(code.genmat, wmax)
        out["d_dual"] = t if t is not None else f">{wmax}"
    if dump_path:
        Path(dump_path).write_text(dump_matrix(code.genmat))
        out["genmat_dump"] = dump_path
    return out


def task_so_check(ctx: CurveContext, m: int) -> dict:
    td = ctx.td()
    square = math.isqrt(ctx.field_order) ** 2 == ctx.field_order
    r = so_ranges(ctx.spec, td, fd=ctx.fd, hermitian=square)
    code = build_code(ctx.spec, td, m)
    out = {"curve": ctx.name, "m": m, "N": td.N, "dim": code.dim,
           "so_euclidean": check_so_euclidean(code),
           "so_hermitian": check_so_hermitian(code, r.q0) if square else None,
           "m_max_exact": r.m_max_exact, "m_max_coarse": r.m_max_coarse,
           "m_max_hermitian_exact": r.m_max_hermitian_exact,
           "designed": designed_params_raw(td.N, ctx.genus, m) if 2 * ctx.genus - 2 < m < td.N else None}
    return out


def _matrix_ok(ctx: CurveContext, m: int, formula_only: bool) -> bool:
    if formula_only or ctx.spec is None:
        return False
    N = ctx.fd.predicted["N"] if ctx.fd is not None else ctx.td().N
    return basis_size(ctx.spec.degF, ctx.spec.degH, m) <= MAX_GATE_ROWS and N <= MAX_GATE_COLS


def quantum_row(ctx: CurveContext, m: int, flavor: str = "euclidean", wmax: int | None = None,
                formula_only: bool = False, gv: bool = True) -> dict:
    """One stabilizer-code row for C(D, m P_inf) with provenance flags."""
    g = ctx.genus
    order = ctx.field_order
    alphabet = order if flavor == "euclidean" else _hermitian_q0(order)
    use_matrix = _matrix_ok(ctx, m, formula_only)
    N, degM = ctx.N_degM(prefer_formula=not use_matrix)
    bound = (2 * g - 2 + N - degM) // 2 if flavor == "euclidean" else (2 * g - 2 + N - degM) // (alphabet + 1)
    row: dict[str, Any] = {"source_curve": ctx.name, "flavor": flavor, "m": m, "N": N, "alphabet": alphabet,
                           "so_bound": bound}
    if use_matrix:
        code = build_code(ctx.spec, ctx.td(), m)
        so = check_so_euclidean(code) if flavor == "euclidean" else check_so_hermitian(code, alphabet)
        row["so_status"] = "matrix" if so else "matrix-false"
        if not so:
            row.update(k=None, d_lb=None, d_certified=False, pure=None, gv=None, jx_bound=None)
            return row
    elif m <= bound:
        row["so_status"] = "bounds-only"
    else:
        raise PreconditionViolated(f"m = {m} exceeds the proven range m <= {bound} and no matrix check is possible")
    certified = False
    if 2 * g - 2 < m < N:
        dim = m - g + 1
        d = m - 2 * g + 2
        pure = purity_check(N, g, m)
        if use_matrix and wmax:
            t = min_dependent_columns(code.genmat, wmax)
            if t is not None:
                d, certified = t, True
            else:
                d = max(d, wmax + 1)
    else:
        if not use_matrix:
            raise MOutOfRange(f"m = {m} outside 2g-2 < m < N needs a matrix computation")
        dim = code.dim
        t = min_dependent_columns(code.genmat, wmax or 3)
        d, certified = (t, True) if t is not None else ((wmax or 3) + 1, False)
        # purity needs the primal distance; N - m bounds it below for m < N
        pure = purity_generic(N - m, dim) if m < N else None
    k = N - 2 * dim
    if k < 0:
        raise PreconditionViolated(f"k = {k} < 0")
    gv_flag = None
    if gv:
        try:
            gv_flag = gv_check(alphabet, N, k, d)
        except SoagError:
            gv_flag = None
    jx = None
    if alphabet % 2 == 0:
        jx = jin_xing_bound(N + 1, alphabet).floor
    row.update(dim=dim, k=k, d_lb=d, d_certified=certified, pure=pure, gv=gv_flag, jx_bound=jx,
               params=f"[[{N},{k},{'' if certified else '>='}{d}]]_{alphabet}")
    return row


# -- sweeps ------------------------------------------------------------------------

SWEEP_FIELDS = ["source_curve", "flavor", "m", "N", "k", "d_lb", "d_certified", "pure", "gv", "jx_bound",
                "so_status", "error"]


def expand_grid(grid: dict[str, list]) -> list[dict]:
    keys = sorted(grid)
    return [dict(zip(keys, vals)) for vals in itertools.product(*(grid[k] for k in keys))]


def _sweep_curve(kind: str, params: dict, flavor: str, m_range: tuple[int, int] | None,
                 formula_only: bool) -> list[dict]:
    label = f"{kind}(" + ",".join(f"{k}={params[k]}" for k in FAMILY_PARAMS[kind] if k in params) + ")"
    try:
        spec, fd = family_make(kind, **params)
        ctx = CurveContext({"family": kind, **params}, spec, fd)
        g = ctx.genus
        order = ctx.field_order
        alphabet = order if flavor == "euclidean" else _hermitian_q0(order)
        mat_possible = spec is not None and not formula_only and fd.predicted["N"] <= MAX_GATE_COLS
        N, degM = ctx.N_degM(prefer_formula=not mat_possible)
        div = 2 if flavor == "euclidean" else alphabet + 1
        bound = (2 * g - 2 + N - degM) // div
        if m_range is not None:
            lo, hi = m_range
        else:
            lo, hi = max(2 * g - 1, 0), min(bound, N - 1, (N + 2 * g - 2) // 2)
        if lo > hi:
            return [quantum_row(ctx, bound, flavor, None, formula_only) | {"error": None}]
        verified = -1
        if mat_possible:
            top = hi
            while top >= lo and basis_size(spec.degF, spec.degH, top) > MAX_GATE_ROWS:
                top -= 1
            if top >= lo:
                verified = so_limit(spec, ctx.td(), top, None if flavor == "euclidean" else alphabet)
        rows = []
        pairs = []
        for m in range(lo, hi + 1):
            if 2 * g - 2 < m < N and m <= bound:
                k = N - 2 * (m - g + 1)
                d = m - 2 * g + 2
                if k < 0:
                    continue
                status = "matrix" if m <= verified else "bounds-only"
                rows.append({"source_curve": ctx.name, "flavor": flavor, "m": m, "N": N, "k": k, "d_lb": d,
                             "d_certified": False, "pure": purity_check(N, g, m), "gv": None,
                             "jx_bound": jin_xing_bound(N + 1, alphabet).floor if alphabet % 2 == 0 else None,
                             "so_status": status, "error": None})
                pairs.append((k, d))
            else:
                try:
                    rows.append(quantum_row(ctx, m, flavor, None, formula_only) | {"error": None})
                    pairs.append(None)
                except SoagError as exc:
                    rows.append({"source_curve": ctx.name, "flavor": flavor, "m": m, "error": exc.code})
                    pairs.append(None)
        idx = [i for i, p in enumerate(pairs) if p is not None]
        for i, flag in zip(idx, gv_check_many(alphabet, N, [pairs[i] for i in idx])):
            rows[i]["gv"] = flag
        return rows
    except SoagError as exc:
        return [{"source_curve": label, "flavor": flavor, "error": f"ERROR:{exc.code}"}]


def sweep(kind: str, grid: dict[str, list], flavor: str = "euclidean", jobs: int = 1,
          m_range: tuple[int, int] | None = None, formula_only: bool = False) -> list[dict]:
    """Quantum rows for every family member in the grid, sorted by (N, -k)."""
    kind = normalize_kind(kind)
    points = expand_grid(grid) if grid else []
    args = [(kind, p, flavor, m_range, formula_only) for p in points]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_sweep_curve_star, args))
    else:
        chunks = [_sweep_curve(*a) for a in args]
    rows = [r for chunk in chunks for r in chunk]

    def key(r):
        bad = r.get("N") is None or r.get("k") is None
        return (bad, r.get("N") or 0, -(r.get("k") or 0), r.get("source_curve", ""), r.get("m") or 0)

    return sorted(rows, key=key)


def _sweep_curve_star(a):
    return _sweep_curve(*a)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r.get(k) is None else r.get(k)) for k in SWEEP_FIELDS})
    return buf.getvalue()


# -- reproduction suite --------------------------------------------------------------

def load_manifest(path: str | Path | None = None) -> dict:
    if path is None:
        text = resources.files("soag").joinpath("data/paper_suite.json").read_text()
    else:
        text = Path(path).read_text()
    return json.loads(text)


def _as_str(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _compute_row(row: dict, cache: dict) -> dict:
    """Computed values for one manifest row, keyed like its expectations."""
    key = json.dumps(row["curve"], sort_keys=True)
    if key not in cache:
        cache[key] = load_curve(row["curve"])
    ctx: CurveContext = cache[key]
    check = row["check"]
    out: dict[str, Any] = {}
    if check == "curve":
        td = ctx.td()
        r = so_ranges(ctx.spec, td, fd=ctx.fd)
        out.update(N=td.N, genus=ctx.genus, deg_fA=td.f_A.degree, deg_fA_prime=max(td.f_A_prime.degree, 0),
                   fA=td.f_A.text(), fA_prime=td.f_A_prime.text(), degM_over_degF=max(td.f_A_prime.degree, 0),
                   m_max_exact=r.m_max_exact, m_max_coarse=r.m_max_coarse,
                   range=f"{2 * ctx.genus - 1}..{r.m_max_exact}")
    elif check == "so":
        td = ctx.td()
        code = build_code(ctx.spec, td, row["m"])
        if row.get("flavor", "euclidean") == "euclidean":
            out["so"] = check_so_euclidean(code)
        else:
            out["so"] = check_so_hermitian(code, _hermitian_q0(ctx.field_order))
        out["dim"] = code.dim
    elif check == "quantum":
        q = quantum_row(ctx, row["m"], row.get("flavor", "euclidean"), row.get("wmax"),
                        formula_only=row.get("formula_only", False))
        out.update(params=q.get("params"), pure=q.get("pure"), gv=q.get("gv"), dim=q.get("dim"),
                   N=q["N"], k=q.get("k"), d=q.get("d_lb"))
        if row.get("dual_dim"):
            code = build_code(ctx.spec, ctx.td(), row["m"])
            out["dual_dim"] = dual_code(code).rows
    elif check == "caps":
        N, degM = ctx.N_degM(prefer_formula=True)
        out.update(family_cap=ctx.fd.predicted["so_bound_m_max"], purity_cap=purity_m_cap(N, ctx.genus),
                   m_max_exact=(2 * ctx.genus - 2 + N - degM) // 2, N=N, genus=ctx.genus)
    elif check == "gv":
        out["gv"] = gv_check(*row["args"])
    elif check == "jin_xing":
        td = ctx.td()
        out["jx_floor"] = jin_xing_bound(td.N + 1, ctx.field_order).floor
        out["m_max_exact"] = (2 * ctx.genus - 2 + td.N - td.degM) // 2
    else:
        raise ParseError(f"unknown check {check!r}")
    return out


def paper_suite(manifest: dict | None = None) -> list[dict]:
    """Run every manifest row; each result carries expected, computed and a verdict."""
    if manifest is None:
        manifest = load_manifest()
    cache: dict = {}
    results = []
    for row in manifest["rows"]:
        try:
            got = _compute_row(row, cache)
            computed = {k: _as_str(got.get(k)) for k in row["expected"]}
            ok = all(computed[k] == _as_str(v) for k, v in row["expected"].items())
            verdict = "PASS" if ok else "FAIL"
        except SoagError as exc:
            computed, verdict = {"error": exc.code}, "FAIL"
        except KeyError as exc:
            computed, verdict = {"error": f"manifest row lacks {exc.args[0]!r}"}, "FAIL"
        results.append({"id": row["id"], "expected": row["expected"], "computed": computed, "verdict": verdict,
                        "note": row.get("note")})
    return results


# -- dispatcher ----------------------------------------------------------------------

def run_job(job: JobSpec, cache: ResultCache | None = None, *, dump_genmat: str | None = None) -> ResultRecord:
    h = job.digest()
    if cache is not None and dump_genmat is None:
        hit = cache.get(h)
        if hit is not None:
            return hit
    verdict = None
    if job.task == "paper-suite":
        output = paper_suite()
        verdict = "PASS" if all(r["verdict"] == "PASS" for r in output) else "FAIL"
    elif job.task == "sweep":
        if not job.family:
            raise ParseError("sweep needs --family")
        mr = tuple(job.m_range) if job.m_range else None
        output = sweep(job.family, job.grid or {}, job.flavor, 1, mr, job.formula_only)
    else:
        if job.curve is None:
            raise ParseError(f"task {job.task} needs a curve (--family ... or --curve file.json)")
        ctx = load_curve(job.curve)
        if job.task == "info":
            output = task_info(ctx, job.formula_only)
        elif job.task == "points":
            output = task_points(ctx)
        elif job.task == "fa":
            output = task_fa(ctx)
        elif job.task == "code":
            ms = job.m_values()
            output = [task_code(ctx, m, job.wmax, dump_genmat) for m in ms]
            output = output[0] if job.m is not None else output
        elif job.task == "so-check":
            output = [task_so_check(ctx, m) for m in job.m_values()]
            output = output[0] if job.m is not None else output
        else:
            output = [quantum_row(ctx, m, job.flavor, job.wmax, job.formula_only) for m in job.m_values()]
            output = output[0] if job.m is not None else output
    rec = ResultRecord(h, json.loads(job.canonical()), output, verdict)
    if cache is not None:
        cache.put(rec)
    return rec


__all__ = [
    "CurveContext",
    "JobSpec",
    "ResultCache",
    "ResultRecord",
    "TASKS",
    "default_cache",
    "dumps",
    "expand_grid",
    "load_curve",
    "load_curve_file",
    "load_manifest",
    "paper_suite",
    "points_csv",
    "quantum_row",
    "rows_to_csv",
    "run_job",
    "sweep",
    "task_code",
    "task_fa",
    "task_info",
    "task_points",
    "task_so_check",
]
