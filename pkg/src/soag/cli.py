"""Command line front end: ``soag <task> [options]``.

Exit codes: 0 ok, 1 usage or parse error, 2 mathematical precondition,
3 reproduction-suite failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import MathPreconditionError, ParseError, SoagError
from .report import (
    TASKS,
    JobSpec,
    ResultCache,
    default_cache,
    dumps,
    load_curve,
    paper_suite,
    points_csv,
    rows_to_csv,
    run_job,
)

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_SUITE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        v = int(text)
        return v, v
    except ValueError:
        raise ParseError(f"bad range {text!r}; expected a..b") from None


def parse_grid(items: list[str]) -> dict[str, list]:
    grid: dict[str, list] = {}
    for item in items:
        if "=" not in item:
            raise ParseError(f"bad grid entry {item!r}; expected key=v1,v2 or key=a..b")
        key, vals = item.split("=", 1)
        out: list[int] = []
        for part in vals.split(","):
            a, b = parse_range(part)
            out.extend(range(a, b + 1))
        grid[key.strip()] = out
    return grid


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="soag", description="Self-orthogonal one-point AG codes from curves F(y) = H(x).")
    p.add_argument("task", choices=TASKS)
    src = p.add_argument_group("curve source")
    src.add_argument("--family", help="A, BHk, Bgen, C or Cs")
    src.add_argument("--curve", help="curve JSON file")
    for name in ("q", "n", "l", "k", "s"):
        src.add_argument(f"--{name}", type=int)
    src.add_argument("--G", help="Bgen polynomial as a JSON {exponent: coeff} object")
    p.add_argument("--m", type=int)
    p.add_argument("--m-range", help="inclusive range a..b")
    p.add_argument("--flavor", choices=("euclidean", "hermitian"), default="euclidean")
    p.add_argument("--wmax", type=int, help="certify dual distance up to this weight (at most 4)")
    p.add_argument("--formula-only", action="store_true", help="skip matrix computations")
    p.add_argument("--grid", action="append", default=[], help="sweep grid entry key=v1,v2 or key=a..b")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", help="JSON-lines result cache (default: $SOAG_CACHE)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--dump-genmat", help="with task code: write the generator matrix here")
    p.add_argument("--manifest", help="with task paper-suite: alternative manifest file")
    return p


def _curve_source(args) -> dict | None:
    if args.family and args.curve:
        raise ParseError("give either --family or --curve, not both")
    if args.curve:
        try:
            return json.loads(Path(args.curve).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"{args.curve}: {exc}") from None
    if args.family:
        obj: dict = {"family": args.family}
        for name in ("q", "n", "l", "k", "s"):
            v = getattr(args, name)
            if v is not None:
                obj[name] = v
        if args.G:
            try:
                obj["G"] = json.loads(args.G)
            except json.JSONDecodeError as exc:
                raise ParseError(f"--G: {exc}") from None
        return obj
    return None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _run(args) -> int:
    if args.task == "paper-suite":
        from .report import load_manifest

        rows = paper_suite(load_manifest(args.manifest) if args.manifest else None)
        lines = [f"{r['verdict']:4}  {r['id']:16}  expected={json.dumps(r['expected'], sort_keys=True)}  "
                 f"computed={json.dumps(r['computed'], sort_keys=True)}" for r in rows]
        if args.out:
            Path(args.out).write_text(dumps(rows))
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK if all(r["verdict"] == "PASS" for r in rows) else EXIT_SUITE

    curve = _curve_source(args)
    grid = parse_grid(args.grid) if args.grid else None
    if args.task == "sweep":
        fixed = {k: [v] for k, v in (curve or {}).items() if k not in ("family", "G")}
        grid = {**fixed, **(grid or {})}
        family = (curve or {}).get("family")
        if family is None:
            raise ParseError("sweep needs --family")
        curve = None
    m_range = parse_range(args.m_range) if args.m_range else None
    job = JobSpec(task=args.task, curve=curve, m=args.m, m_range=m_range, flavor=args.flavor, wmax=args.wmax,
                  formula_only=args.formula_only, grid=grid, family=family if args.task == "sweep" else None)
    if args.wmax is not None and not 1 <= args.wmax <= 4:
        raise ParseError("--wmax must be between 1 and 4")

    if args.task == "sweep" and args.jobs > 1:
        from .report import sweep

        rows = sweep(family, grid, args.flavor, args.jobs, m_range, args.formula_only)
        _emit(rows_to_csv(rows), args.out)
        return EXIT_OK
    if args.task == "points" and args.out and args.out.endswith(".csv"):
        _emit(points_csv(load_curve(curve)), args.out)
        return EXIT_OK

    cache = None
    if not args.no_cache:
        cache = ResultCache(args.cache) if args.cache else default_cache()
    rec = run_job(job, cache, dump_genmat=args.dump_genmat)
    if args.task == "sweep":
        _emit(rows_to_csv(rec.output), args.out)
    else:
        _emit(dumps(rec.output) + "\n", args.out)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"soag: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MathPreconditionError as exc:
        print(f"soag: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except SoagError as exc:
        print(f"soag: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
