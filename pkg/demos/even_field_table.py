"""Three curves over GF(2^6), GF(2^7) and GF(2^8) against the Jin-Xing threshold.

For even q there is a general existence threshold for self-orthogonal AG codes.
Here the exact bound from deg M is compared with it.  Where the matrices fit,
the largest self-orthogonal m is also found directly; it can exceed the bound,
since the bound is only sufficient.
"""

import argparse
from pathlib import Path

from soag.agcode import basis_size, so_limit, so_ranges
from soag.linalg import MAX_GATE_ROWS
from soag.quantum import jin_xing_bound
from soag.report import load_curve_file

HERE = Path(__file__).resolve().parent / "curves"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-matrix", action="store_true")
    args = ap.parse_args()
    print(f"{'curve':8} {'g':>5} {'N':>5} {'deg M':>6} {'exact':>6} {'JX':>6}")
    for name in ("gf64", "gf128", "gf256"):
        ctx = load_curve_file(HERE / f"{name}.json")
        spec, td = ctx.spec, ctx.td()
        r = so_ranges(spec, td)
        jx = jin_xing_bound(td.N + 1, spec.K.order)
        print(f"{name:8} {spec.genus:5d} {td.N:5d} {td.degM:6d} {r.m_max_exact:6d} {jx.floor:6d}")
        if args.skip_matrix:
            continue
        hi = min(2 * r.m_max_exact, td.N - 1)
        while basis_size(spec.degF, spec.degH, hi) > MAX_GATE_ROWS:
            hi -= 1
        lim = so_limit(spec, td, hi)
        print(f"         matrices up to m={hi}: largest self-orthogonal m = {lim}")


if __name__ == "__main__":
    main()
