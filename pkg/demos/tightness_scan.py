"""Walk through y^27 - y = x^2 over GF(3^6), where the self-orthogonality bound is tight.

The exact bound 2m <= 2g - 2 + N - deg M and the coarse bound 2m <= 2g - 2 + deg F
both give m <= 25 here.  We build every code C(D, m P_inf) for m up to 30 and look
at its Gram matrix directly.
"""

import argparse
import time

from soag.agcode import build_code, check_so_euclidean, so_ranges
from soag.curve import curve_from_terms, transversal_data
from soag.finite_field import field_make


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=30)
    args = ap.parse_args()

    K = field_make(3, 6)
    spec = curve_from_terms(K, {27: 1, 1: -1}, {2: 1}, "tightness")
    print(f"curve      {spec.equation()} over {K}")
    print(f"genus      {spec.genus}")

    td = transversal_data(spec)
    print(f"points     {td.N} (|A| = {len(td.A)} vertical lines of {spec.degF} points each)")
    print(f"f_A'       {td.f_A_prime.text()}  -> deg M = {td.degM}")

    r = so_ranges(spec, td)
    print(f"bounds     exact m <= {r.m_max_exact}, coarse m <= {r.m_max_coarse}")

    t0 = time.perf_counter()
    first_bad = None
    for m in range(args.m_max + 1):
        code = build_code(spec, td, m)
        ok = check_so_euclidean(code)
        if not ok and first_bad is None:
            first_bad = m
        print(f"  m={m:3d}  dim={code.dim:3d}  self-orthogonal={ok}")
    print(f"first failure at m = {first_bad}; scan took {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
