"""Tour of the curve families: closed forms against brute force, then quantum codes.

For each family member we compare the predicted point count and f_A with what
point enumeration finds, print the self-orthogonality bounds, and turn the
largest admissible m into stabilizer code parameters.
"""

import argparse

from soag.agcode import so_ranges
from soag.curve import family_make, predicted_check, transversal_data
from soag.quantum import gv_check, one_point_m_cap, one_point_qparams

MEMBERS = [
    ("A", dict(q=9, n=2, l=8)),
    ("A", dict(q=3, n=3, l=4)),
    ("B_Hk", dict(q=3, k=1)),
    ("B_Hk", dict(q=3, k=2)),
    ("C", dict(q=9, l=5)),
    ("C", dict(q=27, l=7)),
    ("C_s", dict(q=3, s=1, l=13, n=3)),
]


def show(kind: str, params: dict) -> None:
    spec, fd = family_make(kind, **params)
    pred = fd.predicted
    print(f"{fd.label}")
    print(f"  predicted  N={pred['N']}  genus={pred['genus']}  f_A={pred['f_A_text']}  type={pred['type']}")
    if spec is not None:
        td = transversal_data(spec)
        rep = predicted_check(spec, fd, td)
        print(f"  computed   N={td.N}  f_A={td.f_A.text()}  agree={rep['all_pass']['pass']}")
        r = so_ranges(spec, td, fd=fd)
    else:
        r = so_ranges(fd=fd)
    print(f"  bounds     exact m <= {r.m_max_exact}, family m <= {r.family_bound}")
    N, g = pred["N"], pred["genus"]
    m = min(r.m_max_exact, one_point_m_cap(N, g))
    if 2 * g - 2 < m:
        qp = one_point_qparams(N, g, m, pred["field_order"])
        try:
            gv = gv_check(pred["field_order"], *qp.as_tuple())
        except Exception:  # noqa: BLE001
            gv = None
        print(f"  at m={m}   {qp.text()}  pure={qp.pure}  gv={gv}")
    else:
        print("  no m in the designed range is self-orthogonal")
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.parse_args()
    for kind, params in MEMBERS:
        show(kind, params)


if __name__ == "__main__":
    main()
