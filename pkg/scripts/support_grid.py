"""Scan the support-property forms over a grid of charge parameters.

Prints the worst restricted eigenvalue per case of the coefficient forms and
for the lattice forms on the charge kernels.
"""

import argparse

import numpy as np

from e3stab.support import cone_grid, support_grid, verify_linalg_grid


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--step", type=float, default=0.05)
    ap.add_argument("--max", type=float, default=0.3)
    ap.add_argument("--eta-fraction", type=float, default=0.5)
    args = ap.parse_args()
    vals = list(np.round(np.arange(args.step, args.max + 1e-9, args.step), 10))

    cases = {
        1: cone_grid(vals),
        2: [p for p in cone_grid(vals, 2)],
        3: [(v,) for v in vals],
    }
    for case, grid in cases.items():
        rep = verify_linalg_grid(case, grid)
        print(f"coefficient forms, case {case}: {rep.points} checks, {len(rep.violations)} violations, "
              f"worst eigenvalue {rep.worst_margin:.4g}")
    rep = support_grid(cone_grid(vals), eta_fraction=args.eta_fraction)
    print(f"lattice forms on charge kernels: {rep.points} checks, {len(rep.violations)} violations, "
          f"worst eigenvalue {rep.worst_margin:.4g} at {rep.worst_point}")


if __name__ == "__main__":
    main()
