#!/usr/bin/env python3
"""Error profile of the screened 1/r^2 substitution, with and without the
constant correction term.
"""

import argparse
import sys

import numpy as np

from dirac_nu.analysis import approx_report
from dirac_nu.model import PSEUDOSPIN, ModelParams


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.6)
    ap.add_argument("--r-max", type=float, default=None, help="default: rated range 0.5/(2 alpha)")
    ap.add_argument("--rows", type=int, default=12)
    args = ap.parse_args()

    params = ModelParams(
        mass=5.0, symmetry=PSEUDOSPIN, c_sym=0.0, tensor_h=0.0, alpha=args.alpha
    )
    r_max = args.r_max if args.r_max is not None else 0.5 / (2.0 * args.alpha)
    rep = approx_report(params, r_min=1e-4, r_max=r_max, n_points=4000)

    print(f"{'r':>10} {'2*alpha*r':>10} {'exact':>13} {'corrected':>13} {'rel_err':>10} {'no_corr':>10}")
    for i in np.linspace(0, len(rep.r) - 1, args.rows).astype(int):
        print(
            f"{rep.r[i]:10.5f} {2 * args.alpha * rep.r[i]:10.5f} {rep.exact[i]:13.5e} "
            f"{rep.approx[i]:13.5e} {rep.rel_err[i]:10.3e} {rep.rel_err_nocorr[i]:10.3e}"
        )
    print(f"\nmax rel err (corrected):   {rep.max_rel_err:.6e} at r = {rep.r_at_max:.5f}")
    print(f"max rel err (uncorrected): {rep.max_rel_err_nocorr:.6e}")
    rated = 0.5 / (2.0 * args.alpha)
    if r_max <= rated:
        print(f"rated range 2*alpha*r <= 0.5 holds up to r = {rated:.5f}")
    else:
        print(f"note: beyond r = {rated:.5f} the substitution saturates and the error grows without bound")
    return 0


if __name__ == "__main__":
    sys.exit(main())
