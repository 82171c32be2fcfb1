#!/usr/bin/env python3
"""Solve every bundled reference cell and print computed vs stored energies.

Exits 1 if any deviation exceeds 1e-6.
"""

import argparse
import sys

from dirac_nu.model import PSEUDOSPIN, SPIN
from dirac_nu.refdata import load_reference
from dirac_nu.spectrum import SolveOptions, build_equation, solve_spectrum

TOL = 1e-6


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--symmetry", choices=["pseudospin", "spin", "both"], default="both")
    args = ap.parse_args()

    ref = load_reference()
    opts = SolveOptions()
    symmetries = [PSEUDOSPIN, SPIN] if args.symmetry == "both" else [args.symmetry]

    worst = 0.0
    bad = 0
    for symmetry in symmetries:
        print(f"\n== {symmetry} limit ==")
        print(f"{'n':>2} {'kappa':>5} {'H':>4} {'label':>7} {'stored':>15} {'computed':>15} {'dev':>10}")
        for cell in ref.select(symmetry):
            eq = build_equation(ref.params(symmetry, cell.tensor_h), cell.state, None)
            res = solve_spectrum(eq, opts)
            for e_ref in cell.energies:
                best = min((r.energy for r in res.roots), key=lambda e: abs(e - e_ref), default=None)
                dev = abs(best - e_ref) if best is not None else float("inf")
                worst = max(worst, dev)
                flag = "" if dev < TOL else "  <-- MISS"
                if dev >= TOL:
                    bad += 1
                shown = f"{best:15.9f}" if best is not None else f"{'none':>15}"
                print(
                    f"{cell.state.n:2d} {cell.state.kappa:5d} {cell.tensor_h:4.1f} "
                    f"{cell.label:>7} {e_ref:15.9f} {shown} {dev:10.3e}{flag}"
                )
    print(f"\nworst deviation: {worst:.3e}  ({'ok' if bad == 0 else f'{bad} misses'})")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
