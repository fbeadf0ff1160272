"""Spectral gap of H_hol over an eps sweep, with the power-law fit of beta(eps).

    python scripts/gap_sweep.py [--N 4001]
"""

import argparse

from frontspec.asymptotics import DEFAULT_EPS, power_fit
from frontspec.core import ModelParams
from frontspec.grid import Grid
from frontspec.spectra import h_hol_spectrum


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--alpha", type=float, default=0.25)
    ap.add_argument("--L", type=float, default=20.0)
    ap.add_argument("--N", type=int, default=4001)
    args = ap.parse_args()
    p = ModelParams(alpha=args.alpha)
    g = Grid(args.L, args.N)
    lim = h_hol_spectrum(0, p, g)
    print(f"eps=0        lambda0={lim.eigenvalues[0]: .3e}  lambda1={lim.eigenvalues[1]:.6f}")
    rows = []
    for e in sorted(DEFAULT_EPS):
        sp = h_hol_spectrum(e, p, g)
        rows.append((e, sp.beta))
        print(f"eps={e:<6}  lambda0={sp.eigenvalues[0]: .3e}  lambda1={sp.eigenvalues[1]:.6f}  "
              f"beta={sp.beta:10.3f}  beta*eps^2={sp.beta * e * e:.5f}")
    fit = power_fit(rows)
    print(f"beta ~ eps^{fit.exponent:.4f}  (r^2 = {fit.r_squared:.6f})")


if __name__ == "__main__":
    main()
