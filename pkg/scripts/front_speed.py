"""Simulated front speed against the exact s_ren, with one refinement step.

    python scripts/front_speed.py [--eps 0.5]
"""

import argparse

from frontspec.acceptance import front_speed_run
from frontspec.core import ModelParams
from frontspec.wave import wave_data


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--eps", type=float, default=0.5)
    ap.add_argument("--alpha", type=float, default=0.25)
    args = ap.parse_args()
    p = ModelParams(alpha=args.alpha)
    exact = wave_data(args.eps, p).s_ren.real
    print(f"exact s_ren = {exact:.8e}")
    for refine in (False, True):
        tr, shape, cfg = front_speed_run(args.eps, p, refine)
        print(f"N={cfg.grid.N:5d} dt={cfg.dt:.5f}  speed={tr.fitted_speed:.8e}  "
              f"rel.err={tr.fitted_speed / exact - 1:+.2e}  shape/A={shape:.2e}")


if __name__ == "__main__":
    main()
