"""Complex-eps discrepancy table and the per-angle power fits."""

import math

from frontspec.asymptotics import holomorphy_check


def main():
    angles = (0.0, math.pi / 6, -math.pi / 6, math.pi / 3, -math.pi / 3)
    rep = holomorphy_check(radii=(0.2, 0.1, 0.05, 0.025, 0.0125), angles=angles)
    print(f"{'r':>8} {'theta/deg':>9} {'phi err':>11} {'Q err':>11}")
    for c in rep.cells:
        if c.skipped:
            print(f"{c.radius:8.4f} {math.degrees(c.angle):9.1f}  skipped: {c.skipped}")
        else:
            print(f"{c.radius:8.4f} {math.degrees(c.angle):9.1f} {c.phi_error:11.3e} {c.q_error:11.3e}")
    for a in angles:
        f, q = rep.phi_fits[a], rep.q_fits[a]
        print(f"theta={math.degrees(a):6.1f}  phi exponent {f.exponent:.4f} (r2 {f.r_squared:.6f})  "
              f"Q exponent {q.exponent:.4f} (r2 {q.r_squared:.6f})")


if __name__ == "__main__":
    main()
