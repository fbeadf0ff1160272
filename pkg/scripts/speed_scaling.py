"""How s_ren and alpha_hux - 1/2 scale with eps.

The speed is eps^2 z0 (z0 - alpha)(z0 - 1)/sqrt2, so |s_ren| ~ eps^2, while
sqrt2 (alpha_hux - 1/2) = s_ren / A_ren ~ eps^3. This prints both fits.
"""

import math

from frontspec.asymptotics import power_fit
from frontspec.core import ModelParams
from frontspec.wave import wave_data


def main():
    eps = (0.2, 0.1, 0.05, 0.025, 0.0125)
    for alpha in (0.1, 0.25, 0.4):
        p = ModelParams(alpha=alpha)
        ws = [wave_data(e, p) for e in eps]
        fs = power_fit([(e, -w.s_ren.real) for e, w in zip(eps, ws)])
        fa = power_fit([(e, math.sqrt(2) * (0.5 - w.alpha_hux.real)) for e, w in zip(eps, ws)])
        lead = (math.sqrt(2) / 54) * (2 - alpha) * (1 + alpha) * (1 - 2 * alpha)
        print(f"alpha={alpha}: |s_ren| ~ eps^{fs.exponent:.4f}, sqrt2(1/2 - alpha_hux) ~ eps^{fa.exponent:.4f}, "
              f"s_ren/eps^2 at eps={eps[-1]}: {ws[-1].s_ren.real / eps[-1] ** 2:.6f} (leading {-lead:.6f})")


if __name__ == "__main__":
    main()
