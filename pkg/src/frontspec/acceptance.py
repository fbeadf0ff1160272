"""The acceptance checks, one function per criterion.

Each check fixes its own eps lists and tolerances and returns an ACResult
whose ``details`` hold only deterministic numbers, so the same objects feed
both the ``report`` subcommand and the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import asymptotics as asy
from .core import ModelParams
from .equilibria import expansion_residuals, solve_equilibria, vieta_residuals
from .essential import Verdict, border_curve, border_max_real, classify_lambda, MINUS, PLUS
from .evolution import EvolutionConfig, evolve, front_level, shape_error, track_front
from .grid import Grid, GridFunction
from .operators import bundle_for
from .spectra import decay_rate, h_hol_spectrum, kernel_residual, scaling_check
from .wave import phi_hux_decay_check, phi_ren, sector_sample, wave_data, wave_residual


@dataclass
class ACResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{self.name}: {'PASS' if self.passed else 'FAIL'}"


def ac1_root_expansions() -> ACResult:
    eps_list = (0.2, 0.1, 0.05, 0.025)
    ok, det = True, {}
    for a in (0.1, 0.25, 0.4):
        p = ModelParams(alpha=a)
        res = [expansion_residuals(e, p) for e in eps_list]
        s0 = asy.power_fit([(e, r[0]) for e, r in zip(eps_list, res)]).exponent
        sm = asy.power_fit([(e, r[1]) for e, r in zip(eps_list, res)]).exponent
        sp = asy.power_fit([(e, r[2]) for e, r in zip(eps_list, res)]).exponent
        vieta = max(max(vieta_residuals(solve_equilibria(e, p), p)) for e in eps_list)
        det[f"alpha={a}"] = {"z0_slope": s0, "zminus_slope": sm, "zplus_slope": sp, "vieta_max": vieta}
        ok &= 1.9 <= s0 <= 2.1 and sm >= 0.9 and sp >= 0.9 and vieta <= 1e-9
    return ACResult("AC1 root expansions", bool(ok), det)


def ac2_wave_identity(eps_list=asy.DEFAULT_EPS) -> ACResult:
    p = ModelParams()
    worst_res, worst_band, speeds = 0.0, 0.0, []
    for e in eps_list:
        w = wave_data(e, p)
        A = w.A_ren.real
        x = np.linspace(-10.0 * e, 10.0 * e, 2001)
        worst_res = max(worst_res, float(np.max(np.abs(wave_residual(x, w)))) / A ** 3)
        worst_band = max(worst_band, abs(w.alpha_hux.real - 0.5) / e ** 2)
        speeds.append((e, w.s_ren.real))
    negative = all(s < 0 for _, s in speeds)
    slope = asy.power_fit([(e, -s) for e, s in speeds]).exponent if negative else None
    checks = {
        "residual_over_A3": worst_res <= 1e-8,
        "alpha_hux_band": worst_band <= 0.05,
        "speed_negative": negative,
        "speed_slope_in_[2.8,3.2]": slope is not None and 2.8 <= slope <= 3.2,
    }
    det = {"max_residual_over_A3": worst_res, "max_alpha_hux_dev_over_eps2": worst_band,
           "speed_slope": slope, "checks": checks}
    return ACResult("AC2 wave identity", all(checks.values()), det)


def ac3_essential_border(eps_list=asy.DEFAULT_EPS, n: int = 50) -> ACResult:
    p = ModelParams()
    ok, det = True, {}
    for e in eps_list:
        b = bundle_for(e, p)
        bm = border_max_real(b)
        scaled = e * e * bm
        right = [bm + abs(bm) * t for t in np.linspace(0.01, 3.0, n)]
        n_index0 = sum(classify_lambda(lam, b).verdict is Verdict.INDEX_ZERO for lam in right)
        xi = np.linspace(-5.0 / e, 5.0 / e, n // 2)
        pts = np.concatenate([border_curve(MINUS, b)(xi), border_curve(PLUS, b)(xi)])
        n_border = sum(classify_lambda(lam, b).verdict is Verdict.NOT_FREDHOLM for lam in pts)
        good = -6 - 3 * e <= scaled <= -6 + 3 * e and n_index0 == n and n_border == pts.size
        det[f"eps={e}"] = {"eps2_border_max": scaled, "index_zero": n_index0, "not_fredholm": n_border}
        ok &= good
    return ACResult("AC3 essential border", bool(ok), det)


def ac4_spectral_gap() -> ACResult:
    p = ModelParams()
    s0 = h_hol_spectrum(0, p)
    l0, l1 = (float(v) for v in s0.eigenvalues)
    ok = abs(l0) <= 1e-3 and abs(l1 - 4.5) <= 5e-3
    det = {"eps=0": {"lambda0": l0, "lambda1": l1}}
    for e in (0.2, 0.1, 0.05):
        lam1 = float(h_hol_spectrum(e, p).eigenvalues[1])
        det[f"eps={e}"] = {"lambda1": lam1}
        ok &= abs(lam1 - 4.5) <= 0.5 * e + 5e-3
    betas = [(e, h_hol_spectrum(e, p).beta) for e in (0.3, 0.2, 0.1, 0.05)]
    fit = asy.power_fit(betas)
    det["beta_fit_exponent"] = fit.exponent
    det["beta_fit_r2"] = fit.r_squared
    ok &= abs(fit.exponent + 2.0) <= 0.1
    return ACResult("AC4 spectral gap", bool(ok), det)


def ac5_dilation(eps_list=(0.3, 0.2, 0.1, 0.05)) -> ACResult:
    p = ModelParams()
    det = {f"eps={e}": scaling_check(e, p).max_mismatch for e in eps_list}
    return ACResult("AC5 dilation identity", all(v <= 1e-12 for v in det.values()), det)


def ac6_kernel(eps_list=(0.2, 0.1), nodes=(1001, 2001, 4001)) -> ACResult:
    p = ModelParams()
    ok, det = True, {}
    for e in eps_list:
        reps = [kernel_residual(e, p, Grid(20.0, n)) for n in nodes]
        h = [Grid(20.0, n).h for n in nodes]
        orders = asy.convergence_order([(hh, r.residual) for hh, r in zip(h, reps)])
        positive = all(r.positive for r in reps)
        det[f"eps={e}"] = {"residuals": [r.residual for r in reps], "orders": orders, "positive": positive}
        ok &= positive and all(1.8 <= o <= 2.2 for o in orders)
    return ACResult("AC6 kernel positivity", bool(ok), det)


def ac7_agmon() -> ACResult:
    sp = h_hol_spectrum(0, ModelParams())
    ground = decay_rate(sp.vector(0), (5.0, 10.0))
    excited = decay_rate(sp.vector(1), (5.0, 10.0))
    ok = abs(ground / -math.sqrt(6.0) - 1) <= 0.05 and abs(excited / -math.sqrt(1.5) - 1) <= 0.05
    return ACResult("AC7 Agmon decay", bool(ok), {"ground_slope": ground, "excited_slope": excited})


def ac8_holomorphy() -> ACResult:
    angles = (0.0, math.pi / 6, -math.pi / 6)
    rep = asy.holomorphy_check(angles=angles)
    det = {
        f"theta={a!r}": {
            "phi_exponent": rep.phi_fits[a].exponent if a in rep.phi_fits else None,
            "phi_r2": rep.phi_fits[a].r_squared if a in rep.phi_fits else None,
            "q_exponent": rep.q_fits[a].exponent if a in rep.q_fits else None,
            "q_r2": rep.q_fits[a].r_squared if a in rep.q_fits else None,
        }
        for a in angles
    }
    return ACResult("AC8 holomorphy bounds", rep.passes(angles), det)


def ac9_sector_decay() -> ACResult:
    pts = sector_sample(200, 50.0)
    ratios = [phi_hux_decay_check(pt)[1] for pt in pts]
    worst = max(ratios)
    return ACResult("AC9 sector decay", len(pts) == 400 and worst <= 2.0, {"points": len(pts), "max_ratio": worst})


def front_speed_run(eps=0.5, params=None, refine: bool = False):
    """Evolve Phi_ren on the default evolution setup; returns (track, shape error / A_ren, cfg)."""
    params = params or ModelParams(alpha=0.25)
    cfg = EvolutionConfig.default(eps)
    if refine:
        cfg = EvolutionConfig(cfg.grid.refined(), cfg.T_final, cfg.dt / 2, None, 2 * cfg.snapshot_stride)
    w = wave_data(eps, params)
    u0 = GridFunction(cfg.grid, phi_ren(cfg.grid.nodes, w))
    snaps = evolve(u0, cfg, eps, params)
    tr = track_front(snaps, front_level(eps, params))
    return tr, shape_error(snaps, tr, lambda x: phi_ren(x, w)) / w.A_ren.real, cfg


def ac10_front_speed(eps=0.5) -> ACResult:
    exact = wave_data(eps, ModelParams(alpha=0.25)).s_ren.real
    coarse, shape, _ = front_speed_run(eps)
    fine, _, _ = front_speed_run(eps, refine=True)
    rel = abs(coarse.fitted_speed / exact - 1.0)
    change = abs(fine.fitted_speed / coarse.fitted_speed - 1.0)
    ok = rel <= 0.05 and change <= 0.01 and coarse.fitted_speed < 0
    det = {"exact": exact, "measured": coarse.fitted_speed, "refined": fine.fitted_speed,
           "relative_error": rel, "refinement_change": change, "shape_error_over_A": shape}
    return ACResult("AC10 front speed", bool(ok), det)


def ac11_determinism(produce=None) -> ACResult:
    """Run the report producer twice and compare every emitted byte."""
    if produce is None:
        from .cli import produce_report_files as produce
    first, second = produce(), produce()
    diff = sorted(k for k in set(first) | set(second) if first.get(k) != second.get(k))
    return ACResult("AC11 determinism", not diff, {"files": len(first), "differing": diff})


CHECKS = (
    ac1_root_expansions, ac2_wave_identity, ac3_essential_border, ac4_spectral_gap,
    ac5_dilation, ac6_kernel, ac7_agmon, ac8_holomorphy, ac9_sector_decay, ac10_front_speed,
)


def run_all() -> list:
    """AC1-AC10; AC11 needs the report producer and is run by the caller."""
    return [fn() for fn in CHECKS]
