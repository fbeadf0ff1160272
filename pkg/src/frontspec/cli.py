"""Command line: configuration, subcommands, CSV/JSON/SVG outputs.

Each subcommand is a pure function of the RunConfig that returns the files
it would write (relative path -> bytes) and a map of named checks, so runs
are byte-reproducible and ``report`` can compare two runs directly.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import acceptance
from . import asymptotics as asy
from .core import EPS_MAX_DEFAULT, ModelParams, as_scale
from .equilibria import expansion_residuals, solve_equilibria, vieta_residuals
from .errors import ConfigError, FrontspecError
from .essential import MINUS, PLUS, Verdict, border_curve, border_max_real, classify_lambda
from .grid import Grid
from .operators import bundle_for, q_hol, q_hol_limit
from .spectra import SCALING_GRID, h_hol_spectrum, scaling_check
from .wave import speed_closed_form, wave_data, wave_residual

log = logging.getLogger("frontspec")

SUBCOMMANDS = ("equilibria", "wave", "borders", "gap", "scaling", "holo", "evolve", "report")

DEFAULTS = {
    "alpha": 0.25,
    "beta_weight": 4.0,
    "epsilon": list(asy.DEFAULT_EPS),
    "grid": {"L": 20.0, "N": 4001, "scaling_N": SCALING_GRID.N},
    "holo": {"radii": [0.2, 0.1, 0.05, 0.025], "angles_deg": [0.0, 30.0, -30.0, 60.0, -60.0]},
    "evolve": {"epsilon": 0.5, "snapshots": 5},
    "out": "frontspec_out",
    "svg": False,
    "workers": 1,
}

VERDICT_CODE = {Verdict.NOT_FREDHOLM: 0, Verdict.FREDHOLM_INDEX: 1, Verdict.INDEX_ZERO: 2}


@dataclass(frozen=True)
class RunConfig:
    params: ModelParams
    epsilons: tuple
    grid: Grid
    scaling_grid: Grid
    holo_radii: tuple
    holo_angles: tuple  # radians
    evolve_eps: float
    evolve_snapshots: int
    output_dir: str
    emit_svg: bool
    workers: int

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        """Validate everything up front; any failure is a ConfigError."""
        try:
            params = ModelParams(float(d["alpha"]), float(d["beta_weight"]))
            eps = tuple(sorted({float(e) for e in d["epsilon"]}))
            if not eps:
                raise ConfigError("at least one epsilon is required")
            for e in eps:
                as_scale(e)
            g = d["grid"]
            grid = Grid(float(g["L"]), int(g["N"]))
            grid.require_spectral()
            sgrid = Grid(float(g["L"]), int(g["scaling_N"]))
            sgrid.require_spectral()
            radii = tuple(float(r) for r in d["holo"]["radii"])
            if any(not 0 < r < EPS_MAX_DEFAULT for r in radii):
                raise ConfigError(f"holo radii must lie in (0, {EPS_MAX_DEFAULT})")
            angles = tuple(math.radians(float(a)) for a in d["holo"]["angles_deg"])
            ev = float(d["evolve"]["epsilon"])
            as_scale(ev)
            n_snap = int(d["evolve"]["snapshots"])
            workers = int(d["workers"])
            if workers < 1 or n_snap < 2:
                raise ConfigError("workers must be >= 1 and evolve.snapshots >= 2")
            return cls(params, eps, grid, sgrid, radii, angles, ev, n_snap, str(d["out"]), bool(d["svg"]), workers)
        except ConfigError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc


# ---------------------------------------------------------------------------
# serialisation


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


def csv_bytes(header, rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue().encode("utf-8")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"real": float(obj.real), "imag": float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def json_bytes(obj) -> bytes:
    # json writes floats with repr, i.e. shortest round-trip
    return (json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n").encode("utf-8")


def svg_plot(series, title="", xlabel="", ylabel="", width=640, height=400) -> bytes:
    """Polyline chart; series is a list of (label, xs, ys)."""
    pad = 50
    xs_all = np.concatenate([np.asarray(s[1], float) for s in series])
    ys_all = np.concatenate([np.asarray(s[2], float) for s in series])
    finite = np.isfinite(xs_all) & np.isfinite(ys_all)
    x0, x1 = xs_all[finite].min(), xs_all[finite].max()
    y0, y1 = ys_all[finite].min(), ys_all[finite].max()
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0

    def px(x):
        return pad + (x - x0) / (x1 - x0) * (width - 2 * pad)

    def py(y):
        return height - pad - (y - y0) / (y1 - y0) * (height - 2 * pad)

    colours = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="black"/>',
        f'<text x="{width / 2}" y="20" text-anchor="middle">{title}</text>',
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle">{xlabel}</text>',
        f'<text x="12" y="{height / 2}" transform="rotate(-90 12 {height / 2})" text-anchor="middle">{ylabel}</text>',
        f'<text x="{pad}" y="{height - pad + 15}" font-size="10">{x0:.4g}</text>',
        f'<text x="{width - pad}" y="{height - pad + 15}" font-size="10" text-anchor="end">{x1:.4g}</text>',
        f'<text x="{pad - 4}" y="{height - pad}" font-size="10" text-anchor="end">{y0:.4g}</text>',
        f'<text x="{pad - 4}" y="{pad + 8}" font-size="10" text-anchor="end">{y1:.4g}</text>',
    ]
    for i, (label, xs, ys) in enumerate(series):
        c = colours[i % len(colours)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y))
        out.append(f'<polyline fill="none" stroke="{c}" stroke-width="1.2" points="{pts}"/>')
        out.append(f'<text x="{width - pad - 4}" y="{pad + 14 * (i + 1)}" font-size="11" fill="{c}" text-anchor="end">{label}</text>')
    out.append("</svg>\n")
    return "\n".join(out).encode("utf-8")


def _maybe_svg(files, cfg: RunConfig, name, *args, **kw):
    if not cfg.emit_svg:
        return
    try:
        files[name] = svg_plot(*args, **kw)
    except Exception as exc:  # a broken figure never fails a run
        log.warning("plot %s skipped: %s", name, exc)


# ---------------------------------------------------------------------------
# subcommands: cfg -> (files, checks)


def run_equilibria(cfg: RunConfig):
    p = cfg.params
    rows, worst = [], 0.0
    for e in cfg.epsilons:
        eq = solve_equilibria(e, p)
        vr = vieta_residuals(eq, p)
        er = expansion_residuals(e, p)
        worst = max(worst, max(vr))
        zm, z0, zp = (z.real for z in eq.as_tuple())
        rows.append({"epsilon": e, "z_minus": zm, "z_zero": z0, "z_plus": zp, "discriminant": eq.discriminant,
                     "vieta_residuals": list(vr), "expansion_residuals": list(er)})
    files = {
        "roots.json": json_bytes({"alpha": p.alpha, "rows": rows}),
        "roots.csv": csv_bytes(
            ["epsilon", "z_minus", "z_zero", "z_plus", "res_zero", "res_minus", "res_plus", "vieta_max"],
            [[r["epsilon"], r["z_minus"], r["z_zero"], r["z_plus"], *r["expansion_residuals"], max(r["vieta_residuals"])]
             for r in rows],
        ),
    }
    return files, {"vieta_1e-9": worst <= 1e-9}


def run_wave(cfg: RunConfig):
    p = cfg.params
    files, summary, worst = {}, [], 0.0
    series = []
    for e in cfg.epsilons:
        w = wave_data(e, p)
        A = w.A_ren.real
        x = np.linspace(-10.0 * e, 10.0 * e, 2001)
        phi = w.phi(x)
        res = wave_residual(x, w)
        rel = float(np.max(np.abs(res))) / A ** 3
        worst = max(worst, rel)
        files[f"profile_eps={e!r}.csv"] = csv_bytes(["x", "phi_ren", "residual"], zip(x, phi, res))
        summary.append({"epsilon": e, "A_ren": A, "alpha_hux": w.alpha_hux.real, "s_ren": w.s_ren.real,
                        "s_ren_closed_form": speed_closed_form(e, p), "max_residual_over_A3": rel})
        series.append((f"eps={e:g}", x / e, e * phi))
    files["summary.json"] = json_bytes({"alpha": p.alpha, "rows": summary})
    _maybe_svg(files, cfg, "profiles.svg", series, "eps Phi_ren(eps y)", "y = x/eps", "eps Phi_ren")
    checks = {"residual_1e-8_A3": worst <= 1e-8, "speed_negative": all(r["s_ren"] < 0 for r in summary)}
    return files, checks


def run_borders(cfg: RunConfig):
    p = cfg.params
    files, rows, series, ok = {}, [], [], True
    for e in cfg.epsilons:
        b = bundle_for(e, p)
        bm = border_max_real(b)
        xi = np.linspace(-10.0 / e, 10.0 / e, 401)
        for side in (MINUS, PLUS):
            g = border_curve(side, b)(xi)
            files[f"border_{side}_eps={e!r}.csv"] = csv_bytes(["xi", "re", "im"], zip(xi, g.real, g.imag))
            series.append((f"{side} eps={e:g}", e * e * g.real, e * e * g.imag))
        lam = bm + abs(bm) * np.linspace(-2.0, 2.0, 81)
        cls_rows = []
        for l in lam:
            c = classify_lambda(l, b)
            cls_rows.append([l, VERDICT_CODE[c.verdict],
                             -1 if c.morse_minus is None else c.morse_minus,
                             -1 if c.morse_plus is None else c.morse_plus])
        files[f"classification_eps={e!r}.csv"] = csv_bytes(["lambda", "verdict", "morse_minus", "morse_plus"], cls_rows)
        rows.append([e, bm, e * e * bm])
        ok &= -6 - 3 * e <= e * e * bm <= -6 + 3 * e
    files["border_max.csv"] = csv_bytes(["epsilon", "border_max_real", "eps2_border_max"], rows)
    _maybe_svg(files, cfg, "borders.svg", series, "eps^2 Gamma(xi)", "Re", "Im")
    return files, {"eps2_border_band": bool(ok)}


def run_gap(cfg: RunConfig):
    p = cfg.params

    def cell(e):
        sp = h_hol_spectrum(e, p, cfg.grid)
        l0, l1 = (float(v) / (e * e) for v in sp.eigenvalues)
        return {"lambda0": l0, "lambda1": l1, "gap": l1 - l0, "gap_times_eps2": (l1 - l0) * e * e}

    rows = asy.sweep(cell, cfg.epsilons, cfg.workers)
    cols = ["lambda0", "lambda1", "gap", "gap_times_eps2"]
    files = {"gap.csv": csv_bytes(["epsilon", *cols], [[r.epsilon, *(r.quantities[c] for c in cols)] for r in rows])}
    checks = {}
    fit_block = None
    if len(rows) >= 3:
        fit = asy.power_fit([(r.epsilon, r.quantities["gap"]) for r in rows])
        fit_block = {"exponent": fit.exponent, "log_constant": fit.log_constant, "r_squared": fit.r_squared,
                     "flagged": fit.flagged}
        checks["gap_exponent_-2"] = abs(fit.exponent + 2.0) <= 0.1
        checks["fit_r2"] = not fit.flagged
    files["fit.json"] = json_bytes({"fit": fit_block})
    y = np.linspace(-cfg.grid.L / 2, cfg.grid.L / 2, 801)
    series = [("eps=0", y, q_hol_limit(y))] + [(f"eps={e:g}", y, q_hol(y, e, p)) for e in cfg.epsilons]
    _maybe_svg(files, cfg, "potential.svg", series, "Q_hol", "y", "Q_hol")
    return files, checks


def run_scaling(cfg: RunConfig):
    rows, worst = [], 0.0
    for e in cfg.epsilons:
        rep = scaling_check(e, cfg.params, cfg.scaling_grid)
        worst = max(worst, rep.max_mismatch)
        rows += [[e, k, h, r, m] for k, (h, r, m) in enumerate(zip(rep.hol, rep.ren_scaled, rep.mismatch))]
    files = {"scaling.csv": csv_bytes(["epsilon", "k", "lambda_hol", "eps2_lambda_ren", "mismatch"], rows)}
    return files, {"mismatch_1e-12": worst <= 1e-12}


def run_holo(cfg: RunConfig):
    rep = asy.holomorphy_check(cfg.holo_radii, cfg.holo_angles, cfg.params, cfg.workers)
    ok_cells = [c for c in rep.cells if c.skipped is None]
    files = {
        "holo.csv": csv_bytes(["radius", "angle", "eps_real", "eps_imag", "phi_error", "q_error"],
                              [[c.radius, c.angle, c.radius * math.cos(c.angle), c.radius * math.sin(c.angle),
                                c.phi_error, c.q_error] for c in ok_cells]),
        "fits.json": json_bytes({
            "fits": [{"angle": a, "phi": vars(rep.phi_fits[a]), "q": vars(rep.q_fits[a])}
                     for a in cfg.holo_angles if a in rep.phi_fits],
            "skipped": [{"radius": c.radius, "angle": c.angle, "reason": c.skipped} for c in rep.cells if c.skipped],
        }),
    }
    series = [(f"phi theta={math.degrees(a):g}", [math.log(c.radius) for c in ok_cells if c.angle == a],
               [math.log(c.phi_error) for c in ok_cells if c.angle == a]) for a in cfg.holo_angles]
    _maybe_svg(files, cfg, "holo.svg", series, "log sup|Phi_hol - Phi_hol^0 - eps m|", "log r", "log error")
    return files, {"exponent_1.45": rep.passes(cfg.holo_angles)}


def run_evolve(cfg: RunConfig):
    e = cfg.evolve_eps
    from .evolution import EvolutionConfig, evolve, front_level, shape_error, track_front
    from .grid import GridFunction

    ecfg = EvolutionConfig.default(e)
    w = wave_data(e, cfg.params)
    snaps = evolve(GridFunction(ecfg.grid, w.phi(ecfg.grid.nodes)), ecfg, e, cfg.params)
    tr = track_front(snaps, front_level(e, cfg.params))
    shape = shape_error(snaps, tr, w.phi) / w.A_ren.real
    exact = w.s_ren.real
    rel = abs(tr.fitted_speed / exact - 1.0)
    files = {"track.csv": csv_bytes(["t", "position"], zip(tr.times, tr.positions))}
    idx = np.unique(np.linspace(0, len(snaps.times) - 1, cfg.evolve_snapshots).round().astype(int))
    for j in idx:
        files[f"snapshot_{j:05d}.csv"] = csv_bytes(["x", "u"], zip(snaps.grid.nodes, snaps.values[j]))
    files["summary.json"] = json_bytes({
        "epsilon": e, "alpha": cfg.params.alpha, "L": ecfg.grid.L, "N": ecfg.grid.N, "dt": ecfg.dt,
        "T_final": ecfg.T_final, "fitted_speed": tr.fitted_speed, "s_ren": exact, "relative_error": rel,
        "shape_error_over_A": shape, "fit_window": list(tr.fit_window),
    })
    _maybe_svg(files, cfg, "track.svg", [("front", tr.times, tr.positions), ("s_ren t", tr.times, exact * tr.times)],
               "front position", "t", "x")
    checks = {"speed_5pct": rel <= 0.05, "speed_negative": tr.fitted_speed < 0, "shape_0.02A": shape <= 0.02}
    return files, checks


RUNNERS = {
    "equilibria": run_equilibria, "wave": run_wave, "borders": run_borders, "gap": run_gap,
    "scaling": run_scaling, "holo": run_holo, "evolve": run_evolve,
}


def _ac_key(result) -> str:
    head, _, rest = result.name.partition(" ")
    return f"{head}_{rest.replace(' ', '_')}"


def produce_report_files(cfg: RunConfig | None = None):
    """All subcommand outputs plus AC1-AC10 details, keyed by relative path."""
    cfg = cfg or RunConfig.from_dict(DEFAULTS)
    files = {}
    for name, fn in RUNNERS.items():
        sub, _ = fn(cfg)
        files.update({f"{name}/{k}": v for k, v in sub.items()})
    results = acceptance.run_all()
    files["report/acceptance_details.json"] = json_bytes({_ac_key(r): r.details for r in results})
    files["report/_criteria.json"] = json_bytes({_ac_key(r): r.passed for r in results})
    return files


def run_report(cfg: RunConfig):
    files = produce_report_files(cfg)
    criteria = json.loads(files.pop("report/_criteria.json"))
    det = acceptance.ac11_determinism(lambda: produce_report_files(cfg))
    criteria[_ac_key(det)] = det.passed
    files["report/summary.json"] = json_bytes({"criteria": criteria, "all_pass": all(criteria.values()),
                                              "determinism": det.details})
    return files, criteria


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frontspec", description="Renormalised Allen-Cahn fronts: spectra and speeds.")
    ap.add_argument("subcommand", nargs="?", choices=SUBCOMMANDS)
    ap.add_argument("--config", help="JSON config file; flags override its entries")
    ap.add_argument("--alpha", type=float)
    ap.add_argument("--beta-weight", type=float)
    ap.add_argument("--epsilon", type=float, action="append", help="repeatable")
    ap.add_argument("--grid-L", type=float)
    ap.add_argument("--grid-N", type=int)
    ap.add_argument("--out")
    ap.add_argument("--svg", action="store_true", default=None)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--print-defaults", action="store_true")
    return ap


def merged_config(args) -> dict:
    d = copy.deepcopy(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                user = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        for k, v in user.items():
            if k not in d:
                raise ConfigError(f"unknown config key {k!r}")
            if isinstance(d[k], dict):
                d[k].update(v)
            else:
                d[k] = v
    flag_map = {"alpha": "alpha", "beta_weight": "beta_weight", "epsilon": "epsilon", "out": "out",
                "svg": "svg", "workers": "workers"}
    for attr, key in flag_map.items():
        v = getattr(args, attr)
        if v is not None:
            d[key] = v
    if args.grid_L is not None:
        d["grid"]["L"] = args.grid_L
    if args.grid_N is not None:
        d["grid"]["N"] = args.grid_N
    env_out = os.environ.get("FRONTSPEC_OUT")
    if env_out:
        d["out"] = env_out
    return d


def _fail(exc, code) -> int:
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def write_files(root: str, files: dict):
    """Write files keyed by path relative to the output root."""
    for rel, data in sorted(files.items()):
        path = os.path.join(root, rel)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "wb") as fh:
            fh.write(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        d = merged_config(args)
        if args.print_defaults:
            sys.stdout.write(json.dumps(DEFAULTS, indent=2) + "\n")
            return 0
        if args.subcommand is None:
            raise ConfigError("a subcommand is required")
        cfg = RunConfig.from_dict(d)
    except (ConfigError, FrontspecError) as exc:
        return _fail(exc, 2)
    try:
        if args.subcommand == "report":
            files, checks = run_report(cfg)
        else:
            sub, checks = RUNNERS[args.subcommand](cfg)
            files = {f"{args.subcommand}/{k}": v for k, v in sub.items()}
        write_files(cfg.output_dir, files)
    except FrontspecError as exc:
        return _fail(exc, 1)
    for k, v in checks.items():
        print(f"{args.subcommand}.{k}: {'PASS' if v else 'FAIL'}")
    return 0 if all(checks.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
