"""Command-line front end.

Subcommands mirror the library: critical-points, puiseux, level-curve,
trajectory, imaginary, large-n, figure, verify.  Primary output is CSV with
'#'-prefixed comment headers and 17-significant-digit floats (byte-identical
across runs); --format json mirrors the same schema, --format svg draws the
curve-producing commands.  Exit codes: 0 success, 1 usage error, 2
computation failure.
"""

from __future__ import annotations

import argparse
import cmath
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import critical, geometry, imag_axis, oracle, puiseux
from .errors import KmsBifError
from .kms import EigType, MuPoint, build_matrix, eigenvector_of_mu, isotropy_defect, \
    lambda_of_mu, rho_of_mu, rho_prime_of_mu

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


@dataclass
class RunConfig:
    n: int = 0
    eig_type: Optional[EigType] = None
    output_format: str = "csv"
    output_path: str = "-"
    tol: Optional[float] = None
    window: float = 0.8
    grid: int = 96
    extra: dict = field(default_factory=dict)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii", newline="")


def _render_csv(meta: dict, columns: list, rows: list) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}: {value}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    return buf.getvalue()


def _render_json(meta: dict, columns: list, rows: list) -> str:
    payload = {"meta": meta, "columns": columns,
               "rows": [[v for v in row] for row in rows]}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit_table(cfg: RunConfig, meta: dict, columns: list, rows: list,
                svg_series=None) -> None:
    if cfg.output_format == "json":
        _write_text(cfg.output_path, _render_json(meta, columns, rows))
    elif cfg.output_format == "svg":
        if svg_series is None:
            raise KmsBifError("this command has no SVG rendering")
        _write_text(cfg.output_path, _render_svg(svg_series, meta))
    else:
        _write_text(cfg.output_path, _render_csv(meta, columns, rows))


def _render_svg(series: list, meta: dict, width: int = 640, height: int = 480) -> str:
    """Tiny hand-rolled SVG: one polyline per series, dashed = formula."""
    pts = [p for s in series for p in s["points"]]
    if not pts:
        return '<svg xmlns="http://www.w3.org/2000/svg"/>\n'
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad_x = 0.05 * (x1 - x0 or 1.0)
    pad_y = 0.05 * (y1 - y0 or 1.0)
    x0, x1, y0, y1 = x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y

    def map_pt(p):
        px = (p[0] - x0) / (x1 - x0) * (width - 40) + 20
        py = height - 20 - (p[1] - y0) / (y1 - y0) * (height - 40)
        return f"{px:.2f},{py:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">']
    title = "; ".join(f"{k}={v}" for k, v in meta.items() if k in ("command", "n", "fig"))
    out.append(f'<title>{title}</title>')
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    for i, s in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        dash = ' stroke-dasharray="6 4"' if s.get("dashed") else ""
        path = " ".join(map_pt(p) for p in s["points"])
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}"'
                   f' stroke-width="1.5"{dash}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _points_of(cfg: RunConfig):
    pts = critical.all_critical_points(cfg.n)
    if cfg.eig_type is not None:
        pts = [p for p in pts if p.eig_type is cfg.eig_type]
    return pts


def _oracle_gap(point) -> float:
    gaps = np.sort(np.abs(oracle.kms_spectrum(point.n, point.rho_c).eigenvalues + point.n))
    return float(gaps[1])


# ---------------------------------------------------------------------------
# subcommand handlers


def cmd_critical_points(cfg: RunConfig) -> int:
    rows = []
    worst = 0.0
    for p in _points_of(cfg):
        gap = _oracle_gap(p)
        worst = max(worst, gap)
        rows.append((p.n, p.eig_type.value, p.t_c.real, p.t_c.imag,
                     p.mu_c.real, p.mu_c.imag, p.rho_c.real, p.rho_c.imag, gap))
    meta = {"command": "critical-points", "n": cfg.n,
            "type": cfg.eig_type.value if cfg.eig_type else "both",
            "columns-doc": "t_c/mu_c/rho_c split into real+imag parts; "
                           "oracle_gap = 2nd-smallest |lambda + n| from the dense solver"}
    cols = ["n", "type", "re_t_c", "im_t_c", "re_mu_c", "im_mu_c",
            "re_rho_c", "im_rho_c", "oracle_gap"]
    _emit_table(cfg, meta, cols, rows)
    if cfg.tol is not None and worst > cfg.tol:
        raise KmsBifError(f"oracle gap {worst} exceeds --tol {cfg.tol}")
    return 0


def cmd_puiseux(cfg: RunConfig) -> int:
    pts = _points_of(cfg)
    index = cfg.extra.get("index")
    if index is not None:
        if not 0 <= index < len(pts):
            raise KmsBifError(f"point index {index} out of range (0..{len(pts) - 1})")
        pts = [pts[index]]
    rows = []
    for i, p in enumerate(pts):
        pp = puiseux.puiseux_ab_from_t(p)
        rows.append((p.n, p.eig_type.value, index if index is not None else i,
                     p.rho_c.real, p.rho_c.imag, pp.a.real, pp.a.imag,
                     pp.b.real, pp.b.imag, pp.theta_a, pp.theta_b, pp.Theta, pp.c))
    meta = {"command": "puiseux", "n": cfg.n,
            "columns-doc": "series lambda = lambda_c (1 +/- a sqrt(eps) + b eps); "
                           "phases in radians; c = (|a|^2 - 2|b| cos Theta)/2"}
    cols = ["n", "type", "index", "re_rho_c", "im_rho_c", "re_a", "im_a",
            "re_b", "im_b", "theta_a", "theta_b", "Theta", "c"]
    _emit_table(cfg, meta, cols, rows)
    return 0


def _pick_point(cfg: RunConfig):
    pts = _points_of(cfg)
    index = cfg.extra.get("index") or 0
    if not 0 <= index < len(pts):
        raise KmsBifError(f"point index {index} out of range (0..{len(pts) - 1})")
    return pts[index]


def cmd_level_curve(cfg: RunConfig) -> int:
    point = _pick_point(cfg)
    pp = puiseux.puiseux_ab_from_t(point)
    curve = geometry.local_level_curve(pp, point.rho_c, theta_window=cfg.window,
                                       count=cfg.grid)
    rows = [(th, mag, rho.real, rho.imag) for th, mag, rho in curve.samples]
    meta = {"command": "level-curve", "n": cfg.n, "type": point.eig_type.value,
            "rho_c": f"{_fmt(point.rho_c.real)}{point.rho_c.imag:+.17g}j",
            "columns-doc": "polar samples about rho_c: rho = rho_c + eps_mag e^(i theta)"}
    svg = [{"points": [(r.real, r.imag) for _, _, r in curve.samples], "dashed": True}]
    _emit_table(cfg, meta, ["theta", "eps_mag", "re_rho", "im_rho"], rows, svg_series=svg)
    return 0


def _trajectory_rows(pp, rho_c: complex, n: int, d_values) -> tuple[list, float]:
    lam_c = complex(-n)
    formula = geometry.trajectory_along_bisector(pp, d_values)
    direction = cmath.exp(-2j * pp.theta_a)
    rows = []
    worst = 0.0
    for tp in formula:
        rho = rho_c + tp.d * direction
        ev = oracle.kms_spectrum(n, rho).eigenvalues
        pair = ev[np.argsort(np.abs(ev - lam_c))[:2]] / lam_c
        if tp.d <= 0:   # match by imaginary part (conjugate-like pair)
            pair = sorted(pair, key=lambda z: -z.imag)
        else:           # match by real part (real pair straddling 1)
            pair = sorted(pair, key=lambda z: -z.real)
        resid = max(abs(pair[0].real - tp.re_pair[0]), abs(pair[1].real - tp.re_pair[1]),
                    abs(pair[0].imag - tp.im_pair[0]), abs(pair[1].imag - tp.im_pair[1]),
                    abs(abs(pair[0]) - tp.mag_pair[0]), abs(abs(pair[1]) - tp.mag_pair[1]))
        worst = max(worst, resid)
        rows.append((tp.d, tp.re_pair[0], tp.re_pair[1], tp.im_pair[0], tp.im_pair[1],
                     tp.mag_pair[0], tp.mag_pair[1],
                     pair[0].real, pair[1].real, pair[0].imag, pair[1].imag,
                     abs(pair[0]), abs(pair[1]), resid))
    return rows, worst


_TRAJ_COLS = ["d", "re_plus", "re_minus", "im_plus", "im_minus", "mag_plus", "mag_minus",
              "oracle_re_plus", "oracle_re_minus", "oracle_im_plus", "oracle_im_minus",
              "oracle_mag_plus", "oracle_mag_minus", "residual"]


def cmd_trajectory(cfg: RunConfig) -> int:
    point = _pick_point(cfg)
    pp = puiseux.puiseux_ab_from_t(point)
    d_max = cfg.extra.get("d_max") or 0.02
    count = cfg.grid if cfg.grid % 2 else cfg.grid + 1
    d_values = [d_max * (2.0 * i / (count - 1) - 1.0) for i in range(count)]
    rows, worst = _trajectory_rows(pp, point.rho_c, cfg.n, d_values)
    meta = {"command": "trajectory", "n": cfg.n, "type": point.eig_type.value,
            "columns-doc": "normalized eigenvalue pair along the cusp bisector; "
                           "plus/minus = series branch; oracle_* from the dense solver"}
    svg = [{"points": [(r[0], r[5]) for r in rows], "dashed": True},
           {"points": [(r[0], r[6]) for r in rows], "dashed": True},
           {"points": [(r[0], r[11]) for r in rows]},
           {"points": [(r[0], r[12]) for r in rows]}]
    _emit_table(cfg, meta, _TRAJ_COLS, rows, svg_series=svg)
    if cfg.tol is not None and worst > cfg.tol:
        raise KmsBifError(f"trajectory residual {worst} exceeds --tol {cfg.tol}")
    return 0


def cmd_imaginary(cfg: RunConfig) -> int:
    params = imag_axis.imag_axis_params(cfg.n)
    rows = [(params.n, params.eig_type.value, params.v_n, params.x_n, params.y_n,
             params.a_n, params.b_n, params.c_n)]
    meta = {"command": "imaginary", "n": cfg.n,
            "columns-doc": "purely imaginary critical point rho_c = i y_n; "
                           "cosh(n v_n) = n cosh(v_n), x_n = cosh(v_n)"}
    cols = ["n", "type", "v_n", "x_n", "y_n", "a_n", "b_n", "c_n"]
    _emit_table(cfg, meta, cols, rows)
    return 0


def cmd_large_n(cfg: RunConfig) -> int:
    rows = []
    for n in cfg.extra["n_list"]:
        if n < 3 or n % 2 == 0:
            raise KmsBifError(f"large-n table needs odd n >= 3, got {n}")
        params = imag_axis.imag_axis_params(n)
        v_a, y_a, a_a, b_a = imag_axis.large_n_params(n)
        rows.append((n, params.y_n, y_a, 100.0 * abs(y_a - params.y_n) / params.y_n,
                     params.a_n, a_a, 100.0 * abs(a_a - params.a_n) / params.a_n,
                     params.b_n, b_a, 100.0 * abs(b_a - params.b_n) / params.b_n))
    meta = {"command": "large-n",
            "columns-doc": "exact family values vs asymptotic laws, errors in percent"}
    cols = ["n", "y_exact", "y_approx", "err_y_pct", "a_exact", "a_approx", "err_a_pct",
            "b_exact", "b_approx", "err_b_pct"]
    _emit_table(cfg, meta, cols, rows)
    return 0


# ---------------------------------------------------------------------------
# figures


def _fig_files(cfg: RunConfig, fig: int, curves: dict) -> None:
    out_dir = Path(cfg.output_path if cfg.output_path != "-" else ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    svg_series = []
    for name, (meta, cols, rows, dashed, xy) in curves.items():
        text = _render_csv(meta, cols, rows)
        (out_dir / f"fig{fig}_{name}.csv").write_text(text, encoding="ascii", newline="")
        if xy:
            svg_series.append({"points": [(row[xy[0]], row[xy[1]]) for row in rows],
                               "dashed": dashed})
    if cfg.output_format == "svg":
        text = _render_svg(svg_series, {"fig": fig})
        (out_dir / f"fig{fig}.svg").write_text(text, encoding="ascii", newline="")


def _borderline_curves(n: int, eig_type, bounds, res: int) -> tuple[list, list]:
    cols = ["theta", "eps_mag", "re_rho", "im_rho"]
    rows = []
    for piece in oracle.numeric_borderline(n, bounds, resolution=res, eig_type=eig_type):
        for th, mag, rho in piece.samples:
            rows.append((th, mag, rho.real, rho.imag))
        rows.append((math.nan, math.nan, math.nan, math.nan))  # polyline break
    if rows:
        rows.pop()
    return cols, rows


def _level_curve_rows(point, window: float, count: int) -> list:
    pp = puiseux.puiseux_ab_from_t(point)
    curve = geometry.local_level_curve(pp, point.rho_c, theta_window=window, count=count)
    return [(th, mag, rho.real, rho.imag) for th, mag, rho in curve.samples]


def _bisector_rows(point, length: float = 0.3, count: int = 61) -> list:
    pp = puiseux.puiseux_ab_from_t(point)
    bis = geometry.cusp_bisector_angle(pp)
    rows = []
    for i in range(count):
        t = length * i / (count - 1)
        rho = point.rho_c + t * complex(math.cos(bis), math.sin(bis))
        rows.append((t, rho.real, rho.imag))
    return rows


def _nearest_point(n: int, eig_type: EigType, target: complex):
    pts = [p for p in critical.all_critical_points(n) if p.eig_type is eig_type]
    return min(pts, key=lambda p: abs(p.rho_c - target))


def _fig_level_and_border(cfg: RunConfig, fig: int, n: int, eig_type: EigType,
                          target: complex, bounds) -> None:
    point = _nearest_point(n, eig_type, target)
    bcols, brows = _borderline_curves(n, eig_type, bounds, cfg.grid)
    meta_b = {"fig": fig, "curve": "oracle borderline |lambda| = n", "n": n,
              "type": eig_type.value}
    meta_l = {"fig": fig, "curve": "local level curve (series)", "n": n,
              "type": eig_type.value}
    meta_r = {"fig": fig, "curve": "cusp bisector ray", "n": n, "type": eig_type.value}
    curves = {
        "borderline": (meta_b, bcols, brows, False, (2, 3)),
        "level": (meta_l, ["theta", "eps_mag", "re_rho", "im_rho"],
                  _level_curve_rows(point, cfg.window, 161), True, (2, 3)),
        "bisector": (meta_r, ["dist", "re_rho", "im_rho"],
                     _bisector_rows(point), False, (1, 2)),
    }
    _fig_files(cfg, fig, curves)


def _fig_trajectory(cfg: RunConfig, fig: int, n: int, eig_type: EigType,
                    target: complex, d_max: float) -> None:
    point = _nearest_point(n, eig_type, target)
    pp = puiseux.puiseux_ab_from_t(point)
    count = 81
    d_values = [d_max * (2.0 * i / (count - 1) - 1.0) for i in range(count)]
    rows, _ = _trajectory_rows(pp, point.rho_c, n, d_values)
    meta_f = {"fig": fig, "curve": "series trajectory (dashed)", "n": n}
    meta_o = {"fig": fig, "curve": "oracle trajectory (solid)", "n": n}
    f_rows = [r[:7] for r in rows]
    o_rows = [(r[0],) + r[7:] for r in rows]
    curves = {
        "formula": (meta_f, _TRAJ_COLS[:7], f_rows, True, (0, 5)),
        "oracle": (meta_o, [_TRAJ_COLS[0]] + _TRAJ_COLS[7:], o_rows, False, (0, 5)),
    }
    _fig_files(cfg, fig, curves)


def cmd_figure(cfg: RunConfig) -> int:
    fig = cfg.extra["fig_id"]
    if fig == 1:
        point = _nearest_point(3, EigType.Type2, cmath.sqrt(-8))
        other = _nearest_point(3, EigType.Type2, -cmath.sqrt(-8))
        b1cols, b1rows = _borderline_curves(3, EigType.Type1,
                                            (-3.2, 3.2, -3.2, 3.2), cfg.grid)
        b2cols, b2rows = _borderline_curves(3, EigType.Type2,
                                            (-3.2, 3.2, -3.2, 3.2), cfg.grid)
        curves = {
            "borderline_type1": ({"fig": 1, "curve": "type-1 borderline (Cassini oval)"},
                                 b1cols, b1rows, False, (2, 3)),
            "borderline_type2": ({"fig": 1, "curve": "type-2 borderline"},
                                 b2cols, b2rows, False, (2, 3)),
            "level_plus": ({"fig": 1, "curve": "local level curve at +i sqrt(8)"},
                           ["theta", "eps_mag", "re_rho", "im_rho"],
                           _level_curve_rows(point, cfg.window, 161), True, (2, 3)),
            "level_minus": ({"fig": 1, "curve": "local level curve at -i sqrt(8)"},
                            ["theta", "eps_mag", "re_rho", "im_rho"],
                            _level_curve_rows(other, cfg.window, 161), True, (2, 3)),
        }
        _fig_files(cfg, 1, curves)
    elif fig == 2:
        _fig_level_and_border(cfg, 2, 4, EigType.Type2, 1 + 2j, (0.2, 1.8, 1.2, 2.8))
    elif fig == 3:
        _fig_level_and_border(cfg, 3, 8, EigType.Type1, 0.922 - 1.29j,
                              (0.2, 1.7, -2.0, -0.5))
    elif fig == 4:
        _fig_trajectory(cfg, 4, 4, EigType.Type2, 1 + 2j, 0.02)
    elif fig == 5:
        _fig_trajectory(cfg, 5, 8, EigType.Type1, 0.922 - 1.29j, 0.002)
    elif fig == 6:
        n_max = cfg.extra.get("n_max") or 50
        rows = []
        for n in range(3, n_max + 1, 2):
            par = imag_axis.imag_axis_params(n)
            rows.append((n, par.a_n, par.b_n, par.c_n))
        meta = {"fig": 6, "curve": "imaginary-axis family parameters vs n"}
        _fig_files(cfg, 6, {"params": (meta, ["n", "a_n", "b_n", "c_n"], rows,
                                       False, (0, 1))})
    elif fig == 7:
        params = imag_axis.imag_axis_params(19)
        pp = imag_axis.imag_puiseux_params(params)
        count = 81
        d_values = [0.005 * (2.0 * i / (count - 1) - 1.0) for i in range(count)]
        rows, _ = _trajectory_rows(pp, 1j * params.y_n, 19, d_values)
        curves = {
            "formula": ({"fig": 7, "curve": "series trajectory (dashed)", "n": 19},
                        _TRAJ_COLS[:7], [r[:7] for r in rows], True, (0, 5)),
            "oracle": ({"fig": 7, "curve": "oracle trajectory (solid)", "n": 19},
                       [_TRAJ_COLS[0]] + _TRAJ_COLS[7:],
                       [(r[0],) + r[7:] for r in rows], False, (0, 5)),
        }
        _fig_files(cfg, 7, curves)
    elif fig == 8:
        params = imag_axis.imag_axis_params(19)
        curve = imag_axis.imag_level_curve(params, count=161)
        lrows = [(th, mag, rho.real, rho.imag) for th, mag, rho in curve.samples]
        bcols, brows = _borderline_curves(19, EigType.Type2,
                                          (-0.45, 0.45, 1.05, 1.55), cfg.grid)
        point = _nearest_point(19, EigType.Type2, 1j * params.y_n)
        curves = {
            "level": ({"fig": 8, "curve": "imaginary-family level curve", "n": 19},
                      ["theta", "eps_mag", "re_rho", "im_rho"], lrows, True, (2, 3)),
            "borderline": ({"fig": 8, "curve": "oracle borderline", "n": 19},
                           bcols, brows, False, (2, 3)),
            "bisector": ({"fig": 8, "curve": "cusp bisector ray", "n": 19},
                         ["dist", "re_rho", "im_rho"], _bisector_rows(point, 0.15),
                         False, (1, 2)),
        }
        _fig_files(cfg, 8, curves)
    elif fig == 9:
        params = imag_axis.imag_axis_params(19)
        chi = [1.0 - 0.12 * i / 80 for i in range(81)]
        prows = [(c, pair[0], pair[1])
                 for c, pair in imag_axis.parabola_trajectory(params, chi)]
        orows = []
        for i in range(41):
            d = -0.01 * (40 - i) / 40
            ev = oracle.kms_spectrum(19, 1j * (params.y_n + d)).eigenvalues
            pair = ev[np.argsort(np.abs(ev + 19))[:2]] / (-19.0)
            pair = sorted(pair, key=lambda z: -z.imag)
            orows.append((d, pair[0].real, pair[1].real, pair[0].imag, pair[1].imag))
        curves = {
            "parabola": ({"fig": 9, "curve": "parabola psi^2 = (a^2/b)(1 - chi)", "n": 19},
                         ["chi", "psi_plus", "psi_minus"], prows, True, (0, 1)),
            "oracle": ({"fig": 9, "curve": "oracle normalized pair before bifurcation",
                        "n": 19},
                       ["d", "chi_plus", "chi_minus", "psi_plus", "psi_minus"],
                       orows, False, (1, 3)),
        }
        _fig_files(cfg, 9, curves)
    else:
        raise KmsBifError(f"unknown figure id {fig}")
    return 0


# ---------------------------------------------------------------------------
# verify


def _verify_battery(n_max: int, scale: float, rng: np.random.Generator) -> list:
    checks = []

    def run(name, fn):
        try:
            residual, tol, detail = fn()
            ok = residual <= tol * scale
        except KmsBifError as exc:  # a raised invariant is a failure, not a crash
            residual, tol, detail, ok = math.inf, 0.0, f"raised {exc!r}", False
        checks.append(("PASS" if ok else "FAIL", name, residual, tol * scale,
                       detail.replace(",", ";")))

    def chebyshev_identities():
        from .chebyshev import cheb_t, cheb_u
        worst = 0.0
        for _ in range(200):
            k = int(rng.integers(1, 40))
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            pell = (z * z - 1) * cheb_u(k - 1, z) ** 2 - (cheb_t(k, z) ** 2 - 1)
            rec = cheb_t(k, z) - (2 * z * cheb_t(k + 1, z) - cheb_t(k + 2, z))
            ref = abs(cheb_t(k, z)) + 1.0
            worst = max(worst, abs(pell) / ref ** 2, abs(rec) / ref)
        return worst, 1e-10, "Pell + recurrence on 200 seeded draws"

    def mu_consistency():
        worst = 0.0
        for _ in range(40):
            n = int(rng.integers(3, n_max + 1))
            mu = complex(rng.uniform(0.2, 2.8), rng.uniform(-0.4, 0.4))
            for et in EigType:
                p = MuPoint(n, mu, et)
                lam = lambda_of_mu(p)
                ev = oracle.kms_spectrum(n, rho_of_mu(p)).eigenvalues
                worst = max(worst, float(np.min(np.abs(ev - lam))))
        return worst, 1e-8, "lambda(mu) sits in the oracle spectrum"

    def critical_double():
        worst = 0.0
        for n in range(3, n_max + 1):
            for p in critical.all_critical_points(n):
                worst = max(worst, _oracle_gap(p) / n)
        return worst, 1e-5, "double eigenvalue -n at every catalog point"

    def rho_prime_zero():
        worst = 0.0
        for n in range(3, n_max + 1):
            for p in critical.all_critical_points(n):
                val = rho_prime_of_mu(MuPoint(p.n, p.mu_c, p.eig_type))
                worst = max(worst, abs(val))
        return worst, 1e-8, "rho'(mu_c) = 0"

    def route_equivalence():
        worst = 0.0
        for n in range(3, n_max + 1):
            for p in critical.all_critical_points(n):
                pp_t = puiseux.puiseux_ab_from_t(p)
                pp_m = puiseux.puiseux_from_derivatives(
                    p.lambda_c, puiseux.derivatives_at_critical(p))
                da = min(abs(pp_t.a - pp_m.a), abs(pp_t.a + pp_m.a)) / abs(pp_t.a)
                db = abs(pp_t.b - pp_m.b) / max(abs(pp_t.b), 1e-30)
                worst = max(worst, da, db)
        return worst, 1e-9, "closed-form vs derivative-chain parameters"

    def isotropy():
        worst = 0.0
        for n in range(3, n_max + 1):
            for p in critical.all_critical_points(n):
                v = eigenvector_of_mu(MuPoint(p.n, p.mu_c, p.eig_type))
                worst = max(worst, abs(isotropy_defect(v)) / float(np.sum(np.abs(v) ** 2)))
        return worst, 1e-10, "critical eigenvectors are isotropic"

    def imag_family():
        worst = 0.0
        prev_a = 0.0
        for n in range(3, 2 * n_max + 2, 2):
            par = imag_axis.imag_axis_params(n)
            res = abs(math.cosh(n * par.v_n) - n * math.cosh(par.v_n)) / (n * math.cosh(par.v_n))
            worst = max(worst, res)
            if par.c_n >= 0.0 or par.a_n <= prev_a:
                return math.inf, 1e-11, f"c_n sign or a_n monotonicity broke at n = {n}"
            prev_a = par.a_n
        return worst, 1e-11, "defining residuals, c_n < 0, a_n increasing"

    def trace_identity():
        worst = 0.0
        for _ in range(20):
            n = int(rng.integers(3, n_max + 1))
            rho = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            ev = oracle.kms_spectrum(n, rho).eigenvalues
            worst = max(worst, abs(complex(np.sum(ev)) - n) / n)
        return worst, 1e-9, "sum of eigenvalues = n"

    for name, fn in [("chebyshev-identities", chebyshev_identities),
                     ("mu-parameterization", mu_consistency),
                     ("critical-double-eigenvalue", critical_double),
                     ("rho-prime-vanishes", rho_prime_zero),
                     ("route-equivalence", route_equivalence),
                     ("isotropy", isotropy),
                     ("imaginary-family", imag_family),
                     ("trace-identity", trace_identity)]:
        run(name, fn)
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    n_max = cfg.extra.get("n_max") or 12
    scale = cfg.tol if cfg.tol is not None else 1.0
    checks = _verify_battery(n_max, scale, np.random.default_rng(20240901))
    rows = [(status, name, residual, tol, detail)
            for status, name, residual, tol, detail in checks]
    meta = {"command": "verify", "n-max": n_max,
            "columns-doc": "one row per invariant; residual must stay below tol"}
    _emit_table(cfg, meta, ["status", "check", "residual", "tol", "detail"], rows)
    if any(status == "FAIL" for status, *_ in checks):
        raise KmsBifError("one or more invariants failed")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_common(sub, *, window=False, grid=None):
    sub.add_argument("--format", choices=("csv", "json", "svg"), default="csv",
                     dest="output_format")
    sub.add_argument("--out", default="-", dest="output_path",
                     help="output file ('-' = stdout); figure treats this as a directory")
    sub.add_argument("--tol", type=float, default=None,
                     help="optional residual gate / tolerance scale")
    if window:
        sub.add_argument("--window", type=float, default=0.8,
                         help="theta half-window around the cusp (radians)")
    if grid is not None:
        sub.add_argument("--grid", type=int, default=grid,
                         help="samples per curve / grid resolution")


def _n_arg(sub, required=True):
    sub.add_argument("--n", type=int, required=required, help="matrix order (n >= 3)")


def _type_arg(sub):
    sub.add_argument("--type", type=int, choices=(1, 2), default=None, dest="eig_type")


def _build_parser() -> _Parser:
    parser = _Parser(prog="kmsbif",
                     description="Eigenvalue-bifurcation analysis of K_n(rho).")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("critical-points", help="catalog of double-eigenvalue points")
    _n_arg(s); _type_arg(s); _add_common(s)

    s = subs.add_parser("puiseux", help="series parameters a, b, phases, c")
    _n_arg(s); _type_arg(s)
    s.add_argument("--index", type=int, default=None,
                   help="restrict to one catalog point (0-based, after --type filter)")
    _add_common(s)

    s = subs.add_parser("level-curve", help="local |lambda| = n level curve at a point")
    _n_arg(s); _type_arg(s)
    s.add_argument("--index", type=int, default=0)
    _add_common(s, window=True, grid=161)

    s = subs.add_parser("trajectory", help="eigenvalue pair along the cusp bisector")
    _n_arg(s); _type_arg(s)
    s.add_argument("--index", type=int, default=0)
    s.add_argument("--d-max", type=float, default=0.02, dest="d_max")
    _add_common(s, grid=81)

    s = subs.add_parser("imaginary", help="imaginary-axis family parameters (odd n)")
    _n_arg(s); _add_common(s)

    s = subs.add_parser("large-n", help="asymptotic parameter table")
    s.add_argument("--n", type=int, nargs="+", required=True, dest="n_list")
    _add_common(s)

    s = subs.add_parser("figure", help="reproduce figure data sets (1..9)")
    s.add_argument("fig_id", type=int, choices=range(1, 10))
    s.add_argument("--n-max", type=int, default=None, dest="n_max",
                   help="largest n for the parameter sweep (figure 6)")
    _add_common(s, window=True, grid=96)

    s = subs.add_parser("verify", help="run the invariant battery")
    s.add_argument("--n-max", type=int, default=12, dest="n_max")
    _add_common(s)
    return parser


_HANDLERS = {
    "critical-points": cmd_critical_points,
    "puiseux": cmd_puiseux,
    "level-curve": cmd_level_curve,
    "trajectory": cmd_trajectory,
    "imaginary": cmd_imaginary,
    "large-n": cmd_large_n,
    "figure": cmd_figure,
    "verify": cmd_verify,
}


def _config_from_args(args: argparse.Namespace, parser: _Parser) -> RunConfig:
    cfg = RunConfig()
    cfg.output_format = getattr(args, "output_format", "csv")
    cfg.output_path = getattr(args, "output_path", "-")
    cfg.tol = getattr(args, "tol", None)
    cfg.window = getattr(args, "window", 0.8)
    cfg.grid = getattr(args, "grid", 96)
    if hasattr(args, "n") and args.n is not None:
        if args.n < 3:
            parser.error(f"--n must be >= 3, got {args.n}")
        cfg.n = args.n
    if getattr(args, "eig_type", None) is not None:
        cfg.eig_type = EigType(args.eig_type)
    if cfg.tol is not None and cfg.tol <= 0:
        parser.error("--tol must be positive")
    for key in ("index", "d_max", "n_max", "fig_id", "n_list"):
        if hasattr(args, key):
            cfg.extra[key] = getattr(args, key)
    return cfg


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args, parser)
    try:
        return _HANDLERS[args.command](cfg)
    except KmsBifError as exc:
        print(f"kmsbif: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
