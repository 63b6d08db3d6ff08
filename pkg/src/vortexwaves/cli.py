"""Command-line front end.

    vortexwaves profile --theta 0.3 --m 1 --out run/
    vortexwaves verify --out run/

Each subcommand reads an optional JSON config (``--config``), applies flag
overrides, validates everything before computing, and writes CSV and JSON
artifacts into ``--out``.  Exit codes: 0 ok, 1 verification failure,
2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
import warnings
from dataclasses import asdict, dataclass, fields
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import bifurcation as bf
from . import periodic_deep as pdp
from . import stream_core as sc
from . import streamlines as sl
from . import surface_profile as sp
from . import theta_matrix as tm
from .errors import DecayError, StepSizeError, VortexWavesError
from .stream_core import PhysicalParams, VortexConfig

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
COMMANDS = ("profile", "coeffs", "theta", "streamlines", "periodic", "verify")


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending key."""

    def __init__(self, field_name: str, message: str, line: Optional[int] = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"config field '{field_name}'{where}: {message}")
        self.field = field_name


@dataclass
class RunConfig:
    theta: Optional[float] = None
    thetas: Optional[List[float]] = None
    h: float = 1.0
    g: float = 1.0
    alpha2: Optional[float] = None
    m: Optional[float] = None
    L: float = 1.0
    x_max: Optional[float] = None
    n_points: Optional[int] = None
    series_n: Optional[int] = None
    eps_sign: int = 1
    dt: float = 2e-3
    max_steps: int = 20000
    starts: Optional[List[List[float]]] = None
    checks: Optional[List[str]] = None
    out: str = "."

    def canonical(self) -> str:
        """Stable JSON of the parameters (the output directory is excluded)."""
        d = asdict(self)
        d.pop("out")
        return json.dumps(d, sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


FLOAT_FIELDS = ("theta", "h", "g", "alpha2", "m", "L", "x_max", "dt")
INT_FIELDS = ("n_points", "series_n", "eps_sign", "max_steps")
FIELD_NAMES = {f.name for f in fields(RunConfig)}


def _key_lines(text: str) -> Dict[str, int]:
    lines = {}
    for i, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith('"'):
            key = stripped[1:].split('"', 1)[0]
            lines.setdefault(key, i)
    return lines


def _finite_number(name, value, line=None, *, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, f"expected a number, got {value!r}", line)
    if not math.isfinite(value):
        raise ConfigError(name, f"must be finite, got {value!r}", line)
    if integer and value != int(value):
        raise ConfigError(name, f"expected an integer, got {value!r}", line)
    return int(value) if integer else float(value)


def load_config(path: Optional[str], overrides: Dict) -> RunConfig:
    raw, lines = {}, {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"malformed JSON: {exc.msg} at column {exc.colno}", exc.lineno) from None
        if not isinstance(raw, dict):
            raise ConfigError("config", "top level must be a JSON object")
        lines = _key_lines(text)
    merged = dict(raw)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    for key in merged:
        if key not in FIELD_NAMES:
            raise ConfigError(key, "unknown field", lines.get(key))
    cfg = RunConfig()
    for key, value in merged.items():
        line = lines.get(key)
        if key in FLOAT_FIELDS:
            value = _finite_number(key, value, line)
        elif key in INT_FIELDS:
            value = _finite_number(key, value, line, integer=True)
        elif key == "thetas":
            if not isinstance(value, list) or not value:
                raise ConfigError(key, "expected a non-empty list of numbers", line)
            value = [_finite_number(f"thetas[{i}]", v, line) for i, v in enumerate(value)]
        elif key == "starts":
            if not isinstance(value, list) or not all(isinstance(p, list) and len(p) == 2 for p in value):
                raise ConfigError(key, "expected a list of [x, y] pairs", line)
            value = [[_finite_number(f"starts[{i}]", c, line) for c in p] for i, p in enumerate(value)]
        elif key == "checks":
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ConfigError(key, "expected a list of check names", line)
        elif key == "out" and not isinstance(value, str):
            raise ConfigError(key, "expected a path string", line)
        setattr(cfg, key, value)
    cfg._lines = lines
    return cfg


def _positive(cfg, name):
    value = getattr(cfg, name)
    if value is not None and not value > 0:
        raise ConfigError(name, f"must be positive, got {value!r}", cfg._lines.get(name))


def _open_unit(cfg, name, value):
    if not 0.0 < value < 1.0:
        raise ConfigError(name, f"must lie strictly between 0 and 1, got {value!r}", cfg._lines.get(name.split("[")[0]))


def validate(cfg: RunConfig, command: str) -> None:
    for name in ("h", "g", "alpha2", "m", "L", "x_max", "dt"):
        _positive(cfg, name)
    if cfg.n_points is not None and cfg.n_points < 3:
        raise ConfigError("n_points", f"need at least 3 points, got {cfg.n_points}", cfg._lines.get("n_points"))
    if cfg.series_n is not None and cfg.series_n < 1:
        raise ConfigError("series_n", "must be at least 1", cfg._lines.get("series_n"))
    if cfg.eps_sign not in (-1, 1):
        raise ConfigError("eps_sign", "must be +1 or -1", cfg._lines.get("eps_sign"))
    if cfg.max_steps < 1:
        raise ConfigError("max_steps", "must be at least 1", cfg._lines.get("max_steps"))
    if cfg.m is not None and cfg.alpha2 is not None:
        implied = cfg.g * cfg.h**2 / (math.pi**2 * cfg.m**2)
        if not math.isclose(implied, cfg.alpha2, rel_tol=1e-12):
            raise ConfigError("m", f"inconsistent with alpha2 (m implies alpha2 = {implied!r})", cfg._lines.get("m"))
    if cfg.theta is not None:
        _open_unit(cfg, "theta", cfg.theta)
    if cfg.thetas is not None:
        for i, t in enumerate(cfg.thetas):
            _open_unit(cfg, f"thetas[{i}]", t)
        if len(set(cfg.thetas)) != len(cfg.thetas):
            raise ConfigError("thetas", "vortex heights must be distinct", cfg._lines.get("thetas"))
    if command in ("profile", "coeffs") and (cfg.theta is None) == (cfg.thetas is None):
        raise ConfigError("theta", "give exactly one of 'theta' or 'thetas'")
    if command == "verify" and cfg.checks is not None:
        from .verification import CHECKS

        known = {c.name for c in CHECKS}
        unknown = [c for c in cfg.checks if c not in known]
        if unknown or not cfg.checks:
            raise ConfigError("checks", f"unknown or empty check list {unknown}", cfg._lines.get("checks"))
    if command == "streamlines":
        if cfg.theta is None:
            raise ConfigError("theta", "required for streamlines")
        for i, (x, y) in enumerate(cfg.starts or []):
            if not -cfg.h < y < 0:
                raise ConfigError(f"starts[{i}]", f"y = {y!r} is outside the open strip (-h, 0)", cfg._lines.get("starts"))


def params_of(cfg: RunConfig) -> PhysicalParams:
    if cfg.alpha2 is not None:
        return PhysicalParams(cfg.g, cfg.alpha2, cfg.h)
    if cfg.m is not None:
        return PhysicalParams.from_m(cfg.m, h=cfg.h, g=cfg.g)
    return PhysicalParams(cfg.g, 1.0 / (8.0 * math.pi**2), cfg.h)


# output ------------------------------------------------------------------------

def fmt(value) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def write_csv(path: str, cfg: RunConfig, header: Sequence[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# config sha256 {cfg.digest()}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path: str, cfg: RunConfig, payload: Dict) -> None:
    doc = dict(payload, config=json.loads(cfg.canonical()), config_sha256=cfg.digest())
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_jsonable(doc), fh, sort_keys=True, indent=2, ensure_ascii=False)
        fh.write("\n")


def _out(cfg, name):
    os.makedirs(cfg.out, exist_ok=True)
    return os.path.join(cfg.out, name)


# profile --------------------------------------------------------------------------

def _max_abs(a, b):
    d = np.abs(np.asarray(a) - np.asarray(b))
    d = d[np.isfinite(d)]
    return float(np.max(d)) if d.size else None


def shape_summary(xs, values) -> Dict:
    """Sign and extremum classification on the non-negative half of a symmetric grid."""
    pos = xs >= 0
    x, v = xs[pos], values[pos]
    dv = np.diff(v)
    interior = np.nonzero((dv[:-1] > 0) & (dv[1:] <= 0))[0] + 1
    minima = np.nonzero((dv[:-1] < 0) & (dv[1:] >= 0))[0] + 1
    return {
        "eta2_at_0": float(v[0]),
        "everywhere_negative": bool(np.all(values < 0)),
        "increasing_on_positive_grid": bool(np.all(dv > 0)),
        "side_crests_x": [float(x[i]) for i in interior],
        "n_side_crests": int(interior.size),
        "interior_troughs_x": [float(x[i]) for i in minima],
        "single_trough": bool(interior.size == 0 and v[0] < 0 and np.all(dv > 0)),
        "max_value": float(np.max(values)),
        "min_value": float(np.min(values)),
    }


def cmd_profile(cfg: RunConfig) -> int:
    params = params_of(cfg)
    config = VortexConfig(tuple(cfg.thetas)) if cfg.thetas else VortexConfig((cfg.theta,))
    spec = sp.ProfileSpec(params, config)
    x_max = 10.0 * cfg.h if cfg.x_max is None else cfg.x_max
    n = 401 if cfg.n_points is None else cfg.n_points
    xs = np.linspace(-x_max, x_max, n)
    summary = {"m": params.m, "branch": spec.branch.value, "alpha2": params.alpha2, "n_vortices": config.n}
    if spec.is_multi:
        grid = np.asarray(sp.eta2_grid(spec, xs))
        oracle = np.asarray(sp.eta2_oracle(spec, xs))
        cols = {"eta2_grid": grid, "eta2_oracle": oracle}
        eta = grid
        summary["gamma1"] = list(spec.strengths)
    else:
        oracle = np.asarray(sp.eta2_oracle(spec, xs))
        series = np.full(n, np.nan)
        far = np.abs(xs) >= sp.SERIES_X_MIN * cfg.h
        if np.any(far):
            series[far] = sp.eta2_series(spec, xs[far], cfg.series_n)
            N_used = cfg.series_n or sp.default_series_n(spec, xs[far])
            summary["series_N"] = N_used
            summary["series_tail_bound"] = sp.series_tail_bound(spec, float(np.min(np.abs(xs[far]))), N_used)
        cols = {"eta2_series": series, "eta2_oracle": oracle}
        if spec.branch is sp.Branch.INTEGER_M:
            elem = np.full(n, np.nan)
            ok = np.abs(xs) <= sp.elementary_x_max(spec)
            elem[ok] = sp.eta2_elementary(spec, xs[ok])
            cols["eta2_elementary"] = elem
            summary["elementary_x_max"] = sp.elementary_x_max(spec)
        eta = np.where(np.isfinite(series), series, oracle)
        asym = sp.asymptotic_constant(spec)
        summary["tail_sign"] = sp.tail_sign(spec).value
        summary["asymptotics"] = {"kind": asym.kind.value, "rate": asym.rate, "constant": asym.constant}
    names = list(cols)
    diffs = {}
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            diffs[f"abs_diff_{a[5:]}_{b[5:]}"] = np.abs(cols[a] - cols[b])
    pair_max = {k: _max_abs(v, 0 * v) for k, v in diffs.items()}
    summary["pairwise_max_abs_diff"] = pair_max
    finite = [v for v in pair_max.values() if v is not None]
    summary["max_pairwise_diff"] = max(finite) if finite else None
    summary.update(shape_summary(xs, eta))
    header = ["x", "eta2", *names, *diffs]
    rows = zip(xs, eta, *cols.values(), *diffs.values())
    write_csv(_out(cfg, "profile.csv"), cfg, header, rows)
    write_json(_out(cfg, "profile_summary.json"), cfg, summary)
    return EXIT_OK


# coeffs ----------------------------------------------------------------------------

def cmd_coeffs(cfg: RunConfig) -> int:
    params = params_of(cfg)
    config = VortexConfig(tuple(cfg.thetas)) if cfg.thetas else VortexConfig((cfg.theta,))
    spec = sp.ProfileSpec(params, config)
    coeffs = bf.compute_coeffs(spec, cfg.x_max, cfg.n_points)
    res = bf.consistency_residuals(spec)
    report = {"h": params.h, "g": params.g, "alpha2": params.alpha2, "m": params.m,
              "residuals": {"bernoulli2": res["bernoulli2"], "kinematic3": res["kinematic3"],
                            "kinematic1": res["kinematic1"]}}
    if spec.is_multi:
        report.update(thetas=list(config.thetas), gamma1=list(coeffs.gamma1),
                      gamma3=list(coeffs.gamma3), det_theta=coeffs.det_theta)
    else:
        report.update(theta=spec.theta, c1=coeffs.c1, c3=coeffs.c3)
    xs = coeffs.zeta3.xs
    write_csv(_out(cfg, "coeffs.csv"), cfg, ["x", "eta2", "zeta3"], zip(xs, coeffs.eta2.values, coeffs.zeta3.values))
    write_json(_out(cfg, "coeffs.json"), cfg, report)
    return EXIT_OK


# theta ------------------------------------------------------------------------------

def theta_sweep(n: int):
    """Determinant on the lower triangle ``0 < theta2 < theta1 < 1`` of an ``n x n`` grid."""
    grid = np.linspace(0.0, 1.0, n + 1)[1:-1]
    rows = []
    for t1 in grid:
        for t2 in grid:
            if t2 < t1:
                rows.append((float(t1), float(t2), tm.two_vortex_det(float(t1), float(t2), 1.0)))
    return grid, rows


def sign_change_deviation(grid, rows):
    """Sign changes of det along theta2 at fixed theta1, located by linear interpolation,
    and their distance to the parametrised zero curve."""
    by_t1 = {}
    for t1, t2, d in rows:
        by_t1.setdefault(t1, []).append((t2, d))
    crossings = []
    for t1, vals in by_t1.items():
        for (a, da), (b, db) in zip(vals, vals[1:]):
            if da == 0.0 or np.sign(da) != np.sign(db):
                t2 = a if da == 0.0 else a - da * (b - a) / (db - da)
                crossings.append((t1, t2, abs(t2 - tm.theta2_hat(t1)) if 0.5 < t1 < 1 else math.inf))
    return crossings


def cmd_theta(cfg: RunConfig) -> int:
    n = 201 if cfg.n_points is None else cfg.n_points
    grid, rows = theta_sweep(n)
    write_csv(_out(cfg, "theta_sweep.csv"), cfg, ["theta1", "theta2", "det"], rows)
    ts = np.linspace(math.pi / 4, 3 * math.pi / 4, 401)[1:-1]
    curve = [(t, *tm.zero_curve_point(float(t))) for t in ts]
    write_csv(_out(cfg, "theta_zero_curve.csv"), cfg, ["t", "theta1", "theta2"], curve)
    crossings = sign_change_deviation(grid, rows)
    summary = {
        "n_grid": n,
        "n_sign_changes": len(crossings),
        "max_sign_change_deviation": max((c[2] for c in crossings), default=None),
        "min_det": min(r[2] for r in rows),
    }
    if cfg.thetas:
        T = tm.build_theta(VortexConfig(tuple(cfg.thetas)), cfg.h)
        summary["matrix"] = {"thetas": cfg.thetas, "entries": T.entries.tolist(), "det": tm.det_theta(T),
                             "relative_det": tm.relative_det(T), "invertible": tm.is_invertible(T)}
        if tm.is_invertible(T):
            summary["matrix"]["gamma1"] = list(tm.gamma1(T))
    write_json(_out(cfg, "theta_summary.json"), cfg, summary)
    return EXIT_OK


# streamlines -------------------------------------------------------------------------

def default_starts(theta: float, h: float) -> List[List[float]]:
    """Vertical column of seeds above and below the vortex, skipping its neighbourhood."""
    yv = -(1 - theta) * h
    ys = np.linspace(-0.95 * h, -0.05 * h, 10)
    return [[0.0, float(y)] for y in ys if abs(y - yv) > 0.04 * h]


def cmd_streamlines(cfg: RunConfig) -> int:
    params = params_of(cfg)
    theta = cfg.theta
    starts = cfg.starts or default_starts(theta, cfg.h)
    rows, meta = [], []
    for i, p0 in enumerate(starts):
        path = sl.integrate_streamline(params, theta, p0, cfg.eps_sign, cfg.dt, cfg.max_steps, x_limit=4.0 * cfg.h)
        meta.append({"path": i, "start": p0, "termination": path.termination.value, "n_points": len(path.points),
                     "stream_drift": sl.stream_drift(params, theta, path)})
        rows.extend((i, t, x, y) for t, (x, y) in zip(path.times, path.points))
    write_csv(_out(cfg, "streamlines.csv"), cfg, ["path", "t", "x", "y"], rows)
    header = {"theta": theta, "h": cfg.h, "eps_sign": cfg.eps_sign, "dt": cfg.dt, "paths": meta,
              "c1": sc.c1(params, theta),
              "equilibria": [list(q) for q in sl.equilibria(params, theta)]}
    if theta != 0.5:
        het = sl.heteroclinic_trace(params, theta, 201)
        write_csv(_out(cfg, "heteroclinic.csv"), cfg, ["x", "y"], het)
    write_json(_out(cfg, "streamlines.json"), cfg, header)
    return EXIT_OK


# periodic ----------------------------------------------------------------------------

def cmd_periodic(cfg: RunConfig) -> int:
    pp = pdp.PeriodicParams(cfg.L, cfg.g, 0.01 if cfg.alpha2 is None else cfg.alpha2)
    n = 401 if cfg.n_points is None else cfg.n_points
    N = pdp.default_n(pp) if cfg.series_n is None else cfg.series_n
    xs = np.linspace(-math.pi * pp.L, math.pi * pp.L, n)
    series = np.asarray(pdp.eta_star(pp, xs, N))
    oracle = np.asarray(pdp.eta_star_oracle(pp, xs))
    write_csv(_out(cfg, "periodic.csv"), cfg, ["x", "eta_star", "eta_star_oracle", "abs_diff"],
              zip(xs, series, oracle, np.abs(series - oracle)))
    reg = pdp.c1_periodic_regularized(pp)
    summary = {"L": pp.L, "g": pp.g, "alpha2": pp.alpha2, "c1": pdp.c1_periodic(pp),
               "c1_regularized": reg.real, "N": N, "tail_bound": pdp.eta_star_tail_bound(pp, N),
               "max_abs_diff_oracle": float(np.max(np.abs(series - oracle))),
               "chi_period_mean": pdp.mean_zero_check(pp) / pp.period}
    write_json(_out(cfg, "periodic_summary.json"), cfg, summary)
    return EXIT_OK


# verify ------------------------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    from .verification import run_suite

    board = run_suite(cfg.checks)
    write_json(_out(cfg, "verify.json"), cfg, board)
    for c in board["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['module']}.{c['name']} value={fmt(c['value'])}")
    return EXIT_OK if board["passed"] else EXIT_VERIFY


HANDLERS = {"profile": cmd_profile, "coeffs": cmd_coeffs, "theta": cmd_theta,
            "streamlines": cmd_streamlines, "periodic": cmd_periodic, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vortexwaves", description="Leading-order vortex water waves.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON run configuration")
        for flag in ("theta", "h", "g", "alpha2", "m", "L", "x-max", "dt"):
            p.add_argument(f"--{flag}", type=float, dest=flag.replace("-", "_"))
        for flag in ("n-points", "series-n", "eps-sign", "max-steps"):
            p.add_argument(f"--{flag}", type=int, dest=flag.replace("-", "_"))
        p.add_argument("--thetas", type=lambda s: [float(v) for v in s.split(",")],
                       help="comma-separated vortex heights")
        p.add_argument("--out")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2, --help with 0
        return int(exc.code or 0)
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        cfg = load_config(args.config, overrides)
        validate(cfg, args.command)
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            return HANDLERS[args.command](cfg)
    except (ConfigError, StepSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VortexWavesError as exc:
        code = EXIT_INPUT if isinstance(exc, ValueError) and not isinstance(exc, DecayError) else EXIT_NUMERIC
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    except (ArithmeticError, np.linalg.LinAlgError, RuntimeError) as exc:
        print(f"error: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
