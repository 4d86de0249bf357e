"""Command-line entry point: orbit enumeration, counting-bound checks,
transform tables, multiplier curves, volume-bound reports, and the
inequality certification suite.

Reports are JSON (schema_version 1) and/or CSV with a fixed field order;
identical inputs with --no-timestamps produce byte-identical output.
Exit codes: 0 success, 1 a verification found a violation, 2 malformed
input, 3 a certification came back inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from scipy.interpolate import InterpolatedUnivariateSpline

from . import bounds, fuchsian, geometry, multipliers, selberg, verify
from .errors import HypDelocError
from .geometry import Point

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class Config:
    """Run-wide defaults, overridable per flag; loaded from --config or the
    HYPDELOC_CONFIG environment variable."""

    quad_abs_tol: float = 1e-10
    quad_rel_tol: float = 1e-8
    grid_points: int = 200
    frontier_cap: int = 10 ** 7
    out_dir: str | None = None
    format: str = "json"

    def __post_init__(self) -> None:
        if not (self.quad_abs_tol > 0.0):
            raise ValueError("config field 'quad_abs_tol' must be positive")
        if not (self.quad_rel_tol > 0.0):
            raise ValueError("config field 'quad_rel_tol' must be positive")
        if self.grid_points < 2:
            raise ValueError("config field 'grid_points' must be at least 2")
        if self.frontier_cap < 1000:
            raise ValueError("config field 'frontier_cap' must be at least 1000")
        if self.format not in ("json", "csv", "both"):
            raise ValueError("config field 'format' must be one of json, csv, both")


_CONFIG_FIELDS = {f.name for f in dataclasses.fields(Config)}


def load_config(path: str | None) -> Config:
    if path is None:
        path = os.environ.get("HYPDELOC_CONFIG") or None
    if path is None:
        return Config()
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("config file must hold a JSON object")
    for key in doc:
        if key not in _CONFIG_FIELDS:
            raise ValueError(f"unknown config field '{key}'")
    return Config(**doc)


# -- parsing helpers -------------------------------------------------------

def _parse_point(text: str, name: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"field '{name}' must be 'x,y', got {text!r}")
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError:
        raise ValueError(f"field '{name}' must be 'x,y' with decimal entries, got {text!r}")
    if not (y > 0.0):
        raise ValueError(f"field '{name}' needs y > 0, got {text!r}")
    return Point(x, y)


def _parse_grid(text: str, name: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"field '{name}' must be 'lo,hi,n', got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValueError(f"field '{name}' must be 'lo,hi,n', got {text!r}")
    if n < 1 or hi < lo:
        raise ValueError(f"field '{name}' must satisfy hi >= lo and n >= 1")
    return np.linspace(lo, hi, n)


def _sanitize(obj):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        obj = float(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def _emit(args, cfg: Config, command: str, payload: dict,
          csv_header: list[str] | None = None, csv_rows: list | None = None) -> None:
    fmt = args.format or cfg.format
    env: dict = {"schema_version": SCHEMA_VERSION, "command": command}
    if not args.no_timestamps:
        env["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    env.update(_sanitize(payload))
    json_text = json.dumps(env, indent=2) + "\n"
    csv_text = None
    if csv_header is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(csv_header)
        for row in csv_rows or []:
            writer.writerow(["" if v is None else v for v in _sanitize(list(row))])
        csv_text = buf.getvalue()
    if fmt in ("json", "both"):
        sys.stdout.write(json_text)
    if fmt in ("csv", "both") and csv_text is not None:
        sys.stdout.write(csv_text)
    out_dir = args.out or cfg.out_dir
    if out_dir:
        root = Path(out_dir)
        root.mkdir(parents=True, exist_ok=True)
        if fmt in ("json", "both"):
            (root / f"{command}.json").write_text(json_text)
        if fmt in ("csv", "both") and csv_text is not None:
            (root / f"{command}.csv").write_text(csv_text)


# -- subcommands -----------------------------------------------------------

def cmd_enumerate(args, cfg: Config) -> int:
    group = fuchsian.load_group(args.group)
    z = _parse_point(args.z, "z")
    w = _parse_point(args.w, "w")
    els = fuchsian.enumerate_ball(group, z, w, args.radius, mode=args.mode,
                                  max_word_len=args.max_word_len,
                                  frontier_cap=cfg.frontier_cap)
    rows = []
    for el in els:
        a, b, c, d = el.matrix.entries()
        rows.append({"word": el.word_str(group.labels),
                     "distance": geometry.distance(z, el.matrix.apply(w)),
                     "matrix": [[a, b], [c, d]]})
    payload = {"group": group.name or args.group, "z": [z.x, z.y], "w": [w.x, w.y],
               "radius": args.radius, "mode": args.mode, "count": len(els),
               "elements": rows}
    _emit(args, cfg, "enumerate", payload,
          ["word", "distance", "a", "b", "c", "d"],
          [(r["word"], r["distance"], r["matrix"][0][0], r["matrix"][0][1],
            r["matrix"][1][0], r["matrix"][1][1]) for r in rows])
    return 0


def cmd_count_verify(args, cfg: Config) -> int:
    group = fuchsian.load_group(args.group)
    L = args.L if args.L is not None else group.tanglefree_L_hint
    injrad = args.injrad if args.injrad is not None else group.injrad_hint
    if L is None:
        raise ValueError("field 'L' is required: the group carries no tangle-free hint")
    if injrad is None:
        raise ValueError("field 'injrad' is required: the group carries no hint")
    params = fuchsian.params_from_tanglefree(L, injrad)
    z = _parse_point(args.z, "z")
    w = _parse_point(args.w, "w")
    radii = np.linspace(params.R / args.n_radii, params.R, args.n_radii)
    deltas = args.delta or [0.25]
    reports = [fuchsian.verify_counting_bound(group, params, [(z, w)], radii,
                                              delta=d, mode=args.mode,
                                              max_word_len=args.max_word_len)
               for d in deltas]
    payload = {"group": group.name or args.group, "R": params.R, "Cx": params.Cx,
               "L": params.L, "all_pass": all(r.all_pass for r in reports),
               "reports": [dataclasses.asdict(r) for r in reports]}
    csv_rows = [(r.delta, e.z[0], e.z[1], e.w[0], e.w[1], e.radius, e.count,
                 e.bound, e.ratio, e.passed)
                for r in reports for e in r.entries]
    _emit(args, cfg, "count-verify", payload,
          ["delta", "z_x", "z_y", "w_x", "w_y", "radius", "count", "bound",
           "ratio", "passed"], csv_rows)
    return 0 if payload["all_pass"] else 1


def _table_kernel(path: str) -> selberg.RadialKernel:
    data = np.loadtxt(path, delimiter=",", ndmin=2)
    if data.shape[1] != 2:
        raise ValueError("field 'table' must point to two-column CSV (rho,value)")
    rho, val = data[:, 0], data[:, 1]
    if rho.size < 4 or np.any(np.diff(rho) <= 0):
        raise ValueError("field 'table' needs at least 4 strictly increasing abscissas")
    spl = InterpolatedUnivariateSpline(rho, val, k=3, ext=3)
    top = float(rho[-1])

    def ev(x):
        x = abs(float(x))
        return float(spl(x)) if x <= top else 0.0

    return selberg.RadialKernel(eval=ev, support_bound=top)


def cmd_selberg(args, cfg: Config) -> int:
    if args.kernel in ("ball", "wave") and args.t is None:
        raise ValueError("field 't' is required for the ball and wave kernels")
    if args.kernel == "wave":
        h = selberg.wave_spectral(args.t)
        k = selberg.inverse_selberg(h, s_max=args.s_max)
        grid = _parse_grid(args.rho_grid, "rho-grid")
        rows = [(float(x), k(float(x))) for x in grid]
        meta = {"kernel": "wave", "t": args.t, "direction": "inverse",
                "abscissa": "rho"}
    else:
        if args.kernel == "ball":
            k = selberg.ball_kernel(args.t)
            meta = {"kernel": "ball", "t": args.t}
        else:
            if args.table is None:
                raise ValueError("field 'table' is required for the table kernel")
            k = _table_kernel(args.table)
            meta = {"kernel": "table", "support": k.support_bound}
        h = selberg.selberg_transform(k)
        grid = _parse_grid(args.s_grid, "s-grid")
        rows = [(float(x), h(float(x))) for x in grid]
        meta.update({"direction": "forward", "abscissa": "s"})
    payload = dict(meta)
    payload["rows"] = [{meta["abscissa"]: x, "value": v} for x, v in rows]
    _emit(args, cfg, "selberg", payload, ["abscissa", "value"], rows)
    return 0


def cmd_multiplier(args, cfg: Config) -> int:
    if args.mu is not None:
        mu_lams = [args.mu]
    else:
        mu_lams = [float(x) for x in _parse_grid(args.mu_grid, "mu-grid")]
    rows = []
    if args.family == "wave":
        if args.lam is None or args.r is None or args.N is None:
            raise ValueError("fields 'lam', 'r', 'N' are required for the wave family")
        spec = multipliers.WaveMultiplierSpec(
            lam=multipliers.spectral_parameter(args.lam), r=args.r, N=args.N)
        payload: dict = {"family": "wave", "lam": args.lam, "r": args.r, "N": args.N,
                         "self_lower_bound": multipliers.w_self_lower_bound(spec)}
        for lam_mu in mu_lams:
            mu = multipliers.spectral_parameter(lam_mu)
            val = multipliers.w_multiplier_direct(spec, mu)
            floor = 0.0 if mu.lam == 0.0 else multipliers.w_lower_bound(mu)
            rows.append({"mu_lam": lam_mu, "value": val, "floor": floor,
                         "passed": val >= floor - 1e-10})
        if args.R is not None:
            params = fuchsian.GeometryParams.from_bounds(R=args.R, Cx=args.Cx)
            payload["norm_bound"] = multipliers.w_norm_bound(
                spec, params, args.delta if args.delta is not None else 0.005)
    else:
        if args.t is None or args.sigma is None:
            raise ValueError("fields 't', 'sigma' are required for the ball family")
        spec = multipliers.BallMultiplierSpec(t=args.t, sigma=args.sigma)
        payload = {"family": "ball", "t": args.t, "sigma": args.sigma,
                   "tempered_floor": multipliers.ball_tempered_floor(spec),
                   "tempered_threshold": multipliers.ball_tempered_threshold(args.sigma)}
        for lam_mu in mu_lams:
            mu = multipliers.spectral_parameter(lam_mu)
            val = multipliers.b_multiplier(spec, mu)
            floor = (multipliers.ball_tempered_floor(spec) if mu.tempered
                     else multipliers.ball_untempered_floor(spec, mu))
            rows.append({"mu_lam": lam_mu, "value": val, "floor": floor,
                         "passed": val >= floor - 1e-10})
        if args.R is not None:
            params = fuchsian.GeometryParams.from_bounds(R=args.R, Cx=args.Cx)
            payload["norm_bound"] = multipliers.b_norm_bound(
                spec, params, args.delta if args.delta is not None else 0.25)
    payload["rows"] = rows
    payload["all_pass"] = all(r["passed"] for r in rows)
    _emit(args, cfg, "multiplier", payload, ["mu_lam", "value", "floor", "passed"],
          [(r["mu_lam"], r["value"], r["floor"], r["passed"]) for r in rows])
    return 0 if payload["all_pass"] else 1


def cmd_bound(args, cfg: Config) -> int:
    params = fuchsian.GeometryParams.from_bounds(R=args.R, Cx=args.Cx)
    inp = bounds.DelocInput(eps=args.eps, lam=args.lam, params=params,
                            sigma=args.sigma, delta=args.delta)
    if args.lam >= 0.25:
        rep = bounds.tempered_volume_bound(inp)
    else:
        rep = bounds.untempered_volume_bound(inp)
    payload = dataclasses.asdict(rep)
    payload["R"] = args.R
    payload["Cx"] = args.Cx
    csv_rows = [(k, v) for k, v in payload.items() if k != "hypotheses"]
    csv_rows += [(f"hypothesis[{h.name}]", h.satisfied) for h in rep.hypotheses]
    _emit(args, cfg, "bound", payload, ["field", "value"], csv_rows)
    return 0


def cmd_random_bound(args, cfg: Config) -> int:
    inp = bounds.RandomModelInput(genus=args.genus, c=args.c, a=args.a,
                                  eps=args.eps, lam=args.lam, sigma=args.sigma,
                                  delta=args.delta)
    rep = bounds.random_model_bound(inp)
    payload = dataclasses.asdict(rep)
    _emit(args, cfg, "random-bound", payload, ["field", "value"],
          list(payload.items()))
    return 0


def cmd_verify_lemmas(args, cfg: Config) -> int:
    vcfg = verify.VerifyConfig(
        sigmas=tuple(args.sigma) if args.sigma else verify.VerifyConfig.sigmas,
        grid_points=args.grid_points if args.grid_points is not None else cfg.grid_points,
        quad_tol=args.quad_tol if args.quad_tol is not None else verify.QUAD_AGREEMENT_TOL,
        seed=args.seed, threads=args.threads,
        include_cross_checks=not args.skip_cross_checks)
    reports = verify.run_all(vcfg)
    status = verify.exit_status(reports)
    payload = {"exit_status": status,
               "summary": {"pass": sum(r.status == "pass" for r in reports),
                           "fail": sum(r.status == "fail" for r in reports),
                           "inconclusive": sum(r.status == "inconclusive" for r in reports)},
               "checks": [dataclasses.asdict(r) for r in reports]}
    _emit(args, cfg, "verify-lemmas", payload,
          ["check", "grid_points", "min_slack", "status"],
          [(r.name, r.grid_points, r.min_slack, r.status) for r in reports])
    return status


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="JSON config path")
    common.add_argument("--out", default=None, help="directory for report files")
    common.add_argument("--format", choices=("json", "csv", "both"), default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--no-timestamps", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hypdeloc",
        description="Orbit counting, transform tables, and eigenfunction "
                    "volume bounds on hyperbolic surfaces.")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("enumerate", parents=[common],
                       help="list group elements moving w within a radius of z")
    p.add_argument("--group", required=True, help="shipped name or JSON path")
    p.add_argument("--z", default="0,1")
    p.add_argument("--w", default="0,1")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--mode", choices=("pruned", "brute"), default="pruned")
    p.add_argument("--max-word-len", type=int, default=12)

    p = sub.add_parser("count-verify", parents=[common],
                       help="check orbit counts against the exponential bound")
    p.add_argument("--group", required=True)
    p.add_argument("--z", default="0,1")
    p.add_argument("--w", default="0,1")
    p.add_argument("--delta", type=float, action="append")
    p.add_argument("--n-radii", type=int, default=20)
    p.add_argument("--L", type=float, default=None)
    p.add_argument("--injrad", type=float, default=None)
    p.add_argument("--mode", choices=("pruned", "brute"), default="brute")
    p.add_argument("--max-word-len", type=int, default=8)

    p = sub.add_parser("selberg", parents=[common],
                       help="tabulate the radial/spectral transform")
    p.add_argument("--kernel", choices=("ball", "wave", "table"), required=True)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--table", default=None, help="CSV of rho,value samples")
    p.add_argument("--s-grid", default="0,10,41")
    p.add_argument("--rho-grid", default="0,6,25")
    p.add_argument("--s-max", type=float, default=None)

    p = sub.add_parser("multiplier", parents=[common],
                       help="multiplier eigenvalue curves and bound flags")
    p.add_argument("--family", choices=("wave", "ball"), required=True)
    p.add_argument("--lam", "--lambda", dest="lam", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--mu-grid", default="0,9,19")
    p.add_argument("--R", type=float, default=None)
    p.add_argument("--Cx", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=None)

    p = sub.add_parser("bound", parents=[common],
                       help="volume lower bound for a mass share eps")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--lambda", "--lam", dest="lam", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--Cx", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--sigma", type=float, default=None)

    p = sub.add_parser("random-bound", parents=[common],
                       help="genus-parametrized volume bound")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--lambda", "--lam", dest="lam", type=float, required=True)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)

    p = sub.add_parser("verify-lemmas", parents=[common],
                       help="run the inequality certification suite")
    p.add_argument("--sigma", type=float, action="append")
    p.add_argument("--grid-points", type=int, default=None)
    p.add_argument("--quad-tol", type=float, default=None)
    p.add_argument("--skip-cross-checks", action="store_true")

    return parser


_HANDLERS = {
    "enumerate": cmd_enumerate,
    "count-verify": cmd_count_verify,
    "selberg": cmd_selberg,
    "multiplier": cmd_multiplier,
    "bound": cmd_bound,
    "random-bound": cmd_random_bound,
    "verify-lemmas": cmd_verify_lemmas,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        cfg = load_config(args.config)
        return _HANDLERS[args.command](args, cfg)
    except (ValueError, HypDelocError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
