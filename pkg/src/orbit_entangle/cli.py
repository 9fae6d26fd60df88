"""Command-line front end: reproducible figure and table pipelines.

Subcommands: poles, amplitudes, region, dynamics, concurrence-surface,
esd-curve, verify, corpus-rebuild.  A TOML file supplies defaults via
--config; explicit flags win.  Numeric output is serialized with 17
significant digits and no timestamps, so identical configurations yield
byte-identical artifacts.

Exit codes: 0 success, 1 input validation, 2 numerical failure,
3 verification breach.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

try:
    import tomllib  # py >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

import numpy as np

from . import __version__
from .params import OrbitPoint, parse_param_block
from .poles import PoleSolverError, solve_a_poles, solve_x_poles
from .amplitudes import evaluate_amplitudes, region_scan
from .oracle import OracleConvergenceError, Regulator
from .dynamics import (relaxation_profile, density_at, concurrence_closed,
                       esd_time)
from . import corpus as corpus_mod
from . import svgplot

__all__ = ["main"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY = 3

_FMT = "%.17g"


def _fmt(x: float) -> str:
    return _FMT % x


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _write_json(path: Path, obj) -> None:
    _write_text(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_csv(path: Path, header: list[str], rows: list[list[str]]) -> None:
    lines = [",".join(header)]
    lines += [",".join(row) for row in rows]
    _write_text(path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# configuration

def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _axis(name: str, flag_value: str | None, config: dict) -> list[float]:
    """Axis spec 'min:max:count' (log spacing with 'log:min:max:count')."""
    spec = flag_value
    if spec is None:
        grid = config.get("grid", {})
        if name in grid:
            vals = grid[name]
            spec = ":".join(str(v) for v in vals)
    if spec is None:
        raise ValueError(f"missing grid axis '{name}'")
    parts = spec.split(":")
    log = False
    if parts[0] == "log":
        log = True
        parts = parts[1:]
    if len(parts) != 3:
        raise ValueError(f"axis '{name}' must be min:max:count, got {spec!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 2 or not (0 < lo < hi) or not math.isfinite(hi):
        raise ValueError(f"axis '{name}': need 0 < min < max and count >= 2")
    if log:
        return list(np.geomspace(lo, hi, n))
    return list(np.linspace(lo, hi, n))


def _point_from(args, config: dict) -> tuple[OrbitPoint, float]:
    block = dict(config.get("params", {}))
    for key in ("r", "y", "alpha", "omega", "eta0", "xi", "radius", "accel"):
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            block[key] = val
    return parse_param_block(block)


def _regulator_from(args, config: dict) -> Regulator:
    block = dict(config.get("regulator", {}))
    if getattr(args, "eps_ladder", None):
        block["epsilon_ladder"] = [float(v) for v in args.eps_ladder.split(",")]
    if getattr(args, "truncation", None) is not None:
        block["truncation"] = args.truncation
    if getattr(args, "node_budget", None) is not None:
        block["node_budget"] = args.node_budget
    return Regulator(
        epsilon_ladder=tuple(block.get("epsilon_ladder", (1e-2, 5e-3, 2.5e-3))),
        truncation=float(block.get("truncation", 12.0)),
        node_budget=int(block.get("node_budget", 10_000)),
    )


# ---------------------------------------------------------------------------
# subcommands

def _cmd_poles(args, config: dict, outdir: Path, emit: set[str]) -> int:
    beta = args.beta if args.beta is not None else config.get("beta")
    if beta is None:
        print("poles: --beta is required", file=sys.stderr)
        return EXIT_INPUT
    beta = float(beta)
    if not (0.0 < beta < 1.0):
        print(f"poles: beta must lie strictly in (0,1), got {beta}", file=sys.stderr)
        return EXIT_INPUT
    kind = args.kind
    k_max = args.kmax
    try:
        pole_set = solve_a_poles(beta, k_max) if kind == "A" else solve_x_poles(beta, k_max)
    except PoleSolverError as exc:
        print(f"poles: solver failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    lines = ["# kind branch k re im residual"]
    sp = pole_set.special
    from .poles import PoleFamily
    fam1 = PoleFamily(kind=kind, branch=1, beta=beta)
    lines.append(" ".join([kind, "special", "0", _fmt(sp.real), _fmt(sp.imag),
                           _fmt(abs(fam1.equation(sp)))]))
    for m in pole_set.members:
        lines.append(" ".join([kind, str(m.branch), str(m.k), _fmt(m.z.real),
                               _fmt(m.z.imag), _fmt(m.residual)]))
    path = outdir / f"poles_{kind}_beta{beta:g}.txt"
    _write_text(path, "\n".join(lines) + "\n")
    print(f"wrote {path} ({len(pole_set.members) + 1} poles, "
          f"max residual {pole_set.residuals:.2e})")
    return EXIT_OK


def _cmd_amplitudes(args, config: dict, outdir: Path, emit: set[str]) -> int:
    try:
        pt, eta0 = _point_from(args, config)
    except ValueError as exc:
        print(f"amplitudes: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        res = evaluate_amplitudes(pt, k_max=args.kmax, eta0=eta0)
    except (PoleSolverError, ArithmeticError) as exc:
        print(f"amplitudes: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    payload = {
        "point": {"r": pt.r, "y": pt.y, "alpha": pt.alpha},
        "eta0": eta0,
        "a": res.a_val,
        "x_re": res.x_val.real,
        "x_im": res.x_val.imag,
        "abs_x": abs(res.x_val),
        "margin": abs(res.x_val) - res.a_val,
        "entangled": abs(res.x_val) > res.a_val,
        "k_used": res.k_used,
        "tail_estimate": res.tail_estimate,
        "imag_leak": res.imag_leak,
        "version": __version__,
    }
    if "json" in emit:
        _write_json(outdir / "amplitudes.json", payload)
    print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


_REGION_HEADER = ["r", "y", "alpha", "A", "ReX", "ImX", "absX", "margin",
                  "entangled", "k_used", "tail_estimate", "imag_leak"]


def _cmd_region(args, config: dict, outdir: Path, emit: set[str]) -> int:
    try:
        rs = _axis("r", args.r_axis, config)
        ys = _axis("y", args.y_axis, config)
        alphas = _axis("alpha", args.alpha_axis, config)
    except ValueError as exc:
        print(f"region: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rows = region_scan(rs, ys, alphas, k_max=args.kmax)
    failures = [row for row in rows if row.error is not None]
    csv_rows = []
    for row in rows:
        pt = row.point
        if row.result is None:
            csv_rows.append([_fmt(pt.r), _fmt(pt.y), _fmt(pt.alpha)]
                            + [_fmt(math.nan)] * 5
                            + ["error", "0", _fmt(math.nan), _fmt(math.nan)])
            continue
        res = row.result
        csv_rows.append([
            _fmt(pt.r), _fmt(pt.y), _fmt(pt.alpha), _fmt(res.a_val),
            _fmt(res.x_val.real), _fmt(res.x_val.imag), _fmt(abs(res.x_val)),
            _fmt(row.margin), "true" if row.entangled else "false",
            str(res.k_used), _fmt(res.tail_estimate), _fmt(res.imag_leak),
        ])
    if "csv" in emit:
        _write_csv(outdir / "region.csv", _REGION_HEADER, csv_rows)
    if "json" in emit:
        _write_json(outdir / "region_meta.json", {
            "grid": {"r": rs, "y": ys, "alpha": alphas},
            "k_max": args.kmax,
            "n_points": len(rows),
            "n_failures": len(failures),
            "version": __version__,
        })
    if "svg" in emit:
        for ia, alpha in enumerate(alphas):
            slice_rows = [row for row in rows if row.point.alpha == alpha]
            grid = [[next(row.margin for row in slice_rows
                          if row.point.r == r and row.point.y == y)
                     for r in rs] for y in ys]
            svgplot.contour_plot(
                outdir / f"region_alpha{ia}.svg", rs, ys, grid, level=0.0,
                title=f"entanglement boundary |X|=A at alpha={alpha:g}",
                xlabel="r", ylabel="y")
    for row in failures:
        print(f"region: point ({row.point.r:g},{row.point.y:g},"
              f"{row.point.alpha:g}) failed: {row.error}", file=sys.stderr)
    if failures and len(failures) == len(rows):
        return EXIT_NUMERICAL
    print(f"wrote region scan ({len(rows)} points, {len(failures)} flagged)")
    return EXIT_OK


def _cmd_dynamics(args, config: dict, outdir: Path, emit: set[str]) -> int:
    dyn = dict(config.get("dynamics", {}))
    omega = args.omega if args.omega is not None else dyn.get("omega", 1.0)
    accel = args.accel if args.accel is not None else dyn.get("accel", 0.0)
    eta0 = args.eta0 if args.eta0 is not None else dyn.get("eta0", 0.1)
    gamma = args.gamma if args.gamma is not None else dyn.get("gamma", 1.0)
    try:
        profile = relaxation_profile(omega_gap=float(omega), accel=float(accel),
                                     eta0=float(eta0), gamma=float(gamma))
    except ValueError as exc:
        print(f"dynamics: {exc}", file=sys.stderr)
        return EXIT_INPUT
    t_max = args.t_max_t2 * profile.t2
    ts = np.linspace(0.0, t_max, args.steps)
    scale = profile.eta0 ** 2 * profile.omega_gap / profile.gamma  # t' = scale * t
    rows = []
    series = {name: [] for name in ("rho00", "rho11", "rho22", "rho33",
                                    "rho03", "C")}
    for t in ts:
        state = density_at(profile, float(t))
        m = state.matrix
        c = concurrence_closed(profile, float(t))
        vals = [m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real,
                m[0, 3].real, c]
        for name, v in zip(series, vals):
            series[name].append(v)
        rows.append([_fmt(scale * t)] + [_fmt(v) for v in vals])
    tesd = esd_time(profile)
    if "csv" in emit:
        _write_csv(outdir / "dynamics.csv",
                   ["t_prime", "rho00", "rho11", "rho22", "rho33", "rho03",
                    "concurrence"], rows)
    if "json" in emit:
        _write_json(outdir / "dynamics_meta.json", {
            "omega": profile.omega_gap, "accel": profile.accel,
            "eta0": profile.eta0, "gamma": profile.gamma,
            "delta": profile.delta, "t1": profile.t1, "t2": profile.t2,
            "t_eff": profile.t_eff,
            "t_esd": tesd, "t_esd_prime": None if tesd is None else scale * tesd,
            "version": __version__,
        })
    if "svg" in emit:
        svgplot.line_plot(outdir / "dynamics.svg", [scale * t for t in ts],
                          list(series.values()), list(series),
                          title=f"a/Omega={accel / omega:g}, delta={profile.delta:.4g}",
                          xlabel="t'", ylabel="matrix element / concurrence")
    print(f"wrote dynamics trace (delta={profile.delta:.6g}, "
          f"t_esd={'never' if tesd is None else '%g' % tesd})")
    return EXIT_OK


def _cmd_concurrence_surface(args, config: dict, outdir: Path, emit: set[str]) -> int:
    try:
        aos = _axis("a_over_omega", args.a_over_omega, config)
    except ValueError as exc:
        print(f"concurrence-surface: {exc}", file=sys.stderr)
        return EXIT_INPUT
    omega, eta0, gamma = 1.0, 1.0, 1.0
    rows = []
    curves = []
    tps = np.linspace(0.0, args.t_max_t2, args.steps)  # in units of T2 first
    for ao in aos:
        profile = relaxation_profile(omega, ao * omega, eta0, gamma)
        scale = eta0 ** 2 * omega / gamma
        curve = []
        for tt in tps:
            t = tt * profile.t2
            c = concurrence_closed(profile, float(t))
            rows.append([_fmt(ao), _fmt(scale * t), _fmt(c)])
            curve.append(c)
        curves.append(curve)
    if "csv" in emit:
        _write_csv(outdir / "concurrence_surface.csv",
                   ["a_over_omega", "t_prime", "concurrence"], rows)
    if "svg" in emit:
        svgplot.line_plot(outdir / "concurrence_surface.svg", list(tps), curves,
                          [f"a/Omega={ao:g}" for ao in aos],
                          title="concurrence decay", xlabel="t/T2",
                          ylabel="C")
    print(f"wrote concurrence surface ({len(aos)} accelerations)")
    return EXIT_OK


def _cmd_esd_curve(args, config: dict, outdir: Path, emit: set[str]) -> int:
    try:
        aos = _axis("a_over_omega", args.a_over_omega, config)
    except ValueError as exc:
        print(f"esd-curve: {exc}", file=sys.stderr)
        return EXIT_INPUT
    rows = []
    ratios = []
    for ao in aos:
        profile = relaxation_profile(1.0, ao, 1.0, 1.0)
        tesd = esd_time(profile)
        ratio = math.nan if tesd is None else tesd / profile.t2
        rows.append([_fmt(ao), _fmt(ratio)])
        ratios.append(ratio)
    if "csv" in emit:
        _write_csv(outdir / "esd_curve.csv", ["a_over_omega", "t_esd_over_t2"], rows)
    if "svg" in emit:
        svgplot.line_plot(outdir / "esd_curve.svg", list(aos), [ratios], ["t_esd/T2"],
                          title="entanglement sudden death", xlabel="a/Omega",
                          ylabel="t_esd/T2")
    print(f"wrote ESD curve ({len(aos)} points)")
    return EXIT_OK


def _cmd_verify(args, config: dict, outdir: Path, emit: set[str]) -> int:
    try:
        rows = corpus_mod.read_oracle_corpus(args.corpus)
    except FileNotFoundError:
        print("verify: oracle corpus not found", file=sys.stderr)
        return EXIT_INPUT
    rtol = args.rtol
    report_points = []
    n_failed = 0
    fingerprints = sorted({row.fingerprint for row in rows})
    cache: dict[tuple[float, float, float], object] = {}
    for row in rows:
        key = (row.r, row.y, row.alpha)
        if row.quantity not in ("A", "X"):
            report_points.append({"r": row.r, "y": row.y, "alpha": row.alpha,
                                  "quantity": row.quantity,
                                  "status": "reference-only"})
            continue
        if key not in cache:
            cache[key] = evaluate_amplitudes(OrbitPoint(*key), k_max=args.kmax)
        res = cache[key]
        ref = complex(row.re, row.im)
        val = complex(res.a_val) if row.quantity == "A" else res.x_val
        rel = abs(val - ref) / max(abs(ref), 1e-300)
        ok = rel <= rtol
        n_failed += 0 if ok else 1
        report_points.append({
            "r": row.r, "y": row.y, "alpha": row.alpha,
            "quantity": row.quantity,
            "closed_re": val.real, "closed_im": val.imag,
            "reference_re": ref.real, "reference_im": ref.imag,
            "rel_error": rel, "pass": ok,
        })
    checked = [p for p in report_points if "rel_error" in p]
    report = {
        "tolerance": rtol,
        "fingerprints": fingerprints,
        "n_checked": len(checked),
        "n_failed": n_failed,
        "max_rel_error": max((p["rel_error"] for p in checked), default=0.0),
        "points": report_points,
        "version": __version__,
    }
    _write_json(outdir / "verify_report.json", report)
    print(f"verify: {len(checked)} comparisons, {n_failed} failed, "
          f"max rel error {report['max_rel_error']:.3e}")
    return EXIT_OK if n_failed == 0 else EXIT_VERIFY


def _cmd_corpus_rebuild(args, config: dict, outdir: Path, emit: set[str]) -> int:
    target = Path(args.data_dir) if args.data_dir else corpus_mod.data_dir()
    target.mkdir(parents=True, exist_ok=True)
    which = set(args.which)
    reg = _regulator_from(args, config)
    if "oracle" in which or "all" in which:
        rows = corpus_mod.build_oracle_corpus(reg=reg)
        corpus_mod.write_oracle_corpus(target / "oracle_corpus.txt", rows)
        print(f"rebuilt {target / 'oracle_corpus.txt'} ({len(rows)} rows)")
    if "cerf" in which or "all" in which:
        triples = corpus_mod.build_cerf_corpus()
        corpus_mod.write_cerf_corpus(target / "cerf_corpus.txt", triples)
        print(f"rebuilt {target / 'cerf_corpus.txt'} ({len(triples)} rows)")
    if "ipm" in which or "all" in which:
        lines = corpus_mod.build_ipm_deviation(reg=reg)
        _write_text(target / "ipm_deviation.txt", "\n".join(lines) + "\n")
        print(f"rebuilt {target / 'ipm_deviation.txt'}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbit-entangle",
        description="Vacuum entanglement and dynamics of two orbiting detectors")
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument("--outdir", default="out", help="output directory")
    parser.add_argument("--svg", action="store_true", help="also emit SVG figures")
    parser.add_argument("--no-csv", action="store_true", help="suppress CSV output")
    parser.add_argument("--no-json", action="store_true", help="suppress JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poles", help="dump a pole table for one beta")
    p.add_argument("--beta", type=float)
    p.add_argument("--kind", choices=("A", "X"), default="A")
    p.add_argument("--kmax", type=int, default=10)

    p = sub.add_parser("amplitudes", help="evaluate A and X at one point")
    for flag in ("--r", "--y", "--alpha", "--omega", "--eta0", "--xi",
                 "--radius", "--accel"):
        p.add_argument(flag, type=float)
    p.add_argument("--kmax", type=int, default=10)

    p = sub.add_parser("region", help="scan the |X| > A entanglement region")
    p.add_argument("--r-axis", help="min:max:count (prefix log: for log spacing)")
    p.add_argument("--y-axis")
    p.add_argument("--alpha-axis")
    p.add_argument("--kmax", type=int, default=10)

    p = sub.add_parser("dynamics", help="density-matrix traces and concurrence")
    p.add_argument("--omega", type=float)
    p.add_argument("--accel", type=float)
    p.add_argument("--eta0", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--t-max-t2", type=float, default=5.0,
                   help="trace length in units of T2")
    p.add_argument("--steps", type=int, default=201)

    p = sub.add_parser("concurrence-surface", help="C over (a/Omega, t)")
    p.add_argument("--a-over-omega", help="axis spec min:max:count")
    p.add_argument("--t-max-t2", type=float, default=3.0)
    p.add_argument("--steps", type=int, default=121)

    p = sub.add_parser("esd-curve", help="sudden-death time vs acceleration")
    p.add_argument("--a-over-omega", help="axis spec min:max:count")

    p = sub.add_parser("verify", help="closed forms against the oracle corpus")
    p.add_argument("--corpus", help="corpus path (default: packaged table)")
    p.add_argument("--rtol", type=float, default=1e-3)
    p.add_argument("--kmax", type=int, default=10)

    p = sub.add_parser("corpus-rebuild", help="regenerate reference corpora")
    p.add_argument("--which", nargs="+", default=["all"],
                   choices=("oracle", "cerf", "ipm", "all"))
    p.add_argument("--data-dir", help="target directory (default: package data)")
    p.add_argument("--eps-ladder", help="comma-separated regulator ladder")
    p.add_argument("--truncation", type=float)
    p.add_argument("--node-budget", type=int)

    return parser


_COMMANDS = {
    "poles": _cmd_poles,
    "amplitudes": _cmd_amplitudes,
    "region": _cmd_region,
    "dynamics": _cmd_dynamics,
    "concurrence-surface": _cmd_concurrence_surface,
    "esd-curve": _cmd_esd_curve,
    "verify": _cmd_verify,
    "corpus-rebuild": _cmd_corpus_rebuild,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        print(f"config: {exc}", file=sys.stderr)
        return EXIT_INPUT
    outdir = Path(args.outdir if args.outdir else config.get("outdir", "out"))
    emit = {"csv", "json"}
    if args.no_csv:
        emit.discard("csv")
    if args.no_json:
        emit.discard("json")
    if args.svg or "svg" in config.get("emit", []):
        emit.add("svg")
    outdir.mkdir(parents=True, exist_ok=True)
    try:
        return _COMMANDS[args.command](args, config, outdir, emit)
    except (PoleSolverError, OracleConvergenceError, ArithmeticError) as exc:
        print(f"{args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
