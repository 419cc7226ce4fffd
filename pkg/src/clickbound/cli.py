"""Command-line front end: sweeps, conversion, serialization, self-test.

Subcommands:

    bound     one configuration over a pdark grid -> results file
    figure    the five reference configurations over the default grid
    convert   physical detector parameters -> dimensionless configuration
    selftest  reduced-resolution invariant checks of every module

Exit codes: 0 success, 1 validation error, 2 numerical-convergence failure,
3 partial sweep (failed points flagged in the file, which is still written).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .bound import BoundResult, SweepSpec, sweep
from .exceptions import ClickboundError, ValidationError
from .params import (DimensionlessConfig, PhysicalSetup,
                     ideal_click_probability, to_dimensionless)
from .wightman import KGridSpec

#: Overrides the default sweep parallelism when set to a positive integer.
PARALLELISM_ENV = "CLICKBOUND_PARALLELISM"

CSV_COLUMNS = ("config_id", "N", "dphi", "aspect", "phase", "dl_tilde",
               "dL_tilde", "pdark", "pmax", "zeta_opt", "e_opt",
               "informative", "w2_zero", "eta_max", "error_estimate",
               "status")

#: The five reference configurations (N, delta_phi, a, phase).
FIGURE_CONFIGS = (
    (10.0, 10.0, 1.0, 0.0),
    (100.0, 10.0, 1.0, 0.0),
    (10.0, 1.0, 1.0, 0.0),
    (10.0, 10.0, 0.01, 0.0),
    (10.0, 1.0, 1.0, math.pi / 2.0),
)


def _default_parallelism() -> int:
    raw = os.environ.get(PARALLELISM_ENV, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return n if n >= 1 else 1


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return f"{x:.17g}"


def _fmt_pdark(exponent: float) -> str:
    if float(exponent).is_integer():
        return f"1e{int(exponent)}"
    return _fmt(10.0 ** exponent)


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(
                    f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config_file(args: argparse.Namespace,
                       parser: argparse.ArgumentParser) -> None:
    """File values fill in any flag the command line left at its default."""
    if not getattr(args, "config_file", None):
        return
    file_vals = _read_config_file(args.config_file)
    defaults = {a.dest: a.default for a in parser._actions
                if a.dest not in ("help", "func", "command")}
    for key, raw in file_vals.items():
        if key not in defaults:
            raise ValidationError(f"unknown config-file key {key!r}")
        current = getattr(args, key)
        if current != defaults[key]:
            continue  # explicit flag wins
        typ = type(defaults[key]) if defaults[key] is not None else str
        if typ is bool:
            setattr(args, key, raw.lower() in ("1", "true", "yes"))
        else:
            setattr(args, key, typ(raw))


def _result_rows(results, spec: SweepSpec):
    """Flatten sweep output into CSV-ready dict rows, deterministically."""
    exps = spec.pdark_exponents()
    rows = []
    for ci, (config, points) in enumerate(results):
        for (pdark, res), exp in zip(points, exps):
            row = {
                "config_id": config.label(),
                "N": _fmt(config.N),
                "dphi": _fmt(config.delta_phi),
                "aspect": _fmt(config.a),
                "phase": _fmt(config.arg_alpha0),
                "dl_tilde": _fmt(config.dl_tilde),
                "dL_tilde": _fmt(config.dL_tilde),
                "pdark": _fmt_pdark(exp),
            }
            if isinstance(res, BoundResult):
                row.update(
                    pmax=_fmt(res.pmax),
                    zeta_opt=_fmt(res.zeta_opt),
                    e_opt=_fmt(res.e_opt),
                    informative=_fmt(res.informative),
                    w2_zero=_fmt(res.diagnostics.get("w2_zero")),
                    eta_max=_fmt(res.diagnostics.get("eta_max")),
                    error_estimate=_fmt(res.diagnostics.get("error_estimate")),
                    status="ok",
                )
            else:
                row.update(pmax="", zeta_opt="", e_opt="", informative="",
                           w2_zero="", eta_max="", error_estimate="",
                           status=f"failed: {res}")
            rows.append(row)
    rows.sort(key=lambda r: (r["config_id"], float(r["pdark"])))
    return rows


def _write_rows(rows, path: str, fmt: str) -> None:
    if fmt == "json":
        payload = [dict(r) for r in rows]
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [",".join(CSV_COLUMNS)]
        for r in rows:
            lines.append(",".join(r[c] for c in CSV_COLUMNS))
        text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _run_sweep(spec: SweepSpec, out_path: str, fmt: str) -> int:
    try:
        results = sweep(spec)
    except ClickboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rows = _result_rows(results, spec)
    _write_rows(rows, out_path, fmt)
    n_failed = sum(1 for r in rows if r["status"] != "ok")
    if n_failed == len(rows):
        print("error: every sweep point failed", file=sys.stderr)
        return 2
    if n_failed:
        print(f"warning: {n_failed} of {len(rows)} points failed",
              file=sys.stderr)
        return 3
    return 0


def _add_numerics_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default="-",
                   help="results file path, or - for stdout")
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--parallelism", type=int, default=_default_parallelism())
    p.add_argument("--eta-max", type=float, default=506.0)
    p.add_argument("--safety", type=float, default=2.0,
                   help="momentum-grid density multiplier")
    p.add_argument("--zeta-lo", type=float, default=1e-2)
    p.add_argument("--zeta-hi", type=float, default=1e3)
    p.add_argument("--zeta-grid-points", type=int, default=60)
    p.add_argument("--config-file", default=None,
                   help="key=value file supplying any flag; flags override")


def _spec_from_args(args, configs) -> SweepSpec:
    return SweepSpec(
        configs=tuple(configs),
        pdark_min_exp=args.pdark_min_exp,
        pdark_max_exp=args.pdark_max_exp,
        pdark_points=args.pdark_points,
        zeta_lo=args.zeta_lo,
        zeta_hi=args.zeta_hi,
        zeta_grid_points=args.zeta_grid_points,
        eta_max=args.eta_max,
        grid=KGridSpec(safety=args.safety),
        parallelism=args.parallelism,
    )


def _cmd_bound(args) -> int:
    config = DimensionlessConfig(
        N=args.n, delta_phi=args.dphi, a=args.aspect,
        arg_alpha0=args.phase, dl_tilde=args.dl_tilde,
        dL_tilde=args.dL_tilde)
    spec = _spec_from_args(args, [config])
    return _run_sweep(spec, args.output, args.format)


def _cmd_figure(args) -> int:
    configs = [DimensionlessConfig(N=n, delta_phi=d, a=a, arg_alpha0=ph)
               for n, d, a, ph in FIGURE_CONFIGS]
    spec = _spec_from_args(args, configs)
    return _run_sweep(spec, args.output, args.format)


def _cmd_convert(args) -> int:
    setup = PhysicalSetup(l=args.l, L=args.length, tau=args.tau, k0=args.k0,
                          alpha0_sq=args.alpha0_sq, V_coh=args.v_coh,
                          arg_alpha0=args.phase, delta_l=args.delta_l,
                          delta_L=args.delta_length)
    cfg = to_dimensionless(setup)
    print(f"N = {cfg.N:.17g}")
    print(f"delta_phi = {cfg.delta_phi:.17g}")
    print(f"a = {cfg.a:.17g}")
    print(f"arg_alpha0 = {cfg.arg_alpha0:.17g}")
    print(f"dl_tilde = {cfg.dl_tilde:.17g}")
    print(f"dL_tilde = {cfg.dL_tilde:.17g}")
    print(f"ideal_click_probability = "
          f"{ideal_click_probability(setup.alpha0_sq):.17g}")
    return 0


def _cmd_selftest(args) -> int:
    from . import selftest
    return selftest.run(verbose=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clickbound",
        description="Upper bounds on single-photon click probabilities "
                    "from causality and dark counts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="one configuration over a pdark grid")
    p.add_argument("--n", type=float, required=True,
                   help="effective photon number N")
    p.add_argument("--dphi", type=float, required=True,
                   help="optical phase across the extended thickness")
    p.add_argument("--aspect", type=float, required=True,
                   help="aspect ratio a of the extended volume")
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--dl-tilde", type=float, default=1.0)
    p.add_argument("--dL-tilde", dest="dL_tilde", type=float, default=1.0)
    p.add_argument("--pdark-min-exp", type=float, default=-12.0)
    p.add_argument("--pdark-max-exp", type=float, default=-1.0)
    p.add_argument("--pdark-points", type=int, default=12)
    _add_numerics_flags(p)
    p.set_defaults(func=_cmd_bound)
    parser._command_parsers = {"bound": p}

    p = sub.add_parser("figure",
                       help="the five reference configurations")
    p.add_argument("--pdark-min-exp", type=float, default=-12.0)
    p.add_argument("--pdark-max-exp", type=float, default=-1.0)
    p.add_argument("--pdark-points", type=int, default=12)
    _add_numerics_flags(p)
    p.set_defaults(func=_cmd_figure)
    parser._command_parsers["figure"] = p

    p = sub.add_parser("convert",
                       help="physical setup -> dimensionless configuration")
    p.add_argument("--l", type=float, required=True, help="thickness")
    p.add_argument("--length", type=float, required=True,
                   help="transverse side L")
    p.add_argument("--tau", type=float, required=True,
                   help="operation time")
    p.add_argument("--k0", type=float, required=True,
                   help="mode wavenumber")
    p.add_argument("--alpha0-sq", type=float, required=True,
                   help="total photon number of the coherent state")
    p.add_argument("--v-coh", type=float, required=True,
                   help="coherence volume")
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--delta-l", type=float, default=None)
    p.add_argument("--delta-length", type=float, default=None,
                   help="transverse collar width")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("selftest",
                       help="reduced-resolution invariant checks")
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        sub = parser._command_parsers.get(args.command, parser)
        _apply_config_file(args, sub)
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ClickboundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
