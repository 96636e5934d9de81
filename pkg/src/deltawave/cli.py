"""Command-line interface.

Exit codes: 0 success, 2 user/config error, 3 solver error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import re
import sys
from typing import Sequence

from . import __version__, analytic, experiments, waveguide
from .errors import ConfigError, SimulatorError
from .model import config_from_dict, validate
from .steady import steady_state

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _line_of(text: str, message: str) -> int | None:
    """Best-effort line number of the key a config error message refers to."""
    keys = re.findall(r"[A-Za-z_][A-Za-z0-9_]*", message)
    for key in keys:
        m = re.search(rf'"{re.escape(key)}"\s*:', text)
        if m:
            return text.count("\n", 0, m.start()) + 1
    return None


def _config_error(path: str, text: str, message: str) -> CliError:
    line = _line_of(text, message)
    loc = f"{path}:{line}" if line else path
    return CliError(f"{loc}: {message}", EXIT_USAGE)


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_USAGE) from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}",
                       EXIT_USAGE) from None


def load_config(path: str):
    obj, text = load_json(path)
    try:
        params, drives = config_from_dict(obj)
    except ConfigError as exc:
        raise _config_error(path, text, str(exc)) from None
    report = validate(params, drives)
    if not report.ok:
        raise _config_error(path, text, "; ".join(report.violations))
    return params, drives, report


def _sig(x: float, digits: int = 4) -> str:
    return f"{x:.{digits}g}"


def cmd_steady(args) -> int:
    if not args.config:
        raise CliError("steady: --config is required", EXIT_USAGE)
    params, drives, _ = load_config(args.config)
    warn = validate(params, drives, analytic=args.method != "numeric").warnings
    for w in warn:
        print(f"warning: {w}", file=sys.stderr)
    try:
        rho = steady_state(params, drives)
    except SimulatorError as exc:
        raise CliError(f"solver error: {type(exc).__name__}: {exc}", EXIT_SOLVER) from None

    amps = waveguide.total_field(params, drives, rho.rho21)
    r11, r22, r33 = rho.populations
    report = {
        "populations": [r11, r22, r33],
        "rho21": {"re": rho.rho21.real, "im": rho.rho21.imag,
                  "abs": abs(rho.rho21), "phase_rad": cmath.phase(rho.rho21)},
        "ig_na": abs(amps.i_generated) / waveguide.NANOAMP,
        "j_na": amps.j_scale / waveguide.NANOAMP,
    }
    print(f"rho11 = {_sig(r11)}")
    print(f"rho22 = {_sig(r22)}")
    print(f"rho33 = {_sig(r33)}")
    print(f"|rho21| = {_sig(abs(rho.rho21))}, arg(rho21) = {_sig(cmath.phase(rho.rho21))} rad")
    print(f"|I_g| = {_sig(report['ig_na'])} nA")
    if amps.t is not None:
        t = amps.t
        report["it_na"] = abs(amps.i_total_right) / waveguide.NANOAMP
        report["t"] = {"re": t.real, "im": t.imag}
        report["t2"] = abs(t) ** 2
        print(f"|I_t| = {_sig(report['it_na'])} nA")
        print(f"t = {_sig(t.real)} {'+' if t.imag >= 0 else '-'} {_sig(abs(t.imag))}i, "
              f"|t|^2 = {_sig(report['t2'])}")

    if args.method in ("analytic", "both"):
        ana = _analytic_report(params, drives)
        report["analytic"] = ana
        for k, v in ana.items():
            print(f"[analytic] {k} = {v if isinstance(v, str) else _sig(v)}")

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(report, fh, indent=2)
                fh.write("\n")
        except OSError as exc:
            raise CliError(f"cannot write {args.out}: {exc.strerror}", EXIT_IO) from None
    return EXIT_OK


def _analytic_report(params, drives) -> dict:
    out: dict = {}
    if not drives.resonant:
        if drives.detuning_31 == 0 and not drives.probe_on:
            out["abs_rho21"] = abs(analytic.coherence_general(params, drives))
        else:
            out["note"] = "closed forms need detuning_31 = 0 (and resonance with a probe)"
        return out
    base = drives.without_probe()
    s = analytic.resonant_summary(params, base)
    out.update(a_norm=s.a_norm, rho11=s.rho11, rho22=s.rho22, rho33=s.rho33,
               abs_rho21=abs(s.rho21),
               ig_na=waveguide.j_scale(params) * abs(s.rho21) / waveguide.NANOAMP)
    if drives.probe_on:
        inter = analytic.interference_intensity(params, drives)
        rho_p = analytic.probe_coherence(params, drives)
        out.update(alpha=inter.alpha, theta_rad=inter.theta,
                   it_na=waveguide.j_scale(params) * drives.rabi_21.mag / params.gamma_pop_21
                   * inter.factor / waveguide.NANOAMP,
                   t2=abs(waveguide.transmission(params, drives.rabi_21.value, rho_p)) ** 2)
    return out


def _ensure_dir(path: str) -> None:
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create output directory {path}: {exc.strerror}", EXIT_IO) from None
    if not os.access(path, os.W_OK):
        raise CliError(f"output directory {path} is not writable", EXIT_IO)


def _write_result(result, csv_path: str) -> None:
    try:
        result.write(csv_path)
    except OSError as exc:
        raise CliError(f"cannot write {csv_path}: {exc.strerror}", EXIT_IO) from None


def cmd_figure(args) -> int:
    if args.fig_id not in experiments.FIGURES:
        raise CliError(f"unknown figure {args.fig_id!r}; choose from "
                       f"{', '.join(experiments.FIGURES)}", EXIT_USAGE)
    out_dir = args.out or "."
    _ensure_dir(out_dir)
    result = experiments.figure(args.fig_id, workers=args.threads)
    _write_result(result, os.path.join(out_dir, f"{args.fig_id}.csv"))
    print(f"figure {args.fig_id}: {len(result)} points -> "
          f"{os.path.join(out_dir, args.fig_id + '.csv')}")
    for k, v in result.metadata["highlights"].items():
        print(f"  {k} = {v if v is None else _sig(v)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.config:
        raise CliError("sweep: --config is required", EXIT_USAGE)
    obj, text = load_json(args.config)
    if args.method and isinstance(obj, dict):
        obj = dict(obj, method=args.method)
    try:
        spec = experiments.SweepSpec.from_dict(obj)
    except ConfigError as exc:
        raise _config_error(args.config, text, str(exc)) from None
    out = args.out or "sweep.csv"
    parent = os.path.dirname(out)
    if parent:
        _ensure_dir(parent)
    result = experiments.run_sweep(spec, workers=args.threads)
    _write_result(result, out)
    failed = len(result.errors)
    print(f"sweep: {len(result)} points, {failed} failed -> {out}")
    if failed == len(result):
        print("all points failed; first error: " + result.errors[0], file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_validate(args) -> int:
    if not args.config:
        raise CliError("validate: --config is required", EXIT_USAGE)
    params, drives, _ = load_config(args.config)
    report = validate(params, drives, analytic=True)
    for w in report.warnings:
        print(f"warning: {w}")
    print("ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltawave", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config or sweep spec")
    common.add_argument("--out", metavar="PATH", help="output file or directory")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker processes for sweeps (0 = one per CPU)")
    common.add_argument("--method", choices=experiments.METHODS, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("steady", parents=[common], help="steady state of one configuration")
    fig = sub.add_parser("figure", parents=[common], help="write a figure dataset")
    fig.add_argument("fig_id", help=", ".join(experiments.FIGURES))
    sub.add_parser("sweep", parents=[common], help="run a sweep spec")
    sub.add_parser("validate", parents=[common], help="check a configuration")
    return parser


_COMMANDS = {"steady": cmd_steady, "figure": cmd_figure, "sweep": cmd_sweep,
             "validate": cmd_validate}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "steady" and args.method is None:
        args.method = "numeric"
    if args.threads < 0:
        print("error: --threads must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimulatorError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
