"""Command-line front end: kernel diagnostics, approximation, moduli, sweeps, stability.

Subcommands: density, approx, moduli, converge, stability.  Flags override
config-file values, which override defaults; unknown config keys are rejected.
Exit codes: 0 success, 2 validation error, 3 numerical error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields, replace

import numpy as np

from .activation import ActivationParams
from .density import SymmetrizedDensity
from .errors import InputError, NumericalError, ParameterError
from .operator import OperatorConfig, approximate_grid
from .moduli import modulus, second_modulus
from .study import (
    convergence_sweep,
    fit_loglog_slope,
    records_to_csv,
    records_to_json,
    stability_suite,
)
from .targets import make_function

__all__ = ["RunConfig", "parse_config", "run_subcommand", "main", "entry"]

SUBCOMMANDS = ("density", "approx", "moduli", "converge", "stability")
OUTPUT_DIR_ENV = "NNAPPROX_OUTPUT_DIR"

_STABILITY_PAIRS = 50


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one subcommand invocation."""

    q: float = 2.0
    theta: float = 1.0
    alpha: float = 1.0
    scale: float = 1.0
    mode: str = "sigmoid"
    n: int = 64
    n_list: tuple[int, ...] = (8, 16, 32, 64, 128, 256, 512)
    truncation_eps: float = 1e-10
    eval_mode: str = "renormalized"
    extension: str = "clamp"
    fn: str = "sin"
    fn_params: tuple[float, ...] | None = None
    half_width: float = 1.0
    grid_points: int = 1001
    w_radius: float = 6.0
    t_list: tuple[float, ...] | None = None
    out: str | None = None
    format: str = "csv"
    timed_output: bool = False

    def to_config_text(self) -> str:
        """Serialize as key=value lines; parse_config reads the same format."""
        lines = []
        for f in fields(self):
            lines.append(f"{f.name}={_encode(getattr(self, f.name))}")
        return "\n".join(lines) + "\n"


def _encode(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(_encode(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_int_tuple(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _parse_float_tuple(text: str):
    if text.strip().lower() == "none":
        return None
    return tuple(float(part) for part in text.split(",") if part.strip())


def _parse_optional_str(text: str):
    return None if text.strip().lower() == "none" else text


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_FIELD_PARSERS = {
    "q": float,
    "theta": float,
    "alpha": float,
    "scale": float,
    "mode": str,
    "n": int,
    "n_list": _parse_int_tuple,
    "truncation_eps": float,
    "eval_mode": str,
    "extension": str,
    "fn": str,
    "fn_params": _parse_float_tuple,
    "half_width": float,
    "grid_points": int,
    "w_radius": float,
    "t_list": _parse_float_tuple,
    "out": _parse_optional_str,
    "format": str,
    "timed_output": _parse_bool,
}


def _flag_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nnapprox <subcommand>", add_help=True)
    s = argparse.SUPPRESS
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--q", type=float, default=s, help="deformation base (> 0, != 1)")
    p.add_argument("--theta", type=float, default=s, help="steepness (> 0)")
    p.add_argument("--alpha", type=float, default=s, help="fractional exponent in (0, 1]")
    p.add_argument("--scale", type=float, default=s, help="auxiliary scale on theta (> 0)")
    p.add_argument("--mode", choices=("literal", "sigmoid"), default=s)
    p.add_argument("--n", type=int, default=s, help="sampling density")
    p.add_argument("--n-list", type=_parse_int_tuple, default=s, help="comma-separated n sweep")
    p.add_argument("--truncation-eps", type=float, default=s)
    p.add_argument("--eval-mode", choices=("raw", "renormalized"), default=s)
    p.add_argument("--extension", choices=("clamp", "zero", "none"), default=s)
    p.add_argument("--fn", default=s, help="target function name")
    p.add_argument("--fn-params", type=_parse_float_tuple, default=s,
                   help="comma-separated target parameters")
    p.add_argument("--a", dest="half_width", type=float, default=s, help="domain half-width")
    p.add_argument("--grid-points", type=int, default=s)
    p.add_argument("--w-radius", type=float, default=s, help="kernel sampling radius (density)")
    p.add_argument("--t-list", type=_parse_float_tuple, default=s,
                   help="comma-separated widths for the moduli sweep")
    p.add_argument("--out", default=s, help="output file path")
    p.add_argument("--format", choices=("csv", "json"), default=s)
    p.add_argument("--timed-output", action="store_true", default=s,
                   help="write measured timings into output files (breaks byte-for-byte "
                        "reproducibility)")
    return p


def _read_config_file(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InputError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            if key not in _FIELD_PARSERS:
                raise InputError(f"{path}:{lineno}: unknown config key {key!r}")
            try:
                values[key] = _FIELD_PARSERS[key](text.strip())
            except ValueError as exc:
                raise InputError(f"{path}:{lineno}: bad value for {key!r}: {exc}") from exc
    return values


def _validate(cfg: RunConfig) -> RunConfig:
    # Reuse the owning modules' validators so messages name the offending key.
    ActivationParams(cfg.q, cfg.theta, cfg.alpha, cfg.scale, cfg.mode)
    OperatorConfig(cfg.n, cfg.truncation_eps, cfg.eval_mode)
    make_function(cfg.fn, cfg.fn_params, cfg.half_width, cfg.extension)
    if cfg.grid_points < 2:
        raise ParameterError(f"grid_points must be >= 2, got {cfg.grid_points}")
    if cfg.w_radius <= 0.0:
        raise ParameterError(f"w_radius must be positive, got {cfg.w_radius}")
    if cfg.format not in ("csv", "json"):
        raise ParameterError(f"format must be csv or json, got {cfg.format!r}")
    for n in cfg.n_list:
        if n < 1:
            raise ParameterError(f"n_list entries must be >= 1, got {n}")
    if cfg.t_list is not None and any(t <= 0.0 for t in cfg.t_list):
        raise ParameterError("t_list entries must be positive")
    return cfg


def parse_config(argv, config_file: str | None = None) -> RunConfig:
    """Resolve flags over config-file values over defaults into a RunConfig."""
    ns = _flag_parser().parse_args(list(argv))
    provided = {k: v for k, v in vars(ns).items() if k != "config"}
    path = ns.config if ns.config is not None else config_file
    file_values = _read_config_file(path) if path else {}
    merged = {**file_values, **provided}
    try:
        cfg = replace(RunConfig(), **merged)
    except TypeError as exc:
        raise InputError(str(exc)) from exc
    return _validate(cfg)


# -- subcommand bodies ---------------------------------------------------------


def _fmt(x: float) -> str:
    return "%.17g" % x


def _out_path(name: str, cfg: RunConfig) -> str:
    if cfg.out is not None:
        return cfg.out
    base = os.environ.get(OUTPUT_DIR_ENV, ".")
    ext = "csv" if cfg.format == "csv" else "json"
    return os.path.join(base, f"{name}.{ext}")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _build_density(cfg: RunConfig) -> SymmetrizedDensity:
    return SymmetrizedDensity(
        ActivationParams(cfg.q, cfg.theta, cfg.alpha, cfg.scale, cfg.mode)
    )


def _run_density(cfg: RunConfig, path: str) -> str:
    d = _build_density(cfg)
    xs = np.linspace(-cfg.w_radius, cfg.w_radius, cfg.grid_points)
    ws = d.value(xs)
    moments = [d.continuous_moment(k, 1e-8) for k in (0, 1, 2)]
    if cfg.format == "csv":
        lines = ["x,w"]
        lines += [f"{_fmt(x)},{_fmt(w)}" for x, w in zip(xs, ws)]
        lines.append("")
        lines.append("order,value,error_estimate")
        lines += [
            f"{m.order},{_fmt(m.value)},{_fmt(m.quadrature_error_estimate)}"
            for m in moments
        ]
        _write(path, "\n".join(lines) + "\n")
    else:
        payload = {
            "samples": [{"x": float(x), "w": float(w)} for x, w in zip(xs, ws)],
            "moments": [
                {
                    "order": m.order,
                    "value": m.value,
                    "error_estimate": m.quadrature_error_estimate,
                }
                for m in moments
            ],
        }
        _write(path, json.dumps(payload, indent=2) + "\n")
    summary = f"density: moment order 0 = {moments[0].value:.6g}, wrote {path}"
    if cfg.mode == "literal":
        summary += (
            "  [warning: the literal kernel integrates to ~0, not 1; "
            "use --mode sigmoid for a normalized kernel]"
        )
    return summary


def _run_approx(cfg: RunConfig, path: str) -> str:
    d = _build_density(cfg)
    f = make_function(cfg.fn, cfg.fn_params, cfg.half_width, cfg.extension)
    op = OperatorConfig(cfg.n, cfg.truncation_eps, cfg.eval_mode)
    xs = np.linspace(-cfg.half_width, cfg.half_width, cfg.grid_points)
    target = f(xs)
    approx = approximate_grid(op, d, f, xs)
    err = np.abs(approx - target)
    if cfg.format == "csv":
        lines = ["x,target,operator,abs_error"]
        lines += [
            f"{_fmt(x)},{_fmt(t)},{_fmt(s)},{_fmt(e)}"
            for x, t, s, e in zip(xs, target, approx, err)
        ]
        _write(path, "\n".join(lines) + "\n")
    else:
        payload = [
            {"x": float(x), "target": float(t), "operator": float(s), "abs_error": float(e)}
            for x, t, s, e in zip(xs, target, approx, err)
        ]
        _write(path, json.dumps(payload, indent=2) + "\n")
    summary = f"approx: n={cfg.n} max |error| = {float(err.max()):.6g}, wrote {path}"
    if cfg.mode == "literal":
        summary += "  [warning: literal kernel output is not normalized]"
    return summary


def _run_moduli(cfg: RunConfig, path: str) -> str:
    f = make_function(cfg.fn, cfg.fn_params, cfg.half_width, cfg.extension)
    t_list = cfg.t_list if cfg.t_list is not None else tuple(1.0 / n for n in cfg.n_list)
    rows = []
    for t in t_list:
        om = modulus(f, t, t / 4.0)
        om2 = second_modulus(f, t, t / 4.0)
        rows.append((t, om.value, om2.value))
    if cfg.format == "csv":
        lines = ["t,modulus,second_modulus"]
        lines += [f"{_fmt(t)},{_fmt(m)},{_fmt(m2)}" for t, m, m2 in rows]
        _write(path, "\n".join(lines) + "\n")
    else:
        payload = [
            {"t": float(t), "modulus": float(m), "second_modulus": float(m2)}
            for t, m, m2 in rows
        ]
        _write(path, json.dumps(payload, indent=2) + "\n")
    return f"moduli: {len(rows)} widths for fn={cfg.fn}, wrote {path}"


def _run_converge(cfg: RunConfig, path: str) -> str:
    d = _build_density(cfg)
    f = make_function(cfg.fn, cfg.fn_params, cfg.half_width, cfg.extension)
    template = OperatorConfig(cfg.n_list[0], cfg.truncation_eps, cfg.eval_mode)
    inner = 0.8 * cfg.half_width
    grid = np.linspace(-inner, inner, cfg.grid_points)
    records = convergence_sweep(f, d, template, cfg.n_list, grid)
    try:
        fit = fit_loglog_slope(records)
    except InputError:
        fit = None
    if cfg.format == "csv":
        _write(path, records_to_csv(records, fit, include_timings=cfg.timed_output))
    else:
        _write(path, records_to_json(records, fit, include_timings=cfg.timed_output))
    if fit is None:
        return f"converge: {len(records)} rows, no rate fit (errors at floor), wrote {path}"
    return (
        f"converge: fitted slope = {fit.slope:.4f}, r2 = {fit.r_squared:.4f}, wrote {path}"
    )


def _run_stability(cfg: RunConfig, path: str) -> str:
    d = _build_density(cfg)
    op = OperatorConfig(cfg.n, cfg.truncation_eps, cfg.eval_mode)
    pairs = [
        (
            make_function("pwlin", (float(2 * i),), cfg.half_width, cfg.extension),
            make_function("pwlin", (float(2 * i + 1),), cfg.half_width, cfg.extension),
        )
        for i in range(_STABILITY_PAIRS)
    ]
    grid = np.linspace(-cfg.half_width, cfg.half_width, cfg.grid_points)
    results = stability_suite(d, op, pairs, grid)
    if cfg.format == "csv":
        lines = ["pair,gap,bound,pass"]
        lines += [
            f"{i},{_fmt(gap)},{_fmt(bound)},{str(ok).lower()}"
            for i, (gap, bound, ok) in enumerate(results)
        ]
        _write(path, "\n".join(lines) + "\n")
    else:
        payload = [
            {"pair": i, "gap": gap, "bound": bound, "pass": ok}
            for i, (gap, bound, ok) in enumerate(results)
        ]
        _write(path, json.dumps(payload, indent=2) + "\n")
    passed = sum(1 for _, _, ok in results if ok)
    return f"stability: {passed}/{len(results)} pass, wrote {path}"


_RUNNERS = {
    "density": _run_density,
    "approx": _run_approx,
    "moduli": _run_moduli,
    "converge": _run_converge,
    "stability": _run_stability,
}


def run_subcommand(name: str, cfg: RunConfig) -> int:
    """Execute one subcommand: write its output file, print a one-line summary."""
    if name not in _RUNNERS:
        raise InputError(f"unknown subcommand {name!r}; expected one of {SUBCOMMANDS}")
    path = _out_path(name, cfg)
    summary = _RUNNERS[name](cfg, path)
    print(summary)
    return 0


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args or args[0] in ("-h", "--help"):
        print(f"usage: nnapprox {{{'|'.join(SUBCOMMANDS)}}} [flags]; "
              f"see 'nnapprox <subcommand> --help'")
        return 0
    command, rest = args[0], args[1:]
    if command not in SUBCOMMANDS:
        print(f"error: unknown subcommand {command!r}; expected one of "
              f"{', '.join(SUBCOMMANDS)}", file=sys.stderr)
        return 2
    try:
        cfg = parse_config(rest)
        return run_subcommand(command, cfg)
    except SystemExit as exc:  # argparse --help or flag error
        code = exc.code if isinstance(exc.code, int) else 2
        return code
    except (ParameterError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
