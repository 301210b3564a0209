"""Convergence and stability experiments over a ladder of sampling densities.

A sweep produces one record per n pairing the measured sup-error with the
modulus bounds at width 1/n and the n-invariant scaled second lattice moment.
Records serialize to CSV or JSON with a fixed column set; timings are measured
but written as zero by default so that repeated runs stay byte-identical.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .density import SymmetrizedDensity
from .errors import InputError
from .moduli import modulus, second_modulus
from .operator import OperatorConfig, stability_gap, sup_error
from .targets import FunctionSpec

__all__ = [
    "ConvergenceRecord",
    "RateFit",
    "convergence_sweep",
    "fit_loglog_slope",
    "second_moment_uniformity",
    "stability_suite",
    "records_to_csv",
    "records_to_json",
]

CSV_COLUMNS = (
    "n",
    "sup_error",
    "omega_bound",
    "omega2_bound",
    "second_moment_scaled",
    "wall_time_ms",
)

_DEFAULT_U_GRID = tuple(np.linspace(0.0, 1.0, 17, endpoint=False))


@dataclass(frozen=True)
class ConvergenceRecord:
    """One sweep row: measured error, modulus bounds at 1/n, scaled second moment."""

    n: int
    sup_error: float
    omega_bound: float
    omega2_bound: float
    second_moment_scaled: float
    wall_time_ms: float


@dataclass(frozen=True)
class RateFit:
    """Least-squares line through (log n, log sup_error)."""

    slope: float
    intercept: float
    r_squared: float


def _validate_n_list(n_list: Sequence[int]) -> list[int]:
    ns = list(n_list)
    if not ns:
        raise InputError("n_list must be nonempty")
    for n in ns:
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise InputError(f"every n must be an integer >= 1, got {n!r}")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise InputError("n_list must be strictly increasing")
    return [int(n) for n in ns]


def convergence_sweep(
    f: FunctionSpec,
    d: SymmetrizedDensity,
    cfg_template: OperatorConfig,
    n_list: Sequence[int],
    grid,
    u_grid: Sequence[float] = _DEFAULT_U_GRID,
) -> list[ConvergenceRecord]:
    """One record per n: sup-error on ``grid`` plus modulus bounds at 1/n."""
    ns = _validate_n_list(n_list)
    records = []
    for n in ns:
        start = time.perf_counter()
        cfg = replace(cfg_template, n=n)
        err = sup_error(cfg, d, f, grid)
        t = 1.0 / n
        om = modulus(f, t, t / 4.0).value
        om2 = second_modulus(f, t, t / 4.0).value
        m2 = max(d.second_lattice_moment(u, cfg.truncation_eps) for u in u_grid)
        elapsed_ms = (time.perf_counter() - start) * 1e3
        records.append(ConvergenceRecord(n, err, om, om2, m2, elapsed_ms))
    return records


def fit_loglog_slope(records: Sequence[ConvergenceRecord]) -> RateFit:
    """Fit log(sup_error) against log(n); needs >= 3 records with positive error."""
    usable = [r for r in records if r.sup_error > 0.0]
    if len(usable) < 3:
        raise InputError(
            f"rate fit needs at least 3 records with positive sup_error, got {len(usable)}"
        )
    x = np.log([r.n for r in usable])
    y = np.log([r.sup_error for r in usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return RateFit(float(slope), float(intercept), float(min(max(r2, 0.0), 1.0)))


def second_moment_uniformity(
    d: SymmetrizedDensity,
    n_list: Sequence[int],
    u_grid: Sequence[float] = _DEFAULT_U_GRID,
    eps: float = 1e-10,
) -> list[tuple[int, float]]:
    """For each n, the max over offsets of the n**2-scaled discrete second moment.

    The scaled moment depends only on the offset modulo 1, so the values are
    expected to agree across n; computing them per n makes that observable.
    """
    ns = _validate_n_list(n_list)
    out = []
    for n in ns:
        m2 = max(d.second_lattice_moment(u, eps) for u in u_grid)
        out.append((n, m2))
    return out


def stability_suite(
    d: SymmetrizedDensity,
    cfg: OperatorConfig,
    pairs: Sequence[tuple[FunctionSpec, FunctionSpec]],
    grid,
    slack: float = 1e-10,
) -> list[tuple[float, float, bool]]:
    """Gap and lattice bound per pair, with pass = (gap <= bound + slack)."""
    if not pairs:
        raise InputError("stability suite needs at least one pair")
    results = []
    for f, g in pairs:
        gap, bound = stability_gap(cfg, d, f, g, grid)
        results.append((gap, bound, gap <= bound + slack))
    return results


# -- serialization ------------------------------------------------------------


def _fmt(x: float) -> str:
    return "%.17g" % x


def records_to_csv(
    records: Sequence[ConvergenceRecord],
    fit: RateFit | None = None,
    include_timings: bool = False,
) -> str:
    """Sweep records as CSV; the rate fit rides along as a '#'-prefixed JSON footer.

    Timings are zeroed unless ``include_timings`` so identical inputs yield
    byte-identical output.
    """
    lines = [",".join(CSV_COLUMNS)]
    for r in records:
        wall = r.wall_time_ms if include_timings else 0.0
        lines.append(
            ",".join(
                [
                    str(r.n),
                    _fmt(r.sup_error),
                    _fmt(r.omega_bound),
                    _fmt(r.omega2_bound),
                    _fmt(r.second_moment_scaled),
                    _fmt(wall),
                ]
            )
        )
    if fit is not None:
        footer = {"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared}
        lines.append("# " + json.dumps(footer))
    return "\n".join(lines) + "\n"


def records_to_json(
    records: Sequence[ConvergenceRecord],
    fit: RateFit | None = None,
    include_timings: bool = False,
) -> str:
    """Sweep records as JSON with the same field names as the CSV columns."""
    payload = {
        "records": [
            {
                "n": r.n,
                "sup_error": r.sup_error,
                "omega_bound": r.omega_bound,
                "omega2_bound": r.omega2_bound,
                "second_moment_scaled": r.second_moment_scaled,
                "wall_time_ms": r.wall_time_ms if include_timings else 0.0,
            }
            for r in records
        ],
        "rate_fit": None
        if fit is None
        else {"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared},
    }
    return json.dumps(payload, indent=2) + "\n"
