"""Grid estimators for moduli of continuity, norms, and Hölder constants.

All sups are taken over a uniform grid and are therefore lower estimates of
the true values; each estimate reports the grid step actually used so that
consumers can budget for the slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .quadrature import adaptive_simpson
from .targets import FunctionSpec

__all__ = [
    "ModulusEstimate",
    "modulus",
    "second_modulus",
    "lp_norm",
    "sup_norm",
    "holder_constant",
]


@dataclass(frozen=True)
class ModulusEstimate:
    """A modulus value at width t, with the grid step it was measured on."""

    t: float
    value: float
    grid_step: float


def _grid(f: FunctionSpec, grid_step: float) -> tuple[np.ndarray, float]:
    a = f.half_width
    m = max(1, math.ceil(2.0 * a / grid_step))
    xs = np.linspace(-a, a, m + 1)
    return xs, 2.0 * a / m


def _window_steps(t: float, h: float) -> int:
    # Pairs within w grid steps satisfy |x - y| <= t; the 1e-9 slack absorbs
    # the rounding in h itself.
    return int(math.floor(t / h * (1.0 + 1e-9)))


def _check_widths(t: float, grid_step: float) -> None:
    if not (isinstance(t, (int, float)) and t > 0.0):
        raise InputError(f"width t must be positive, got {t!r}")
    if not 0.0 < grid_step <= t:
        raise InputError(f"grid_step must lie in (0, t], got {grid_step!r} for t={t!r}")


def modulus(f: FunctionSpec, t: float, grid_step: float) -> ModulusEstimate:
    """Largest |f(x) - f(y)| over grid pairs with |x - y| <= t.

    Scanned with sliding windows over the sorted grid, not all pairs.
    """
    _check_widths(t, grid_step)
    xs, h = _grid(f, grid_step)
    vals = f(xs)
    w = min(_window_steps(t, h), xs.size - 1)
    if w < 1:
        return ModulusEstimate(float(t), 0.0, h)
    windows = np.lib.stride_tricks.sliding_window_view(vals, w + 1)
    spread = windows.max(axis=1) - windows.min(axis=1)
    return ModulusEstimate(float(t), float(spread.max()), h)


def second_modulus(f: FunctionSpec, t: float, grid_step: float) -> ModulusEstimate:
    """Largest |f(x+h) - 2 f(x) + f(x-h)| over the grid for steps h <= t,
    with x +- h kept inside the domain."""
    _check_widths(t, grid_step)
    xs, h = _grid(f, grid_step)
    vals = f(xs)
    w = min(_window_steps(t, h), (xs.size - 1) // 2)
    best = 0.0
    for m in range(1, w + 1):
        d2 = np.abs(vals[2 * m:] - 2.0 * vals[m:-m] + vals[:-2 * m])
        if d2.size:
            best = max(best, float(d2.max()))
    return ModulusEstimate(float(t), best, h)


def lp_norm(f: FunctionSpec, p: float, tol: float = 1e-10) -> float:
    """(integral of |f|**p over the domain) ** (1/p) by adaptive quadrature."""
    if not p >= 1.0:
        raise InputError(f"p must be >= 1, got {p!r}")
    a = f.half_width
    value, _ = adaptive_simpson(lambda x: np.abs(f(x)) ** p, -a, a, tol)
    return max(value, 0.0) ** (1.0 / p)


def sup_norm(f: FunctionSpec, grid_step: float) -> float:
    """Max of |f| over the uniform grid."""
    if not grid_step > 0.0:
        raise InputError(f"grid_step must be positive, got {grid_step!r}")
    xs, _ = _grid(f, grid_step)
    return float(np.max(np.abs(f(xs))))


def holder_constant(f: FunctionSpec, gamma: float, grid_step: float) -> float:
    """Largest |f(x) - f(y)| / |x - y|**gamma over grid pairs at least one
    step apart."""
    if not 0.0 < gamma <= 1.0:
        raise InputError(f"gamma must lie in (0, 1], got {gamma!r}")
    if not grid_step > 0.0:
        raise InputError(f"grid_step must be positive, got {grid_step!r}")
    xs, _ = _grid(f, grid_step)
    vals = f(xs)
    best = 0.0
    chunk = 256
    for i in range(0, xs.size - 1, chunk):
        j = slice(i, min(i + chunk, xs.size - 1))
        dx = xs[None, i + 1:] - xs[j, None]
        upper = dx > 0.0
        dv = np.abs(vals[None, i + 1:] - vals[j, None])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(upper, dv / np.where(upper, dx, 1.0) ** gamma, 0.0)
        best = max(best, float(ratio.max()))
    return best
