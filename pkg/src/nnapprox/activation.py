"""q-deformed, steepness-parametrized sigmoid activations with a fractional exponent.

Two evaluation modes are provided:

* ``literal``: an even bump-style profile ``1 / (1 + q**(scale*theta*|x|**alpha))``
  that decays to 0 in both directions.
* ``sigmoid``: the signed variant ``1 / (1 + q**(-scale*theta*sign(x)*|x|**alpha))``,
  monotone nondecreasing from 0 to 1.

Bases 0 < q < 1 are mapped internally to 1/q with the exponent flipped so that
both modes keep the same orientation for every accepted q.  All exponentiation
goes through ``exp(t * ln q)`` rather than ``q**t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, ParameterError

__all__ = ["ActivationParams", "activation_value"]

_MODES = ("literal", "sigmoid")

# Open-interval clamp: one ulp inside (0, 1).
_LO = np.nextafter(0.0, 1.0)
_HI = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class ActivationParams:
    """Parameter tuple for the fractional activation profile.

    q is the deformation base (positive, not 1), theta the steepness,
    alpha the fractional exponent in (0, 1], and scale an auxiliary
    positive factor multiplying theta.
    """

    q: float
    theta: float
    alpha: float
    scale: float = 1.0
    mode: str = "sigmoid"

    def __post_init__(self) -> None:
        for name in ("q", "theta", "alpha", "scale"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ParameterError(f"{name} must be a finite real, got {v!r}")
        if self.q <= 0.0 or self.q == 1.0:
            raise ParameterError(f"q must be positive and != 1, got {self.q}")
        if self.theta <= 0.0:
            raise ParameterError(f"theta must be positive, got {self.theta}")
        if not 0.0 < self.alpha <= 1.0:
            raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.scale <= 0.0:
            raise ParameterError(f"scale must be positive, got {self.scale}")
        if self.mode not in _MODES:
            raise ParameterError(f"mode must be one of {_MODES}, got {self.mode!r}")

    @property
    def rate(self) -> float:
        """Effective exponent multiplier scale * theta * |ln q|."""
        return self.scale * self.theta * abs(math.log(self.q))


def _stable_expit(t: np.ndarray) -> np.ndarray:
    """1 / (1 + exp(-t)) evaluated without overflow on either side."""
    out = np.empty_like(t)
    pos = t >= 0.0
    with np.errstate(over="ignore", under="ignore"):
        out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
        e = np.exp(t[~pos])
        out[~pos] = e / (1.0 + e)
    return out


def _expit_diff(hi: np.ndarray, lo: np.ndarray) -> np.ndarray:
    """expit(hi) - expit(lo) for hi >= lo, avoiding cancellation.

    When both arguments sit deep in the same saturated branch the naive
    difference of two near-equal values loses all precision; rewriting via
    expm1 keeps the relative error at a few ulp.
    """
    out = np.empty_like(hi)
    with np.errstate(over="ignore", under="ignore"):
        both_pos = lo >= 0.0
        h, l = hi[both_pos], lo[both_pos]
        el = np.exp(-l)
        out[both_pos] = (-el * np.expm1(l - h)) / ((1.0 + np.exp(-h)) * (1.0 + el))

        both_neg = hi <= 0.0
        h, l = hi[both_neg], lo[both_neg]
        el = np.exp(l)
        out[both_neg] = (el * np.expm1(h - l)) / ((1.0 + np.exp(h)) * (1.0 + el))

        mixed = ~(both_pos | both_neg)
        out[mixed] = _stable_expit(hi[mixed]) - _stable_expit(lo[mixed])
    return out


def _exponent_argument(params: ActivationParams, x: np.ndarray) -> np.ndarray:
    """Signed argument fed to the logistic: rate * sign(x) * |x|**alpha."""
    with np.errstate(over="ignore", under="ignore"):
        mag = np.abs(x) ** params.alpha
        return params.rate * np.sign(x) * mag


def activation_value(params: ActivationParams, x):
    """Evaluate the activation at ``x`` (scalar or array), strictly inside (0, 1).

    Raises InputError if any entry of ``x`` is not finite.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InputError("activation input must be finite")
    if params.mode == "sigmoid":
        t = _exponent_argument(params, arr)
    else:
        with np.errstate(over="ignore", under="ignore"):
            t = -params.rate * np.abs(arr) ** params.alpha
    out = np.clip(_stable_expit(t), _LO, _HI)
    if np.ndim(x) == 0:
        return float(out)
    return out
