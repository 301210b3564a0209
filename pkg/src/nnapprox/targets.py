"""Target functions on a symmetric interval, plus the built-in registry.

A FunctionSpec bundles a vectorized callable with the half-width of its domain
and the policy for sample points that fall outside it.  Specs compare by name,
parameters, domain, and extension, so configuration round-trips cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InputError, ParameterError

__all__ = [
    "FunctionSpec",
    "FunctionRegistryEntry",
    "builtin_functions",
    "make_function",
]

_EXTENSIONS = ("clamp", "zero", "none")


@dataclass(frozen=True)
class FunctionSpec:
    """A named target function on [-half_width, half_width]."""

    name: str
    parameters: tuple[float, ...]
    half_width: float
    extension: str = "clamp"
    fn: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False, default=None)

    def __post_init__(self) -> None:
        if not (isinstance(self.half_width, (int, float)) and self.half_width > 0.0):
            raise ParameterError(f"half_width must be positive, got {self.half_width!r}")
        if self.extension not in _EXTENSIONS:
            raise ParameterError(
                f"extension must be one of {_EXTENSIONS}, got {self.extension!r}"
            )
        if self.fn is None:
            raise ParameterError("FunctionSpec requires a callable")

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        out = np.asarray(self.fn(arr), dtype=float)
        if np.ndim(x) == 0:
            return float(out)
        return out


@dataclass(frozen=True)
class FunctionRegistryEntry:
    """Registry row: name, expected parameter count (-1 for variadic), constructor."""

    name: str
    arity: int
    constructor: Callable[..., FunctionSpec]


def _spec(name, params, half_width, extension, fn) -> FunctionSpec:
    return FunctionSpec(name, tuple(float(p) for p in params), float(half_width), extension, fn)


def _make_const(params, half_width, extension):
    c = float(params[0])
    return _spec("const", params, half_width, extension, lambda x: np.full_like(x, c))


def _make_linear(params, half_width, extension):
    return _spec("linear", params, half_width, extension, lambda x: x.copy())


def _make_poly(params, half_width, extension):
    coeffs = [float(p) for p in params]
    return _spec(
        "poly", params, half_width, extension,
        lambda x: np.polynomial.polynomial.polyval(x, coeffs),
    )


def _make_sin(params, half_width, extension):
    freq = float(params[0])
    return _spec("sin", params, half_width, extension, lambda x: np.sin(freq * x))


def _make_abs_pow(params, half_width, extension):
    gamma = float(params[0])
    if not 0.0 < gamma <= 1.0:
        raise ParameterError(f"abs_pow exponent must lie in (0, 1], got {gamma}")
    return _spec("abs_pow", params, half_width, extension, lambda x: np.abs(x) ** gamma)


def _make_runge(params, half_width, extension):
    return _spec("runge", params, half_width, extension, lambda x: 1.0 / (1.0 + 25.0 * x * x))


def _make_osc(params, half_width, extension):
    freq = float(params[0])
    return _spec("osc", params, half_width, extension, lambda x: np.sin(freq * x) * x)


def _make_pwlin(params, half_width, extension):
    seed = float(params[0])
    if seed != int(seed) or seed < 0:
        raise ParameterError(f"pwlin seed must be a nonnegative integer, got {seed}")
    rng = np.random.default_rng(int(seed))
    xs = np.linspace(-half_width, half_width, 9)
    ys = rng.uniform(-1.0, 1.0, xs.size)
    return _spec("pwlin", params, half_width, extension, lambda x: np.interp(x, xs, ys))


_BUILTINS: dict[str, tuple[int, tuple[float, ...], Callable]] = {
    # name: (arity, default parameters, constructor)
    "const": (1, (1.0,), _make_const),
    "linear": (0, (), _make_linear),
    "poly": (-1, (0.0, 1.0, -0.25), _make_poly),
    "sin": (1, (math.pi / 2.0,), _make_sin),
    "abs_pow": (1, (0.5,), _make_abs_pow),
    "runge": (0, (), _make_runge),
    "osc": (1, (8.0,), _make_osc),
    "pwlin": (1, (0.0,), _make_pwlin),
}


def builtin_functions() -> list[FunctionRegistryEntry]:
    """All built-in target constructors, each valid with its documented defaults."""
    return [
        FunctionRegistryEntry(name, arity, ctor)
        for name, (arity, _, ctor) in _BUILTINS.items()
    ]


def make_function(
    name: str,
    parameters: Sequence[float] | None = None,
    half_width: float = 1.0,
    extension: str = "clamp",
) -> FunctionSpec:
    """Construct a built-in target by name, using defaults for omitted parameters."""
    if name not in _BUILTINS:
        known = ", ".join(sorted(_BUILTINS))
        raise InputError(f"unknown function {name!r}; available: {known}")
    arity, defaults, ctor = _BUILTINS[name]
    params = tuple(defaults if parameters is None else parameters)
    if arity >= 0 and len(params) != arity:
        raise InputError(
            f"{name} expects {arity} parameter(s), got {len(params)}"
        )
    if arity == -1 and len(params) == 0:
        raise InputError(f"{name} expects at least one parameter")
    return ctor(params, half_width, extension)
