"""Walkthrough: output stability under target perturbations, plus norm estimators.

Run as: python demos/stability_and_norms.py
"""

import numpy as np

from nnapprox import (
    ActivationParams,
    FunctionSpec,
    OperatorConfig,
    SymmetrizedDensity,
    holder_constant,
    lp_norm,
    make_function,
    stability_gap,
    stability_suite,
    sup_norm,
)

d = SymmetrizedDensity(ActivationParams(2.0, 1.0, 1.0, mode="sigmoid"))
cfg = OperatorConfig(32)
grid = np.linspace(-1.0, 1.0, 101)

# Because the renormalized weights are nonnegative and sum to one, the
# operator cannot widen a gap between two targets: the largest output
# difference is bounded by the largest sample difference (a contraction).
pairs = [
    (make_function("pwlin", (float(2 * i),)), make_function("pwlin", (float(2 * i + 1),)))
    for i in range(10)
]
print("random piecewise-linear pairs: gap vs lattice bound")
for i, (gap, bound, ok) in enumerate(stability_suite(d, cfg, pairs, grid)):
    print(f"  pair {i}: gap = {gap:.5f}  bound = {bound:.5f}  gap <= bound: {ok}")

# Shifting a target by a constant moves every output by exactly that constant.
f = make_function("sin")
g = FunctionSpec("shifted", (0.375,), 1.0, "clamp", fn=lambda x: np.sin(np.pi / 2 * x) + 0.375)
gap, bound = stability_gap(cfg, d, f, g, grid)
print(f"\nconstant shift 0.375: measured gap = {gap:.12f}")

# Norm and smoothness estimators used throughout the studies.
print(f"\nL2 norm of x on [-1, 1]:       {lp_norm(make_function('linear'), 2.0):.8f}"
      f"  (exact {np.sqrt(2.0 / 3.0):.8f})")
print(f"L1 norm of sin(pi x/2):        {lp_norm(f, 1.0):.8f}  (exact {4 / np.pi:.8f})")
print(f"sup norm of sin(pi x/2):       {sup_norm(f, 1e-3):.8f}")
rough = make_function("abs_pow", (0.5,))
print(f"Holder 1/2 constant of |x|^.5: {holder_constant(rough, 0.5, 0.001):.8f}  (exact 1)")
