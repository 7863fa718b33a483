"""
Energy cost of the three-site swap
==================================

Closed-form cost coefficients next to the generic symplectic computation,
and the growth of the cost as the mode sharpens.
"""

import numpy as np

from sopharvest import DeviceState
from sopharvest.energy import (
    build_n3,
    closed_form_coefficients,
    cost_coefficients,
    delta_e_swap,
    delta_e_swap_oracle,
    divergent_coefficients,
    oracle_coefficients,
)

model = build_n3(eta=1.0, delta=1.0)
print(f"C = {model.c:.6f}  g = {model.g:.6f}  Omega = {model.omega:.12f}")

closed = closed_form_coefficients(model)
oracle = oracle_coefficients(model)
for name in closed:
    print(f"{name:8s} closed={closed[name]: .10f}  oracle={oracle[name]: .10f}")

costs = cost_coefficients(model)
print("adopted from oracle:", [r["coefficient"] for r in costs.report])
print("dE (vacuum devices) =", delta_e_swap(model), " oracle:", delta_e_swap_oracle(model.spec, model))

squeezed = DeviceState(2.0, 0.125, 0.0)
print("dE (squeezed A')   =", delta_e_swap(model, squeezed), " oracle:",
      delta_e_swap_oracle(model.spec, model, squeezed))

# kappa stays below the vacuum energy while the device terms grow like 1/delta
print("\n   delta        dE        kappa")
for delta in np.logspace(-1, -5, 5):
    m = build_n3(1.0, delta)
    c = cost_coefficients(m)
    print(f"{delta:8.0e} {delta_e_swap(m, costs=c):12.4f} {c.kappa:10.6f}")

fit = divergent_coefficients(1.0)
names = ("kappa", "gamma_a", "mu_a", "gamma_b", "mu_b")
for order in (-2, -1):
    row = "  ".join(f"{n}={v:+.8f}" for n, v in zip(names, fit[order]))
    print(f"order {order}: {row}")
