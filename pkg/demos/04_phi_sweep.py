"""
Leading divergences against the coupling
========================================

Sweeps ``eta = tan(phi)`` and writes the leading Laurent coefficients to a
CSV file for plotting.
"""

import sys

import numpy as np

from sopharvest.energy import SWEEP_COLUMNS, phi_sweep

n_points = int(sys.argv[1]) if len(sys.argv) > 1 else 99
values, errors = phi_sweep(n_points)

table = np.column_stack([values[c] for c in SWEEP_COLUMNS])
np.savetxt("phi_sweep.csv", table, delimiter=",", header=",".join(SWEEP_COLUMNS), comments="", fmt="%.9e")
print("wrote phi_sweep.csv")

for name in SWEEP_COLUMNS[1:]:
    print(f"{name:11s} min={values[name].min(): .3e} max={values[name].max(): .3e} "
          f"noise<={errors[name].max():.1e}")
gap = np.max(np.abs(values["mu_a_m1"] - values["mu_b_m1"]) / values["mu_b_m1"])
print("max relative gap mu_a vs mu_b:", gap)
