"""
Vacuum correlations and local modes
===================================

A periodic chain of oscillators in its ground state, and a single local mode
read off from it.
"""

import numpy as np

from sopharvest import (
    LatticeSpec,
    correlators,
    divergent_window,
    frequencies,
    g_factor,
    momentum_representation,
    single_site_window,
    standard_form,
)

# three sites, unit coupling: frequencies 1, 2, 2
spec = LatticeSpec(3, 1.0)
print("omega_k:", frequencies(spec))

corr = correlators(spec)
print("dq(d):", corr.dq)  # 1/3, 1/12, 1/12
print("dp(d):", corr.dp)  # 5/6, -1/6, -1/6

# one site alone is already mixed: g = 1/3
mode = standard_form(single_site_window(3), corr)
print("single site g:", mode.g)

# q_A = q_1, p_A = p_1 + p_2 / delta mixes without bound as delta shrinks
for delta in (1.0, 0.1, 0.01, 0.001):
    print(f"delta={delta:g}  g={g_factor(divergent_window(3, delta), corr):.4f}")

# plane-wave coefficients of the standardized mode
qk, pk = momentum_representation(mode, spec)
print("sum |Q(k)|^2 =", np.sum(np.abs(qk) ** 2))
print("sum P*Q      =", np.vdot(pk, qk), " expected", -1j / np.sqrt(1 + mode.g**2))
