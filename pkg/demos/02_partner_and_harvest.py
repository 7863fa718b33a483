"""
Partner mode and the swap protocol
==================================

The mode ``A`` and its partner ``B`` share a pure two-mode state. Swapping
each into an external oscillator leaves those oscillators with the same
state, whatever they started in.
"""

import numpy as np

from sopharvest import (
    DeviceState,
    LatticeSpec,
    check_locality,
    classify_partner,
    correlators,
    divergent_window,
    entanglement_entropy,
    harvest,
    partner_window,
    standard_form,
    to_mode_pairs,
    williamson_eigenvalues,
)

np.set_printoptions(precision=5, suppress=True)

spec = LatticeSpec(3, 1.0)
corr = correlators(spec)
mode = standard_form(divergent_window(3, 1.0), corr)
pair = partner_window(mode, corr)

print("g =", pair.g, "(sqrt(7)/3 =", np.sqrt(7) / 3, ")")
print("partner windows x:", pair.b_x, " w:", pair.b_w)
print("support:", classify_partner(pair))
print("cross commutators:", check_locality(pair))

# covariance in (Q_A, P_A, Q_B, P_B) order
print(to_mode_pairs(pair.m_ab))
print("symplectic eigenvalues:", williamson_eigenvalues(pair.m_ab))

# devices start in a squeezed and a vacuum state
res = harvest(pair, DeviceState(2.0, 0.125, 0.0), DeviceState.vacuum(), spec, corr)
print("device covariance equals m_ab:", np.allclose(res.device_covariance, pair.m_ab, atol=1e-12))
print("device entropy", res.device_entropy, " S_EE(g)", entanglement_entropy(pair.g))
print("field now holds the old device states:")
print(res.field_mode_marginal)
