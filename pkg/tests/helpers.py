"""Random generators shared by the test modules."""

import numpy as np
from scipy.linalg import expm

from sopharvest import WindowFunctions, symplectic_form


def random_symplectic(rng, n_modes, scale=0.5):
    """``exp(J H)`` for a random symmetric ``H`` is symplectic."""
    a = rng.normal(scale=scale, size=(2 * n_modes, 2 * n_modes))
    return expm(symplectic_form(n_modes) @ (a + a.T) / 2)


def random_window(rng, n_sites, mixing=True):
    """Random canonical window; with ``mixing=False`` only ``x`` and ``w`` are set."""
    while True:
        x, w = rng.normal(size=n_sites), rng.normal(size=n_sites)
        y = rng.normal(size=n_sites) if mixing else np.zeros(n_sites)
        z = rng.normal(size=n_sites) if mixing else np.zeros(n_sites)
        r = x @ w - z @ y
        if abs(r) > 0.1:
            break
    # divide the q row by the pairing so that sum(x w - z y) = 1
    return WindowFunctions(x / r, y / r, z, w)
