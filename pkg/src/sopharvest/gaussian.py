"""Symplectic and Gaussian-state linear algebra.

Phase-space vectors are ordered ``(q_1, ..., q_n, p_1, ..., p_n)``. A covariance
matrix holds the symmetrized second moments ``<{xi_i, xi_j}>/2`` of a
zero-mean state, and a quadratic Hamiltonian is stored as the symmetric matrix
``h`` with ``H = xi^T h xi / 2``.

A linear observable ``f . xi`` is represented by its real coefficient row ``f``;
with this convention ``[f . xi, g . xi] = i f^T J g``.
"""

import numpy as np

from .errors import DimensionMismatch, NonPhysicalEigenvalue, NonPositiveDefinite

__all__ = [
    "symplectic_form",
    "is_symplectic",
    "commutator",
    "check_covariance",
    "williamson_eigenvalues",
    "gaussian_entropy",
    "transform_covariance",
    "quadratic_expectation",
]


def symplectic_form(n_modes):
    """Return the ``2n x 2n`` matrix ``J = [[0, I], [-I, 0]]``."""
    n_modes = int(n_modes)
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


def _n_modes(dim):
    if dim % 2:
        raise DimensionMismatch(f"phase-space dimension must be even, got {dim}")
    return dim // 2


def is_symplectic(s, tol=1e-10):
    """True if ``S J S^T = J`` elementwise within ``tol``."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        return False
    j = symplectic_form(_n_modes(s.shape[0]))
    return bool(np.max(np.abs(s @ j @ s.T - j)) <= tol)


def commutator(f, g):
    """Imaginary part of ``[f . xi, g . xi]``, i.e. ``f^T J g``."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise DimensionMismatch(f"coefficient rows differ in shape: {f.shape} vs {g.shape}")
    n = _n_modes(f.shape[-1])
    return float(f[:n] @ g[n:] - f[n:] @ g[:n])


def check_covariance(cov, sym_tol=1e-12):
    """Validate shape and symmetry; return the covariance as a float array."""
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise DimensionMismatch(f"covariance must be square, got shape {cov.shape}")
    _n_modes(cov.shape[0])
    asym = np.max(np.abs(cov - cov.T)) if cov.size else 0.0
    if asym > sym_tol * max(1.0, np.max(np.abs(cov))):
        raise NonPositiveDefinite(f"covariance is not symmetric (max asymmetry {asym:.3g})")
    return cov


def williamson_eigenvalues(cov, tol=1e-10):
    """Symplectic eigenvalues of a covariance matrix, ascending.

    These are the moduli of the eigenvalues of ``i J cov``. They are computed
    from the similar Hermitian matrix ``i cov^{1/2} J cov^{1/2}``, whose
    spectrum is ``{+nu_k, -nu_k}``, which keeps the result accurate for
    strongly squeezed states.

    Raises:
        NonPositiveDefinite: if ``cov`` is not positive definite or some
            eigenvalue lies below ``1/2 - tol``.
    """
    cov = check_covariance(cov)
    n = cov.shape[0] // 2
    evals, evecs = np.linalg.eigh((cov + cov.T) / 2)
    if evals[0] <= 0:
        raise NonPositiveDefinite(f"covariance is not positive definite (min eigenvalue {evals[0]:.3g})")
    root = (evecs * np.sqrt(evals)) @ evecs.T
    herm = 1j * (root @ symplectic_form(n) @ root)
    spectrum = np.linalg.eigvalsh((herm + herm.conj().T) / 2)
    nu = np.sort(np.abs(spectrum))[::2]
    if nu[0] < 0.5 - tol:
        raise NonPositiveDefinite(f"uncertainty relation violated: symplectic eigenvalue {nu[0]:.12g} < 1/2")
    return nu


def _entropy_term(nu):
    # written in m = nu - 1/2 (exact for nu <= 1) to keep precision near purity
    m = nu - 0.5
    if m <= 0.0:
        return 0.0
    return (1.0 + m) * np.log1p(m) - m * np.log(m)


def gaussian_entropy(nu, clamp_tol=1e-10, reject_tol=1e-6):
    """Von Neumann entropy (nats) of a Gaussian state with symplectic spectrum ``nu``.

    Each mode contributes ``(v + 1/2) ln(v + 1/2) - (v - 1/2) ln(v - 1/2)``.
    Values within ``clamp_tol`` below 1/2 are clamped to 1/2.
    """
    total = 0.0
    for v in np.atleast_1d(np.asarray(nu, dtype=float)):
        if v < 0.5 - reject_tol:
            raise NonPhysicalEigenvalue(f"symplectic eigenvalue {v:.12g} is below 1/2")
        if v < 0.5 + clamp_tol:
            v = 0.5
        total += _entropy_term(v)
    return float(total)


def transform_covariance(s, cov):
    """Covariance after the symplectic map ``s``: ``S cov S^T``."""
    s = np.asarray(s, dtype=float)
    cov = np.asarray(cov, dtype=float)
    if s.ndim != 2 or s.shape[1] != cov.shape[0] or cov.shape[0] != cov.shape[1]:
        raise DimensionMismatch(f"cannot apply map of shape {s.shape} to covariance of shape {cov.shape}")
    return s @ cov @ s.T


def quadratic_expectation(h, cov):
    """Expectation of ``xi^T h xi / 2`` in a zero-mean state: ``tr(h cov) / 2``.

    The symmetric part of the operator product is what the covariance stores,
    so this is exact for the unordered quadratic form.
    """
    h = np.asarray(h, dtype=float)
    cov = np.asarray(cov, dtype=float)
    if h.shape != cov.shape:
        raise DimensionMismatch(f"Hamiltonian shape {h.shape} does not match covariance shape {cov.shape}")
    return 0.5 * float(np.sum(h * cov.T))
