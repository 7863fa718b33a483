"""Single local modes of the chain built from window functions.

A window ``(x, y, z, w)`` defines ``q_A = sum(x q + y p)`` and
``p_A = sum(z q + w p)``. Bringing the vacuum covariance of the mode to the
isotropic form ``diag(nu, nu)`` with ``nu = sqrt(1 + g^2) / 2`` fixes the
mixedness parameter ``g``.

Standardized windows are stored with the factor ``sqrt(nu)`` pulled out, i.e.
``Q_A = sqrt(nu) * sum(X q + Y p)``; ``StandardMode.q_row`` returns the full
coefficients.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotCanonical, UncertaintyViolation
from .gaussian import commutator
from .lattice import correlation_matrices, frequencies

__all__ = [
    "WindowFunctions",
    "StandardMode",
    "single_site_window",
    "divergent_window",
    "validate_window",
    "mode_covariance",
    "g_factor",
    "standard_form",
    "momentum_representation",
    "PURE_MODE_TOL",
]

CANONICAL_TOL = 1e-10
# below this g the local mode counts as pure
PURE_MODE_TOL = 1e-10


def _vec(v):
    return np.array(v, dtype=float).reshape(-1)


@dataclass(frozen=True, eq=False)
class WindowFunctions:
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        for name in "xyzw":
            object.__setattr__(self, name, _vec(getattr(self, name)))
        sizes = {len(self.x), len(self.y), len(self.z), len(self.w)}
        if len(sizes) != 1:
            raise DimensionMismatch(f"window vectors differ in length: {sorted(sizes)}")

    @classmethod
    def no_mixing(cls, x, w):
        x = _vec(x)
        zeros = np.zeros_like(x)
        return cls(x, zeros, zeros, w)

    @property
    def n_sites(self):
        return len(self.x)

    @property
    def q_row(self):
        return np.concatenate([self.x, self.y])

    @property
    def p_row(self):
        return np.concatenate([self.z, self.w])

    @property
    def mixes(self):
        return bool(np.any(self.y) or np.any(self.z))


@dataclass(frozen=True, eq=False)
class StandardMode:
    """Mode in standard form, windows with ``sqrt(nu)`` factored out."""

    big_x: np.ndarray
    big_y: np.ndarray
    big_z: np.ndarray
    big_w: np.ndarray
    g: float
    theta: float = 0.0
    theta_prime: float = 0.0
    sigma: float = 0.0

    @property
    def n_sites(self):
        return len(self.big_x)

    @property
    def nu(self):
        """Diagonal entry ``sqrt(1 + g^2) / 2`` of the standard covariance."""
        return float(np.sqrt(1.0 + self.g**2) / 2.0)

    @property
    def prefactor(self):
        return float(np.sqrt(self.nu))

    @property
    def q_row(self):
        return self.prefactor * np.concatenate([self.big_x, self.big_y])

    @property
    def p_row(self):
        return self.prefactor * np.concatenate([self.big_z, self.big_w])

    @property
    def symplectic_params(self):
        return (self.theta, self.theta_prime, self.sigma)

    def as_window(self):
        """Full standardized coefficients as a plain window."""
        n = self.n_sites
        q, p = self.q_row, self.p_row
        return WindowFunctions(q[:n], q[n:], p[:n], p[n:])


def single_site_window(n_sites, site=0):
    e = np.zeros(n_sites)
    e[site] = 1.0
    return WindowFunctions.no_mixing(e, e)


def divergent_window(n_sites, delta):
    """``q_A = q_0`` and ``p_A = p_0 + p_1 / delta``; its ``g`` grows like ``1/delta``."""
    if delta == 0:
        raise ValueError("delta must be non-zero")
    x = np.zeros(n_sites)
    w = np.zeros(n_sites)
    x[0] = 1.0
    w[0] = 1.0
    w[1] = 1.0 / delta
    return WindowFunctions.no_mixing(x, w)


def validate_window(win, tol=CANONICAL_TOL):
    """Raise ``NotCanonical`` unless ``sum(x w - z y) == 1`` within ``tol``."""
    residual = commutator(win.q_row, win.p_row) - 1.0
    if abs(residual) > tol:
        raise NotCanonical(abs(residual))


def _bilinear(f, g, dq, dp):
    n = len(dq)
    return float(f[:n] @ dq @ g[:n] + f[n:] @ dp @ g[n:])


def mode_covariance(win, corr):
    """Vacuum covariance ``[[<q_A^2>, Re<q_A p_A>], [Re<q_A p_A>, <p_A^2>]]``.

    The vacuum has no symmetrized ``q``-``p`` correlation, so only the two
    correlators enter.
    """
    if win.n_sites != corr.n_sites:
        raise DimensionMismatch(f"window has {win.n_sites} sites, correlators have {corr.n_sites}")
    dq, dp = correlation_matrices(corr)
    q, p = win.q_row, win.p_row
    qq = _bilinear(q, q, dq, dp)
    pp = _bilinear(p, p, dq, dp)
    qp = _bilinear(q, p, dq, dp)
    return np.array([[qq, qp], [qp, pp]])


def _g_from_radicand(radicand):
    if radicand < -1e-9:
        raise UncertaintyViolation(f"4<q^2><p^2> - 1 = {radicand:.3g} is negative")
    return float(np.sqrt(max(radicand, 0.0)))


def g_factor(win, corr):
    """``g = sqrt(4 <q_A^2> <p_A^2> - 1)`` for windows without ``q``-``p`` mixing."""
    if win.mixes:
        raise ValueError("g_factor needs y = z = 0; use standard_form for mixing windows")
    cov = mode_covariance(win, corr)
    return _g_from_radicand(4.0 * cov[0, 0] * cov[1, 1] - 1.0)


def _diagonalizing_angle(a, b, c):
    # rotation q' = cos q + sin p removes the cross moment when tan(2t) = 2c / (a - b)
    # a cross moment at rounding level means the covariance is already diagonal
    if abs(c) <= 1e-13 * (abs(a) + abs(b)):
        return 0.0
    if a == b:
        return np.pi / 4
    return float(0.5 * np.arctan(2.0 * c / (a - b)))


def standard_form(win, corr):
    """Rotate, then squeeze the mode so its covariance becomes ``diag(nu, nu)``.

    The outer rotation angle ``theta`` is fixed to zero. Without ``q``-``p``
    mixing this reduces to ``Q_A = C q_A``, ``P_A = p_A / C`` with
    ``C = (<p_A^2> / <q_A^2>)^(1/4)``.
    """
    cov = mode_covariance(win, corr)
    a, c, b = cov[0, 0], cov[0, 1], cov[1, 1]
    tp = _diagonalizing_angle(a, b, c)
    cs, sn = np.cos(tp), np.sin(tp)
    q_rot = cs * win.q_row + sn * win.p_row
    p_rot = -sn * win.q_row + cs * win.p_row
    a_rot = cs * cs * a + 2 * cs * sn * c + sn * sn * b
    b_rot = sn * sn * a - 2 * cs * sn * c + cs * cs * b
    if a_rot <= 0 or b_rot <= 0:
        raise UncertaintyViolation("mode covariance is not positive definite")
    sigma = 0.25 * np.log(b_rot / a_rot)
    g = _g_from_radicand(4.0 * a_rot * b_rot - 1.0)
    scale = 1.0 / np.sqrt(np.sqrt(1.0 + g * g) / 2.0)
    q_std = np.exp(sigma) * q_rot * scale
    p_std = np.exp(-sigma) * p_rot * scale
    n = win.n_sites
    return StandardMode(
        big_x=q_std[:n], big_y=q_std[n:], big_z=p_std[:n], big_w=p_std[n:],
        g=g, theta=0.0, theta_prime=float(tp), sigma=float(sigma),
    )


def momentum_representation(mode, spec):
    """Plane-wave coefficients ``(Q_A(k), P_A(k))`` of a standardized mode.

    With ``Q_A = sqrt(nu) sum_k (Q(k)^* a_k + Q(k) a_k^dag)`` and likewise for
    ``P_A``. For a standardized mode ``sum |Q|^2 = sum |P|^2 = 1`` and
    ``sum P^* Q = -i / sqrt(1 + g^2)``.
    """
    n = spec.n_sites
    if mode.n_sites != n:
        raise DimensionMismatch(f"mode has {mode.n_sites} sites, lattice has {n}")
    omega = frequencies(spec)
    sites = np.arange(n)
    u = np.exp(2j * np.pi * (np.outer(np.arange(n), sites) % n) / n) / np.sqrt(n)
    q_conj = u @ mode.big_x / np.sqrt(2 * omega) - 1j * (u @ mode.big_y) * np.sqrt(omega / 2)
    p_conj = u @ mode.big_z / np.sqrt(2 * omega) - 1j * (u @ mode.big_w) * np.sqrt(omega / 2)
    return np.conj(q_conj), np.conj(p_conj)
