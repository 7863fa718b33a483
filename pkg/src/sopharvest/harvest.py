"""Swap protocol that moves a mode/partner pair onto two external oscillators.

The field (``N`` sites) is extended by two device oscillators ``A'`` and
``B'``; the extended phase space is ordered
``(q_0 .. q_{N-1}, q_A', q_B', p_0 .. p_{N-1}, p_A', p_B')``.

Each swap ``exp[i theta (Q p' - P q')]`` acts on linear observables as
``xi -> S xi`` with ``S = exp(-theta J K)`` where ``K`` is the (symmetric) matrix
of the generator. On the plane spanned by the mode and the device the
generator ``L = -J K`` obeys ``L^3 = -Omega^2 L`` with
``Omega^2 = [Q, P] / i``, so the flow has the closed form

    S(theta) = I + sin(Omega theta) / Omega L + (1 - cos(Omega theta)) / Omega^2 L^2.

At ``theta = pi/2`` and ``Omega = 1`` this maps ``Q -> q'``, ``q' -> -Q``,
``P -> p'``, ``p' -> -P``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotCanonical, UncertaintyViolation
from .gaussian import commutator, gaussian_entropy, symplectic_form, transform_covariance, williamson_eigenvalues
from .lattice import correlators, vacuum_covariance

__all__ = [
    "DeviceState",
    "ExtendedSystem",
    "HarvestResult",
    "rotation_map",
    "swap_symplectic",
    "harvest",
]

DEVICE_A = "A'"
DEVICE_B = "B'"


@dataclass(frozen=True)
class DeviceState:
    """Zero-mean Gaussian state of one device oscillator."""

    q2: float = 0.5
    p2: float = 0.5
    qp: float = 0.0

    def __post_init__(self):
        if self.q2 <= 0 or self.p2 <= 0:
            raise UncertaintyViolation(f"device variances must be positive, got q2={self.q2}, p2={self.p2}")
        if self.q2 * self.p2 - self.qp**2 < 0.25 - 1e-10:
            raise UncertaintyViolation(
                f"device state violates the uncertainty relation: q2*p2 - qp^2 = {self.q2 * self.p2 - self.qp**2:.6g}"
            )

    @classmethod
    def vacuum(cls):
        return cls(0.5, 0.5, 0.0)

    @property
    def covariance(self):
        return np.array([[self.q2, self.qp], [self.qp, self.p2]])


@dataclass(frozen=True)
class ExtendedSystem:
    """Field sites followed by the two devices."""

    n_sites: int

    @property
    def n_modes(self):
        return self.n_sites + 2

    @property
    def dim(self):
        return 2 * self.n_modes

    def device_index(self, device):
        if device in (DEVICE_A, "A", 0):
            return self.n_sites
        if device in (DEVICE_B, "B", 1):
            return self.n_sites + 1
        raise ValueError(f"unknown device {device!r}; use {DEVICE_A!r} or {DEVICE_B!r}")

    def embed(self, row):
        """Lift a field coefficient row (length ``2N``) to the extended space."""
        row = np.asarray(row, dtype=float)
        n = self.n_sites
        if row.shape != (2 * n,):
            raise DimensionMismatch(f"expected a field row of length {2 * n}, got shape {row.shape}")
        out = np.zeros(self.dim)
        out[:n] = row[:n]
        out[self.n_modes:self.n_modes + n] = row[n:]
        return out

    def device_rows(self, device):
        i = self.device_index(device)
        q = np.zeros(self.dim)
        p = np.zeros(self.dim)
        q[i] = 1.0
        p[self.n_modes + i] = 1.0
        return q, p

    def initial_covariance(self, field_cov, dev_a, dev_b):
        n = self.n_sites
        field_cov = np.asarray(field_cov, dtype=float)
        if field_cov.shape != (2 * n, 2 * n):
            raise DimensionMismatch(f"field covariance must be {2 * n}x{2 * n}, got {field_cov.shape}")
        idx = np.r_[0:n, self.n_modes:self.n_modes + n]
        cov = np.zeros((self.dim, self.dim))
        cov[np.ix_(idx, idx)] = field_cov
        for dev, state in ((DEVICE_A, dev_a), (DEVICE_B, dev_b)):
            i = self.device_index(dev)
            j = [i, self.n_modes + i]
            cov[np.ix_(j, j)] = state.covariance
        return cov

    def device_marginal_indices(self):
        a, b = self.device_index(DEVICE_A), self.device_index(DEVICE_B)
        m = self.n_modes
        return [a, b, m + a, m + b]


def rotation_map(q_row, p_row, device_q, device_p, theta=np.pi / 2):
    """Symplectic flow of ``exp[i theta (Q p' - P q')]`` in closed form.

    ``q_row``/``p_row`` are the coefficient rows of ``Q``/``P`` and
    ``device_q``/``device_p`` those of ``q'``/``p'``, all on the same phase
    space. The rotation frequency ``Omega = sqrt([Q, P] / i)`` equals 1 for a
    canonical pair.
    """
    q_row, p_row = np.asarray(q_row, float), np.asarray(p_row, float)
    dim = len(q_row)
    j = symplectic_form(dim // 2)
    k = (np.outer(q_row, device_p) + np.outer(device_p, q_row)
         - np.outer(p_row, device_q) - np.outer(device_q, p_row))
    gen = -j @ k
    omega_sq = commutator(q_row, p_row)
    if omega_sq <= 0:
        raise NotCanonical(1.0 - omega_sq, f"[Q, P]/i = {omega_sq:.3g} must be positive for a rotation")
    omega = np.sqrt(omega_sq)
    return (np.eye(dim) + np.sin(omega * theta) / omega * gen
            + (1.0 - np.cos(omega * theta)) / omega_sq * gen @ gen)


def swap_symplectic(q_row, p_row, device, system, theta=np.pi / 2, tol=1e-9):
    """Symplectic matrix of the swap between a canonical mode and a device.

    ``q_row``/``p_row`` live on the extended phase space of ``system`` and
    must vanish on both device coordinates.

    Raises:
        NotCanonical: if ``[Q, P] != i`` or the mode touches a device.
    """
    q_row, p_row = np.asarray(q_row, float), np.asarray(p_row, float)
    if q_row.shape != (system.dim,) or p_row.shape != (system.dim,):
        raise DimensionMismatch(f"mode rows must have length {system.dim}")
    residual = abs(commutator(q_row, p_row) - 1.0)
    if residual > tol:
        raise NotCanonical(residual)
    for dev in (DEVICE_A, DEVICE_B):
        dq, dp = system.device_rows(dev)
        overlap = max(abs(q_row @ dq), abs(q_row @ dp), abs(p_row @ dq), abs(p_row @ dp))
        if overlap > 0:
            raise NotCanonical(overlap, f"mode acts on device {dev} (overlap {overlap:.3g})")
    dq, dp = system.device_rows(device)
    return rotation_map(q_row, p_row, dq, dp, theta)


@dataclass(frozen=True, eq=False)
class HarvestResult:
    device_covariance: np.ndarray
    full_covariance: np.ndarray
    initial_covariance: np.ndarray
    field_mode_marginal: np.ndarray
    symplectic: np.ndarray

    @property
    def device_entropy(self):
        """Entanglement entropy between ``A'`` and ``B'`` (entropy of the ``A'`` marginal)."""
        single = self.device_covariance[np.ix_([0, 2], [0, 2])]
        return gaussian_entropy(williamson_eigenvalues(single))

    def spectrum_check(self):
        """Largest change of any symplectic eigenvalue across the protocol."""
        before = williamson_eigenvalues(self.initial_covariance)
        after = williamson_eigenvalues(self.full_covariance)
        return float(np.max(np.abs(before - after)))


def harvest(pair, dev_a, dev_b, spec, corr=None, order="AB"):
    """Swap ``A -> A'`` and ``B -> B'`` on the vacuum-plus-devices state.

    Returns the post-swap covariance of ``(q_A', q_B', p_A', p_B')``, which for
    any device input equals the pair's ``m_ab``, together with the full
    post-swap covariance and the ``(Q_A, Q_B, P_A, P_B)`` marginal of the field,
    which now carries the devices' initial states.
    """
    if order not in ("AB", "BA"):
        raise ValueError(f"order must be 'AB' or 'BA', got {order!r}")
    corr = correlators(spec) if corr is None else corr
    system = ExtendedSystem(spec.n_sites)
    qa, pa, qb, pb = (system.embed(r) for r in pair.rows)
    s_a = swap_symplectic(qa, pa, DEVICE_A, system)
    s_b = swap_symplectic(qb, pb, DEVICE_B, system)
    # order is the time order; applying S_A first means S = S_B S_A
    s = s_b @ s_a if order == "AB" else s_a @ s_b
    cov0 = system.initial_covariance(vacuum_covariance(spec, corr), dev_a, dev_b)
    cov1 = transform_covariance(s, cov0)
    dev_idx = system.device_marginal_indices()
    rows = np.vstack([qa, qb, pa, pb])
    return HarvestResult(
        device_covariance=cov1[np.ix_(dev_idx, dev_idx)],
        full_covariance=cov1,
        initial_covariance=cov0,
        field_mode_marginal=rows @ cov1 @ rows.T,
        symplectic=s,
    )
