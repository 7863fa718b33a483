"""Periodic harmonic chain: the lattice-discretized massive scalar field.

Sites are indexed ``0 .. N-1`` with ``q_N == q_0``. Frequencies and lengths are
measured in units of the field mass, so the chain is fixed by the site count
``N`` and the hopping strength ``eta = (m * spacing)^-2``.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "LatticeSpec",
    "VacuumCorrelators",
    "dispersion",
    "frequencies",
    "correlators",
    "correlation_matrices",
    "vacuum_covariance",
    "lattice_hamiltonian",
]


@dataclass(frozen=True)
class LatticeSpec:
    n_sites: int
    eta: float

    def __post_init__(self):
        if int(self.n_sites) != self.n_sites or self.n_sites < 2:
            raise ValueError(f"n_sites must be an integer >= 2, got {self.n_sites!r}")
        if not np.isfinite(self.eta) or self.eta < 0:
            raise ValueError(f"eta must be finite and non-negative, got {self.eta!r}")
        object.__setattr__(self, "n_sites", int(self.n_sites))
        object.__setattr__(self, "eta", float(self.eta))


@dataclass(frozen=True, eq=False)
class VacuumCorrelators:
    """Vacuum two-point functions ``<q_n q_m>`` and ``<p_n p_m>`` indexed by ``(n - m) mod N``."""

    dq: np.ndarray
    dp: np.ndarray

    @property
    def n_sites(self):
        return len(self.dq)

    def q(self, d):
        return self.dq[np.mod(d, self.n_sites)]

    def p(self, d):
        return self.dp[np.mod(d, self.n_sites)]


def dispersion(k, spec):
    """Dimensionless frequency ``omega_k = sqrt(1 + 2 eta (1 - cos(2 pi k / N)))``."""
    if not 0 <= k < spec.n_sites:
        raise ValueError(f"momentum index must lie in [0, {spec.n_sites}), got {k}")
    return float(np.sqrt(1.0 + 2.0 * spec.eta * (1.0 - np.cos(2.0 * np.pi * k / spec.n_sites))))


def frequencies(spec):
    k = np.arange(spec.n_sites)
    return np.sqrt(1.0 + 2.0 * spec.eta * (1.0 - np.cos(2.0 * np.pi * k / spec.n_sites)))


def correlators(spec, chunk=512):
    """Vacuum correlators by direct summation over momenta.

    Only separations ``0 .. N//2`` are summed; the rest are mirrored, so
    ``Delta(d) == Delta(N - d)`` holds exactly.
    """
    n = spec.n_sites
    omega = frequencies(spec)
    k = np.arange(n)
    half = np.arange(n // 2 + 1)
    dq_half = np.empty(len(half))
    dp_half = np.empty(len(half))
    for start in range(0, len(half), chunk):
        d = half[start:start + chunk]
        # integer phase index keeps the cosine argument exact for large N
        phase = np.cos(2.0 * np.pi * (np.outer(d, k) % n) / n)
        dq_half[start:start + chunk] = phase @ (0.5 / omega) / n
        dp_half[start:start + chunk] = phase @ (0.5 * omega) / n
    idx = np.minimum(np.arange(n), n - np.arange(n))
    return VacuumCorrelators(dq=dq_half[idx], dp=dp_half[idx])


def correlation_matrices(corr):
    """Circulant ``N x N`` matrices ``<q_n q_m>`` and ``<p_n p_m>``."""
    n = corr.n_sites
    sep = np.subtract.outer(np.arange(n), np.arange(n)) % n
    return corr.dq[sep], corr.dp[sep]


def vacuum_covariance(spec, corr=None):
    corr = correlators(spec) if corr is None else corr
    dq, dp = correlation_matrices(corr)
    n = spec.n_sites
    cov = np.zeros((2 * n, 2 * n))
    cov[:n, :n] = dq
    cov[n:, n:] = dp
    return cov


def lattice_hamiltonian(spec):
    """Matrix ``h`` of the chain Hamiltonian ``H = xi^T h xi / 2`` (no normal ordering).

    The q-block carries ``1 + 2 eta`` on the diagonal and ``-eta`` between
    cyclic neighbours; the p-block is the identity.
    """
    n = spec.n_sites
    hq = (1.0 + 2.0 * spec.eta) * np.eye(n)
    for i in range(n):
        j = (i + 1) % n
        hq[i, j] -= spec.eta
        hq[j, i] -= spec.eta
    h = np.zeros((2 * n, 2 * n))
    h[:n, :n] = hq
    h[n:, n:] = np.eye(n)
    return h
