"""Purification partner of a standardized local mode.

For a mode ``A`` with mixedness ``g`` in the field vacuum, the partner ``B`` is
the unique (up to local symplectic gauge) mode such that the two-mode state of
``(A, B)`` is pure. Its windows follow linearly from ``A``'s standardized
windows and the vacuum correlators.

Two-mode covariances use the library ordering ``(Q_A, Q_B, P_A, P_B)``;
:func:`to_mode_pairs` reorders to ``(Q_A, P_A, Q_B, P_B)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoPartner
from .gaussian import commutator
from .lattice import correlation_matrices
from .modes import PURE_MODE_TOL, StandardMode

__all__ = [
    "PartnerPair",
    "SOP",
    "SSP",
    "partner_window",
    "check_locality",
    "two_mode_covariance",
    "standard_pair_covariance",
    "to_mode_pairs",
    "entanglement_entropy",
    "classify_partner",
]

SOP = "SOP"
SSP = "SSP"

# (Q_A, Q_B, P_A, P_B) -> (Q_A, P_A, Q_B, P_B)
_PAIR_ORDER = [0, 2, 1, 3]


@dataclass(frozen=True, eq=False)
class PartnerPair:
    mode_a: StandardMode
    b_x: np.ndarray
    b_y: np.ndarray
    b_z: np.ndarray
    b_w: np.ndarray
    g: float
    m_ab: np.ndarray

    @property
    def mode_b(self):
        """Partner as a ``StandardMode`` sharing ``A``'s prefactor."""
        return StandardMode(self.b_x, self.b_y, self.b_z, self.b_w, g=self.g)

    @property
    def rows(self):
        """Full coefficient rows ``(Q_A, P_A, Q_B, P_B)`` on the field phase space."""
        b = self.mode_b
        return self.mode_a.q_row, self.mode_a.p_row, b.q_row, b.p_row


def standard_pair_covariance(g):
    """Pure two-mode covariance of a mode with mixedness ``g`` and its partner."""
    nu = np.sqrt(1.0 + g * g) / 2.0
    return np.array([
        [nu, g / 2, 0.0, 0.0],
        [g / 2, nu, 0.0, 0.0],
        [0.0, 0.0, nu, -g / 2],
        [0.0, 0.0, -g / 2, nu],
    ])


def to_mode_pairs(cov4):
    cov4 = np.asarray(cov4)
    return cov4[np.ix_(_PAIR_ORDER, _PAIR_ORDER)]


def _covariance_of_rows(rows, corr):
    dq, dp = correlation_matrices(corr)
    n = corr.n_sites
    vac = np.zeros((2 * n, 2 * n))
    vac[:n, :n] = dq
    vac[n:, n:] = dp
    r = np.vstack(rows)
    return r @ vac @ r.T


def two_mode_covariance(pair, corr):
    """Vacuum covariance of ``(Q_A, Q_B, P_A, P_B)`` recomputed from the windows."""
    qa, pa, qb, pb = pair.rows
    if len(qa) != 2 * corr.n_sites:
        raise DimensionMismatch(f"pair lives on {len(qa) // 2} sites, correlators on {corr.n_sites}")
    return _covariance_of_rows([qa, qb, pa, pb], corr)


def partner_window(mode_a, corr):
    """Partner windows of a standardized mode.

    ``X_B = (s X_A - 2 Dp W_A) / g``, ``Y_B = (s Y_A + 2 Dq Z_A) / g``,
    ``Z_B = -(s Z_A + 2 Dp Y_A) / g``, ``W_B = -(s W_A - 2 Dq X_A) / g`` with
    ``s = sqrt(1 + g^2)`` and ``Dq``, ``Dp`` the circulant correlator matrices.

    Raises:
        NoPartner: if ``g <= 1e-10``.
    """
    g = mode_a.g
    if g <= PURE_MODE_TOL:
        raise NoPartner(f"mode is pure (g = {g:.3g}); it has no partner")
    if mode_a.n_sites != corr.n_sites:
        raise DimensionMismatch(f"mode has {mode_a.n_sites} sites, correlators have {corr.n_sites}")
    dq, dp = correlation_matrices(corr)
    s = np.sqrt(1.0 + g * g)
    xa, ya, za, wa = mode_a.big_x, mode_a.big_y, mode_a.big_z, mode_a.big_w
    b_x = (s * xa - 2.0 * dp @ wa) / g
    b_y = (s * ya + 2.0 * dq @ za) / g
    b_z = -(s * za + 2.0 * dp @ ya) / g
    b_w = -(s * wa - 2.0 * dq @ xa) / g
    pair = PartnerPair(mode_a, b_x, b_y, b_z, b_w, g, m_ab=np.zeros((4, 4)))
    object.__setattr__(pair, "m_ab", two_mode_covariance(pair, corr))
    return pair


def check_locality(pair):
    """Magnitudes of ``[Q_A, Q_B]``, ``[Q_A, P_B]``, ``[P_A, Q_B]``, ``[P_A, P_B]``."""
    qa, pa, qb, pb = pair.rows
    return np.array([
        abs(commutator(qa, qb)),
        abs(commutator(qa, pb)),
        abs(commutator(pa, qb)),
        abs(commutator(pa, pb)),
    ])


def entanglement_entropy(g):
    """Entanglement entropy (nats) between a mode with mixedness ``g`` and its partner.

    Evaluates ``s ln((s + 1) / g) + ln(g / 2)``, ``s = sqrt(1 + g^2)``, in a
    rearranged form free of cancellation at small ``g``; ``g = 0`` gives 0.
    """
    g = float(g)
    if g < 0:
        raise ValueError(f"g must be non-negative, got {g}")
    if g == 0.0:
        return 0.0
    s = np.sqrt(1.0 + g * g)
    s_minus_1 = g * g / (s + 1.0)
    return float(s_minus_1 * (np.log(s + 1.0) - np.log(g)) + np.log1p(s_minus_1 / 2.0))


def _support(vectors, tol):
    return np.any(np.abs(np.vstack(vectors)) > tol, axis=0)


def classify_partner(pair, support_tol=1e-12):
    """``SSP`` if the windows of ``A`` and ``B`` have disjoint site support, else ``SOP``."""
    if support_tol <= 0:
        raise ValueError("support_tol must be positive")
    a = pair.mode_a
    sup_a = _support([a.big_x, a.big_y, a.big_z, a.big_w], support_tol)
    sup_b = _support([pair.b_x, pair.b_y, pair.b_z, pair.b_w], support_tol)
    return SOP if np.any(sup_a & sup_b) else SSP
