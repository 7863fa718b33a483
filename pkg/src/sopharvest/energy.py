"""Energy cost of harvesting from a three-site chain.

The local mode is ``q_A = q_1``, ``p_A = p_1 + p_2 / delta`` on a periodic
chain of three oscillators. After both swaps the energy of the chain is

    <H> = alpha_p Dp(0) + beta_p Dp(1) + alpha_q Dq(0) + beta_q Dq(1)
          + gamma_A' <p_A'^2> + mu_A' <q_A'^2> + gamma_B' <p_B'^2> + mu_B' <q_B'^2>,

where ``Dq``, ``Dp`` are the vacuum correlators and the bracketed device
moments refer to the devices' initial states. The first line is ``kappa``.

Two independent routes give the eight coefficients:

* closed forms in the swap parameters ``C``, ``Omega``, ``d_j``, ``s_j``
  (:func:`closed_form_coefficients`);
* the generic symplectic machinery of :mod:`sopharvest.harvest` applied to
  the lattice Hamiltonian (:func:`oracle_coefficients`).

:func:`cost_coefficients` compares them and records every disagreement.

Site labels in names follow the physics convention (sites 1, 2, 3); arrays are
zero-based. All Hamiltonians are unordered quadratic forms, so the vacuum
constant cancels in energy differences.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateMode
from .gaussian import is_symplectic, quadratic_expectation, transform_covariance
from .harvest import DEVICE_A, DEVICE_B, DeviceState, ExtendedSystem, swap_symplectic
from .laurent import laurent_extract
from .lattice import LatticeSpec, correlators, lattice_hamiltonian, vacuum_covariance
from .modes import divergent_window, standard_form
from .partner import partner_window

__all__ = [
    "N3Model",
    "CostBreakdown",
    "COEFFICIENTS",
    "KNOWN_CLOSED_FORM_ERRORS",
    "build_n3",
    "n3_heisenberg_map",
    "check_heisenberg_map",
    "closed_form_coefficients",
    "oracle_coefficients",
    "discrepancy_report",
    "cost_coefficients",
    "delta_e_swap",
    "delta_e_swap_oracle",
    "divergent_coefficients",
    "phi_sweep",
    "SWEEP_COLUMNS",
]

COEFFICIENTS = ("alpha_p", "beta_p", "alpha_q", "beta_q", "gamma_a", "mu_a", "gamma_b", "mu_b")

# Closed forms known to disagree with the symplectic computation. The
# transcribed alpha_q carries extra terms (among them a stray -2 delta inside
# the bracket) that grow like 1/delta^2; the oracle value is used instead.
KNOWN_CLOSED_FORM_ERRORS = frozenset({"alpha_q"})

SWEEP_COLUMNS = ("phi", "kappa_m2", "kappa_m1", "gamma_a_m1", "mu_a_m1", "gamma_b_m1", "mu_b_m1")

N_SITES = 3

# extended-space indices for N = 3
_Q, _P = [0, 1, 2], [5, 6, 7]
_QA, _QB, _PA, _PB = 3, 4, 8, 9


@dataclass(frozen=True, eq=False)
class N3Model:
    """Three-site model at coupling ``eta`` and window parameter ``delta``.

    Window components ``x_a1``, ``w_a1``, ``w_a2``, ``x_b``, ``w_b`` carry the
    ``sqrt(nu)`` prefactor factored out, matching :class:`StandardMode`.
    The swap of ``B`` is generated by the full coefficients
    ``prefactor * x_b`` and ``prefactor * w_b``; ``omega``, ``d`` and ``s``
    are defined from those, so ``omega == 1`` up to rounding.
    """

    eta: float
    delta: float
    dq0: float
    dq1: float
    dp0: float
    dp1: float
    c: float
    g: float
    x_a1: float
    w_a1: float
    w_a2: float
    x_b: np.ndarray
    w_b: np.ndarray
    omega: float
    d: np.ndarray
    d_b: float
    s: np.ndarray
    s_b: float

    @property
    def nu(self):
        return float(np.sqrt(1.0 + self.g**2) / 2.0)

    @property
    def prefactor(self):
        return float(np.sqrt(self.nu))

    @property
    def full_x_b(self):
        return self.prefactor * self.x_b

    @property
    def full_w_b(self):
        return self.prefactor * self.w_b

    @property
    def spec(self):
        return LatticeSpec(N_SITES, self.eta)

    @property
    def vacuum_energy(self):
        """Unordered vacuum energy ``(omega_0 + 2 omega_1) / 2``."""
        return 0.5 * (1.0 + 2.0 * np.sqrt(1.0 + 3.0 * self.eta))


def build_n3(eta, delta):
    """Evaluate every closed-form ingredient of the three-site model."""
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    eta, delta = float(eta), float(delta)
    w0 = 1.0
    w1 = np.sqrt(1.0 + 3.0 * eta)  # 1 + 2 eta (1 - cos(2 pi / 3))
    dq0 = (1.0 / w0 + 2.0 / w1) / 6.0
    dp0 = (w0 + 2.0 * w1) / 6.0
    dq1 = (1.0 / w0 - 1.0 / w1) / 6.0
    dp1 = (w0 - w1) / 6.0

    p_a2 = dp0 * (1.0 + 1.0 / delta**2) + 2.0 / delta * dp1
    if p_a2 <= 0 or dq0 <= 0:
        raise DegenerateMode(f"<p_A^2> = {p_a2:.3g}, <q_A^2> = {dq0:.3g}; both must be positive")
    c = (p_a2 / dq0) ** 0.25
    g = float(np.sqrt(max(4.0 * dq0 * p_a2 - 1.0, 0.0)))
    if g == 0.0:
        raise DegenerateMode("local mode is pure (g = 0)")
    root = np.sqrt(1.0 + g * g)
    inv_pref = (root / 2.0) ** -0.5

    x_a1 = inv_pref * c
    w_a1 = inv_pref / c
    w_a2 = inv_pref / (delta * c)
    x_b = np.array([
        root / g * x_a1 - 2.0 / g * (dp0 * w_a1 + dp1 * w_a2),
        -2.0 / g * (dp1 * w_a1 + dp0 * w_a2),
        -2.0 / g * (dp1 * w_a1 + dp1 * w_a2),
    ])
    w_b = np.array([
        -root / g * w_a1 + 2.0 / g * dq0 * x_a1,
        -root / g * w_a2 + 2.0 / g * dq1 * x_a1,
        2.0 / g * dq1 * x_a1,
    ])

    pref2 = root / 2.0
    omega = float(np.sqrt(pref2 * (x_b @ w_b)))
    half = np.pi / 2.0 * omega
    bend = (1.0 - np.cos(half)) / omega**2
    d_b = float(np.sin(half) / omega)
    d = -bend * np.sqrt(pref2) * x_b
    s = -bend * np.sqrt(pref2) * w_b
    return N3Model(
        eta=eta, delta=delta, dq0=dq0, dq1=dq1, dp0=dp0, dp1=dp1, c=float(c), g=g,
        x_a1=float(x_a1), w_a1=float(w_a1), w_a2=float(w_a2), x_b=x_b, w_b=w_b,
        omega=omega, d=d, d_b=d_b, s=s, s_b=d_b,
    )


def n3_heisenberg_map(model):
    """Closed-form Heisenberg map of both swaps on ``(q_1..q_3, q_A', q_B', p_1..p_3, p_A', p_B')``.

    Row ``i`` expresses ``U_BB'^dag U_AA'^dag xi_i U_AA' U_BB'`` in the
    initial variables.
    """
    return _aa_map(model) @ _bb_map(model)


def _aa_map(model):
    c, delta = model.c, model.delta
    qa, pa = _QA, _PA
    q, p = _Q, _P
    s_aa = np.eye(10)
    s_aa[q[0]] = 0.0
    s_aa[q[0], qa] = 1.0 / c
    s_aa[q[1], q[0]] = -1.0 / delta
    s_aa[q[1], qa] = 1.0 / (c * delta)
    s_aa[qa] = 0.0
    s_aa[qa, q[0]] = -c
    s_aa[p[0]] = 0.0
    s_aa[p[0], p[1]] = -1.0 / delta
    s_aa[p[0], pa] = c
    s_aa[pa] = 0.0
    s_aa[pa, p[0]] = -1.0 / c
    s_aa[pa, p[1]] = -1.0 / (c * delta)
    return s_aa


def _bb_map(model):
    q, p, qb, pb = _Q, _P, _QB, _PB
    xb, wb = model.full_x_b, model.full_w_b
    half = np.pi / 2.0 * model.omega
    s_bb = np.eye(10)
    for j in range(3):
        s_bb[q[j], qb] += wb[j] * model.d_b
        s_bb[q[j], q] += wb[j] * model.d
        s_bb[p[j], pb] += xb[j] * model.s_b
        s_bb[p[j], p] += xb[j] * model.s
    s_bb[qb] = 0.0
    s_bb[qb, qb] = np.cos(half)
    s_bb[qb, q] = -np.sin(half) / model.omega * xb
    s_bb[pb] = 0.0
    s_bb[pb, pb] = np.cos(half)
    s_bb[pb, p] = -np.sin(half) / model.omega * wb
    return s_bb


def closed_form_coefficients(model):
    """The eight cost coefficients from their closed forms."""
    X1, X2, X3 = model.full_x_b
    W1, W2, W3 = model.full_w_b
    d1, d2, d3 = model.d
    s1, s2, s3 = model.s
    e, D, C = model.eta, model.delta, model.c
    S2 = s1 * s1 + s2 * s2 + s3 * s3
    D2 = d1 * d1 + d2 * d2 + d3 * d3

    alpha_p = (X2**2 * (D * D + 1) * S2 + 2 * X2 * s2 * (D * D + 1)
               + D * D * (X3 * (X3 * S2 + 2 * s3) + 2) + 1) / (2 * D * D)
    beta_p = (X2**2 * (D * D + 1) * (s1 * (s2 + s3) + s2 * s3) + X2 * (D * D + 1) * (s1 + s3)
              + X3 * D * D * (X3 * s3 * (s1 + s2) + X3 * s1 * s2 + s1 + s2)) / D**2
    alpha_q = (W1**2 * (2 * e + 1) * D2 + 2 * W1 * d1 * (2 * e + 1)
               - 2 * W1 * D * (W2 * D2 + d2)
               + 2 * W1 * e * d1**2 * D * (W3 - 2 * W2)
               + 2 * W1 * e * D * d2**2 * (W3 - 2 * W2)
               + 2 * W1 * e * D * d3**2 * (W3 - 2 * W2)
               + 2 * W1 * e * D * (-2 * d2 + d3) + (2 * e + 1) - d2 * D * W2
               + D * W2**2 * (2 * e + 1) * D * D2 - 2 * D + d1 * D * W2 * D
               + D * W2 * e * (D * (W3 * D2 - 2 * d2 + d3) + 2 * d1)
               + D * D * W3**2 * (2 * e + 1) * D2 + 2 * D * W3 * d1 * e
               + 2 * W3 * D * D * (-d2 * e + 2 * d3 * e + d3) + 4 * e * D * D + 2 * D * D) / (2 * D * D)
    beta_q = (W1**2 * (2 * e + 1) * (d1 * (d2 + d3) + d2 * d3) - W1 * d1 * (e + 1) * D
              - 2 * W1 * W2 * d2 * (2 * e + 1) * D * (d1 + d3)
              + W1 * d2 * e * (D * (2 * W3 * (d1 + d3) + 1) + 2) + W1 * d2
              - 2 * W1 * d3 * e * (2 * W2 * d1 * D - W3 * d1 * D + D - 1)
              - 2 * W1 * d3 * W2 * d1 * D - W1 * d3 * (D - 1)
              + D * W2**2 * (2 * e + 1) * D * (d1 * (d2 + d3) + d2 * d3)
              - e * W2 * D * D * d1 * (2 * W3 * (d2 + d3) - 1)
              - e * W2 * D * D * (2 * W3 * d2 * d3 + d2 - 2 * d3)
              - 2 * e * W2 * D * (d2 + d3)
              + d1 * W2 * D * D - W2 * D * d2 + W2 * D * d3 * (D - 1)
              + W3**2 * D * (2 * e + 1) * D * (d3 * (d1 + d2) + d1 * d2)
              + W3 * D * e * (D * (d1 + 2 * d2 - d3) + d2 + d3)
              + W3 * D * D * (d1 + d2) - e * D * (D + 1) - D) / D**2
    gamma_a = C * C / 2
    mu_a = (D * D + 2 * e * ((D - 1) * D + 1) + 1) / (2 * C * C * D * D)
    gamma_b = model.s_b**2 / (2 * D * D) * (D * D * (X2**2 + X3**2) + X2**2)
    mu_b = model.d_b**2 / (2 * D * D) * (
        W1**2 * (2 * e + 1) - 2 * W1 * D * (2 * W2 * e + W2 - W3 * e)
        + 2 * D * D * e * (W2**2 - W2 * W3 + W3**2) + D * D * (W2**2 + W3**2))
    return dict(zip(COEFFICIENTS, map(float, (alpha_p, beta_p, alpha_q, beta_q, gamma_a, mu_a, gamma_b, mu_b))))


def _oracle_map(model, theta=np.pi / 2):
    # generic route: local mode -> standard form -> partner -> swap maps
    spec = model.spec
    corr = correlators(spec)
    pair = partner_window(standard_form(divergent_window(N_SITES, model.delta), corr), corr)
    system = ExtendedSystem(N_SITES)
    qa, pa, qb, pb = (system.embed(r) for r in pair.rows)
    s_a = swap_symplectic(qa, pa, DEVICE_A, system, theta=theta)
    s_b = swap_symplectic(qb, pb, DEVICE_B, system, theta=theta)
    return s_a @ s_b, system, corr


def _extended_hamiltonian(spec, system):
    n = spec.n_sites
    idx = np.r_[0:n, system.n_modes:system.n_modes + n]
    h = np.zeros((system.dim, system.dim))
    h[np.ix_(idx, idx)] = lattice_hamiltonian(spec)
    return h


def oracle_coefficients(model):
    """The eight coefficients read off ``S^T h S`` from the generic swap maps."""
    s, system, _ = _oracle_map(model)
    h = s.T @ _extended_hamiltonian(model.spec, system) @ s
    m = system.n_modes
    field_q = [0, 1, 2]
    field_p = [m, m + 1, m + 2]
    off = ~np.eye(3, dtype=bool)
    hq = h[np.ix_(field_q, field_q)]
    hp = h[np.ix_(field_p, field_p)]
    a, b = system.device_index(DEVICE_A), system.device_index(DEVICE_B)
    return {
        "alpha_p": 0.5 * float(np.trace(hp)),
        "beta_p": 0.5 * float(hp[off].sum()),
        "alpha_q": 0.5 * float(np.trace(hq)),
        "beta_q": 0.5 * float(hq[off].sum()),
        "gamma_a": 0.5 * float(h[m + a, m + a]),
        "mu_a": 0.5 * float(h[a, a]),
        "gamma_b": 0.5 * float(h[m + b, m + b]),
        "mu_b": 0.5 * float(h[b, b]),
    }


def _differs(closed, oracle, rtol):
    return abs(closed - oracle) > rtol * max(abs(closed), abs(oracle), 1e-300)


def discrepancy_report(model, rtol=1e-8, closed=None, oracle=None):
    """Coefficients whose closed form and oracle differ beyond ``rtol`` (relative)."""
    closed = closed_form_coefficients(model) if closed is None else closed
    oracle = oracle_coefficients(model) if oracle is None else oracle
    return [
        {
            "coefficient": name,
            "eta": model.eta,
            "delta": model.delta,
            "closed_form": closed[name],
            "oracle": oracle[name],
            "known_error": name in KNOWN_CLOSED_FORM_ERRORS,
        }
        for name in COEFFICIENTS
        if _differs(closed[name], oracle[name], rtol)
    ]


@dataclass(frozen=True, eq=False)
class CostBreakdown:
    """Adopted cost coefficients plus ``kappa`` and the vacuum energy.

    A coefficient is taken from its closed form when that agrees with the
    oracle, and from the oracle otherwise; ``report`` lists the latter cases.
    """

    alpha_p: float
    beta_p: float
    alpha_q: float
    beta_q: float
    gamma_a: float
    mu_a: float
    gamma_b: float
    mu_b: float
    kappa: float
    vacuum_energy: float
    report: list = field(default_factory=list)
    delta_e_swap: float = None

    def as_dict(self):
        out = {name: getattr(self, name) for name in COEFFICIENTS}
        out.update(kappa=self.kappa, vacuum_energy=self.vacuum_energy)
        if self.delta_e_swap is not None:
            out["delta_e_swap"] = self.delta_e_swap
        return out

    def device_term(self, dev_a, dev_b):
        return (self.gamma_a * dev_a.p2 + self.mu_a * dev_a.q2
                + self.gamma_b * dev_b.p2 + self.mu_b * dev_b.q2)


def cost_coefficients(model, rtol=1e-8):
    closed = closed_form_coefficients(model)
    oracle = oracle_coefficients(model)
    report = discrepancy_report(model, rtol, closed, oracle)
    flagged = {entry["coefficient"] for entry in report}
    adopted = {name: (oracle[name] if name in flagged else closed[name]) for name in COEFFICIENTS}
    kappa = (adopted["alpha_p"] * model.dp0 + adopted["beta_p"] * model.dp1
             + adopted["alpha_q"] * model.dq0 + adopted["beta_q"] * model.dq1)
    return CostBreakdown(**adopted, kappa=float(kappa), vacuum_energy=model.vacuum_energy, report=report)


def delta_e_swap(model, dev_a=None, dev_b=None, costs=None):
    """``<H>`` after both swaps minus ``<H>`` before, devices with zero Hamiltonian."""
    dev_a = DeviceState.vacuum() if dev_a is None else dev_a
    dev_b = DeviceState.vacuum() if dev_b is None else dev_b
    costs = cost_coefficients(model) if costs is None else costs
    return float(costs.kappa + costs.device_term(dev_a, dev_b) - costs.vacuum_energy)


def delta_e_swap_oracle(spec, model, dev_a=None, dev_b=None, theta=np.pi / 2):
    """Energy change from ``S cov S^T`` on the ten-dimensional extended space."""
    if spec.n_sites != N_SITES or spec.eta != model.eta:
        raise ValueError("spec must be the three-site lattice of the model")
    dev_a = DeviceState.vacuum() if dev_a is None else dev_a
    dev_b = DeviceState.vacuum() if dev_b is None else dev_b
    s, system, corr = _oracle_map(model, theta)
    h = _extended_hamiltonian(spec, system)
    cov = system.initial_covariance(vacuum_covariance(spec, corr), dev_a, dev_b)
    return quadratic_expectation(h, transform_covariance(s, cov)) - quadratic_expectation(h, cov)


def _divergent_parts(eta):
    def sample(delta):
        costs = cost_coefficients(build_n3(eta, delta))
        return [costs.kappa, costs.gamma_a, costs.mu_a, costs.gamma_b, costs.mu_b]
    return sample


def divergent_coefficients(eta, delta0=1e-3, ratio=2.0, n_points=6, orders=range(-2, 4)):
    """Laurent fits of ``(kappa, gamma_a, mu_a, gamma_b, mu_b)`` in ``delta`` at fixed ``eta``."""
    return laurent_extract(_divergent_parts(eta), orders=orders, delta0=delta0, ratio=ratio, n_points=n_points)


def phi_sweep(n_points, delta0=1e-3, ratio=2.0, n_laurent=6, workers=None):
    """Leading Laurent coefficients along ``eta = tan(phi)``.

    ``phi`` runs over the open uniform grid ``(i / (n + 1)) pi / 2``,
    ``i = 1..n``. Returns ``(values, errors)``: two dicts keyed by
    :data:`SWEEP_COLUMNS` holding the coefficient columns and their
    grid-to-grid noise estimates.
    """
    n_points = int(n_points)
    if n_points < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    phis = np.arange(1, n_points + 1) / (n_points + 1) * (np.pi / 2)

    def row(phi):
        fit = divergent_coefficients(np.tan(phi), delta0, ratio, n_laurent)
        kappa, gamma_a, mu_a, gamma_b, mu_b = range(5)
        picks = [(kappa, -2), (kappa, -1), (gamma_a, -1), (mu_a, -1), (gamma_b, -1), (mu_b, -1)]
        return ([fit[k][i] for i, k in picks], [fit.error(k)[i] for i, k in picks])

    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(row, phis))
    values = {"phi": phis}
    errors = {"phi": np.zeros_like(phis)}
    for j, name in enumerate(SWEEP_COLUMNS[1:]):
        values[name] = np.array([r[0][j] for r in rows])
        errors[name] = np.array([r[1][j] for r in rows])
    return values, errors


def check_heisenberg_map(model, tol=1e-10):
    """Largest entry difference between the closed-form and generic swap maps."""
    closed = n3_heisenberg_map(model)
    generic, _, _ = _oracle_map(model)
    return float(np.max(np.abs(closed - generic))), is_symplectic(closed, tol)

