"""Numerical Laurent coefficients at ``delta -> 0`` from samples on a geometric grid."""

from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned

__all__ = ["LaurentCoefficients", "laurent_extract", "geometric_grid"]

_ULPS = 32.0


@dataclass(frozen=True, eq=False)
class LaurentCoefficients:
    """Coefficients ``c_k`` of ``f(delta) = sum_k c_k delta^k``.

    ``values`` has shape ``(len(orders),) + f_shape``. ``uncertainty`` is the
    larger of the spread between fits on two interleaved grids and the
    sample rounding propagated through the solve, a practical noise floor.
    """

    orders: tuple
    values: np.ndarray
    uncertainty: np.ndarray
    residual: float

    def __getitem__(self, order):
        try:
            return self.values[self.orders.index(order)]
        except ValueError:
            raise KeyError(f"order {order} not fitted; available {self.orders}") from None

    def error(self, order):
        return self.uncertainty[self.orders.index(order)]

    def resolved(self, order):
        """True where the coefficient is distinguishable from its noise floor."""
        return np.abs(self[order]) > self.error(order)


def geometric_grid(delta0, ratio, n_points):
    return delta0 * float(ratio) ** np.arange(n_points)


def _fit(f, deltas, orders):
    samples = np.array([np.asarray(f(d), dtype=float) for d in deltas])
    f_shape = samples.shape[1:]
    samples = samples.reshape(len(deltas), -1)
    orders_arr = np.asarray(orders, dtype=float)
    # solve in t = delta / (geometric mean of the grid) so the columns stay O(1)
    scale = float(np.exp(np.mean(np.log(deltas))))
    vander = (deltas / scale)[:, None] ** orders_arr[None, :]
    cond = np.linalg.cond(vander)
    if cond > 1e12:
        raise IllConditioned(f"Vandermonde matrix condition number {cond:.3g} exceeds 1e12")
    if vander.shape[0] == vander.shape[1]:
        scaled = np.linalg.solve(vander, samples)
    else:
        scaled, *_ = np.linalg.lstsq(vander, samples, rcond=None)
    resid = np.max(np.abs(vander @ scaled - samples), axis=0)
    dominant = np.max(np.abs(scaled), axis=0)
    # rounding of the samples and of the solve, a few dozen ulps per sample
    rounding = np.abs(np.linalg.pinv(vander)) @ (_ULPS * np.finfo(float).eps * np.abs(samples))
    unscale = (scale ** orders_arr)[:, None]
    shape = (len(orders),) + f_shape
    return (scaled / unscale).reshape(shape), (rounding / unscale).reshape(shape), resid, dominant


def laurent_extract(f, orders=range(-2, 4), delta0=1e-3, ratio=2.0, n_points=6):
    """Fit Laurent coefficients of ``f`` near ``delta = 0``.

    ``f`` is sampled at ``delta0 * ratio**j`` for ``j < n_points`` and the
    Vandermonde system in the requested ``orders`` is solved (least squares
    if there are more points than orders). ``f`` may return an array, in
    which case every component is fitted at once.

    Raises:
        IllConditioned: if the fit residual exceeds ``1e-6`` of the dominant
            term, or the Vandermonde matrix is numerically singular.
    """
    orders = tuple(int(k) for k in orders)
    if n_points < len(orders):
        raise ValueError(f"need at least {len(orders)} sample points, got {n_points}")
    if delta0 <= 0 or ratio <= 1:
        raise ValueError("delta0 must be positive and ratio greater than 1")
    deltas = geometric_grid(delta0, ratio, n_points)
    coeffs, rounding, resid, dominant = _fit(f, deltas, orders)
    bad = resid > 1e-6 * np.maximum(dominant, np.finfo(float).tiny)
    if np.any(bad):
        raise IllConditioned(f"Laurent fit residual {np.max(resid):.3g} exceeds 1e-6 of the dominant term")
    shifted = geometric_grid(delta0 * np.sqrt(ratio), ratio, n_points)
    coeffs_alt, _, _, _ = _fit(f, shifted, orders)
    return LaurentCoefficients(
        orders=orders,
        values=coeffs,
        uncertainty=np.maximum(np.abs(coeffs - coeffs_alt), rounding),
        residual=float(np.max(resid)),
    )
