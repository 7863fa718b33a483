import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_window
from sopharvest import (
    LatticeSpec,
    NotCanonical,
    WindowFunctions,
    correlators,
    divergent_window,
    g_factor,
    mode_covariance,
    momentum_representation,
    single_site_window,
    standard_form,
    validate_window,
)
from sopharvest.modes import _diagonalizing_angle

N3 = LatticeSpec(3, 1.0)
CORR3 = correlators(N3)


def test_validate_window_examples():
    validate_window(single_site_window(3))
    for delta in (1e-4, 0.3, -2.0):
        validate_window(divergent_window(3, delta))
    with pytest.raises(NotCanonical) as err:
        validate_window(WindowFunctions.no_mixing([1, 0, 0], [2, 0, 0]))
    assert err.value.residual == pytest.approx(1.0)


def test_mode_covariance_examples():
    np.testing.assert_allclose(mode_covariance(single_site_window(3), CORR3), [[1 / 3, 0], [0, 5 / 6]], atol=1e-15)
    assert mode_covariance(divergent_window(3, 1.0), CORR3)[1, 1] == pytest.approx(4 / 3)
    np.testing.assert_allclose(mode_covariance(single_site_window(3), correlators(LatticeSpec(3, 0.0))),
                               np.eye(2) / 2, atol=1e-15)


def test_g_factor_examples():
    assert g_factor(single_site_window(3), CORR3) == pytest.approx(1 / 3, abs=1e-12)
    assert g_factor(single_site_window(3), correlators(LatticeSpec(3, 0.0))) == 0.0
    assert g_factor(divergent_window(3, 1.0), CORR3) == pytest.approx(np.sqrt(7) / 3, abs=1e-12)


def test_g_factor_refuses_mixing_windows():
    with pytest.raises(ValueError):
        g_factor(random_window(np.random.default_rng(0), 3), CORR3)


def test_standard_form_scales_no_mixing_mode():
    mode = standard_form(divergent_window(3, 1.0), CORR3)
    c = np.sqrt(2.0)
    assert mode.big_x[0] == pytest.approx(c / mode.prefactor)
    np.testing.assert_allclose(mode.q_row, [c, 0, 0, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(mode.p_row, [0, 0, 0, 1 / c, 1 / c, 0], atol=1e-15)
    assert mode.theta == 0.0 and mode.theta_prime == 0.0


def test_standard_form_identity_on_standard_window():
    mode = standard_form(divergent_window(3, 0.5), CORR3)
    again = standard_form(mode.as_window(), CORR3)
    assert again.symplectic_params == (0.0, 0.0, pytest.approx(0.0, abs=1e-15))
    np.testing.assert_allclose(again.big_x, mode.big_x, atol=1e-12)
    np.testing.assert_allclose(again.big_w, mode.big_w, atol=1e-12)


def test_angle_convention():
    assert _diagonalizing_angle(1.0, 1.0, 0.3) == pytest.approx(np.pi / 4)
    assert _diagonalizing_angle(2.0, 1.0, 0.0) == 0.0
    for a, b, c in [(1.0, 2.0, 5.0), (2.0, 1.0, -5.0), (3.0, 1.0, 0.2)]:
        t = _diagonalizing_angle(a, b, c)
        assert -np.pi / 4 < t <= np.pi / 4
        cs, sn = np.cos(t), np.sin(t)
        cross = (b - a) * cs * sn + c * (cs * cs - sn * sn)
        assert cross == pytest.approx(0.0, abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.sampled_from([0.1, 1.0, 10.0]), st.integers(0, 2**32 - 1))
def test_standard_form_properties(n, eta, seed):
    corr = correlators(LatticeSpec(n, eta))
    win = random_window(np.random.default_rng(seed), n)
    mode = standard_form(win, corr)
    cov = mode_covariance(mode.as_window(), corr)
    np.testing.assert_allclose(cov, mode.nu * np.eye(2), atol=1e-9 * max(1.0, mode.nu))
    pairing = mode.nu * (mode.big_x @ mode.big_w - mode.big_z @ mode.big_y)
    assert pairing == pytest.approx(1.0, abs=1e-9)
    assert 4 * np.linalg.det(mode_covariance(win, corr)) >= 1 - 1e-9
    again = standard_form(mode.as_window(), corr)
    assert again.g == pytest.approx(mode.g, abs=1e-9 * max(1.0, mode.g))
    np.testing.assert_allclose(again.q_row, mode.q_row, atol=1e-9 * max(1.0, mode.nu))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.sampled_from([0.1, 1.0, 10.0]), st.integers(0, 2**32 - 1))
def test_standard_form_g_matches_g_factor(n, eta, seed):
    corr = correlators(LatticeSpec(n, eta))
    win = random_window(np.random.default_rng(seed), n, mixing=False)
    assert standard_form(win, corr).g == pytest.approx(g_factor(win, corr), abs=1e-10 * max(1.0, g_factor(win, corr)))


def test_random_mixed_window_n8():
    corr = correlators(LatticeSpec(8, 1.0))
    mode = standard_form(random_window(np.random.default_rng(8), 8), corr)
    np.testing.assert_allclose(mode_covariance(mode.as_window(), corr), mode.nu * np.eye(2), atol=1e-9)


def test_momentum_examples():
    mode = standard_form(single_site_window(3), CORR3)
    qk, pk = momentum_representation(mode, N3)
    assert np.sum(np.abs(qk) ** 2) == pytest.approx(1.0, abs=1e-10)
    assert np.vdot(pk, qk) == pytest.approx(-1j * 3 / np.sqrt(10), abs=1e-9)
    spec0 = LatticeSpec(3, 0.0)
    qk0, _ = momentum_representation(standard_form(single_site_window(3), correlators(spec0)), spec0)
    np.testing.assert_allclose(np.abs(qk0) ** 2, 1 / 3, atol=1e-15)


def test_divergent_g_diverges_like_inverse_delta():
    deltas = np.logspace(-5, -3, 9)
    gs = [g_factor(divergent_window(3, d), CORR3) for d in deltas]
    slope = np.polyfit(np.log(1 / deltas), np.log(gs), 1)[0]
    assert abs(slope - 1.0) < 0.01
    assert gs[0] * deltas[0] == pytest.approx(gs[1] * deltas[1], rel=1e-3)
