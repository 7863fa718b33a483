import numpy as np
import pytest

from sopharvest import (
    LatticeSpec,
    correlators,
    dispersion,
    frequencies,
    lattice_hamiltonian,
    quadratic_expectation,
    vacuum_covariance,
    williamson_eigenvalues,
)

N3 = LatticeSpec(3, 1.0)


def test_spec_validation():
    with pytest.raises(ValueError):
        LatticeSpec(1, 1.0)
    with pytest.raises(ValueError):
        LatticeSpec(4, -0.1)


def test_dispersion_examples():
    assert dispersion(0, LatticeSpec(7, 3.3)) == 1.0
    np.testing.assert_allclose(frequencies(LatticeSpec(6, 0.0)), 1.0)
    assert dispersion(1, N3) == pytest.approx(2.0, abs=1e-15)


def test_decoupled_correlators():
    corr = correlators(LatticeSpec(5, 0.0))
    np.testing.assert_allclose(corr.dq, [0.5, 0, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(corr.dp, [0.5, 0, 0, 0, 0], atol=1e-15)


def test_three_site_correlators():
    corr = correlators(N3)
    np.testing.assert_allclose(corr.dq, [1 / 3, 1 / 12, 1 / 12], atol=1e-15)
    np.testing.assert_allclose(corr.dp, [5 / 6, -1 / 6, -1 / 6], atol=1e-15)
    assert corr.q(4) == corr.q(1) and corr.p(-1) == corr.p(2)


@pytest.mark.parametrize("n", [2, 3, 8, 17, 64])
@pytest.mark.parametrize("eta", [0.1, 1.0, 10.0])
def test_correlators_match_plain_sum(n, eta):
    spec = LatticeSpec(n, eta)
    corr = correlators(spec)
    k = np.arange(n)
    omega = np.sqrt(1 + 2 * eta * (1 - np.cos(2 * np.pi * k / n)))
    for d in range(n):
        c = np.cos(2 * np.pi * k * d / n)
        assert corr.dq[d] == pytest.approx(np.sum(c / (2 * omega)) / n, abs=1e-13)
        assert corr.dp[d] == pytest.approx(np.sum(omega * c / 2) / n, abs=1e-13)
    np.testing.assert_array_equal(corr.dq[1:], corr.dq[1:][::-1])
    assert corr.dq[0] <= 0.5 <= corr.dp[0]


def test_vacuum_covariance_examples():
    np.testing.assert_allclose(vacuum_covariance(LatticeSpec(4, 0.0)), np.eye(8) / 2, atol=1e-15)
    np.testing.assert_allclose(williamson_eigenvalues(vacuum_covariance(N3)), 0.5, atol=1e-10)
    assert williamson_eigenvalues(vacuum_covariance(LatticeSpec(32, 10.0)))[0] >= 0.5 - 1e-9


def test_hamiltonian_examples():
    np.testing.assert_array_equal(lattice_hamiltonian(LatticeSpec(4, 0.0)), np.eye(8))
    h = lattice_hamiltonian(N3)
    np.testing.assert_array_equal(h[:3, :3], [[3, -1, -1], [-1, 3, -1], [-1, -1, 3]])
    np.testing.assert_array_equal(h[3:, 3:], np.eye(3))
    np.testing.assert_array_equal(h[:3, 3:], 0)


@pytest.mark.parametrize("n", [3, 8, 16])
@pytest.mark.parametrize("eta", [0.1, 1.0, 10.0])
def test_vacuum_energy_is_half_frequency_sum(n, eta):
    spec = LatticeSpec(n, eta)
    energy = quadratic_expectation(lattice_hamiltonian(spec), vacuum_covariance(spec))
    assert energy == pytest.approx(np.sum(frequencies(spec)) / 2, rel=1e-10)
