"""Tests for the Hamiltonian, spectrum, and Gibbs-state construction."""

import math

import numpy as np
import pytest

from qdot.linalg import kron, IDENTITY_2, PAULI_Z, validate_density_matrix
from qdot.model import (
    BASIS_LABELS,
    DomainError,
    DotParams,
    basis_change_check,
    eigensystem,
    hamiltonian_matrix,
    singlet_triplet_unitary,
    thermal_elements,
    thermal_state,
    thermal_state_oracle,
)


def test_basis_labels_order():
    assert BASIS_LABELS == ("11", "10", "01", "00")


def test_params_validation():
    with pytest.raises(DomainError):
        DotParams(k0=1.0, r=0.0, T=-0.1)
    with pytest.raises(DomainError):
        DotParams(k0=math.inf, r=0.0, T=1.0)
    with pytest.raises(DomainError):
        DotParams(k0=1.0, r=math.nan, T=1.0)
    # T = 0 is allowed at construction; only thermal quantities reject it
    DotParams(k0=1.0, r=0.0, T=0.0)


def test_hamiltonian_trivial_point():
    h = hamiltonian_matrix(DotParams(k0=0.0, r=0.0, T=1.0))
    np.testing.assert_array_equal(h, np.zeros((4, 4)))


def test_hamiltonian_is_hermitian_and_traceless():
    rng = np.random.default_rng(0)
    for _ in range(20):
        k0, r = rng.normal(size=2) * 5
        h = hamiltonian_matrix(DotParams(k0=k0, r=r, T=1.0))
        np.testing.assert_allclose(h, h.conj().T, atol=1e-15)
        assert abs(np.trace(h)) < 1e-14


def test_hamiltonian_explicit_entries():
    # diagonal k0/16 * (1,-1,-1,1) shifted by -r (0, 0) +r from the field,
    # off-diagonal k0/8 coupling |10> and |01>
    k0, r = 8.0, 0.5
    h = hamiltonian_matrix(DotParams(k0=k0, r=r, T=1.0))
    expected = np.array(
        [
            [k0 / 16 - r, 0, 0, 0],
            [0, -k0 / 16, k0 / 8, 0],
            [0, k0 / 8, -k0 / 16, 0],
            [0, 0, 0, k0 / 16 + r],
        ],
        dtype=complex,
    )
    np.testing.assert_allclose(h, expected, atol=1e-15)


def test_hamiltonian_commutes_with_total_sz():
    sz_total = kron(PAULI_Z, IDENTITY_2) / 2 + kron(IDENTITY_2, PAULI_Z) / 2
    h = hamiltonian_matrix(DotParams(k0=3.7, r=1.2, T=1.0))
    np.testing.assert_allclose(h @ sz_total, sz_total @ h, atol=1e-14)


def test_reference_spectrum():
    # k0 = 16, r = 1 gives the integer spectrum {-3, 0, 1, 2}
    h = hamiltonian_matrix(DotParams(k0=16.0, r=1.0, T=1.0))
    np.testing.assert_allclose(np.linalg.eigvalsh(h), [-3.0, 0.0, 1.0, 2.0], atol=1e-14)


def test_eigensystem_solves_hamiltonian():
    rng = np.random.default_rng(1)
    for _ in range(25):
        k0, r = rng.normal(size=2) * 4
        p = DotParams(k0=k0, r=r, T=1.0)
        h = hamiltonian_matrix(p)
        eig = eigensystem(p)
        for energy, state in zip(eig.energies, eig.states):
            np.testing.assert_allclose(h @ state, energy * state, atol=1e-12)
            assert abs(np.linalg.norm(state) - 1.0) < 1e-14


def test_eigensystem_matches_numerical_spectrum():
    rng = np.random.default_rng(2)
    for _ in range(25):
        k0, r = rng.normal(size=2) * 4
        p = DotParams(k0=k0, r=r, T=1.0)
        want = np.linalg.eigvalsh(hamiltonian_matrix(p))
        got = np.sort(eigensystem(p).energies)
        np.testing.assert_allclose(got, want, atol=1e-12)


def test_eigensystem_degeneracy_at_zero_field():
    eig = eigensystem(DotParams(k0=4.0, r=0.0, T=1.0))
    # triplet levels collapse onto k0/16
    assert np.isclose(eig.energies[0], eig.energies[1])
    assert np.isclose(eig.energies[0], eig.energies[2])
    assert np.isclose(eig.energies[3], -3 * 4.0 / 16)


def test_thermal_elements_trivial_point():
    e = thermal_elements(DotParams(k0=0.0, r=0.0, T=1.0))
    assert (e.u, e.v, e.w, e.y) == (1.0, 1.0, 1.0, 0.0)
    assert e.big_z == 4.0
    assert e.log_scale == 0.0


def test_thermal_elements_symmetric_at_zero_field():
    e = thermal_elements(DotParams(k0=2.5, r=0.0, T=0.7))
    assert e.u == e.v


def test_thermal_elements_sum_identities():
    # w + y and w - y recover the two exchange exponentials. When one weight
    # underflows next to the other the sum cancels, so the guarantee is
    # absolute (w, y are bounded by the shift), not relative.
    rng = np.random.default_rng(3)
    for _ in range(40):
        k0 = rng.uniform(-6, 12)
        r = rng.uniform(-3, 3)
        T = rng.uniform(0.02, 5.0)
        e = thermal_elements(DotParams(k0=k0, r=r, T=T))
        m = e.log_scale
        b1 = math.exp(-k0 / (16 * T) - m)
        b2 = math.exp(3 * k0 / (16 * T) - m)
        np.testing.assert_allclose(e.w + e.y, b1, rtol=1e-12, atol=1e-15)
        np.testing.assert_allclose(e.w - e.y, b2, rtol=1e-12, atol=1e-15)
        np.testing.assert_allclose(e.big_z, e.u + e.v + 2 * e.w, rtol=1e-15)


def test_thermal_elements_y_sign_tracks_coupling():
    assert thermal_elements(DotParams(k0=3.0, r=0.4, T=0.5)).y < 0
    assert thermal_elements(DotParams(k0=-3.0, r=0.4, T=0.5)).y > 0
    assert thermal_elements(DotParams(k0=0.0, r=0.4, T=0.5)).y == 0.0


def test_thermal_elements_survive_deep_cold():
    # naive exponentials overflow here; the shifted form must stay finite
    e = thermal_elements(DotParams(k0=16.0, r=1.0, T=1e-4))
    for x in (e.u, e.v, e.w, e.y, e.big_z):
        assert math.isfinite(x)
    assert e.big_z > 0


def test_thermal_elements_reject_zero_temperature():
    with pytest.raises(DomainError):
        thermal_elements(DotParams(k0=1.0, r=0.0, T=0.0))


def test_thermal_elements_frozen_reference_point():
    # spectral weights exp(-E/T) at k0=4, r=1, T=0.5 are
    # [0.0820849986238988, 4.4816890703380645, 0.6065306597126334, 4.4816890703380645]
    # for the levels paired with |00>, |11>, (01+10), (01-10); the shifted
    # elements below divide out the largest of them.
    e = thermal_elements(DotParams(k0=4.0, r=1.0, T=0.5))
    np.testing.assert_allclose(e.u, 1.0, rtol=1e-15)
    np.testing.assert_allclose(e.v, 0.01831563888873418, rtol=1e-14)
    np.testing.assert_allclose(e.w, 0.5676676416183064, rtol=1e-14)
    np.testing.assert_allclose(e.y, -0.43233235838169365, rtol=1e-14)
    np.testing.assert_allclose(e.big_z, 2.153650922125347, rtol=1e-14)
    assert e.log_scale == 1.5


def test_thermal_state_infinite_temperature_limit():
    rho = thermal_state(DotParams(k0=1.0, r=0.3, T=1e9))
    np.testing.assert_allclose(rho, np.eye(4) / 4, atol=1e-9)


def test_thermal_state_matches_oracle():
    rng = np.random.default_rng(4)
    for _ in range(30):
        p = DotParams(
            k0=rng.uniform(-6, 12), r=rng.uniform(-3, 3), T=rng.uniform(0.05, 5.0)
        )
        np.testing.assert_allclose(
            thermal_state(p), thermal_state_oracle(p), atol=1e-12
        )


def test_thermal_state_is_valid_and_stationary():
    for (k0, r, T) in [(4.0, 1.0, 0.5), (-2.0, 0.3, 0.2), (16.0, 1.0, 0.05)]:
        p = DotParams(k0=k0, r=r, T=T)
        rho = thermal_state(p)
        validate_density_matrix(rho)
        h = hamiltonian_matrix(p)
        np.testing.assert_allclose(rho @ h, h @ rho, atol=1e-13)


def test_thermal_state_x_shape():
    rho = thermal_state(DotParams(k0=3.0, r=0.7, T=0.4))
    zero_mask = np.array(
        [
            [False, True, True, True],
            [True, False, False, True],
            [True, False, False, True],
            [True, True, True, False],
        ]
    )
    assert np.all(rho[zero_mask] == 0)


def test_thermal_state_cold_limit_is_singlet():
    rho = thermal_state(DotParams(k0=4.0, r=0.5, T=1e-3))
    singlet = np.zeros(4, dtype=complex)
    singlet[1] = 1 / math.sqrt(2)
    singlet[2] = -1 / math.sqrt(2)
    np.testing.assert_allclose(rho, np.outer(singlet, singlet.conj()), atol=1e-12)


def test_field_polarizes_populations():
    pops = []
    for r in (0.0, 0.5, 1.0, 2.0):
        rho = thermal_state(DotParams(k0=4.0, r=r, T=0.3))
        pops.append(rho[0, 0].real)  # |11> population grows with the field
    assert all(b > a for a, b in zip(pops, pops[1:]))


def test_oracle_eigenvalues_are_boltzmann_weights():
    p = DotParams(k0=5.0, r=0.8, T=0.6)
    energies = np.sort(eigensystem(p).energies)
    weights = np.exp(-(energies - energies.min()) / p.T)
    weights /= weights.sum()
    got = np.sort(np.linalg.eigvalsh(thermal_state_oracle(p)))
    np.testing.assert_allclose(got, np.sort(weights), atol=1e-14)


def test_singlet_triplet_unitary_inverse_pair():
    u, u_inv = singlet_triplet_unitary()
    np.testing.assert_allclose(u @ u_inv, np.eye(4), atol=1e-15)
    np.testing.assert_allclose(u_inv, u.conj().T, atol=1e-15)


def test_basis_change_diagonalizes_hamiltonian():
    assert basis_change_check(DotParams(k0=16.0, r=1.0, T=1.0))
    rng = np.random.default_rng(6)
    for _ in range(10):
        p = DotParams(k0=rng.uniform(-5, 10), r=rng.uniform(-2, 2), T=1.0)
        assert basis_change_check(p)
