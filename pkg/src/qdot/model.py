"""Reduced two-spin model of a gated quantum dot.

The low-energy physics is an isotropic Heisenberg exchange between two
spin-1/2 electrons plus a Zeeman term along z:

    H = (k0/4) S1.S2 - r (S1z + S2z),    r = gamma * B0,

in natural units (hbar = k_B = 1). The product basis is ordered
{|11>, |10>, |01>, |00>} with |1> the spin-up single-particle state, so
sigma_z |1> = +|1>. Both couplings may take either sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import IDENTITY_2, PAULI_X, PAULI_Y, PAULI_Z, kron

__all__ = [
    "DomainError",
    "DotParams",
    "BASIS_LABELS",
    "hamiltonian_matrix",
    "EigenSystem",
    "eigensystem",
    "ThermalElements",
    "thermal_elements",
    "thermal_state",
    "thermal_state_oracle",
    "singlet_triplet_unitary",
    "basis_change_check",
]

BASIS_LABELS = ("11", "10", "01", "00")


class DomainError(ValueError):
    """Raised when a parameter lies outside an operation's numeric domain."""


@dataclass(frozen=True)
class DotParams:
    """Model parameters in natural units.

    k0 : exchange coupling scale, any sign (antiferromagnetic for k0 > 0).
    r  : Zeeman energy gamma * B0, any sign.
    T  : temperature, >= 0. Thermal quantities require T > 0; T = 0 is
         served by the explicit ground-state limits.
    """

    k0: float
    r: float
    T: float

    def __post_init__(self) -> None:
        for name in ("k0", "r", "T"):
            val = getattr(self, name)
            if not math.isfinite(val):
                raise DomainError(f"{name} must be finite, got {val!r}")
        if self.T < 0:
            raise DomainError(f"temperature must be >= 0, got {self.T}")


def hamiltonian_matrix(p: DotParams) -> np.ndarray:
    """4x4 Hamiltonian in the product basis, assembled from spin operators."""
    sx, sy, sz = PAULI_X / 2.0, PAULI_Y / 2.0, PAULI_Z / 2.0
    exchange = (
        kron(sx, sx) + kron(sy, sy) + kron(sz, sz)
    )
    zeeman = kron(sz, IDENTITY_2) + kron(IDENTITY_2, sz)
    return (p.k0 / 4.0) * exchange - p.r * zeeman


@dataclass(frozen=True)
class EigenSystem:
    """Closed-form spectrum of the dot Hamiltonian.

    ``energies[i]`` belongs to ``states[i]`` (a 4-vector in the product
    basis). The order is |00>, |11>, then the symmetric and antisymmetric
    combinations of |01> and |10>.
    """

    energies: np.ndarray
    states: np.ndarray


def eigensystem(p: DotParams) -> EigenSystem:
    """Exact energies and eigenstates of the two-spin Hamiltonian."""
    k, r = p.k0, p.r
    energies = np.array([k / 16.0 + r, k / 16.0 - r, k / 16.0, -3.0 * k / 16.0])
    s = 1.0 / math.sqrt(2.0)
    states = np.array(
        [
            [0, 0, 0, 1],       # |00>
            [1, 0, 0, 0],       # |11>
            [0, s, s, 0],       # (|01> + |10>)/sqrt(2)
            [0, -s, s, 0],      # (|01> - |10>)/sqrt(2)
        ],
        dtype=complex,
    )
    return EigenSystem(energies=energies, states=states)


@dataclass(frozen=True)
class ThermalElements:
    """Boltzmann-weight combinations entering the thermal state.

    u, v are the weights of |11> and |00>; w and y are the half-sum and
    half-difference of the symmetric and antisymmetric level weights; big_z
    is the partition function u + v + 2w. All five are stored rescaled by
    exp(-log_scale) so the largest underlying exponential is exp(0); every
    physical quantity downstream is a ratio, so the common scale cancels.
    """

    u: float
    v: float
    w: float
    y: float
    big_z: float
    log_scale: float


def _exponents(k0: float, r: float, T: float) -> tuple[float, float, float, float]:
    """Log-domain Boltzmann exponents of the four levels at temperature T."""
    a_u = -(k0 - 16.0 * r) / (16.0 * T)
    a_v = -(k0 + 16.0 * r) / (16.0 * T)
    b1 = -k0 / (16.0 * T)
    b2 = 3.0 * k0 / (16.0 * T)
    return a_u, a_v, b1, b2


def thermal_elements(p: DotParams) -> ThermalElements:
    """Closed-form thermal-state elements with a common log-domain shift.

    Raises DomainError for T <= 0; the T = 0 limits live in the
    ground-state helpers.
    """
    if p.T <= 0:
        raise DomainError(
            f"thermal elements need T > 0, got T={p.T}; use the ground-state limits"
        )
    a_u, a_v, b1, b2 = _exponents(p.k0, p.r, p.T)
    m = max(a_u, a_v, b1, b2)
    u = math.exp(a_u - m)
    v = math.exp(a_v - m)
    e1 = math.exp(b1 - m)
    e2 = math.exp(b2 - m)
    w = 0.5 * (e1 + e2)
    y = 0.5 * (e1 - e2)
    return ThermalElements(u=u, v=v, w=w, y=y, big_z=u + v + 2.0 * w, log_scale=m)


def thermal_state(p: DotParams) -> np.ndarray:
    """Closed-form Gibbs state: an X-form 4x4 matrix in the product basis."""
    e = thermal_elements(p)
    z = e.big_z
    rho = np.array(
        [
            [e.u, 0.0, 0.0, 0.0],
            [0.0, e.w, e.y, 0.0],
            [0.0, e.y, e.w, 0.0],
            [0.0, 0.0, 0.0, e.v],
        ],
        dtype=complex,
    )
    return rho / z


def thermal_state_oracle(p: DotParams) -> np.ndarray:
    """Gibbs state by direct spectral assembly of exp(-H/T), trace-normalized.

    Independent of the closed form: diagonalizes the Hamiltonian matrix
    numerically and shifts by the ground energy before exponentiating, so the
    result stays finite at any T > 0.
    """
    if p.T <= 0:
        raise DomainError(f"thermal oracle needs T > 0, got T={p.T}")
    h = hamiltonian_matrix(p)
    evals, evecs = linalg.hermitian_eig(h)
    weights = np.exp(-(evals - evals.min()) / p.T)
    rho = (evecs * weights) @ evecs.conj().T
    return rho / weights.sum()


def singlet_triplet_unitary() -> tuple[np.ndarray, np.ndarray]:
    """Basis change from the coupled (triplet/singlet) basis to the product basis.

    Returns (U, U_inv) such that U @ diag(coupled energies) @ U_inv equals the
    product-basis Hamiltonian. The coupled basis is ordered
    {|1,1>, |1,0>, |1,-1>, |0,0>}.
    """
    s = math.sqrt(2.0) / 2.0
    u = np.array(
        [
            [1, 0, 0, 0],
            [0, s, 0, s],
            [0, s, 0, -s],
            [0, 0, 1, 0],
        ],
        dtype=complex,
    )
    u_inv = np.array(
        [
            [1, 0, 0, 0],
            [0, s, s, 0],
            [0, 0, 0, 1],
            [0, s, -s, 0],
        ],
        dtype=complex,
    )
    return u, u_inv


def basis_change_check(p: DotParams, tol: float = 1e-12) -> bool:
    """Verify U U_inv = I and that U conjugates the coupled-basis diagonal
    onto the product-basis Hamiltonian, both entrywise within ``tol``."""
    u, u_inv = singlet_triplet_unitary()
    if np.abs(u @ u_inv - np.eye(4)).max() > tol:
        return False
    k, r = p.k0, p.r
    coupled = np.diag(
        np.array([k / 16.0 - r, k / 16.0, k / 16.0 + r, -3.0 * k / 16.0], dtype=complex)
    )
    conjugated = u @ coupled @ u_inv
    return bool(np.abs(conjugated - hamiltonian_matrix(p)).max() <= tol)
