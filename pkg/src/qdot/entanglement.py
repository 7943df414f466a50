"""Concurrence of the dot's thermal state, by three routes.

The general Wootters algorithm works for any two-qubit density matrix; the
X-state form exploits the thermal state's sparsity pattern; the model form
evaluates the fully reduced closed expression in the log-shifted Boltzmann
domain. All three agree on the thermal state, which is what the test suite
pins down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import PAULI_Y, kron
from .model import DomainError, DotParams, ThermalElements, _exponents

__all__ = [
    "ConcurrenceResult",
    "wootters_concurrence",
    "xstate_concurrence",
    "model_concurrence",
    "ground_state_concurrence",
    "critical_temperature",
]

# Wootters eigenvalues of sqrt(rho) rho~ sqrt(rho) may round slightly
# negative; anything below this is a real failure, not noise.
_LAMBDA_FLOOR = -1e-10


@dataclass(frozen=True)
class ConcurrenceResult:
    """Concurrence value plus the four Wootters lambdas (descending)."""

    value: float
    lambdas: tuple[float, float, float, float]


def wootters_concurrence(rho: np.ndarray) -> ConcurrenceResult:
    """Concurrence of an arbitrary two-qubit density matrix.

    The lambdas are the square roots of the eigenvalues of rho rho~, kept
    Hermitian through the similarity sqrt(rho) rho~ sqrt(rho). That product
    is the Gram matrix D D^dag of

        D = sqrt(P) (V^dag (sy x sy) V*) sqrt(P),

    with rho = V P V^dag its spectral form, so the lambdas are exactly the
    singular values of D. Taking them from an SVD instead of an
    eigendecomposition of the squared product keeps tiny lambdas at
    roundoff scale instead of inflating them to sqrt(eps); the triple
    agreement with the closed forms needs that headroom. Eigenvalues of rho
    within the validation floor round up to zero before the square root.
    """
    rho = linalg.validate_density_matrix(rho, name="input state")
    if rho.shape != (4, 4):
        raise linalg.LinalgError(f"concurrence needs a 4x4 state, got {rho.shape}")
    evals, vecs = linalg.hermitian_eig(rho)
    if evals.min() < _LAMBDA_FLOOR:
        raise linalg.LinalgError(
            f"state eigenvalue {evals.min():.3e} below clamp floor"
        )
    root_p = np.sqrt(np.clip(evals, 0.0, None))
    yy = kron(PAULI_Y, PAULI_Y)
    flip_overlap = vecs.conj().T @ yy @ vecs.conj()
    d = root_p[:, None] * flip_overlap * root_p[None, :]
    lams = np.linalg.svd(d, compute_uv=False)
    value = max(lams[0] - lams[1] - lams[2] - lams[3], 0.0)
    return ConcurrenceResult(value=float(value), lambdas=tuple(float(x) for x in lams))


def xstate_concurrence(e: ThermalElements) -> float:
    """Concurrence of the thermal X-state from its elements: (2/Z) max(|y| - sqrt(uv), 0).

    sqrt(uv) is taken as sqrt(u)*sqrt(v) so the product cannot underflow
    before the root.
    """
    root_uv = math.sqrt(e.u) * math.sqrt(e.v)
    return (2.0 / e.big_z) * max(abs(e.y) - root_uv, 0.0)


def model_concurrence(p: DotParams) -> float:
    """Closed-form thermal concurrence of the dot model.

    Evaluates max((exp(3k0/16T) - 3 exp(-k0/16T)) / Z, 0) with the same
    log-domain shift as the thermal elements. The numerator is negative for
    every k0 < 0, so ferromagnetic coupling never entangles. At T = 0 the
    ground-state limit takes over.
    """
    if p.T == 0:
        return ground_state_concurrence(p.k0, p.r)
    if p.T < 0:
        raise DomainError(f"temperature must be >= 0, got {p.T}")
    a_u, a_v, b1, b2 = _exponents(p.k0, p.r, p.T)
    m = max(a_u, a_v, b1, b2)
    num = math.exp(b2 - m) - 3.0 * math.exp(b1 - m)
    z = math.exp(a_u - m) + math.exp(a_v - m) + math.exp(b1 - m) + math.exp(b2 - m)
    return max(num / z, 0.0)


def ground_state_concurrence(k0: float, r: float) -> float:
    """Zero-temperature concurrence, exact by cases.

    The ground state is the singlet for |r| < k0/4 (concurrence 1), the
    polarized product state for |r| > k0/4 (concurrence 0), and their equal
    mixture exactly at |r| = k0/4 (concurrence 1/2). Any k0 <= 0 gives 0.
    The comparison at the boundary is exact, not toleranced: k0/4 is
    computed in one rounding, so callers passing r = k0/4 hit the 1/2 case.
    """
    if not (math.isfinite(k0) and math.isfinite(r)):
        raise DomainError(f"couplings must be finite, got k0={k0!r}, r={r!r}")
    if k0 <= 0:
        return 0.0
    field = abs(r)
    boundary = k0 / 4.0
    if field < boundary:
        return 1.0
    if field == boundary:
        return 0.5
    return 0.0


def critical_temperature(k0: float) -> float | None:
    """Temperature where thermal entanglement disappears: k0/(4 ln 3).

    Only antiferromagnetic coupling has one; returns None for k0 <= 0.
    The value does not depend on the field r.
    """
    if not math.isfinite(k0):
        raise DomainError(f"k0 must be finite, got {k0!r}")
    if k0 <= 0:
        return None
    return k0 / (4.0 * math.log(3.0))
