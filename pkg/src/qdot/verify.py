"""Self-checks pitting every closed form against an independent route.

Each check reports its maximum observed deviation and the threshold it was
held to. Two checks carry method floors of their own: the critical
temperature is located by bisection (floor 1e-6) and the quadrature versus
Monte Carlo comparison is statistical (floor 4 standard errors). The caller
tolerance applies to everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import entanglement, model, teleport
from .linalg import LinalgError
from .model import DomainError

__all__ = ["CheckResult", "bisect_critical_temperature", "verify_all", "GRID", "TELEPORT_GRID"]

# Thermal grid: couplings of both signs, fields up to far past k0/4,
# temperatures from deep quantum to classical.
GRID = {
    "k0": (-4.0, -1.0, 0.0, 1.0, 4.0, 16.0),
    "r": (0.0, 0.2, 1.0, 4.0),
    "T": (0.05, 0.2, 1.0, 5.0),
}

TELEPORT_GRID = {
    "k0": (0.5, 2.0, 4.0),
    "r": (0.0, 0.2, 1.0),
    "T": (0.1, 0.2, 1.0),
    "theta": (0.0, math.pi / 3.0, math.pi / 2.0, math.pi),
    "phi": (0.0, math.pi / 2.0, 1.3),
}

_TC_FLOOR = 1e-6
_MC_POINTS = ((2.0, 0.2, 0.5), (4.0, 1.0, 0.2), (0.5, 0.0, 1.0))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_dev: float
    threshold: float
    detail: str = ""

    def line(self) -> str:
        status = "ok  " if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return (
            f"[{status}] {self.name}: max deviation {self.max_dev:.3e}"
            f" vs threshold {self.threshold:.3e}{extra}"
        )


def _thermal_points():
    for k0 in GRID["k0"]:
        for r in GRID["r"]:
            for T in GRID["T"]:
                yield model.DotParams(k0=k0, r=r, T=T)


def _teleport_points():
    for k0 in TELEPORT_GRID["k0"]:
        for r in TELEPORT_GRID["r"]:
            for T in TELEPORT_GRID["T"]:
                yield model.DotParams(k0=k0, r=r, T=T)


def _input_states():
    for theta in TELEPORT_GRID["theta"]:
        for phi in TELEPORT_GRID["phi"]:
            yield teleport.InputState(theta=theta, phi=phi)


def bisect_critical_temperature(
    k0: float, r: float, lo: float = 0.02, hi: float = 3.0, width: float = 1e-9
) -> float:
    """Locate the entanglement-vanishing temperature by bisection.

    The predicate is a strictly positive closed-form concurrence. The
    bracket must straddle the transition: entangled at ``lo``, separable at
    ``hi``.
    """

    def entangled(T: float) -> bool:
        return entanglement.model_concurrence(model.DotParams(k0=k0, r=r, T=T)) > 0.0

    if not entangled(lo):
        raise ValueError(f"bracket low end T={lo} is not entangled for k0={k0}, r={r}")
    if entangled(hi):
        raise ValueError(f"bracket high end T={hi} is still entangled for k0={k0}, r={r}")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if entangled(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_thermal_oracle(tolerance: float) -> CheckResult:
    """Closed-form Gibbs state against spectral exp(-H/T)/Z, entrywise."""
    dev = 0.0
    for p in _thermal_points():
        closed = model.thermal_state(p)
        oracle = model.thermal_state_oracle(p)
        dev = max(dev, float(np.abs(closed - oracle).max()))
    return CheckResult("thermal state vs spectral oracle", dev <= tolerance, dev, tolerance)


def check_concurrence_triple(tolerance: float) -> CheckResult:
    """Model form vs X-state form vs Wootters, plus zero for k0 < 0."""
    dev = 0.0
    ferro_max = 0.0
    for p in _thermal_points():
        c_model = entanglement.model_concurrence(p)
        c_x = entanglement.xstate_concurrence(model.thermal_elements(p))
        c_w = entanglement.wootters_concurrence(model.thermal_state(p)).value
        dev = max(dev, abs(c_model - c_x), abs(c_model - c_w), abs(c_x - c_w))
        if p.k0 < 0:
            ferro_max = max(ferro_max, c_model, c_x, c_w)
    passed = dev <= tolerance and ferro_max == 0.0
    detail = "ferromagnetic points all exactly 0" if ferro_max == 0.0 else (
        f"nonzero concurrence {ferro_max:.3e} at k0 < 0"
    )
    return CheckResult("concurrence triple agreement", passed, dev, tolerance, detail)


def check_critical_temperature(tolerance: float) -> CheckResult:
    """Bisection transition temperature against k0/(4 ln 3), at several fields."""
    threshold = max(tolerance, _TC_FLOOR)
    dev = 0.0
    for k0 in (1.0, 4.0, 10.0):
        expected = entanglement.critical_temperature(k0)
        for r in (0.0, 1.0, 4.0):
            dev = max(dev, abs(bisect_critical_temperature(k0, r) - expected))
    return CheckResult(
        "critical temperature by bisection",
        dev <= threshold,
        dev,
        threshold,
        f"bisection floor {_TC_FLOOR:g}; transition independent of r",
    )


def check_collapse(tolerance: float) -> CheckResult:
    """Closed-form collapsed branches against 8x8 projection."""
    dev = 0.0
    for p in _teleport_points():
        e = model.thermal_elements(p)
        for s in _input_states():
            joint = teleport.joint_state(s, p)
            for outcome in teleport.BellOutcome:
                closed_state, closed_prob = teleport.collapsed_closed_form(s, e, outcome)
                brute_state, brute_prob = teleport.collapse_bruteforce(joint, outcome)
                dev = max(
                    dev,
                    float(np.abs(closed_state - brute_state).max()),
                    abs(closed_prob - brute_prob),
                )
    return CheckResult("teleportation collapse vs brute force", dev <= tolerance, dev, tolerance)


def check_completeness(tolerance: float) -> CheckResult:
    """The four branch probabilities sum to one at every grid point."""
    dev = 0.0
    for p in _teleport_points():
        e = model.thermal_elements(p)
        for s in _input_states():
            total = sum(
                teleport.collapsed_closed_form(s, e, outcome)[1]
                for outcome in teleport.BellOutcome
            )
            dev = max(dev, abs(total - 1.0))
    return CheckResult("branch probability completeness", dev <= tolerance, dev, tolerance)


def check_r0_coincidence(tolerance: float) -> CheckResult:
    """With the field off, the two corrected outputs are one state."""
    dev = 0.0
    for k0 in TELEPORT_GRID["k0"]:
        for T in TELEPORT_GRID["T"]:
            p = model.DotParams(k0=k0, r=0.0, T=T)
            for s in _input_states():
                rho_o, rho_e = teleport.output_states(s, p)
                dev = max(dev, float(np.abs(rho_o - rho_e).max()))
    return CheckResult("output states coincide at r = 0", dev <= tolerance, dev, tolerance)


def check_subspace_order(tolerance: float) -> CheckResult:
    """F_o >= F_e on the grid at theta = pi/3 (the ordering can reverse
    past theta = pi/2, so the scan pins the representative angle)."""
    worst = math.inf
    s = teleport.InputState(theta=math.pi / 3.0, phi=0.0)
    for p in _teleport_points():
        f_o, f_e = teleport.subspace_fidelities(s, p)
        worst = min(worst, f_o - f_e)
    dev = max(0.0, -worst)
    return CheckResult(
        "subspace fidelity ordering",
        worst >= -tolerance,
        dev,
        tolerance,
        f"min(F_o - F_e) = {worst:.3e} at theta = pi/3",
    )


def check_quadrature_mc(tolerance: float, mc_samples: int, seed: int) -> CheckResult:
    """Quadrature average fidelity against the Monte Carlo estimate."""
    dev = 0.0
    limit = 0.0
    floors = []
    for k0, r, T in _MC_POINTS:
        p = model.DotParams(k0=k0, r=r, T=T)
        quad = teleport.average_fidelity(p)
        mc = teleport.average_fidelity_mc(p, n=mc_samples, seed=seed)
        gap = abs(quad - mc.value)
        bound = max(tolerance, 4.0 * mc.stderr)
        dev = max(dev, gap)
        limit = max(limit, bound)
        floors.append(4.0 * mc.stderr)
    detail = f"statistical floor 4*SE up to {max(floors):.3e}, n={mc_samples}, seed={seed}"
    if tolerance < max(floors):
        detail += "; requested tolerance is below Monte Carlo resolution"
    return CheckResult("quadrature vs Monte Carlo", dev <= limit, dev, limit, detail)


def _guarded(name: str, tolerance: float, fn, *args) -> CheckResult:
    """Run one check; a contract violation inside it is itself a failure."""
    try:
        return fn(*args)
    except (LinalgError, DomainError) as exc:
        return CheckResult(
            name, False, math.inf, tolerance, f"raised {type(exc).__name__}: {exc}"
        )


def verify_all(
    tolerance: float = 1e-10, mc_samples: int = 200_000, seed: int = 0
) -> list[CheckResult]:
    """Run every cross-check; order is stable for reporting."""
    return [
        _guarded("thermal state vs spectral oracle", tolerance,
                 check_thermal_oracle, tolerance),
        _guarded("concurrence triple agreement", tolerance,
                 check_concurrence_triple, tolerance),
        _guarded("critical temperature by bisection", tolerance,
                 check_critical_temperature, tolerance),
        _guarded("teleportation collapse vs brute force", tolerance,
                 check_collapse, tolerance),
        _guarded("branch probability completeness", tolerance,
                 check_completeness, tolerance),
        _guarded("output states coincide at r = 0", tolerance,
                 check_r0_coincidence, tolerance),
        _guarded("subspace fidelity ordering", tolerance,
                 check_subspace_order, tolerance),
        _guarded("quadrature vs Monte Carlo", tolerance,
                 check_quadrature_mc, tolerance, mc_samples, seed),
    ]
