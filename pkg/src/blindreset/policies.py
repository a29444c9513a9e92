"""Per-cycle ancilla reset policies and the diagnostic cleanliness envelope.

Three policies act on the accumulated gate sequence of one reuse window:
leave it alone, measure-and-flip, or replay the sequence twice with all
angles scaled by an offline-calibrated factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import channels, su2
from .channels import PlatformProfile
from .su2 import Gate, GateSequence


class ResetMethod(str, Enum):
    NO_RESET = "no_reset"
    MEASUREMENT_RESET = "measurement_reset"
    BLIND_RESET = "blind_reset"


METHOD_ORDER = (ResetMethod.NO_RESET, ResetMethod.MEASUREMENT_RESET, ResetMethod.BLIND_RESET)


def shot_stream(backend_name: str, method: ResetMethod, seed: int, length: int):
    """Canonical per-cell measurement stream for (backend, method, seed, L)."""
    from . import seeding

    return seeding.stream(
        "shots", seeding.label_key(backend_name), METHOD_ORDER.index(method), seed, length
    )


@dataclass(frozen=True)
class ResetOutcome:
    """One benchmark cell: (backend, method, seed, L) with its measured metrics."""

    backend: str
    method: ResetMethod
    seed: int
    sequence_length: int
    p_zero: float
    p_x: float
    unitary_error: float
    lambda_used: float | None
    shots: int


@dataclass(frozen=True)
class EnvelopeCheck:
    consistent: bool
    delta: float
    envelope_value: float


def optimize_lambda(
    seq: GateSequence,
    grid_points: int = 40,
    lambda_min: float = 0.1,
    lambda_max: float = 4.0,
) -> tuple[float, float]:
    """Grid search for the scale factor minimizing the noiseless reset residual.

    Ties break toward the smaller factor.  Calibration is offline: the search
    runs on the composed unitary, never on the noisy channel.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    if not 0 < lambda_min < lambda_max:
        raise ValueError("need 0 < lambda_min < lambda_max")
    lams = np.linspace(lambda_min, lambda_max, grid_points)
    axes, angles = seq.arrays()
    eps = su2._kernels.lambda_residuals(axes, angles, lams)
    idx = int(np.argmin(eps))
    return float(lams[idx]), float(eps[idx])


def envelope(epsilon: float, p: float, length: int) -> float:
    """First-order cleanliness estimate 1/2 + [(1-eps)^2 - 1/2] (1-p)^(2L), clamped to [0, 1].

    Separates the coherent residual (first factor) from the incoherent
    depolarizing accumulation (second factor); a screening heuristic, not a
    bound."""
    if epsilon < 0 or epsilon > su2.MAX_RESIDUAL + 1e-12:
        raise ValueError(f"epsilon out of range: {epsilon}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    value = 0.5 + ((1.0 - epsilon) ** 2 - 0.5) * (1.0 - p) ** (2 * length)
    return min(max(value, 0.0), 1.0)


def envelope_check(outcome: ResetOutcome, profile: PlatformProfile, margin: float = 0.05) -> EnvelopeCheck:
    """Flag a blind-reset outcome whose measured cleanliness exceeds the envelope.

    delta reports the excess beyond the margin (0 when consistent)."""
    if outcome.method is not ResetMethod.BLIND_RESET:
        raise ValueError("envelope check applies to blind-reset outcomes")
    value = envelope(outcome.unitary_error, profile.gate_error_p, outcome.sequence_length)
    excess = outcome.p_zero - (value + margin)
    if excess > 0:
        return EnvelopeCheck(consistent=False, delta=excess, envelope_value=value)
    return EnvelopeCheck(consistent=True, delta=0.0, envelope_value=value)


def _evolve_noisy(rho: np.ndarray, seq: GateSequence, profile: PlatformProfile, scale: float = 1.0) -> np.ndarray:
    for gate in seq.gates:
        rho = channels.apply_noisy_gate(rho, gate, profile, angle=scale * gate.angle)
    return rho


_X_FLIP = Gate("X", math.pi)


def run_reset_cycle(
    seq: GateSequence,
    method: ResetMethod,
    profile: PlatformProfile,
    shots: int,
    stream,
    grid_points: int = 40,
) -> ResetOutcome:
    """Evolve one reuse window under `method` and sample both readout bases.

    Blind reset replays the sequence twice at the calibrated scale factor
    (2L extra noisy gates); measurement reset applies a confused projective
    readout, a conditional noisy X, and idles through the measurement path.
    The recorded unitary_error is the noiseless residual of the applied block
    (||U - I||_F / 2 for no-reset, 0 for measurement reset).
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rho = channels.ground_state()
    rho = _evolve_noisy(rho, seq, profile)
    lambda_used: float | None = None

    if method is ResetMethod.NO_RESET:
        eps = su2.residual_error(np.eye(2, dtype=complex), su2.compose(seq))
    elif method is ResetMethod.MEASUREMENT_RESET:
        r = profile.readout_error
        p0 = float(rho[0, 0].real)
        p1 = float(rho[1, 1].real)
        # record 0 -> leave as measured; record 1 -> noisy conditional X
        keep = p0 * (1.0 - r) * channels.ground_state() + p1 * r * np.diag([0.0, 1.0]).astype(complex)
        flip_in = p0 * r * channels.ground_state() + p1 * (1.0 - r) * np.diag([0.0, 1.0]).astype(complex)
        flipped = channels.apply_noisy_gate(flip_in, _X_FLIP, profile)
        rho = keep + flipped
        rho = channels.thermal_relax(rho, profile.t1, profile.t2, profile.t_meas_total)
        eps = 0.0
    elif method is ResetMethod.BLIND_RESET:
        lambda_used, eps = optimize_lambda(seq, grid_points=grid_points)
        rho = _evolve_noisy(rho, seq, profile, scale=lambda_used)
        rho = _evolve_noisy(rho, seq, profile, scale=lambda_used)
    else:
        raise ValueError(f"unknown reset method: {method}")

    zc = channels.measure_z(rho, profile.readout_error, shots, stream)
    xc = channels.measure_x(rho, profile.readout_error, shots, stream)
    return ResetOutcome(
        backend=profile.name,
        method=method,
        seed=seq.seed,
        sequence_length=seq.length,
        p_zero=zc.frac_zero,
        p_x=xc.frac_zero,
        unitary_error=eps,
        lambda_used=lambda_used,
        shots=shots,
    )
