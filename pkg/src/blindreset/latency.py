"""Closed-form reset timing: blind vs measurement latency and the crossover length.

Blind reset occupies 2L gate slots; measurement reset pays the aggregated
readout/feedback/preparation path plus any external feedback term.  The
crossover L* is the largest length at which blind is strictly faster.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .channels import PlatformProfile
from .policies import ResetMethod


class DecisionReason(str, Enum):
    FASTER_AND_CLEAN = "faster_and_clean"
    TOO_SLOW = "too_slow"
    TOO_DIRTY = "too_dirty"
    RESTRICT_LENGTH = "restrict_length"


@dataclass(frozen=True)
class LatencyBreakdown:
    t_blind: float
    t_meas: float
    length: int
    profile_name: str


@dataclass(frozen=True)
class PolicyDecision:
    chosen: ResetMethod
    reason: DecisionReason


def blind_latency(length: int, profile: PlatformProfile) -> float:
    """T_blind = 2 L t_gate."""
    if length < 0:
        raise ValueError("length must be >= 0")
    return 2.0 * length * profile.t_gate


def measurement_latency(profile: PlatformProfile) -> float:
    """T_meas = native aggregate + external feedback term."""
    return profile.t_meas_total + profile.t_ext


def breakdown(length: int, profile: PlatformProfile) -> LatencyBreakdown:
    return LatencyBreakdown(
        t_blind=blind_latency(length, profile),
        t_meas=measurement_latency(profile),
        length=length,
        profile_name=profile.name,
    )


def crossover(profile: PlatformProfile) -> int:
    """Largest L with 2 L t_gate strictly below T_meas (0 when even L=1 is slower)."""
    t_meas = measurement_latency(profile)
    n = int(math.floor(t_meas / (2.0 * profile.t_gate)))
    while n > 0 and 2.0 * n * profile.t_gate >= t_meas:
        n -= 1
    while 2.0 * (n + 1) * profile.t_gate < t_meas:
        n += 1
    return max(n, 0)


def decide(length: int, f_clean: float, f_req: float, profile: PlatformProfile) -> PolicyDecision:
    """Prefer blind reset iff it is strictly faster and at least f_req clean.

    Timing is checked first; a fast-but-dirty window falls back to measurement
    reset with reason RESTRICT_LENGTH (shorter windows are the remedy).
    """
    if not 0.0 <= f_req <= 1.0:
        raise ValueError(f"f_req out of range: {f_req}")
    if blind_latency(length, profile) >= measurement_latency(profile):
        return PolicyDecision(ResetMethod.MEASUREMENT_RESET, DecisionReason.TOO_SLOW)
    if f_clean >= f_req:
        return PolicyDecision(ResetMethod.BLIND_RESET, DecisionReason.FASTER_AND_CLEAN)
    return PolicyDecision(ResetMethod.MEASUREMENT_RESET, DecisionReason.RESTRICT_LENGTH)


def ext_sweep(profile: PlatformProfile, t_ext_values) -> list[tuple[float, int]]:
    """Crossover as a function of the external feedback term."""
    values = list(t_ext_values)
    if not values:
        raise ValueError("need at least one t_ext value")
    return [(float(v), crossover(profile.with_ext(float(v)))) for v in values]
