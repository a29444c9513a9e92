"""Simulator and policy toolkit for measurement-free ancilla reset in QEC cycles."""

__version__ = "0.1.0"

from .su2 import Gate, GateSequence, generate_sequence, compose, scale_and_double, residual_error
from .channels import (
    PlatformProfile,
    ShotCounts,
    BUILTIN_PROFILES,
    depolarize,
    thermal_relax,
    apply_noisy_gate,
    measure_z,
    measure_x,
    load_profile,
)
from .policies import (
    ResetMethod,
    ResetOutcome,
    optimize_lambda,
    run_reset_cycle,
    envelope,
    envelope_check,
)
from .latency import (
    LatencyBreakdown,
    PolicyDecision,
    DecisionReason,
    blind_latency,
    measurement_latency,
    crossover,
    decide,
    ext_sweep,
)

__all__ = [
    "Gate",
    "GateSequence",
    "generate_sequence",
    "compose",
    "scale_and_double",
    "residual_error",
    "PlatformProfile",
    "ShotCounts",
    "BUILTIN_PROFILES",
    "depolarize",
    "thermal_relax",
    "apply_noisy_gate",
    "measure_z",
    "measure_x",
    "load_profile",
    "ResetMethod",
    "ResetOutcome",
    "optimize_lambda",
    "run_reset_cycle",
    "envelope",
    "envelope_check",
    "LatencyBreakdown",
    "PolicyDecision",
    "DecisionReason",
    "blind_latency",
    "measurement_latency",
    "crossover",
    "decide",
    "ext_sweep",
]
