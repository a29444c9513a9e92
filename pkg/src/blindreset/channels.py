"""Density-matrix evolution under platform-parameterized noise.

States are plain 2x2 complex arrays.  Channels follow the gate-then-noise
abstraction: ideal unitary conjugation, a depolarizing kick, then thermal
relaxation over the gate duration.  Leakage and non-Markovian effects are out
of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import su2

_I2 = np.eye(2, dtype=complex)

_TIME_SUFFIXES = [("ns", 1e-9), ("us", 1e-6), ("µs", 1e-6), ("μs", 1e-6), ("ms", 1e-3), ("s", 1.0)]


@dataclass(frozen=True)
class PlatformProfile:
    """Coherence, gate-error, and timing parameters for one backend class.

    t_meas_total aggregates the native readout + feedback + preparation path;
    t_ext adds external (e.g. GPU-link) feedback latency on top of it.
    """

    name: str
    t1: float
    t2: float
    gate_error_p: float
    t_gate: float
    t_meas_total: float
    readout_error: float
    t_ext: float = 0.0

    def __post_init__(self):
        if self.t1 <= 0 or self.t2 <= 0 or self.t_gate <= 0 or self.t_meas_total <= 0:
            raise ValueError("times must be positive")
        if self.t_ext < 0:
            raise ValueError("t_ext must be >= 0")
        if self.t2 > 2 * self.t1 + 1e-18:
            raise ValueError(f"unphysical profile: T2={self.t2} exceeds 2*T1={2 * self.t1}")
        for p in (self.gate_error_p, self.readout_error):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability out of range: {p}")

    def with_ext(self, t_ext: float) -> "PlatformProfile":
        return replace(self, t_ext=t_ext)


@dataclass(frozen=True)
class ShotCounts:
    n_zero: int
    n_one: int
    shots: int

    def __post_init__(self):
        if self.n_zero + self.n_one != self.shots:
            raise ValueError("counts must sum to shots")

    @property
    def frac_zero(self) -> float:
        return self.n_zero / self.shots


# Representative calibration snapshots.  T2 and readout error are declared
# defaults (T2 = T1/2 superconducting, T1/10 trapped-ion; readout 2% / 3% / 1%)
# and are recorded in every run manifest.
BUILTIN_PROFILES = {
    "iqm": PlatformProfile("IQM", t1=40e-6, t2=20e-6, gate_error_p=0.001,
                           t_gate=30e-9, t_meas_total=730e-9, readout_error=0.02),
    "rigetti": PlatformProfile("Rigetti", t1=25e-6, t2=12.5e-6, gate_error_p=0.002,
                               t_gate=40e-9, t_meas_total=940e-9, readout_error=0.03),
    "ionq": PlatformProfile("IonQ", t1=10.0, t2=1.0, gate_error_p=0.0005,
                            t_gate=100e-6, t_meas_total=350e-6, readout_error=0.01),
}
BUILTIN_PROFILES["nvqlink"] = BUILTIN_PROFILES["iqm"].with_ext(4e-6)


def parse_time(text: str) -> float:
    """Parse a duration with optional ns/us/µs/ms/s suffix (bare numbers are seconds)."""
    raw = text.strip()
    for suffix, scale in _TIME_SUFFIXES:
        if raw.endswith(suffix):
            return float(raw[: -len(suffix)].strip()) * scale
    return float(raw)


def parse_keyvalue(path) -> dict[str, str]:
    """Read a plain-text key=value file ('#' starts a comment)."""
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line.rstrip()!r}")
            key, value = body.split("=", 1)
            entries[key.strip()] = value.strip()
    return entries


def load_profile(path) -> PlatformProfile:
    """Load a platform profile from a key=value file; keys mirror the field names."""
    entries = parse_keyvalue(path)
    try:
        return PlatformProfile(
            name=entries.get("name", "custom"),
            t1=parse_time(entries["T1"]),
            t2=parse_time(entries["T2"]),
            gate_error_p=float(entries["gate_error_p"]),
            t_gate=parse_time(entries["t_gate"]),
            t_meas_total=parse_time(entries["t_meas_total"]),
            readout_error=float(entries["readout_error"]),
            t_ext=parse_time(entries.get("t_ext", "0")),
        )
    except KeyError as exc:
        raise ValueError(f"profile {path} is missing key {exc.args[0]!r}") from None


def resolve_profile(spec: str) -> PlatformProfile:
    """Accept a builtin profile name or a path to a profile file."""
    if spec.lower() in BUILTIN_PROFILES:
        return BUILTIN_PROFILES[spec.lower()]
    return load_profile(spec)


def ground_state() -> np.ndarray:
    return np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


def depolarize(rho: np.ndarray, p: float) -> np.ndarray:
    """E(rho) = (1 - p) rho + p I/2."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing probability out of range: {p}")
    return (1.0 - p) * rho + (p * 0.5) * _I2


def thermal_relax(rho: np.ndarray, t1: float, t2: float, duration: float) -> np.ndarray:
    """Amplitude plus phase damping toward |0>: populations decay with exp(-t/T1),
    coherences with exp(-t/T2)."""
    if duration < 0:
        raise ValueError("duration must be >= 0")
    if t2 > 2 * t1 + 1e-18:
        raise ValueError(f"unphysical relaxation: T2={t2} exceeds 2*T1={2 * t1}")
    if duration == 0:
        return rho.copy()
    g1 = math.exp(-duration / t1)
    g2 = math.exp(-duration / t2)
    p1 = rho[1, 1] * g1
    return np.array(
        [[rho[0, 0] + rho[1, 1] * (1.0 - g1), rho[0, 1] * g2], [rho[1, 0] * g2, p1]],
        dtype=complex,
    )


def apply_noisy_gate(rho: np.ndarray, gate, profile: PlatformProfile, angle: float | None = None) -> np.ndarray:
    """Ideal rotation, then the profile's depolarizing kick, then relaxation over t_gate.

    `angle` overrides the gate's stored angle (used for scaled replays, where the
    effective angle may leave [0, 2*pi))."""
    theta = gate.angle if angle is None else angle
    u = su2.gate_matrix(gate.axis, theta)
    rho = u @ rho @ u.conj().T
    rho = depolarize(rho, profile.gate_error_p)
    return thermal_relax(rho, profile.t1, profile.t2, profile.t_gate)


def measure_z(rho: np.ndarray, readout_error: float, shots: int, stream) -> ShotCounts:
    """Shot-sampled Z readout through a symmetric confusion channel."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p0 = float(rho[0, 0].real)
    q = (1.0 - readout_error) * p0 + readout_error * (1.0 - p0)
    q = min(max(q, 0.0), 1.0)
    n_zero = int(stream.binomial(shots, q))
    return ShotCounts(n_zero=n_zero, n_one=shots - n_zero, shots=shots)


_TO_X_BASIS = su2.gate_matrix("Y", -math.pi / 2)


def measure_x(rho: np.ndarray, readout_error: float, shots: int, stream) -> ShotCounts:
    """As measure_z after rotating |+> onto |0> (n_zero counts |+> records)."""
    rot = _TO_X_BASIS @ rho @ _TO_X_BASIS.conj().T
    return measure_z(rot, readout_error, shots, stream)


def is_density_matrix(rho: np.ndarray, atol: float = 1e-10) -> bool:
    if rho.shape != (2, 2):
        return False
    if not np.allclose(rho, rho.conj().T, atol=atol):
        return False
    if abs(np.trace(rho).real - 1.0) > atol:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -atol)
