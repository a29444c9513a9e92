"""Exact single-qubit rotation algebra for seeded gate sequences.

Rotations use the convention R_a(theta) = exp(-i theta sigma_a / 2), so a
rotation closes to the identity matrix only after a total angle of 4*pi.
Sequences are regenerated bit-exactly from (seed, length); the stream for a
cell never depends on evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, seeding

AXES = ("X", "Y", "Z")
TWO_PI = 2.0 * math.pi
MAX_RESIDUAL = math.sqrt(2.0)

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Gate:
    """One rotation: axis label in {X, Y, Z} and angle in [0, 2*pi)."""

    axis: str
    angle: float

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not math.isfinite(self.angle) or not 0.0 <= self.angle < TWO_PI:
            raise ValueError(f"angle must lie in [0, 2*pi), got {self.angle!r}")


@dataclass(frozen=True)
class GateSequence:
    """Ordered rotation list; the ancilla's unknown accumulation for one window."""

    seed: int
    gates: tuple[Gate, ...]

    @property
    def length(self) -> int:
        return len(self.gates)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(axes, angles) arrays in application order, for the kernels."""
        axes = np.fromiter((AXES.index(g.axis) for g in self.gates), dtype=np.int64, count=len(self.gates))
        angles = np.fromiter((g.angle for g in self.gates), dtype=float, count=len(self.gates))
        return axes, angles


def generate_sequence(seed: int, length: int) -> GateSequence:
    """Seeded random sequence: axis uniform over {X, Y, Z}, angle uniform on [0, 2*pi).

    Axis and angle are drawn interleaved from the per-(seed, length) stream, so
    regeneration is bit-exact and independent of any surrounding sweep order.
    """
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    rng = seeding.stream("sequence", seed, length)
    gates = []
    for _ in range(length):
        axis = AXES[int(rng.integers(3))]
        angle = float(rng.uniform(0.0, TWO_PI))
        gates.append(Gate(axis, angle))
    return GateSequence(seed=seed, gates=tuple(gates))


def gate_matrix(axis: str, angle: float) -> np.ndarray:
    """2x2 matrix of R_axis(angle); angle may be any real (scaled gates wrap freely)."""
    return _kernels.compose_rotations(
        np.array([AXES.index(axis)], dtype=np.int64), np.array([angle], dtype=float)
    )


def compose(seq: GateSequence) -> np.ndarray:
    """Net unitary G_L ... G_1 of the sequence (first gate acts first)."""
    axes, angles = seq.arrays()
    return _kernels.compose_rotations(axes, angles)


def scale_and_double(seq: GateSequence, lam: float) -> np.ndarray:
    """Reset block R(lam): the base sequence with every angle scaled by lam, traversed twice."""
    if lam < 0:
        raise ValueError(f"scale factor must be >= 0, got {lam}")
    axes, angles = seq.arrays()
    b = _kernels.compose_rotations(axes, angles, lam)
    return b @ b


def _check_unitary(m: np.ndarray, name: str) -> None:
    if m.shape != (2, 2):
        raise ValueError(f"{name} must be 2x2")
    if not np.allclose(m.conj().T @ m, _I2, atol=1e-8):
        raise ValueError(f"{name} is not unitary")


def residual_error(r: np.ndarray, u: np.ndarray, ignore_global_phase: bool = False) -> float:
    """Frobenius residual ||R U - I||_F / 2 of the reset block against the accumulation.

    The default deliberately counts R U = -I as maximal failure (sqrt(2)) even
    though that operator resets |0> perfectly; set ignore_global_phase=True for
    the phase-insensitive variant min_phi ||R U - e^{i phi} I||_F / 2.
    """
    _check_unitary(r, "R")
    _check_unitary(u, "U")
    v = r @ u
    if ignore_global_phase:
        tr = abs(v[0, 0] + v[1, 1])
        return 0.5 * math.sqrt(max(4.0 - 2.0 * tr, 0.0))
    return 0.5 * float(np.linalg.norm(v - _I2))
