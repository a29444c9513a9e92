import math

import numpy as np
import pytest

from blindreset import su2
from blindreset.su2 import Gate, GateSequence, compose, generate_sequence, residual_error, scale_and_double


def rx(theta):
    return np.array(
        [[np.cos(theta / 2), -1j * np.sin(theta / 2)], [-1j * np.sin(theta / 2), np.cos(theta / 2)]]
    )


def rz(theta):
    return np.array([[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]])


def random_unitary(rng):
    seq = generate_sequence(int(rng.integers(1 << 30)), 6)
    return compose(seq)


def test_generation_is_deterministic():
    a = generate_sequence(42, 4)
    b = generate_sequence(42, 4)
    assert a == b


def test_different_seeds_differ():
    a = generate_sequence(42, 4)
    b = generate_sequence(43, 4)
    assert any(ga.angle != gb.angle for ga, gb in zip(a.gates, b.gates))


def test_angle_moments_match_uniform_law():
    seq = generate_sequence(42, 10000)
    angles = np.array([g.angle for g in seq.gates])
    # uniform on [0, 2*pi): mean pi, sd 2*pi/sqrt(12)
    sigma = 2 * np.pi / np.sqrt(12) / np.sqrt(len(angles))
    assert abs(angles.mean() - np.pi) < 3 * sigma
    assert set(g.axis for g in seq.gates) == {"X", "Y", "Z"}


def test_zero_length_rejected():
    with pytest.raises(ValueError):
        generate_sequence(42, 0)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("W", 1.0)
    with pytest.raises(ValueError):
        Gate("X", 7.0)
    with pytest.raises(ValueError):
        Gate("X", -0.1)


def test_compose_zero_angles_is_identity():
    seq = GateSequence(seed=0, gates=(Gate("X", 0.0), Gate("Y", 0.0), Gate("Z", 0.0)))
    assert np.allclose(compose(seq), np.eye(2), atol=1e-12)


def test_compose_two_half_turns():
    seq = GateSequence(seed=0, gates=(Gate("X", np.pi / 2), Gate("X", np.pi / 2)))
    assert np.allclose(compose(seq), rx(np.pi), atol=1e-12)


def test_compose_is_unitary():
    for seed in range(12):
        u = compose(generate_sequence(seed, 8))
        assert np.linalg.norm(u.conj().T @ u - np.eye(2)) < 1e-10
        assert abs(abs(np.linalg.det(u)) - 1) < 1e-10


def test_compose_matches_left_fold():
    for seed in (1, 7, 23):
        seq = generate_sequence(seed, 9)
        acc = np.eye(2, dtype=complex)
        for g in seq.gates:
            acc = su2.gate_matrix(g.axis, g.angle) @ acc
        assert np.linalg.norm(compose(seq) - acc) < 1e-10


def test_scale_and_double_at_zero():
    seq = generate_sequence(5, 6)
    assert np.allclose(scale_and_double(seq, 0.0), np.eye(2), atol=1e-12)


def test_scale_and_double_single_gate():
    seq = GateSequence(seed=0, gates=(Gate("X", np.pi / 2),))
    assert np.allclose(scale_and_double(seq, 1.0), rx(np.pi), atol=1e-12)
    # total rotation (2*lam + 1) * pi/2 = 4*pi closes at lam = 3.5
    total = scale_and_double(seq, 3.5) @ compose(seq)
    assert np.allclose(total, np.eye(2), atol=1e-12)


def test_scale_and_double_matches_double_compose():
    for seed, lam in [(3, 0.1), (9, 1.0), (11, 3.7)]:
        seq = generate_sequence(seed, 7)
        scaled = GateSequence(
            seed=seq.seed,
            gates=tuple(Gate(g.axis, (g.angle * lam) % su2.TWO_PI) for g in seq.gates),
        )
        once = np.eye(2, dtype=complex)
        for g in seq.gates:
            once = su2.gate_matrix(g.axis, g.angle * lam) @ once
        assert np.allclose(scale_and_double(seq, lam), once @ once, atol=1e-10)
        del scaled


def test_negative_lambda_rejected():
    with pytest.raises(ValueError):
        scale_and_double(generate_sequence(1, 3), -0.5)


def test_residual_exact_inverse():
    u = compose(generate_sequence(17, 5))
    assert residual_error(u.conj().T, u) < 1e-12


def test_residual_minus_identity():
    u = compose(generate_sequence(17, 5))
    r = -u.conj().T
    assert abs(residual_error(r, u) - math.sqrt(2)) < 1e-12
    assert residual_error(r, u, ignore_global_phase=True) < 1e-7


def test_residual_z_half_turn():
    u = compose(generate_sequence(4, 5))
    r = rz(np.pi) @ u.conj().T
    assert abs(residual_error(r, u) - 1.0) < 1e-10


def test_residual_conjugation_invariant():
    rng = np.random.default_rng(0)
    for _ in range(20):
        r = random_unitary(rng)
        u = random_unitary(rng)
        v = random_unitary(rng)
        base = residual_error(r, u)
        conj = residual_error(v @ r @ v.conj().T, v @ u @ v.conj().T)
        assert abs(base - conj) < 1e-9


def test_residual_bounded():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(10000):
        r = random_unitary(rng)
        u = random_unitary(rng)
        worst = max(worst, residual_error(r, u))
    assert worst <= math.sqrt(2) + 1e-9


def test_residual_rejects_non_unitary():
    with pytest.raises(ValueError):
        residual_error(np.array([[1.0, 0.0], [0.0, 2.0]], dtype=complex), np.eye(2, dtype=complex))
