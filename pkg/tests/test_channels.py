import math

import numpy as np
import pytest

from blindreset import channels, seeding
from blindreset.channels import (
    BUILTIN_PROFILES,
    PlatformProfile,
    apply_noisy_gate,
    depolarize,
    measure_x,
    measure_z,
    thermal_relax,
)
from blindreset.su2 import Gate


def random_state(rng):
    # random pure state mixed with a bit of identity
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v /= np.linalg.norm(v)
    rho = np.outer(v, v.conj())
    w = rng.uniform(0, 1)
    return w * rho + (1 - w) * np.eye(2) / 2


def test_depolarize_identity_limit():
    rho = channels.ground_state()
    assert np.allclose(depolarize(rho, 0.0), rho)
    assert np.allclose(depolarize(rho, 1.0), np.eye(2) / 2)


def test_depolarize_ground_population():
    rho = depolarize(channels.ground_state(), 0.004)
    assert abs(rho[0, 0].real - 0.998) < 1e-12


def test_depolarize_semigroup():
    rng = np.random.default_rng(3)
    for _ in range(50):
        rho = random_state(rng)
        p, q = rng.uniform(0, 1, size=2)
        a = depolarize(depolarize(rho, p), q)
        b = depolarize(rho, p + q - p * q)
        assert np.allclose(a, b, atol=1e-10)


def test_depolarize_rejects_bad_probability():
    with pytest.raises(ValueError):
        depolarize(channels.ground_state(), 1.5)


def test_thermal_relax_zero_duration():
    rng = np.random.default_rng(5)
    rho = random_state(rng)
    assert np.allclose(thermal_relax(rho, 40e-6, 20e-6, 0.0), rho)


def test_thermal_relax_decay_to_ground():
    excited = np.array([[0, 0], [0, 1]], dtype=complex)
    relaxed = thermal_relax(excited, 40e-6, 20e-6, 1.0)
    assert np.allclose(relaxed, channels.ground_state(), atol=1e-9)


def test_thermal_relax_t1_point():
    excited = np.array([[0, 0], [0, 1]], dtype=complex)
    out = thermal_relax(excited, 40e-6, 20e-6, 40e-6)
    assert abs(out[1, 1].real - math.exp(-1)) < 1e-12


def test_thermal_relax_coherence_decay():
    plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    out = thermal_relax(plus, 40e-6, 20e-6, 20e-6)
    assert abs(out[0, 1].real - 0.5 * math.exp(-1)) < 1e-12


def test_thermal_relax_rejects_unphysical():
    with pytest.raises(ValueError):
        thermal_relax(channels.ground_state(), 10e-6, 30e-6, 1e-6)


def test_channels_preserve_density_matrices():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        rho = random_state(rng)
        p = rng.uniform(0, 1)
        t = rng.uniform(0, 1e-4)
        out = thermal_relax(depolarize(rho, p), 40e-6, 20e-6, t)
        assert abs(np.trace(out).real - 1) < 1e-10
        assert np.linalg.eigvalsh(out).min() > -1e-10


def test_noisy_gate_identity_zero_noise():
    quiet = PlatformProfile("quiet", t1=1.0, t2=1.0, gate_error_p=0.0,
                            t_gate=1e-12, t_meas_total=1e-9, readout_error=0.0)
    rho = channels.ground_state()
    out = apply_noisy_gate(rho, Gate("Z", 0.0), quiet)
    assert np.allclose(out, rho, atol=1e-9)
    flipped = apply_noisy_gate(rho, Gate("X", math.pi), quiet)
    assert abs(flipped[1, 1].real - 1.0) < 1e-9


def test_noisy_gate_matches_kraus_oracle():
    # independent channel evaluation: explicit Kraus sum for depolarizing and
    # amplitude+phase damping applied to R_x(pi)|0><0|R_x(pi)^dag
    prof = BUILTIN_PROFILES["iqm"]
    rho = channels.ground_state()
    got = apply_noisy_gate(rho, Gate("X", math.pi), prof)

    u = np.array([[0, -1j], [-1j, 0]])
    step = u @ rho @ u.conj().T
    step = (1 - prof.gate_error_p) * step + prof.gate_error_p * np.eye(2) / 2
    g1 = math.exp(-prof.t_gate / prof.t1)
    g2 = math.exp(-prof.t_gate / prof.t2)
    # amplitude damping gamma, then pure dephasing making total coherence decay g2
    gamma = 1 - g1
    k0 = np.array([[1, 0], [0, math.sqrt(1 - gamma)]])
    k1 = np.array([[0, math.sqrt(gamma)], [0, 0]])
    step = k0 @ step @ k0.conj().T + k1 @ step @ k1.conj().T
    lam = 1 - (g2 / math.sqrt(g1)) ** 2
    e0 = np.array([[1, 0], [0, math.sqrt(1 - lam)]])
    e1 = np.array([[0, 0], [0, math.sqrt(lam)]])
    expected = e0 @ step @ e0.conj().T + e1 @ step @ e1.conj().T
    assert np.allclose(got, expected, atol=1e-12)


def test_measure_z_pure_states():
    stream = seeding.stream("test", 1)
    counts = measure_z(channels.ground_state(), 0.0, 1024, stream)
    assert counts.n_zero == 1024 and counts.n_one == 0


def test_measure_z_mixed_state_converges():
    stream = seeding.stream("test", 2)
    counts = measure_z(np.eye(2, dtype=complex) / 2, 0.1, 10**6, stream)
    assert abs(counts.frac_zero - 0.5) < 3 * 0.5 / 1000


def test_measure_z_readout_confusion():
    stream = seeding.stream("test", 3)
    counts = measure_z(channels.ground_state(), 0.03, 10**6, stream)
    sigma = math.sqrt(0.97 * 0.03 / 10**6)
    assert abs(counts.frac_zero - 0.97) < 3 * sigma


def test_measure_x_plus_state():
    plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    counts = measure_x(plus, 0.0, 2048, seeding.stream("test", 4))
    assert counts.n_zero == 2048


def test_measure_x_ground_is_unbiased():
    counts = measure_x(channels.ground_state(), 0.0, 10**6, seeding.stream("test", 5))
    assert abs(counts.frac_zero - 0.5) < 2e-3


def test_measure_x_minus_state_sees_confusion_only():
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    counts = measure_x(minus, 0.03, 10**6, seeding.stream("test", 6))
    assert abs(counts.frac_zero - 0.03) < 1e-3


def test_shot_sampling_deterministic():
    rho = depolarize(channels.ground_state(), 0.3)
    a = measure_z(rho, 0.02, 4096, seeding.stream("shots", 9, 9))
    b = measure_z(rho, 0.02, 4096, seeding.stream("shots", 9, 9))
    assert a == b


def test_profile_roundtrip(tmp_path):
    path = tmp_path / "custom.profile"
    path.write_text(
        "# demo platform\n"
        "name = Demo\n"
        "T1 = 40us\n"
        "T2 = 20µs\n"
        "gate_error_p = 0.001\n"
        "t_gate = 30ns\n"
        "t_meas_total = 730ns\n"
        "readout_error = 0.02\n"
        "t_ext = 4us\n"
    )
    prof = channels.load_profile(path)
    assert prof.name == "Demo"
    assert abs(prof.t1 - 40e-6) < 1e-18
    assert abs(prof.t2 - 20e-6) < 1e-18
    assert abs(prof.t_gate - 30e-9) < 1e-20
    assert abs(prof.t_ext - 4e-6) < 1e-18


def test_profile_missing_key(tmp_path):
    path = tmp_path / "broken.profile"
    path.write_text("name = Broken\nT1 = 40us\n")
    with pytest.raises(ValueError, match="missing key"):
        channels.load_profile(path)


def test_builtin_profiles_physical():
    for prof in BUILTIN_PROFILES.values():
        assert prof.t2 <= 2 * prof.t1
        assert 0 <= prof.gate_error_p <= 1
