import math

import numpy as np
import pytest

from blindreset import channels, policies, seeding, su2
from blindreset.channels import BUILTIN_PROFILES, PlatformProfile
from blindreset.policies import (
    ResetMethod,
    envelope,
    envelope_check,
    optimize_lambda,
    run_reset_cycle,
    shot_stream,
)
from blindreset.su2 import Gate, GateSequence, generate_sequence

QUIET = PlatformProfile("quiet", t1=10.0, t2=10.0, gate_error_p=0.0,
                        t_gate=1e-12, t_meas_total=1e-12, readout_error=0.0)

SINGLE = GateSequence(seed=0, gates=(Gate("X", math.pi / 2),))


def test_optimize_lambda_single_gate_closure():
    # (2 lam + 1) * pi/2 = 4*pi closes exactly at lam = 3.5, which the default
    # 40-point grid contains
    lam, eps = optimize_lambda(SINGLE)
    assert abs(lam - 3.5) < 1e-12
    assert eps < 1e-12
    lam200, eps200 = optimize_lambda(SINGLE, grid_points=200)
    step = 3.9 / 199
    assert abs(lam200 - 3.5) <= step
    assert eps200 < 0.02


def test_optimize_lambda_tie_breaks_small():
    seq = GateSequence(seed=0, gates=(Gate("X", 0.0), Gate("Y", 0.0)))
    lam, eps = optimize_lambda(seq)
    assert lam == pytest.approx(0.1)
    assert eps == 0.0


def test_optimize_lambda_matches_bruteforce():
    seq = generate_sequence(42, 8)
    lam, eps = optimize_lambda(seq, grid_points=200)
    # independent evaluation loop with plain numpy products
    u = np.eye(2, dtype=complex)
    mats = [su2.gate_matrix(g.axis, g.angle) for g in seq.gates]
    for m in mats:
        u = m @ u
    best = (None, np.inf)
    for lam_k in np.linspace(0.1, 4.0, 200):
        b = np.eye(2, dtype=complex)
        for g in seq.gates:
            b = su2.gate_matrix(g.axis, lam_k * g.angle) @ b
        r = b @ b
        e = 0.5 * np.linalg.norm(r @ u - np.eye(2))
        if e < best[1]:
            best = (lam_k, e)
    assert eps == pytest.approx(best[1], abs=1e-12)
    assert lam == pytest.approx(best[0], abs=1e-12)


def test_optimize_lambda_deterministic():
    seq = generate_sequence(7, 6)
    results = {optimize_lambda(seq) for _ in range(100)}
    assert len(results) == 1


def test_optimize_lambda_validation():
    with pytest.raises(ValueError):
        optimize_lambda(SINGLE, grid_points=1)
    with pytest.raises(ValueError):
        optimize_lambda(SINGLE, lambda_min=0.0)


def test_measurement_reset_is_ideal_without_noise():
    seq = generate_sequence(3, 6)
    out = run_reset_cycle(seq, ResetMethod.MEASUREMENT_RESET, QUIET, 4096, seeding.stream("test", 20))
    assert out.p_zero == 1.0
    assert out.unitary_error == 0.0
    assert out.lambda_used is None


def test_blind_reset_exact_closure_without_noise():
    out = run_reset_cycle(SINGLE, ResetMethod.BLIND_RESET, QUIET, 4096, seeding.stream("test", 21))
    assert out.p_zero == 1.0
    assert out.lambda_used == pytest.approx(3.5)
    assert out.unitary_error < 1e-12


def test_no_reset_records_accumulation_residual():
    seq = generate_sequence(9, 5)
    out = run_reset_cycle(seq, ResetMethod.NO_RESET, QUIET, 2048, seeding.stream("test", 22))
    expected = su2.residual_error(np.eye(2, dtype=complex), su2.compose(seq))
    assert out.unitary_error == pytest.approx(expected)
    assert out.lambda_used is None


def test_blind_beats_coherent_floor_without_noise():
    # with p = 0 the measured cleanliness stays above (1 - eps*)^2 (the
    # coherent-envelope floor) up to shot noise
    for seed in range(42, 62):
        seq = generate_sequence(seed, 6)
        out = run_reset_cycle(seq, ResetMethod.BLIND_RESET, QUIET, 2048, seeding.stream("test", seed))
        floor = (1.0 - out.unitary_error) ** 2
        assert out.p_zero >= floor - 0.05


def test_measurement_reset_independent_of_length():
    prof = BUILTIN_PROFILES["iqm"]
    values = []
    for length in (4, 8, 12, 16, 20):
        seq = generate_sequence(50, length)
        out = run_reset_cycle(seq, ResetMethod.MEASUREMENT_RESET, prof, 10**5,
                              shot_stream(prof.name, ResetMethod.MEASUREMENT_RESET, 50, length))
        values.append(out.p_zero)
    assert max(values) - min(values) <= 0.02


def test_run_reset_cycle_rejects_zero_shots():
    with pytest.raises(ValueError):
        run_reset_cycle(SINGLE, ResetMethod.NO_RESET, QUIET, 0, seeding.stream("test", 23))


def test_outcome_fields_round_trip():
    prof = BUILTIN_PROFILES["iqm"]
    seq = generate_sequence(44, 4)
    out = run_reset_cycle(seq, ResetMethod.BLIND_RESET, prof, 2048,
                          shot_stream(prof.name, ResetMethod.BLIND_RESET, 44, 4))
    assert out.backend == "IQM"
    assert out.seed == 44 and out.sequence_length == 4
    assert 0.0 <= out.p_zero <= 1.0 and 0.0 <= out.p_x <= 1.0
    assert 0.1 <= out.lambda_used <= 4.0


def test_envelope_values():
    assert envelope(0.0, 0.0, 4) == 1.0
    assert envelope(1.0, 0.0, 9) == 0.0
    assert envelope(0.2, 0.001, 4) == pytest.approx(0.5 + 0.14 * 0.999**8, abs=1e-12)
    assert envelope(0.2, 0.001, 4) == pytest.approx(0.6389, abs=1e-4)


def test_envelope_range_and_validation():
    assert envelope(math.sqrt(2), 0.0, 1) == pytest.approx(0.5 + (1 - math.sqrt(2)) ** 2 - 0.5)
    for eps in (0.0, 0.4, 1.0, math.sqrt(2)):
        for p, length in ((0.0, 1), (0.3, 10), (1.0, 3)):
            assert 0.0 <= envelope(eps, p, length) <= 1.0
    with pytest.raises(ValueError):
        envelope(-0.1, 0.0, 1)
    with pytest.raises(ValueError):
        envelope(0.1, 1.5, 1)


def _blind_outcome(p_zero, eps, length=4):
    return policies.ResetOutcome(
        backend="IQM", method=ResetMethod.BLIND_RESET, seed=1, sequence_length=length,
        p_zero=p_zero, p_x=0.5, unitary_error=eps, lambda_used=1.0, shots=2048,
    )


def test_envelope_check_boundary_is_consistent():
    prof = BUILTIN_PROFILES["iqm"]
    value = envelope(0.3, prof.gate_error_p, 4)
    check = envelope_check(_blind_outcome(value, 0.3), prof)
    assert check.consistent and check.delta == 0.0


def test_envelope_check_reports_excess_over_margin():
    prof = BUILTIN_PROFILES["iqm"]
    value = envelope(0.3, prof.gate_error_p, 4)
    check = envelope_check(_blind_outcome(value + 0.20, 0.3), prof)
    assert not check.consistent
    assert check.delta == pytest.approx(0.15)


def test_envelope_check_requires_blind():
    out = policies.ResetOutcome(
        backend="IQM", method=ResetMethod.NO_RESET, seed=1, sequence_length=4,
        p_zero=0.5, p_x=0.5, unitary_error=0.3, lambda_used=None, shots=2048,
    )
    with pytest.raises(ValueError):
        envelope_check(out, BUILTIN_PROFILES["iqm"])
