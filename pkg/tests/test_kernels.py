import numpy as np
import pytest

from blindreset import _kernels
from blindreset._kernels import implementations


def random_instance(rng, max_len=30):
    n = int(rng.integers(1, max_len))
    axes = rng.integers(0, 3, size=n).astype(np.int64)
    angles = rng.uniform(0, 2 * np.pi, size=n)
    return axes, angles


def test_active_implementation_exposed():
    impls = implementations()
    assert "python" in impls
    assert _kernels.COMPILED == ("compiled" in impls)


@pytest.mark.skipif(not _kernels.COMPILED, reason="compiled kernels unavailable")
def test_compiled_matches_python_bitwise():
    impls = implementations()
    py, cc = impls["python"], impls["compiled"]
    rng = np.random.default_rng(0)
    lams = np.linspace(0.1, 4.0, 200)
    for _ in range(300):
        axes, angles = random_instance(rng)
        lam = float(rng.uniform(0, 4))
        assert np.array_equal(py.compose_rotations(axes, angles, lam),
                              cc.compose_rotations(axes, angles, lam))
        assert py.reset_residual(axes, angles, lam) == cc.reset_residual(axes, angles, lam)
        assert np.array_equal(py.lambda_residuals(axes, angles, lams),
                              cc.lambda_residuals(axes, angles, lams))


@pytest.mark.skipif(not _kernels.COMPILED, reason="compiled kernels unavailable")
def test_matching_implementations_agree():
    impls = implementations()
    py, cc = impls["python"], impls["compiled"]
    rng = np.random.default_rng(1)
    checked = 0
    while checked < 150:
        d = int(rng.choice([3, 5, 7]))
        cycles = int(rng.integers(2, 9))
        rows = (rng.random((cycles, d - 1)) < 0.15).astype(np.uint8)
        diffs = rows.copy()
        diffs[1:] ^= rows[:-1]
        ts, xs = np.nonzero(diffs)
        if len(ts) > 14:  # keep the exact DP cheap in this parity loop
            continue
        ts, xs = ts.astype(np.int64), xs.astype(np.int64)
        wa, pa = py.match_defects(ts, xs, d)
        wb, pb = cc.match_defects(ts, xs, d)
        assert wa == wb
        assert np.array_equal(pa, pb)
        checked += 1


def test_python_fallback_standalone():
    # the fallback works without the extension (identity and known product)
    py = implementations()["python"]
    axes = np.array([0, 0], dtype=np.int64)
    angles = np.array([np.pi / 2, np.pi / 2])
    expected = np.array([[0, -1j], [-1j, 0]], dtype=complex)
    assert np.allclose(py.compose_rotations(axes, angles), expected, atol=1e-12)
    assert py.reset_residual(np.array([0], dtype=np.int64), np.array([np.pi / 2]), 3.5) < 1e-12


def test_matching_empty_input():
    for impl in implementations().values():
        weight, partners = impl.match_defects(np.array([], dtype=np.int64), np.array([], dtype=np.int64), 3)
        assert weight == 0
        assert partners.size == 0
