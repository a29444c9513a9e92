"""Hot numeric kernels: compiled extension when available, pure Python otherwise.

The compiled module and the fallback implement identical arithmetic; the
benchmark script under benchmarks/ compares their throughput.
"""

try:
    from . import _core as _impl

    COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    from . import _pyfallback as _impl

    COMPILED = False

compose_rotations = _impl.compose_rotations
reset_residual = _impl.reset_residual
lambda_residuals = _impl.lambda_residuals
match_defects = _impl.match_defects


def implementations():
    """All available kernel implementations, keyed by name (for tests/benchmarks)."""
    from . import _pyfallback

    impls = {"python": _pyfallback}
    if COMPILED:
        impls["compiled"] = _impl
    return impls
