"""Scale-factor landscape sweeps: optimum, curvature, and basin classification.

Curvature kappa is the second central finite difference of the residual at the
grid optimum divided by the grid step squared (a discrete d^2 eps / d lambda^2);
boundary optima use the one-sided difference.  Near-optimal local minima are
interior grid points strictly below both neighbors with residual within twice
the optimum.  Classification priority: multimodal > sharp > moderate > flat,
with single-basin kappa in (5, 50] mapped to moderate and kappa <= 5 to flat.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import seeding, stats, su2
from .su2 import GateSequence

SHARP = "sharp"
MODERATE = "moderate"
FLAT = "flat"
MULTIMODAL = "multimodal"

KAPPA_SHARP = 50.0
KAPPA_FLAT = 5.0

DEFAULT_POINTS = 200
LAMBDA_RANGE = (0.1, 4.0)


@dataclass(frozen=True)
class LandscapeSummary:
    seed: int
    length: int
    lambda_opt: float
    epsilon_opt: float
    kappa: float
    n_local_minima: int
    label: str


@dataclass(frozen=True)
class LengthAggregate:
    length: int
    mean_epsilon: float
    epsilon_ci: tuple[float, float]
    mean_kappa: float
    sd_kappa: float
    class_fractions: dict[str, float]


def sweep_lambda(seq: GateSequence, points: int = DEFAULT_POINTS,
                 lambda_min: float = LAMBDA_RANGE[0], lambda_max: float = LAMBDA_RANGE[1]):
    """Residual curve over the uniform scale-factor grid (noiseless unitaries)."""
    if points < 3:
        raise ValueError("need at least three grid points")
    lams = np.linspace(lambda_min, lambda_max, points)
    axes, angles = seq.arrays()
    eps = su2._kernels.lambda_residuals(axes, angles, lams)
    return lams, eps


def characterize(lams, eps, seed: int, length: int) -> LandscapeSummary:
    """Summarize one sweep: optimum, discrete curvature, minima count, class."""
    lams = np.asarray(lams, dtype=float)
    eps = np.asarray(eps, dtype=float)
    if eps.size < 3:
        raise ValueError("curve must have at least three points")
    h = lams[1] - lams[0]
    i = int(np.argmin(eps))
    eps_opt = float(eps[i])
    if i == 0:
        kappa = (eps[2] - 2.0 * eps[1] + eps[0]) / h**2
    elif i == eps.size - 1:
        kappa = (eps[-1] - 2.0 * eps[-2] + eps[-3]) / h**2
    else:
        kappa = (eps[i + 1] - 2.0 * eps[i] + eps[i - 1]) / h**2
    kappa = float(kappa)

    # a boundary optimum is not an interior minimum, so it never adds to the count
    interior = (eps[1:-1] < eps[:-2]) & (eps[1:-1] < eps[2:]) & (eps[1:-1] <= 2.0 * eps_opt)
    n_minima = int(interior.sum())

    if n_minima >= 2:
        label = MULTIMODAL
    elif kappa > KAPPA_SHARP:
        label = SHARP
    elif kappa > KAPPA_FLAT:
        label = MODERATE
    else:
        label = FLAT
    return LandscapeSummary(
        seed=seed,
        length=length,
        lambda_opt=float(lams[i]),
        epsilon_opt=eps_opt,
        kappa=kappa,
        n_local_minima=n_minima,
        label=label,
    )


def characterize_sequence(seq: GateSequence, points: int = DEFAULT_POINTS) -> LandscapeSummary:
    lams, eps = sweep_lambda(seq, points=points)
    return characterize(lams, eps, seq.seed, seq.length)


def landscape_report(seeds, lengths, points: int = DEFAULT_POINTS) -> tuple[list[LandscapeSummary], list[LengthAggregate]]:
    """Per-cell summaries plus per-length aggregates (CIs over seeds)."""
    seeds = list(seeds)
    lengths = list(lengths)
    if not seeds or not lengths:
        raise ValueError("need at least one seed and one length")
    cells = []
    aggregates = []
    for length in lengths:
        rows = []
        for seed in seeds:
            summary = characterize_sequence(su2.generate_sequence(seed, length), points=points)
            rows.append(summary)
        cells.extend(rows)
        eps_values = [r.epsilon_opt for r in rows]
        kappas = [r.kappa for r in rows]
        if len(eps_values) >= 2:
            ci = stats.bootstrap_ci(eps_values, stream=seeding.stream("bootstrap", length, points))
        else:
            ci = (eps_values[0], eps_values[0])
        fractions = {
            label: sum(r.label == label for r in rows) / len(rows)
            for label in (SHARP, MODERATE, FLAT, MULTIMODAL)
        }
        aggregates.append(
            LengthAggregate(
                length=length,
                mean_epsilon=float(np.mean(eps_values)),
                epsilon_ci=ci,
                mean_kappa=float(np.mean(kappas)),
                sd_kappa=float(np.std(kappas, ddof=1)) if len(kappas) > 1 else 0.0,
                class_fractions=fractions,
            )
        )
    return cells, aggregates
