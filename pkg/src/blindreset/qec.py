"""Distance-d repetition-code cycles coupled to ancilla cleanliness.

Noise is phenomenological: independent data-bit flips at p_phys per cycle plus
independent syndrome-record flips at p_phys + 0.3 * (1 - f_clean).  Two
decoders are provided.  The majority-vote pipeline applies the minimum-weight
single-shot correction after every cycle and majority-votes the final
transversal readout; it has no temporal memory, so syndrome noise feeds the
data register directly and larger distances do not help.  The matching
pipeline decodes the full space-time defect history at the end and does gain
from distance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import seeding, stats
from ._kernels import match_defects
from .policies import ResetMethod

SYNDROME_COUPLING = 0.3

# Fixed cleanliness values used for decoder-coupled runs (measurement reset,
# no-reset, and blind reset by sequence length); live coupling to the reset
# simulation is available through live_cleanliness().
POLICY_FCLEAN = {
    ResetMethod.MEASUREMENT_RESET: 0.99,
    ResetMethod.NO_RESET: 0.50,
}
BLIND_FCLEAN_BY_LENGTH = {4: 0.88, 8: 0.767, 12: 0.706}

MAJORITY_VOTE = "majority_vote"
MATCHING = "matching"


@dataclass(frozen=True)
class RepCodeConfig:
    distance: int
    cycles: int
    p_phys: float
    method: ResetMethod
    f_clean: float
    seeds: int = 50
    shots: int = 1000

    def __post_init__(self):
        if self.distance < 3 or self.distance % 2 == 0:
            raise ValueError(f"distance must be an odd integer >= 3, got {self.distance}")
        if self.cycles < 1:
            raise ValueError("cycles must be >= 1")
        if not 0.0 <= self.p_phys < 0.5:
            raise ValueError(f"p_phys must lie in [0, 0.5), got {self.p_phys}")
        if not 0.0 <= self.f_clean <= 1.0:
            raise ValueError(f"f_clean out of range: {self.f_clean}")


@dataclass(frozen=True)
class QecRunResult:
    decoder: str
    cycles: tuple[int, ...]
    logical_error: tuple[float, ...]
    ci_lo: tuple[float, ...]
    ci_hi: tuple[float, ...]

    @property
    def final_error(self) -> float:
        return self.logical_error[-1]


def syndrome_noise(f_clean: float, p_phys: float) -> float:
    """Record-flip probability p_phys + 0.3 (1 - f_clean), clamped to [0, 1]."""
    if not 0.0 <= f_clean <= 1.0:
        raise ValueError(f"f_clean out of range: {f_clean}")
    if not 0.0 <= p_phys <= 1.0:
        raise ValueError(f"p_phys out of range: {p_phys}")
    return min(max(p_phys + (1.0 - f_clean) * SYNDROME_COUPLING, 0.0), 1.0)


def _simulate_block(cfg: RepCodeConfig, stream, shots: int):
    """Vectorized passive history: returns (history, readout) for a shot block.

    history: (shots, cycles, d-1) recorded parities; readout: (shots, d) final
    transversal readout.  Draw order per cycle is data, records, readout
    uniforms, so all pipelines share one stream layout.
    """
    d = cfg.distance
    s = syndrome_noise(cfg.f_clean, cfg.p_phys)
    x = np.zeros((shots, d), dtype=np.uint8)
    history = np.empty((shots, cfg.cycles, d - 1), dtype=np.uint8)
    u_read = None
    for c in range(cfg.cycles):
        x ^= stream.random((shots, d)) < cfg.p_phys
        syn = x[:, :-1] ^ x[:, 1:]
        history[:, c, :] = syn ^ (stream.random((shots, d - 1)) < s)
        u_read = stream.random((shots, d))
    readout = x ^ (u_read < cfg.p_phys)
    return history, readout


def simulate_cycles(cfg: RepCodeConfig, stream):
    """Single-shot passive cycle run: (syndrome history, final data readout)."""
    history, readout = _simulate_block(cfg, stream, shots=1)
    return history[0], readout[0]


def majority_vote_decode(readout) -> int:
    """Majority of the final data bits."""
    bits = np.asarray(readout)
    if bits.size % 2 == 0:
        raise ValueError("majority vote needs an odd number of bits")
    return int(bits.sum() > bits.size // 2)


def _single_shot_correction(records: np.ndarray) -> np.ndarray:
    """Minimum-weight data correction consistent with one recorded syndrome.

    records: (shots, d-1).  Prefix-XOR gives one consistent candidate; the
    lighter of candidate/complement is the minimum-weight choice (d odd, so
    there are no ties)."""
    shots, dm1 = records.shape
    d = dm1 + 1
    cand = np.zeros((shots, d), dtype=np.uint8)
    cand[:, 1:] = np.bitwise_xor.accumulate(records, axis=1)
    heavy = cand.sum(axis=1) > d // 2
    return np.where(heavy[:, None], cand ^ np.uint8(1), cand)


def _majority_curve(cfg: RepCodeConfig, stream, shots: int, eval_cycles):
    """Active per-cycle correction + final majority; per-cycle logical means."""
    d = cfg.distance
    s = syndrome_noise(cfg.f_clean, cfg.p_phys)
    x = np.zeros((shots, d), dtype=np.uint8)
    out = {}
    for c in range(1, cfg.cycles + 1):
        x ^= stream.random((shots, d)) < cfg.p_phys
        syn = x[:, :-1] ^ x[:, 1:]
        rec = syn ^ (stream.random((shots, d - 1)) < s)
        x ^= _single_shot_correction(rec)
        u_read = stream.random((shots, d))
        if c in eval_cycles:
            readout = x ^ (u_read < cfg.p_phys)
            out[c] = float((readout.sum(axis=1) > d // 2).mean())
    return out


def defect_coordinates(history: np.ndarray, readout: np.ndarray | None = None):
    """Space-time defects: syndrome changes between consecutive recorded rows.

    When `readout` is given, its own syndrome is appended as a final noiseless
    row so errors near the end terminate in matchable defects."""
    rows = np.asarray(history, dtype=np.uint8)
    if rows.ndim != 2 or rows.shape[0] == 0:
        raise ValueError("history must be a nonempty (cycles, d-1) array")
    if readout is not None:
        tail = (np.asarray(readout[:-1]) ^ np.asarray(readout[1:])).astype(np.uint8)
        rows = np.vstack([rows, tail[None, :]])
    diffs = rows.copy()
    diffs[1:] ^= rows[:-1]
    ts, xs = np.nonzero(diffs)
    return ts.astype(np.int64), xs.astype(np.int64)


def _correction_from_matching(ts, xs, partners, d: int) -> np.ndarray:
    corr = np.zeros(d, dtype=np.uint8)
    for i in range(len(ts)):
        p = int(partners[i])
        if p == -1:
            corr[: xs[i] + 1] ^= 1
        elif p == -2:
            corr[xs[i] + 1 :] ^= 1
        elif p > i:
            lo, hi = (xs[i], xs[p]) if xs[i] <= xs[p] else (xs[p], xs[i])
            corr[lo + 1 : hi + 1] ^= 1
    return corr


def mwpm_proxy_decode(history) -> np.ndarray:
    """Match space-time defects at minimum Manhattan weight; return data correction.

    Horizontal segments of the matching (including boundary segments past
    either chain end) translate into data-bit flips; purely temporal segments
    are measurement errors and touch no data."""
    rows = np.asarray(history, dtype=np.uint8)
    d = rows.shape[1] + 1
    ts, xs = defect_coordinates(rows)
    _, partners = match_defects(ts, xs, d)
    return _correction_from_matching(ts, xs, partners, d)


def _matching_curve(cfg: RepCodeConfig, stream, shots: int, eval_cycles):
    """Passive history + end-of-window matching decode at each evaluation cycle."""
    d = cfg.distance
    s = syndrome_noise(cfg.f_clean, cfg.p_phys)
    x = np.zeros((shots, d), dtype=np.uint8)
    history = np.empty((shots, cfg.cycles, d - 1), dtype=np.uint8)
    out = {}
    for c in range(1, cfg.cycles + 1):
        x ^= stream.random((shots, d)) < cfg.p_phys
        syn = x[:, :-1] ^ x[:, 1:]
        history[:, c - 1, :] = syn ^ (stream.random((shots, d - 1)) < s)
        u_read = stream.random((shots, d))
        if c in eval_cycles:
            readout = x ^ (u_read < cfg.p_phys)
            errs = 0
            for k in range(shots):
                ts, xs = defect_coordinates(history[k, :c, :], readout[k])
                if len(ts) == 0:
                    decoded = majority_vote_decode(readout[k])
                else:
                    _, partners = match_defects(ts, xs, d)
                    corr = _correction_from_matching(ts, xs, partners, d)
                    decoded = majority_vote_decode(readout[k] ^ corr)
                errs += decoded
            out[c] = errs / shots
    return out


def logical_error_curve(cfg: RepCodeConfig, decoder: str = MAJORITY_VOTE, eval_cycles=None) -> QecRunResult:
    """Monte Carlo logical-error curve; 95% bootstrap CIs over per-seed means."""
    if decoder not in (MAJORITY_VOTE, MATCHING):
        raise ValueError(f"unknown decoder: {decoder}")
    if eval_cycles is None:
        eval_cycles = range(1, cfg.cycles + 1) if decoder == MAJORITY_VOTE else (5, 10, 15, 20)
    eval_cycles = sorted(c for c in eval_cycles if 1 <= c <= cfg.cycles)
    if not eval_cycles:
        raise ValueError("no evaluation cycles inside the run window")
    curve = {c: [] for c in eval_cycles}
    runner = _majority_curve if decoder == MAJORITY_VOTE else _matching_curve
    for seed in range(cfg.seeds):
        stream = seeding.stream("qec", cfg.distance, cfg.cycles, seed)
        per_seed = runner(cfg, stream, cfg.shots, set(eval_cycles))
        for c in eval_cycles:
            curve[c].append(per_seed[c])
    means, lows, highs = [], [], []
    for c in eval_cycles:
        values = curve[c]
        means.append(float(np.mean(values)))
        lo, hi = stats.bootstrap_ci(values, stream=seeding.stream("bootstrap", cfg.distance, cfg.cycles, c))
        lows.append(lo)
        highs.append(hi)
    return QecRunResult(
        decoder=decoder,
        cycles=tuple(eval_cycles),
        logical_error=tuple(means),
        ci_lo=tuple(lows),
        ci_hi=tuple(highs),
    )


def policy_cleanliness(method: ResetMethod, length: int = 4) -> float:
    """Fixed policy -> f_clean mapping used by decoder-coupled runs."""
    if method is ResetMethod.BLIND_RESET:
        try:
            return BLIND_FCLEAN_BY_LENGTH[length]
        except KeyError:
            raise ValueError(
                f"no fixed cleanliness for blind reset at L={length}; use live_cleanliness"
            ) from None
    return POLICY_FCLEAN[method]


def live_cleanliness(method: ResetMethod, length: int, profile, seeds=range(42, 92), shots: int = 2048) -> float:
    """Mean measured cleanliness from the reset simulation (live coupling)."""
    from . import policies, su2

    values = []
    for seed in seeds:
        seq = su2.generate_sequence(seed, length)
        stream = policies.shot_stream(profile.name, method, seed, length)
        outcome = policies.run_reset_cycle(seq, method, profile, shots, stream)
        values.append(outcome.p_zero)
    return float(np.mean(values))


def effective_error(p_phys: float, f_clean: float, eta: float) -> float:
    """Filtered syndrome contribution: p_phys + eta (1 - f_clean)."""
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    if not 0.0 <= f_clean <= 1.0:
        raise ValueError(f"f_clean out of range: {f_clean}")
    return p_phys + eta * (1.0 - f_clean)


@dataclass(frozen=True, eq=True, unsafe_hash=False)
class ThresholdRow:
    label: str
    f_clean: float
    p_eff: float
    normalized: dict[int, float]


def threshold_table(
    p_phys: float = 1e-3,
    eta: float = 0.02,
    p_th: float = 0.029,
    rows=(("measurement_reset", 0.98), ("blind_reset", 0.88), ("no_reset", 0.70)),
    distances=(3, 5, 7),
) -> list[ThresholdRow]:
    """Near-threshold scaling (p_eff/p_th)^((d+1)/2), normalized to the first row at d=3."""
    if p_th <= 0:
        raise ValueError("p_th must be positive")
    rows = list(rows)
    anchor_label, anchor_f = rows[0]
    anchor = (effective_error(p_phys, anchor_f, eta) / p_th) ** 2
    table = []
    for label, f_clean in rows:
        p_eff = effective_error(p_phys, f_clean, eta)
        normalized = {d: (p_eff / p_th) ** ((d + 1) / 2) / anchor for d in distances}
        table.append(ThresholdRow(label=label, f_clean=f_clean, p_eff=p_eff, normalized=normalized))
    return table
