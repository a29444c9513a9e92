"""Benchmark CSV schema, run manifests, three-pass aggregation, decision matrix.

The result CSV has a fixed ten-column header; numeric fields are written with
nine significant digits, the scale factor of non-blind rows is the literal
token NA, and timestamps are ISO-8601 UTC.  A manifest sidecar carries the
64-bit hash of the canonicalized configuration (timestamps excluded) so reruns
compare equal.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, asdict
from datetime import datetime, timezone

import numpy as np

from . import latency, seeding, stats
from .channels import PlatformProfile
from .latency import DecisionReason
from .policies import ResetMethod, ResetOutcome

HEADER = "backend,method,seed,sequence_length,p_zero,p_x,unitary_error,lambda_used,shots,timestamp"
NA = "NA"

BIN_BLIND = "blind-favorable"
BIN_MEASUREMENT = "measurement-favorable"
BIN_RESTRICTED = "restricted"

_REASON_TO_BIN = {
    DecisionReason.FASTER_AND_CLEAN: BIN_BLIND,
    DecisionReason.TOO_SLOW: BIN_MEASUREMENT,
    DecisionReason.TOO_DIRTY: BIN_RESTRICTED,
    DecisionReason.RESTRICT_LENGTH: BIN_RESTRICTED,
}


@dataclass(frozen=True)
class ResultRow:
    backend: str
    method: ResetMethod
    seed: int
    sequence_length: int
    p_zero: float
    p_x: float
    unitary_error: float
    lambda_used: float | None
    shots: int
    timestamp: str

    @classmethod
    def from_outcome(cls, outcome: ResetOutcome, timestamp: str) -> "ResultRow":
        return cls(
            backend=outcome.backend,
            method=outcome.method,
            seed=outcome.seed,
            sequence_length=outcome.sequence_length,
            p_zero=outcome.p_zero,
            p_x=outcome.p_x,
            unitary_error=outcome.unitary_error,
            lambda_used=outcome.lambda_used,
            shots=outcome.shots,
            timestamp=timestamp,
        )

    def key(self):
        return (self.backend, self.method.value, self.seed, self.sequence_length)


def now_utc() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def write_rows(rows, path) -> None:
    """Write result rows with the byte-stable header and newline-terminated records."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(HEADER + "\n")
        for row in rows:
            lam = NA if row.lambda_used is None else _fmt(row.lambda_used)
            fh.write(
                f"{row.backend},{row.method.value},{row.seed},{row.sequence_length},"
                f"{_fmt(row.p_zero)},{_fmt(row.p_x)},{_fmt(row.unitary_error)},"
                f"{lam},{row.shots},{row.timestamp}\n"
            )


def read_rows(path) -> list[ResultRow]:
    """Read result rows back; malformed input raises with the offending line number."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if header != HEADER:
            raise ValueError(f"{path}:1: bad header {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 10:
                raise ValueError(f"{path}:{lineno}: expected 10 columns, got {len(parts)}")
            try:
                rows.append(
                    ResultRow(
                        backend=parts[0],
                        method=ResetMethod(parts[1]),
                        seed=int(parts[2]),
                        sequence_length=int(parts[3]),
                        p_zero=float(parts[4]),
                        p_x=float(parts[5]),
                        unitary_error=float(parts[6]),
                        lambda_used=None if parts[7] == NA else float(parts[7]),
                        shots=int(parts[8]),
                        timestamp=parts[9],
                    )
                )
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return rows


def config_hash(canonical_text: str) -> str:
    """64-bit hex digest of the canonicalized configuration text."""
    return hashlib.blake2b(canonical_text.encode("utf-8"), digest_size=8).hexdigest()


@dataclass(frozen=True)
class RunManifest:
    config_hash: str
    tool_version: str
    seeds: list[int]
    lengths: list[int]
    shots: int
    profiles: dict[str, dict]
    created: str

    @classmethod
    def build(cls, tool_version: str, seeds, lengths, shots: int, profiles, extra: dict | None = None) -> "RunManifest":
        profile_snapshot = {p.name: asdict(p) for p in profiles}
        canonical = json.dumps(
            {
                "tool_version": tool_version,
                "seeds": list(seeds),
                "lengths": list(lengths),
                "shots": shots,
                "profiles": profile_snapshot,
                "extra": extra or {},
            },
            sort_keys=True,
        )
        return cls(
            config_hash=config_hash(canonical),
            tool_version=tool_version,
            seeds=list(seeds),
            lengths=list(lengths),
            shots=shots,
            profiles=profile_snapshot,
            created=now_utc(),
        )

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")


def read_manifest(path) -> RunManifest:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return RunManifest(**data)


# ---------------------------------------------------------------------------
# Three-pass aggregation.

@dataclass(frozen=True)
class Pass1Row:
    backend: str
    method: ResetMethod
    length: int
    n: int
    mean_p_zero: float
    ci_lo: float
    ci_hi: float
    mean_p_x: float


@dataclass(frozen=True, eq=True, unsafe_hash=False)
class Pass2Row:
    method: ResetMethod
    length: int
    backend_means: dict[str, float]
    spread: float = 0.0
    n_matched: int = 0


@dataclass(frozen=True)
class Pass3Row:
    backend: str
    length: int
    f_clean: float
    bin: str
    reason: DecisionReason


@dataclass(frozen=True)
class AggregateReport:
    pass1: list[Pass1Row]
    pass2: list[Pass2Row]
    pass3: list[Pass3Row]
    backends: list[str]
    completeness: str  # "complete" or "partial"
    f_req: float


def aggregate(rows, profiles: dict[str, PlatformProfile] | None = None, f_req: float = 0.75) -> AggregateReport:
    """Pass 1: per-backend method summaries.  Pass 2: cross-backend comparisons
    over tuples present on every backend.  Pass 3: per-(backend, L) policy bins
    from the timing/cleanliness rule (needs profiles)."""
    rows = sorted(rows, key=lambda r: r.key())
    if not rows:
        raise ValueError("no rows to aggregate")
    backends = sorted({r.backend for r in rows})

    groups: dict[tuple, list[ResultRow]] = {}
    for row in rows:
        groups.setdefault((row.backend, row.method, row.sequence_length), []).append(row)

    pass1 = []
    for (backend, method, length), members in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1].value, kv[0][2])):
        p_zeros = [m.p_zero for m in members]
        if len(p_zeros) >= 2:
            ci = stats.bootstrap_ci(
                p_zeros,
                stream=seeding.stream("bootstrap", seeding.label_key(backend), seeding.label_key(method.value), length),
            )
        else:
            ci = (p_zeros[0], p_zeros[0])
        pass1.append(
            Pass1Row(
                backend=backend,
                method=method,
                length=length,
                n=len(members),
                mean_p_zero=float(np.mean(p_zeros)),
                ci_lo=ci[0],
                ci_hi=ci[1],
                mean_p_x=float(np.mean([m.p_x for m in members])),
            )
        )

    # matched tuples: (method, seed, L) present on all backends
    by_tuple: dict[tuple, dict[str, ResultRow]] = {}
    for row in rows:
        by_tuple.setdefault((row.method, row.seed, row.sequence_length), {})[row.backend] = row
    matched = {t: per for t, per in by_tuple.items() if len(per) == len(backends)}
    completeness = "complete" if len(matched) == len(by_tuple) and len(backends) > 1 else "partial"

    pass2 = []
    if len(backends) > 1 and matched:
        cells: dict[tuple, dict[str, list[float]]] = {}
        for (method, _seed, length), per in matched.items():
            cell = cells.setdefault((method, length), {b: [] for b in backends})
            for backend, row in per.items():
                cell[backend].append(row.p_zero)
        for (method, length), per in sorted(cells.items(), key=lambda kv: (kv[0][0].value, kv[0][1])):
            means = {b: float(np.mean(v)) for b, v in per.items()}
            pass2.append(
                Pass2Row(
                    method=method,
                    length=length,
                    backend_means=means,
                    spread=max(means.values()) - min(means.values()),
                    n_matched=len(next(iter(per.values()))),
                )
            )

    pass3 = []
    if profiles:
        blind_means = {
            (row.backend, row.length): row.mean_p_zero
            for row in pass1
            if row.method is ResetMethod.BLIND_RESET
        }
        for (backend, length), f_clean in sorted(blind_means.items()):
            profile = profiles.get(backend)
            if profile is None:
                continue
            decision = latency.decide(length, f_clean, f_req, profile)
            pass3.append(
                Pass3Row(
                    backend=backend,
                    length=length,
                    f_clean=f_clean,
                    bin=_REASON_TO_BIN[decision.reason],
                    reason=decision.reason,
                )
            )

    return AggregateReport(
        pass1=pass1,
        pass2=pass2,
        pass3=pass3,
        backends=backends,
        completeness=completeness,
        f_req=f_req,
    )


# ---------------------------------------------------------------------------
# Decision matrix.

@dataclass(frozen=True)
class DecisionRow:
    backend: str
    length: int
    timing_ok: bool
    clean_ok: bool
    rank_stable: str  # "stable" | "unstable" | "single-epoch"
    tuples_complete: str  # "complete" | "partial"
    action: str


def _method_ranking(report: AggregateReport, backend: str, length: int):
    rows = [r for r in report.pass1 if r.backend == backend and r.length == length]
    return tuple(r.method.value for r in sorted(rows, key=lambda r: -r.mean_p_zero))


def decision_matrix(
    report: AggregateReport,
    f_req: float,
    profiles: dict[str, PlatformProfile],
    previous: AggregateReport | None = None,
) -> list[DecisionRow]:
    """Four-condition policy table per (backend, L): timing, cleanliness, rank
    stability across epochs (when a previous report is supplied), completeness."""
    out = []
    for row in report.pass3 if report.pass3 else []:
        profile = profiles[row.backend]
        timing_ok = latency.blind_latency(row.length, profile) < latency.measurement_latency(profile)
        clean_ok = row.f_clean >= f_req
        if previous is None:
            rank = "single-epoch"
        else:
            same = _method_ranking(report, row.backend, row.length) == _method_ranking(previous, row.backend, row.length)
            rank = "stable" if same else "unstable"
        if not timing_ok:
            action = "Meas-reset"
        elif not clean_ok:
            action = "Restrict L"
        elif report.completeness != "complete":
            action = "Blind reset (per-backend)"
        else:
            action = "Blind reset"
        out.append(
            DecisionRow(
                backend=row.backend,
                length=row.length,
                timing_ok=timing_ok,
                clean_ok=clean_ok,
                rank_stable=rank,
                tuples_complete=report.completeness,
                action=action,
            )
        )
    return out
