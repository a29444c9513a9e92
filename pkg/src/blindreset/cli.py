"""Batch command-line front-end: sweeps, timing tables, decoder runs, reports.

Tables go to standard output, progress to standard error.  Every subcommand is
deterministic for a fixed configuration and worker count never changes results
(cells derive their streams from their own keys).  Exit codes: 0 success,
1 validation failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, bench_io, landscape as landscape_mod, latency, qec, seeding, stats
from .channels import BUILTIN_PROFILES, PlatformProfile, parse_keyvalue, resolve_profile
from .policies import METHOD_ORDER, ResetMethod, envelope_check, run_reset_cycle, shot_stream
from .su2 import generate_sequence

DEFAULT_SEEDS = "42..91"
DEFAULT_LENGTHS = "4,6,8,10,12,14,16,18,20"
DEFAULT_SHOTS = 2048
DEFAULT_F_REQ = 0.75
DEFAULT_GRID = 40


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; validation is exit 1
        raise CliError(message, code=1)


def parse_seeds(text: str) -> list[int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise CliError(f"empty seed range: {text}")
        return list(range(lo, hi + 1))
    return [int(tok) for tok in text.split(",") if tok]


def parse_lengths(text: str) -> list[int]:
    text = text.strip()
    if ":" in text:
        lo, hi, step = (int(tok) for tok in text.split(":"))
        return list(range(lo, hi + 1, step))
    return [int(tok) for tok in text.split(",") if tok]


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _write_csv(path, header: str, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(str(v) for v in row) + "\n")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", code=2) from None


def _ensure_outdir(out):
    from pathlib import Path

    path = Path(out)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create output directory {path}: {exc}", code=2) from None
    return path


def _write_manifest(out, stem: str, profiles, extra: dict, seeds=(), lengths=(), shots: int = 0):
    """Sidecar manifest for a subcommand's outputs; hash covers config, not timestamps."""
    manifest = bench_io.RunManifest.build(
        __version__, seeds, lengths, shots, profiles, extra={"command": stem, **extra},
    )
    manifest.write(out / f"{stem}.manifest.json")
    return manifest


def _profiles_from_args(names: str) -> dict[str, PlatformProfile]:
    out = {}
    for token in names.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            profile = resolve_profile(token)
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot load profile {token!r}: {exc}") from None
        out[profile.name] = profile
    if not out:
        raise CliError("no profiles selected")
    return out


# ---------------------------------------------------------------------------
# sweep

def _sweep_cell(args):
    profile, method_value, seed, length, shots, grid_points = args
    method = ResetMethod(method_value)
    seq = generate_sequence(seed, length)
    stream = shot_stream(profile.name, method, seed, length)
    outcome = run_reset_cycle(seq, method, profile, shots, stream, grid_points=grid_points)
    return outcome


def run_sweep_cells(profiles, methods, seeds, lengths, shots, grid_points, workers=1):
    cells = [
        (profile, method.value, seed, length, shots, grid_points)
        for profile in profiles
        for method in methods
        for seed in seeds
        for length in lengths
    ]
    if workers <= 1:
        outcomes = [_sweep_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_sweep_cell, cells, chunksize=16))
    outcomes.sort(key=lambda o: (o.backend, o.method.value, o.seed, o.sequence_length))
    return outcomes


def cmd_sweep(args) -> int:
    out = _ensure_outdir(args.out)
    profiles = _profiles_from_args(args.profiles)
    seeds = parse_seeds(args.seeds)
    lengths = parse_lengths(args.lengths)
    methods = list(METHOD_ORDER)
    manifest = bench_io.RunManifest.build(
        __version__, seeds, lengths, args.shots, profiles.values(),
        extra={"grid_points": args.grid_points},
    )
    manifest.write(out / "benchmark.manifest.json")  # manifest precedes any result row
    _progress(f"sweep: {len(profiles)} backends x {len(methods)} methods x "
              f"{len(seeds)} seeds x {len(lengths)} lengths -> {len(profiles) * 3 * len(seeds) * len(lengths)} rows")
    outcomes = run_sweep_cells(profiles.values(), methods, seeds, lengths,
                               args.shots, args.grid_points, workers=args.workers)
    timestamp = bench_io.now_utc()
    rows = [bench_io.ResultRow.from_outcome(o, timestamp) for o in outcomes]
    try:
        bench_io.write_rows(rows, out / "benchmark.csv")
    except OSError as exc:
        raise CliError(f"cannot write benchmark.csv: {exc}", code=2) from None
    print(f"wrote {len(rows)} rows to {out / 'benchmark.csv'} (config {manifest.config_hash})")
    return 0


# ---------------------------------------------------------------------------
# latency

def cmd_latency(args) -> int:
    out = _ensure_outdir(args.out)
    profiles = _profiles_from_args(args.profiles)
    _write_manifest(out, "latency", profiles.values(),
                    {"t_ext": args.t_ext, "t_ext_max": args.t_ext_max, "t_ext_points": args.t_ext_points})
    t_ext = args.t_ext
    table = []
    for name, profile in profiles.items():
        table.append((name, profile, latency.crossover(profile), None))
    if t_ext > 0:
        base = profiles.get("IQM") or next(iter(profiles.values()))
        linked = base.with_ext(t_ext)
        native = latency.crossover(base)
        expanded = latency.crossover(linked)
        ratio = expanded / native if native else float("inf")
        table.append((f"{base.name}+ext", linked, expanded, ratio))

    print(f"{'profile':<12} {'t_gate':>10} {'T_meas':>12} {'L*':>4} {'ratio':>7}")
    rows = []
    for name, profile, l_star, ratio in table:
        t_meas = latency.measurement_latency(profile)
        ratio_text = f"{ratio:.1f}x" if ratio else "-"
        if ratio is None:
            ratio_text = "-"
        print(f"{name:<12} {profile.t_gate * 1e9:>8.1f}ns {t_meas * 1e9:>10.1f}ns {l_star:>4} {ratio_text:>7}")
        rows.append((name, f"{profile.t_gate:.9g}", f"{t_meas:.9g}", l_star, "" if ratio is None else f"{ratio:.9g}"))
    _write_csv(out / "latency_table.csv", "profile,t_gate,t_meas,l_star,ratio", rows)

    points = []
    for name, profile, l_star, _ in table:
        for length in range(0, max(2 * l_star, 20) + 1):
            points.append((name, length, f"{latency.blind_latency(length, profile):.9g}",
                           f"{latency.measurement_latency(profile):.9g}", l_star))
    _write_csv(out / "latency_points.csv", "profile,length,t_blind,t_meas,l_star", points)

    sweep_rows = []
    grid = np.linspace(0.0, args.t_ext_max, args.t_ext_points)
    for name, profile in profiles.items():
        for value, l_star in latency.ext_sweep(profile, grid):
            sweep_rows.append((name, f"{value:.9g}", l_star))
    _write_csv(out / "ext_sweep.csv", "profile,t_ext,l_star", sweep_rows)
    return 0


# ---------------------------------------------------------------------------
# qec

def cmd_qec(args) -> int:
    out = _ensure_outdir(args.out)
    distances = [int(tok) for tok in args.distances.split(",")]
    for d in distances:
        if d % 2 == 0 or d < 3:
            raise CliError(f"distance must be an odd integer >= 3, got {d}")
    eval_cycles = [int(tok) for tok in args.eval_cycles.split(",")]
    decoders = [tok.strip() for tok in args.decoders.split(",")]
    for decoder in decoders:
        if decoder not in (qec.MAJORITY_VOTE, qec.MATCHING):
            raise CliError(f"unknown decoder {decoder!r}")

    _write_manifest(out, "qec", [],
                    {"distances": args.distances, "cycles": args.cycles,
                     "eval_cycles": args.eval_cycles, "seeds": args.seeds, "shots": args.shots,
                     "p_phys": args.p_phys, "decoders": args.decoders,
                     "blind_length": args.blind_length, "live": bool(args.live_fclean)})
    policies_run = [
        (ResetMethod.MEASUREMENT_RESET, None),
        (ResetMethod.BLIND_RESET, args.blind_length),
        (ResetMethod.NO_RESET, None),
    ]
    rows = []
    for decoder in decoders:
        for d in distances:
            for method, length in policies_run:
                if args.live_fclean:
                    profile = resolve_profile(args.live_profile)
                    f_clean = qec.live_cleanliness(method, length or args.blind_length, profile)
                else:
                    f_clean = qec.policy_cleanliness(method, length or args.blind_length)
                cfg = qec.RepCodeConfig(
                    distance=d, cycles=args.cycles, p_phys=args.p_phys,
                    method=method, f_clean=f_clean, seeds=args.seeds, shots=args.shots,
                )
                _progress(f"qec: decoder={decoder} d={d} method={method.value} f_clean={f_clean:.3f}")
                result = qec.logical_error_curve(cfg, decoder=decoder, eval_cycles=eval_cycles)
                for c, est, lo, hi in zip(result.cycles, result.logical_error, result.ci_lo, result.ci_hi):
                    rows.append((c, method.value, d, decoder, f"{est:.9g}", f"{lo:.9g}", f"{hi:.9g}"))
    _write_csv(out / "qec_curves.csv", "cycle,policy,distance,decoder,logical_error,ci_lo,ci_hi", rows)
    print(f"wrote {len(rows)} curve points to {out / 'qec_curves.csv'}")
    return 0


# ---------------------------------------------------------------------------
# landscape

def cmd_landscape(args) -> int:
    out = _ensure_outdir(args.out)
    seeds = parse_seeds(args.seeds)
    lengths = parse_lengths(args.lengths)
    _write_manifest(out, "landscape", [], {"points": args.points}, seeds=seeds, lengths=lengths)
    _progress(f"landscape: {len(seeds)} seeds x {len(lengths)} lengths at {args.points} grid points")
    cells, aggregates = landscape_mod.landscape_report(seeds, lengths, points=args.points)
    _write_csv(
        out / "landscape_cells.csv",
        "seed,L,lambda_opt,epsilon_opt,kappa,n_minima,class",
        [
            (c.seed, c.length, f"{c.lambda_opt:.9g}", f"{c.epsilon_opt:.9g}",
             f"{c.kappa:.9g}", c.n_local_minima, c.label)
            for c in cells
        ],
    )
    _write_csv(
        out / "landscape_summary.csv",
        "L,mean_epsilon,eps_ci_lo,eps_ci_hi,mean_kappa,sd_kappa,frac_sharp,frac_moderate,frac_flat,frac_multimodal",
        [
            (a.length, f"{a.mean_epsilon:.9g}", f"{a.epsilon_ci[0]:.9g}", f"{a.epsilon_ci[1]:.9g}",
             f"{a.mean_kappa:.9g}", f"{a.sd_kappa:.9g}",
             f"{a.class_fractions['sharp']:.9g}", f"{a.class_fractions['moderate']:.9g}",
             f"{a.class_fractions['flat']:.9g}", f"{a.class_fractions['multimodal']:.9g}")
            for a in aggregates
        ],
    )
    for a in aggregates:
        print(f"L={a.length:>2}  eps_opt={a.mean_epsilon:.3f}  kappa={a.mean_kappa:.1f}  "
              f"sharp={a.class_fractions['sharp']:.2f}  multimodal={a.class_fractions['multimodal']:.2f}")
    return 0


# ---------------------------------------------------------------------------
# threshold

def cmd_threshold(args) -> int:
    out = _ensure_outdir(args.out)
    _write_manifest(out, "threshold", [], {"p_phys": args.p_phys, "eta": args.eta, "p_th": args.p_th})
    table = qec.threshold_table(p_phys=args.p_phys, eta=args.eta, p_th=args.p_th)
    print(f"{'method':<20} {'f_clean':>8} {'p_eff':>10} {'d=3':>10} {'d=5':>10} {'d=7':>10}")
    rows = []
    for row in table:
        print(f"{row.label:<20} {row.f_clean:>8.2f} {row.p_eff:>10.2e} "
              f"{row.normalized[3]:>10.3g} {row.normalized[5]:>10.3g} {row.normalized[7]:>10.3g}")
        rows.append((row.label, f"{row.f_clean:.9g}", f"{row.p_eff:.9g}",
                     f"{row.normalized[3]:.9g}", f"{row.normalized[5]:.9g}", f"{row.normalized[7]:.9g}"))
    _write_csv(out / "threshold_table.csv", "method,f_clean,p_eff,pl_d3,pl_d5,pl_d7", rows)
    return 0


# ---------------------------------------------------------------------------
# t1t2

def _t1t2_cell(args):
    t1, t2, length, seeds, shots, base_name = args
    profile = PlatformProfile(
        name=base_name, t1=t1, t2=t2,
        gate_error_p=BUILTIN_PROFILES["iqm"].gate_error_p,
        t_gate=BUILTIN_PROFILES["iqm"].t_gate,
        t_meas_total=BUILTIN_PROFILES["iqm"].t_meas_total,
        readout_error=BUILTIN_PROFILES["iqm"].readout_error,
    )
    blind, none = [], []
    for seed in seeds:
        seq = generate_sequence(seed, length)
        key = (seeding.label_key(f"{t1:.6e}/{t2:.6e}"), seed, length)
        b = run_reset_cycle(seq, ResetMethod.BLIND_RESET, profile, shots,
                            seeding.stream("shots", *key, 2))
        n = run_reset_cycle(seq, ResetMethod.NO_RESET, profile, shots,
                            seeding.stream("shots", *key, 0))
        blind.append(b.p_zero)
        none.append(n.p_zero)
    return t1, t2, float(np.mean(blind) - np.mean(none))


def t1t2_grid(t1_points=8, t2_points=8, length=8, seeds=range(42, 52), shots=2048, workers=1):
    """Blind minus no-reset cleanliness over the log-spaced coherence plane."""
    t1_values = np.geomspace(0.1e-6, 100e-6, t1_points)
    t2_values = np.geomspace(0.05e-6, 50e-6, t2_points)
    cells = [
        (float(t1), float(t2), length, list(seeds), shots, "IQM-scan")
        for t1 in t1_values
        for t2 in t2_values
        if t2 <= 2 * t1
    ]
    if workers <= 1:
        results = [_t1t2_cell(cell) for cell in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_t1t2_cell, cells))
    results.sort(key=lambda r: (r[0], r[1]))
    return t1_values, t2_values, results


def cmd_t1t2(args) -> int:
    out = _ensure_outdir(args.out)
    seeds = parse_seeds(args.seeds)
    _write_manifest(out, "t1t2", [],
                    {"t1_points": args.t1_points, "t2_points": args.t2_points, "length": args.length},
                    seeds=seeds, shots=args.shots)
    _progress(f"t1t2: {args.t1_points}x{args.t2_points} grid, L={args.length}, {len(seeds)} seeds")
    _, _, results = t1t2_grid(args.t1_points, args.t2_points, args.length, seeds, args.shots, args.workers)
    _write_csv(
        out / "t1t2_grid.csv",
        "t1,t2,advantage",
        [(f"{t1:.9g}", f"{t2:.9g}", f"{adv:.9g}") for t1, t2, adv in results],
    )
    worst = min(adv for _, _, adv in results)
    print(f"{len(results)} physically valid cells; minimum blind-vs-none advantage {worst:+.4f}")
    return 0


# ---------------------------------------------------------------------------
# aggregate / decide

def _load_rows(path):
    try:
        return bench_io.read_rows(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", code=2) from None
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _profiles_for_rows(rows, spec: str | None):
    if spec:
        return _profiles_from_args(spec)
    known = {p.name: p for p in BUILTIN_PROFILES.values()}
    return {b: known[b] for b in sorted({r.backend for r in rows}) if b in known}


def cmd_aggregate(args) -> int:
    out = _ensure_outdir(args.out)
    rows = _load_rows(args.input)
    profiles = _profiles_for_rows(rows, args.profiles)
    _write_manifest(out, "aggregate", profiles.values(), {"input": str(args.input), "f_req": args.f_req})
    report = bench_io.aggregate(rows, profiles=profiles, f_req=args.f_req)
    _write_csv(
        out / "aggregate_pass1.csv",
        "backend,method,L,n,mean_p_zero,ci_lo,ci_hi,mean_p_x",
        [
            (r.backend, r.method.value, r.length, r.n, f"{r.mean_p_zero:.9g}",
             f"{r.ci_lo:.9g}", f"{r.ci_hi:.9g}", f"{r.mean_p_x:.9g}")
            for r in report.pass1
        ],
    )
    _write_csv(
        out / "aggregate_pass2.csv",
        "method,L,n_matched,spread," + ",".join(report.backends),
        [
            (r.method.value, r.length, r.n_matched, f"{r.spread:.9g}",
             *(f"{r.backend_means[b]:.9g}" for b in report.backends))
            for r in report.pass2
        ],
    )
    _write_csv(
        out / "aggregate_pass3.csv",
        "backend,L,f_clean,bin,reason",
        [(r.backend, r.length, f"{r.f_clean:.9g}", r.bin, r.reason.value) for r in report.pass3],
    )

    envelope_rows = []
    for row in rows:
        if row.method is not ResetMethod.BLIND_RESET or row.backend not in profiles:
            continue
        check = envelope_check(row_to_outcome(row), profiles[row.backend])
        envelope_rows.append(
            (row.backend, row.seed, row.sequence_length, f"{row.p_zero:.9g}",
             f"{check.envelope_value:.9g}", f"{check.delta:.9g}",
             "consistent" if check.consistent else "violation")
        )
    _write_csv(out / "envelope_rows.csv", "backend,seed,L,p_zero,envelope,delta,status", envelope_rows)

    print(f"pass1: {len(report.pass1)} groups; pass2: {len(report.pass2)} matched cells; "
          f"pass3: {len(report.pass3)} bins; completeness: {report.completeness}")
    for r in report.pass3:
        print(f"  {r.backend} L={r.length:>2} f_clean={r.f_clean:.3f} -> {r.bin}")
    return 0


def row_to_outcome(row):
    from .policies import ResetOutcome

    return ResetOutcome(
        backend=row.backend, method=row.method, seed=row.seed,
        sequence_length=row.sequence_length, p_zero=row.p_zero, p_x=row.p_x,
        unitary_error=row.unitary_error, lambda_used=row.lambda_used, shots=row.shots,
    )


def cmd_decide(args) -> int:
    out = _ensure_outdir(args.out)
    rows = _load_rows(args.input)
    profiles = _profiles_for_rows(rows, args.profiles)
    _write_manifest(out, "decide", profiles.values(),
                    {"input": str(args.input), "previous": str(args.previous), "f_req": args.f_req})
    report = bench_io.aggregate(rows, profiles=profiles, f_req=args.f_req)
    previous = None
    if args.previous:
        prev_rows = _load_rows(args.previous)
        previous = bench_io.aggregate(prev_rows, profiles=profiles, f_req=args.f_req)
    table = bench_io.decision_matrix(report, args.f_req, profiles, previous=previous)
    print(f"{'backend':<10} {'L':>3} {'timing':>7} {'clean':>6} {'rank':>13} {'tuples':>9}  action")
    rows_out = []
    for r in table:
        print(f"{r.backend:<10} {r.length:>3} {str(r.timing_ok):>7} {str(r.clean_ok):>6} "
              f"{r.rank_stable:>13} {r.tuples_complete:>9}  {r.action}")
        rows_out.append((r.backend, r.length, r.timing_ok, r.clean_ok, r.rank_stable, r.tuples_complete, r.action))
    _write_csv(out / "decision_matrix.csv",
               "backend,L,timing_ok,clean_ok,rank_stable,tuples_complete,action", rows_out)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="blindreset", description=__doc__)
    parser.add_argument("--config", help="key=value file overriding flags")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default="results", help="output directory")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep", help="full cleanliness sweep -> benchmark CSV + manifest")
    common(p)
    p.add_argument("--profiles", default="iqm,rigetti,ionq")
    p.add_argument("--seeds", default=DEFAULT_SEEDS)
    p.add_argument("--lengths", default=DEFAULT_LENGTHS)
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.add_argument("--grid-points", type=int, default=DEFAULT_GRID)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("latency", help="crossover table and external-feedback sweep")
    common(p)
    p.add_argument("--profiles", default="iqm,rigetti,ionq")
    p.add_argument("--t-ext", type=float, default=4e-6, help="external feedback term in seconds")
    p.add_argument("--t-ext-max", type=float, default=4e-6)
    p.add_argument("--t-ext-points", type=int, default=17)
    p.set_defaults(func=cmd_latency)

    p = sub.add_parser("qec", help="decoder-coupled logical-error curves")
    common(p)
    p.add_argument("--distances", default="3,5")
    p.add_argument("--cycles", type=int, default=20)
    p.add_argument("--eval-cycles", default="5,10,15,20")
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--p-phys", type=float, default=1e-3)
    p.add_argument("--blind-length", type=int, default=4)
    p.add_argument("--decoders", default=f"{qec.MAJORITY_VOTE},{qec.MATCHING}")
    p.add_argument("--live-fclean", action="store_true",
                   help="derive f_clean from the reset simulation instead of the fixed mapping")
    p.add_argument("--live-profile", default="iqm")
    p.set_defaults(func=cmd_qec)

    p = sub.add_parser("landscape", help="scale-factor landscape statistics")
    common(p)
    p.add_argument("--seeds", default=DEFAULT_SEEDS)
    p.add_argument("--lengths", default=DEFAULT_LENGTHS)
    p.add_argument("--points", type=int, default=200)
    p.set_defaults(func=cmd_landscape)

    p = sub.add_parser("threshold", help="near-threshold extrapolation table")
    common(p)
    p.add_argument("--p-phys", type=float, default=1e-3)
    p.add_argument("--eta", type=float, default=0.02)
    p.add_argument("--p-th", type=float, default=0.029)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("t1t2", help="coherence-plane sensitivity map")
    common(p)
    p.add_argument("--t1-points", type=int, default=8)
    p.add_argument("--t2-points", type=int, default=8)
    p.add_argument("--length", type=int, default=8)
    p.add_argument("--seeds", default="42..51")
    p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    p.set_defaults(func=cmd_t1t2)

    p = sub.add_parser("aggregate", help="three-pass aggregation of a benchmark CSV")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--profiles", default=None)
    p.add_argument("--f-req", type=float, default=DEFAULT_F_REQ)
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("decide", help="policy decision matrix from benchmark results")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--previous", default=None, help="earlier benchmark CSV for rank stability")
    p.add_argument("--profiles", default=None)
    p.add_argument("--f-req", type=float, default=DEFAULT_F_REQ)
    p.set_defaults(func=cmd_decide)

    return parser


def _apply_config_file(args, parser):
    if not getattr(args, "config", None):
        return args
    try:
        entries = parse_keyvalue(args.config)
    except OSError as exc:
        raise CliError(f"cannot read config {args.config}: {exc}", code=2) from None
    for key, value in entries.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise CliError(f"config key {key!r} does not match any flag")
        current = getattr(args, attr)
        if isinstance(current, bool):
            value = value.lower() in ("1", "true", "yes")
        elif isinstance(current, int):
            value = int(value)
        elif isinstance(current, float):
            value = float(value)
        setattr(args, attr, value)  # config file wins over flags
    return args


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args = _apply_config_file(args, parser)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
