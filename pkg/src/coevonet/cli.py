"""Batch command-line front end: simulate / sweep / cluster / validate / synth.

Progress goes to stderr; data goes to files or stdout. Exit codes:
0 success, 1 config error, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .clustering import best_partition, cluster_quality
from .data_io import (
    SurveyWave,
    WaveError,
    load_wave,
    read_series,
    synth_spec_from_dict,
    synth_wave,
    wave_to_network,
    write_series,
    write_wave,
)
from .dynamics import ModelParams
from .engine import SimulationConfig, run, sweep
from .graph import undirected_projection
from .metrics import cluster_opinion, inner_connectivity, metrics_row, opinion_spread
from .stats import percent_error, trend_test

EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_IO = 3

VALIDATED_METRICS = (
    ("avg_cluster_opinion", "increasing"),
    ("avg_opinion_spread", "decreasing"),
    ("avg_inner_connectivity", "increasing"),
    ("avg_cluster_size", "decreasing"),
)


class ConfigError(Exception):
    pass


def _log(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _load_json(path: Path, kind: str):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"{kind} file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{kind} file {path} is not valid JSON: {exc}") from None


def _require(data: dict, field: str, path: Path):
    if field not in data:
        raise ConfigError(f"{path}: missing required config field '{field}'")
    return data[field]


def load_config(path: Path, seed_override: int | None = None) -> SimulationConfig:
    data = _load_json(path, "config")
    try:
        params = ModelParams(
            w=float(_require(data, "w", path)),
            k_amp=float(_require(data, "k_amp", path)),
            c=float(_require(data, "c", path)),
            alpha=float(_require(data, "alpha", path)),
            beta=float(_require(data, "beta", path)),
            amp_domain=tuple(
                (float(lo), float(hi)) for lo, hi in _require(data, "amp_domain", path)
            ),
            bounds=tuple(float(b) for b in _require(data, "bounds", path)),
            rewire_mode=data.get("rewire_mode", "single"),
        )
        master_seed = int(_require(data, "master_seed", path))
        if seed_override is not None:
            master_seed = seed_override
        return SimulationConfig(
            params=params,
            horizon=int(_require(data, "horizon", path)),
            replicates=int(_require(data, "replicates", path)),
            master_seed=master_seed,
            recluster_interval=int(data.get("recluster_interval", 1)),
            metrics_every=int(data.get("metrics_every", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _config_snapshot(cfg: SimulationConfig) -> dict:
    p = cfg.params
    return {
        "w": p.w,
        "k_amp": p.k_amp,
        "c": p.c,
        "alpha": p.alpha,
        "beta": p.beta,
        "amp_domain": [list(iv) for iv in p.amp_domain],
        "bounds": list(p.bounds),
        "rewire_mode": p.rewire_mode,
        "horizon": cfg.horizon,
        "replicates": cfg.replicates,
        "master_seed": cfg.master_seed,
        "recluster_interval": cfg.recluster_interval,
        "metrics_every": cfg.metrics_every,
    }


def _write_manifest(out_dir: Path, command: str, cfg_snapshot, inputs, artifacts):
    manifest = {
        "tool": "coevonet",
        "version": __version__,
        "command": command,
        "config": cfg_snapshot,
        "inputs": {str(p): _sha256(Path(p)) for p in inputs},
        "artifacts": [str(a) for a in artifacts],
    }
    path = out_dir / "manifest.json"
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    return path


def cmd_simulate(args) -> int:
    cfg = load_config(Path(args.config), args.seed)
    try:
        wave = load_wave(args.wave)
    except FileNotFoundError:
        print(f"wave file not found: {args.wave}", file=sys.stderr)
        return EXIT_DATA
    initial = wave_to_network(wave, cfg.params.bounds)
    _log(args, f"simulate: n={initial.n} T={cfg.horizon} R={cfg.replicates}")
    result = run(initial, cfg, threads=max(args.threads, 1))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    series_path = out_dir / "series.csv"
    write_series(result, series_path)
    _write_manifest(
        out_dir, "simulate", _config_snapshot(cfg), [args.config, args.wave],
        [series_path],
    )
    _log(args, f"wrote {series_path}")
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(Path(args.config), args.seed)
    try:
        values = [float(v) for v in args.values.split(",")]
    except ValueError:
        raise ConfigError(f"--values must be comma-separated numbers: {args.values!r}")
    try:
        wave = load_wave(args.wave)
    except FileNotFoundError:
        print(f"wave file not found: {args.wave}", file=sys.stderr)
        return EXIT_DATA
    initial = wave_to_network(wave, cfg.params.bounds)
    try:
        results = sweep(initial, cfg, args.vary, values, threads=max(args.threads, 1))
    except ValueError as exc:
        raise ConfigError(str(exc))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    artifacts = []
    for value, result in results:
        path = out_dir / f"series_{args.vary}_{value:g}.csv"
        write_series(result, path)
        artifacts.append(path)
        _log(args, f"wrote {path}")
    snapshot = _config_snapshot(cfg)
    snapshot["sweep"] = {"vary": args.vary, "values": values}
    _write_manifest(out_dir, "sweep", snapshot, [args.config, args.wave], artifacts)
    return 0


def cmd_cluster(args) -> int:
    try:
        wave = load_wave(args.wave)
    except FileNotFoundError:
        print(f"wave file not found: {args.wave}", file=sys.stderr)
        return EXIT_DATA
    net = wave_to_network(wave)
    graph = undirected_projection(net)
    partition = best_partition(graph)
    print("cluster,size,m,opinion,spread,inner_connectivity,members")
    for idx, cluster in enumerate(partition.clusters):
        members = " ".join(str(v) for v in sorted(cluster))
        print(
            f"{idx},{len(cluster)},{cluster_quality(graph, cluster):.6f},"
            f"{cluster_opinion(net, cluster):.6f},{opinion_spread(net, cluster):.6f},"
            f"{inner_connectivity(net, cluster):.6f},{members}"
        )
    row = metrics_row(net, partition, 0)
    print("averages,quality,opinion,spread,inner_connectivity,cluster_size,cluster_count")
    if row.is_defined():
        print(
            f"averages,{partition.quality:.6f},{row.avg_cluster_opinion:.6f},"
            f"{row.avg_opinion_spread:.6f},{row.avg_inner_connectivity:.6f},"
            f"{row.avg_cluster_size:.6f},{row.cluster_count}"
        )
    else:
        print("averages,,,,,,0")
    unclustered = " ".join(str(v) for v in sorted(partition.unclustered))
    print(f"unclustered,{unclustered}")
    return 0


def _observed_rows(waves: list[SurveyWave]):
    """Partition each wave and compute its metrics row and per-cluster samples."""
    observed = {}
    for wave in waves:
        net = wave_to_network(wave)
        graph = undirected_projection(net)
        partition = best_partition(graph)
        row = metrics_row(net, partition, 0)
        per_cluster = [
            {
                "avg_cluster_opinion": cluster_opinion(net, c),
                "avg_opinion_spread": opinion_spread(net, c),
                "avg_inner_connectivity": inner_connectivity(net, c),
                "avg_cluster_size": float(len(c)),
            }
            for c in partition.clusters
        ]
        observed[wave.label] = (row, per_cluster)
    return observed


def cmd_validate(args) -> int:
    mapping = _load_json(Path(args.mapping), "mapping")
    surveys = mapping.get("surveys")
    if not isinstance(surveys, list):
        raise ConfigError(f"{args.mapping}: expected a 'surveys' list")
    by_label = {}
    for entry in surveys:
        try:
            by_label[entry["label"]] = (int(entry["step"]), float(entry["month"]))
        except (KeyError, TypeError, ValueError):
            raise ConfigError(
                f"{args.mapping}: each survey needs 'label', 'step' and 'month'"
            )
    try:
        waves = [load_wave(p) for p in args.waves]
    except FileNotFoundError as exc:
        print(f"wave file not found: {exc.filename}", file=sys.stderr)
        return EXIT_DATA
    for wave in waves:
        if wave.label not in by_label:
            print(f"wave label {wave.label!r} is not in the mapping", file=sys.stderr)
            return EXIT_DATA
    _, mean_rows = read_series(args.series)
    means_by_t = {row["t"]: row for row in mean_rows}
    observed = _observed_rows(waves)

    print("label,step,metric,observed,model,percent_error")
    errors: dict[str, list[float]] = {name: [] for name, _ in VALIDATED_METRICS}
    for wave in waves:
        step_t, _month = by_label[wave.label]
        if step_t not in means_by_t:
            print(f"mapped step {step_t} is not in the series", file=sys.stderr)
            return EXIT_DATA
        row, _ = observed[wave.label]
        model_row = means_by_t[step_t]
        for name, _direction in VALIDATED_METRICS:
            data_value = getattr(row, name)
            model_value = model_row[name]
            if not data_value or model_value is None:
                print(f"{wave.label},{step_t},{name},,,")
                continue
            err = percent_error(model_value, data_value)
            errors[name].append(err)
            print(
                f"{wave.label},{step_t},{name},{data_value:.6f},{model_value:.6f},{err:.4f}"
            )
    print("metric,mean_percent_error")
    for name, _ in VALIDATED_METRICS:
        if errors[name]:
            print(f"{name},{sum(errors[name]) / len(errors[name]):.4f}")
        else:
            print(f"{name},")

    print("metric,direction,slope,t_statistic,p_value,n")
    for name, direction in VALIDATED_METRICS:
        xs, ys = [], []
        for wave in waves:
            _step, month = by_label[wave.label]
            for sample in observed[wave.label][1]:
                xs.append(month)
                ys.append(sample[name])
        if len(xs) < 3 or len(set(xs)) < 2:
            print(f"{name},{direction},,,,{len(xs)}")
            continue
        test = trend_test(xs, ys, direction)
        print(
            f"{name},{direction},{test.slope:.6f},{test.t_statistic:.4f},"
            f"{test.p_value:.6g},{test.n}"
        )
    return 0


def cmd_synth(args) -> int:
    data = _load_json(Path(args.spec), "synth spec")
    try:
        spec = synth_spec_from_dict(data)
    except ValueError as exc:
        raise ConfigError(f"{args.spec}: {exc}")
    wave = synth_wave(spec, args.seed if args.seed is not None else 0)
    out = Path(args.out)
    if out.suffix:  # treat as a file path, otherwise a directory
        out.parent.mkdir(parents=True, exist_ok=True)
        path = out
    else:
        out.mkdir(parents=True, exist_ok=True)
        path = out / "wave.txt"
    write_wave(wave, path)
    _log(args, f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coevonet",
        description="Coevolving opinion/friendship network simulator",
    )
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the master seed")
    common.add_argument("--out", default="out", help="output directory (or file for synth)")
    common.add_argument("--threads", type=int, default=0, help="worker processes, 0 = auto")
    common.add_argument("--quiet", action="store_true", help="suppress progress output")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="run a multi-replicate simulation")
    p.add_argument("--config", required=True)
    p.add_argument("--wave", required=True, help="initial-condition wave file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common], help="vary one parameter, one run per value")
    p.add_argument("--config", required=True)
    p.add_argument("--wave", required=True)
    p.add_argument("--vary", required=True, choices=("w", "k_amp", "c"))
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cluster", parents=[common], help="cluster one wave and print metrics")
    p.add_argument("--wave", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("validate", parents=[common], help="score a series against observed waves")
    p.add_argument("--series", required=True)
    p.add_argument("--mapping", required=True, help="JSON pairing wave labels with steps/months")
    p.add_argument("waves", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("synth", parents=[common], help="generate a synthetic wave file")
    p.add_argument("--spec", required=True, help="JSON generator spec")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads == 0:
        args.threads = 1
    try:
        return args.func(args)
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except WaveError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
