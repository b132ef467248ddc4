"""Multi-step, multi-replicate simulation runs and parameter sweeps."""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .clustering import best_partition
from .dynamics import ModelParams, step
from .graph import DynamicNetwork, apply_cluster_weights, undirected_projection
from .metrics import MetricsRow, metrics_row

SWEEPABLE = ("w", "k_amp", "c")


@dataclass(frozen=True)
class SimulationConfig:
    params: ModelParams
    horizon: int
    replicates: int
    master_seed: int
    recluster_interval: int = 1
    metrics_every: int = 1

    def __post_init__(self) -> None:
        if self.horizon < 0:
            raise ValueError("horizon must be >= 0")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if self.recluster_interval < 1 or self.metrics_every < 1:
            raise ValueError("intervals must be >= 1")


@dataclass(frozen=True)
class MeanRow:
    """Cross-replicate mean of the metric row at one time step.

    Undefined (zero-cluster) replicate rows are excluded from the mean;
    n_defined records how many replicates contributed.
    """

    t: int
    avg_cluster_opinion: float | None
    avg_opinion_spread: float | None
    avg_inner_connectivity: float | None
    avg_cluster_size: float | None
    cluster_count: float
    n_defined: int


@dataclass(frozen=True)
class RunResult:
    per_replicate: tuple[tuple[MetricsRow, ...], ...]
    mean_series: tuple[MeanRow, ...]
    seeds: tuple[tuple[int, int], ...]


def replicate_rng(master_seed: int, rep: int) -> np.random.Generator:
    """Deterministic per-replicate stream: PCG64 seeded from
    SeedSequence(master_seed, spawn_key=(rep,))."""
    return np.random.default_rng(
        np.random.SeedSequence(entropy=master_seed, spawn_key=(rep,))
    )


def _run_replicate(
    initial: DynamicNetwork, cfg: SimulationConfig, rep: int
) -> tuple[MetricsRow, ...]:
    rng = replicate_rng(cfg.master_seed, rep)
    partition = best_partition(undirected_projection(initial))
    net = apply_cluster_weights(initial, partition, cfg.params.w)
    rows = [metrics_row(net, partition, 0)]
    for t in range(1, cfg.horizon + 1):
        recluster = t % cfg.recluster_interval == 0
        net, partition = step(net, partition, cfg.params, rng, recluster=recluster)
        if t % cfg.metrics_every == 0 or t == cfg.horizon:
            rows.append(metrics_row(net, partition, t))
    return tuple(rows)


def _mean_series(per_replicate) -> tuple[MeanRow, ...]:
    means = []
    for rows_at_t in zip(*per_replicate):
        t = rows_at_t[0].t
        defined = [r for r in rows_at_t if r.is_defined()]
        if defined:
            mean = lambda attr: float(np.mean([getattr(r, attr) for r in defined]))
            means.append(
                MeanRow(
                    t=t,
                    avg_cluster_opinion=mean("avg_cluster_opinion"),
                    avg_opinion_spread=mean("avg_opinion_spread"),
                    avg_inner_connectivity=mean("avg_inner_connectivity"),
                    avg_cluster_size=mean("avg_cluster_size"),
                    cluster_count=float(np.mean([r.cluster_count for r in rows_at_t])),
                    n_defined=len(defined),
                )
            )
        else:
            means.append(
                MeanRow(
                    t=t,
                    avg_cluster_opinion=None,
                    avg_opinion_spread=None,
                    avg_inner_connectivity=None,
                    avg_cluster_size=None,
                    cluster_count=float(np.mean([r.cluster_count for r in rows_at_t])),
                    n_defined=0,
                )
            )
    return tuple(means)


def run(initial: DynamicNetwork, cfg: SimulationConfig, threads: int = 1) -> RunResult:
    """Run all replicates and aggregate cross-replicate means.

    Each replicate's random stream depends only on (master_seed,
    replicate index), so the result is identical for any thread count.
    """
    reps = range(cfg.replicates)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            per_replicate = tuple(
                pool.map(_run_replicate, [initial] * cfg.replicates, [cfg] * cfg.replicates, reps)
            )
    else:
        per_replicate = tuple(_run_replicate(initial, cfg, r) for r in reps)
    return RunResult(
        per_replicate=per_replicate,
        mean_series=_mean_series(per_replicate),
        seeds=tuple((cfg.master_seed, r) for r in reps),
    )


def sweep(
    initial: DynamicNetwork,
    base: SimulationConfig,
    vary: str,
    values,
    threads: int = 1,
) -> list[tuple[float, RunResult]]:
    """One full run per value of a single parameter, everything else
    (master seed included) held fixed so differences are attributable."""
    if vary not in SWEEPABLE:
        raise ValueError(f"can only sweep one of {SWEEPABLE}, got {vary!r}")
    for v in values:
        if vary in ("w", "k_amp") and v < 1:
            raise ValueError(f"{vary}={v} out of range (must be >= 1)")
        if vary == "c" and not 0 <= v < 0.5:
            raise ValueError(f"c={v} out of range (must be in [0, 0.5))")
    results = []
    for v in values:
        params = dataclasses.replace(base.params, **{vary: float(v)})
        cfg = dataclasses.replace(base, params=params)
        results.append((float(v), run(initial, cfg, threads=threads)))
    return results
