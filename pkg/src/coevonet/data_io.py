"""Survey-wave file ingestion, synthetic initial networks, series output.

Wave files are delimited text with two sections: `[opinions]` lines
`node_id,opinion` and `[edges]` lines `from_id,to_id`. UTF-8, LF line
endings, `#` comments ignored. Wave labels come from the file stem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .engine import MeanRow, RunResult
from .graph import DEFAULT_BOUNDS, DynamicNetwork

OPINION_SCALE = (-2, -1, 0, 1, 2)

SERIES_COLUMNS = (
    "replicate",
    "t",
    "avg_cluster_opinion",
    "avg_opinion_spread",
    "avg_inner_connectivity",
    "avg_cluster_size",
    "cluster_count",
)


class WaveError(ValueError):
    """Malformed wave file (parse, range or referential error)."""


@dataclass
class SurveyWave:
    label: str
    opinions: dict[int, int]
    edges: list[tuple[int, int]]


def load_wave(path) -> SurveyWave:
    path = Path(path)
    opinions: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    section = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line == "[opinions]":
                section = "opinions"
                continue
            if line == "[edges]":
                section = "edges"
                continue
            if section is None:
                raise WaveError(f"{path}:{lineno}: data before any section header")
            parts = line.split(",")
            if len(parts) != 2:
                raise WaveError(f"{path}:{lineno}: expected two comma-separated fields")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError:
                raise WaveError(f"{path}:{lineno}: non-integer field") from None
            if section == "opinions":
                if b not in OPINION_SCALE:
                    raise WaveError(
                        f"{path}:{lineno}: node {a} has opinion {b}, "
                        f"outside the 5-value scale {OPINION_SCALE}"
                    )
                if a in opinions:
                    raise WaveError(f"{path}:{lineno}: duplicate opinion for node {a}")
                opinions[a] = b
            else:
                if a == b:
                    raise WaveError(f"{path}:{lineno}: self-loop on node {a}")
                if (a, b) in seen_edges:
                    raise WaveError(f"{path}:{lineno}: duplicate edge ({a}, {b})")
                seen_edges.add((a, b))
                edges.append((a, b))
    for a, b in edges:
        for endpoint in (a, b):
            if endpoint not in opinions:
                raise WaveError(
                    f"{path}: edge ({a}, {b}) references node {endpoint} "
                    "with no opinion entry"
                )
    return SurveyWave(label=path.stem, opinions=opinions, edges=edges)


def write_wave(wave: SurveyWave, path) -> None:
    lines = ["[opinions]"]
    lines += [f"{node},{op}" for node, op in sorted(wave.opinions.items())]
    lines.append("[edges]")
    lines += [f"{a},{b}" for a, b in wave.edges]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def wave_to_network(wave: SurveyWave, bounds=DEFAULT_BOUNDS) -> DynamicNetwork:
    """Densely re-index node ids and cast opinions to reals; every edge
    starts at weight 1 (weights are applied after the first clustering)."""
    ids = sorted(wave.opinions)
    index = {node: i for i, node in enumerate(ids)}
    n = len(ids)
    opinions = np.array([float(wave.opinions[node]) for node in ids])
    adjacency = np.zeros((n, n))
    for a, b in wave.edges:
        adjacency[index[a], index[b]] = 1.0
    return DynamicNetwork(opinions, adjacency, bounds)


@dataclass(frozen=True)
class SynthSpec:
    """Planted-partition generator settings.

    opinion_counts is the exact multiset of opinions (keys on the
    5-value scale); cluster_sizes plan the dense blocks, any leftover
    nodes stay outside every block. reciprocity controls how often an
    in-block pair gets both directions at once (the directed density is
    held at p_in/p_out either way); homophily in [0, 1] moves opinion
    assignment from fully random (0) to sorted block-by-block (1).
    """

    n: int
    opinion_counts: dict[int, int]
    cluster_sizes: tuple[int, ...]
    p_in: float
    p_out: float
    reciprocity: float = 0.6
    reciprocity_out: float | None = None
    homophily: float = 0.5
    periphery: str = "high"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if sum(self.opinion_counts.values()) != self.n:
            raise ValueError(
                f"opinion counts sum to {sum(self.opinion_counts.values())}, expected n={self.n}"
            )
        for op in self.opinion_counts:
            if op not in OPINION_SCALE:
                raise ValueError(f"opinion {op} outside the 5-value scale")
        if sum(self.cluster_sizes) > self.n:
            raise ValueError("cluster sizes sum to more than n")
        if self.reciprocity_out is None:
            object.__setattr__(self, "reciprocity_out", self.reciprocity)
        for p, r, name in (
            (self.p_in, self.reciprocity, "p_in"),
            (self.p_out, self.reciprocity_out, "p_out"),
        ):
            if not 0 <= p <= 1:
                raise ValueError(f"{name} must be in [0, 1]")
            if p * (2 - r) > 1:
                raise ValueError(f"{name}={p} too high for its reciprocity {r}")
        if not 0 <= self.reciprocity <= 1 or not 0 <= self.reciprocity_out <= 1:
            raise ValueError("reciprocity must be in [0, 1]")
        if not 0 <= self.homophily <= 1:
            raise ValueError("homophily must be in [0, 1]")
        if self.periphery not in ("high", "low"):
            raise ValueError("periphery must be 'high' or 'low'")


def synth_spec_from_dict(data: dict) -> SynthSpec:
    try:
        return SynthSpec(
            n=int(data["n"]),
            opinion_counts={int(k): int(v) for k, v in data["opinion_counts"].items()},
            cluster_sizes=tuple(int(s) for s in data["cluster_sizes"]),
            p_in=float(data["p_in"]),
            p_out=float(data["p_out"]),
            reciprocity=float(data.get("reciprocity", 0.6)),
            reciprocity_out=(
                float(data["reciprocity_out"]) if "reciprocity_out" in data else None
            ),
            homophily=float(data.get("homophily", 0.5)),
            periphery=str(data.get("periphery", "high")),
        )
    except KeyError as exc:
        raise ValueError(f"synth spec is missing required field {exc}") from None


def _block_of(spec: SynthSpec) -> np.ndarray:
    block = np.full(spec.n, -1, dtype=np.int64)
    start = 0
    for idx, size in enumerate(spec.cluster_sizes):
        block[start : start + size] = idx
        start += size
    return block


def synth_wave(spec: SynthSpec, seed: int) -> SurveyWave:
    """Generate a planted-partition survey wave, deterministic under seed."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    block = _block_of(spec)

    # Exact opinion multiset, sorted block-by-block, then partially
    # reshuffled: homophily 1 keeps the sorted assignment, 0 randomizes.
    # periphery picks which end of that sorted run the out-of-block
    # nodes sit on before the shuffle.
    sorted_values = np.array(
        [op for op in sorted(spec.opinion_counts) for _ in range(spec.opinion_counts[op])],
        dtype=np.int64,
    )
    values = np.empty(spec.n, dtype=np.int64)
    if spec.periphery == "low":
        order = np.concatenate([np.flatnonzero(block < 0), np.flatnonzero(block >= 0)])
        values[order] = sorted_values
    else:
        values[:] = sorted_values
    n_shuffled = round((1.0 - spec.homophily) * spec.n)
    if n_shuffled > 1:
        idx = rng.choice(spec.n, size=n_shuffled, replace=False)
        values[np.sort(idx)] = values[np.sort(idx)][rng.permutation(n_shuffled)]

    edges: list[tuple[int, int]] = []
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            same = block[i] >= 0 and block[i] == block[j]
            p = spec.p_in if same else spec.p_out
            r = spec.reciprocity if same else spec.reciprocity_out
            p_both = r * p
            p_single = 2.0 * p * (1.0 - r)
            u = rng.random()
            if u < p_both:
                edges.append((i, j))
                edges.append((j, i))
            elif u < p_both + p_single:
                if rng.random() < 0.5:
                    edges.append((i, j))
                else:
                    edges.append((j, i))
    opinions = {i: int(values[i]) for i in range(spec.n)}
    return SurveyWave(label=f"synth-{seed}", opinions=opinions, edges=edges)


def synth_initial(spec: SynthSpec, seed: int, bounds=DEFAULT_BOUNDS) -> DynamicNetwork:
    return wave_to_network(synth_wave(spec, seed), bounds)


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def write_series(result: RunResult, path) -> None:
    """Write the metric time series: one row per (replicate, t), then
    one `mean` row per t. Column order is part of the contract."""
    lines = [",".join(SERIES_COLUMNS)]
    for rep, rows in enumerate(result.per_replicate):
        for row in rows:
            lines.append(
                f"{rep},{row.t},{_fmt(row.avg_cluster_opinion)},"
                f"{_fmt(row.avg_opinion_spread)},{_fmt(row.avg_inner_connectivity)},"
                f"{_fmt(row.avg_cluster_size)},{row.cluster_count}"
            )
    for row in result.mean_series:
        lines.append(
            f"mean,{row.t},{_fmt(row.avg_cluster_opinion)},"
            f"{_fmt(row.avg_opinion_spread)},{_fmt(row.avg_inner_connectivity)},"
            f"{_fmt(row.avg_cluster_size)},{_fmt(row.cluster_count)}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_series(path) -> tuple[list[dict], list[dict]]:
    """Parse a series file back into (replicate_rows, mean_rows)."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln]
    header = tuple(lines[0].split(","))
    if header != SERIES_COLUMNS:
        raise ValueError(f"{path}: unexpected series header {header}")
    replicate_rows, mean_rows = [], []
    for line in lines[1:]:
        fields = line.split(",")
        row = {"replicate": fields[0], "t": int(fields[1])}
        for name, value in zip(SERIES_COLUMNS[2:], fields[2:]):
            row[name] = float(value) if value else None
        (mean_rows if fields[0] == "mean" else replicate_rows).append(row)
    return replicate_rows, mean_rows
