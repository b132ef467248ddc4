"""Wave files, synthetic generation and series serialization."""

import numpy as np
import pytest

from coevonet.data_io import (
    SurveyWave,
    SynthSpec,
    WaveError,
    load_wave,
    read_series,
    synth_initial,
    synth_spec_from_dict,
    synth_wave,
    wave_to_network,
    write_series,
    write_wave,
)
from coevonet.dynamics import ModelParams
from coevonet.engine import SimulationConfig, run
from coevonet.graph import DynamicNetwork


def write(tmp_path, text, name="wave.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


MINIMAL = """\
[opinions]
1,2
2,0
[edges]
1,2
"""


def test_load_minimal_wave(tmp_path):
    wave = load_wave(write(tmp_path, MINIMAL))
    assert wave.label == "wave"
    assert wave.opinions == {1: 2, 2: 0}
    assert wave.edges == [(1, 2)]


def test_load_wave_comments_and_blanks(tmp_path):
    text = "# header\n[opinions]\n\n1,1\n2,-2\n[edges]\n# none yet\n2,1\n"
    wave = load_wave(write(tmp_path, text))
    assert wave.opinions == {1: 1, 2: -2}
    assert wave.edges == [(2, 1)]


def test_load_wave_out_of_range_opinion(tmp_path):
    with pytest.raises(WaveError, match="3"):
        load_wave(write(tmp_path, "[opinions]\n1,3\n[edges]\n"))


def test_load_wave_dangling_edge(tmp_path):
    with pytest.raises(WaveError, match="no opinion entry"):
        load_wave(write(tmp_path, "[opinions]\n1,0\n[edges]\n1,9\n"))


def test_load_wave_duplicate_edge(tmp_path):
    text = "[opinions]\n1,0\n2,0\n[edges]\n1,2\n1,2\n"
    with pytest.raises(WaveError, match="duplicate"):
        load_wave(write(tmp_path, text))


def test_load_wave_self_loop(tmp_path):
    with pytest.raises(WaveError, match="self"):
        load_wave(write(tmp_path, "[opinions]\n1,0\n[edges]\n1,1\n"))


def test_load_wave_parse_error_names_line(tmp_path):
    with pytest.raises(WaveError, match=r"wave\.txt:2"):
        load_wave(write(tmp_path, "[opinions]\nnot-a-pair\n"))


def test_wave_round_trip(tmp_path):
    wave = SurveyWave(
        label="w", opinions={3: -2, 7: 1, 9: 2}, edges=[(3, 7), (9, 3), (7, 9)]
    )
    path = tmp_path / "w.txt"
    write_wave(wave, path)
    back = load_wave(path)
    assert back.opinions == wave.opinions
    assert sorted(back.edges) == sorted(wave.edges)


def test_wave_to_network_reindexes():
    wave = SurveyWave(label="w", opinions={10: 2, 20: 0, 31: -1}, edges=[(10, 31)])
    net = wave_to_network(wave)
    assert net.n == 3
    assert net.opinions.tolist() == [2.0, 0.0, -1.0]
    assert net.adjacency[0, 2] == 1.0
    assert net.directed_edge_count() == 1


def test_wave_to_network_empty():
    net = wave_to_network(SurveyWave(label="w", opinions={}, edges=[]))
    assert net.n == 0


def spec(**kw):
    base = dict(
        n=10,
        opinion_counts={-1: 3, 0: 4, 1: 3},
        cluster_sizes=(5, 5),
        p_in=0.6,
        p_out=0.05,
        reciprocity=0.8,
    )
    base.update(kw)
    return SynthSpec(**base)


def test_synth_spec_validation():
    with pytest.raises(ValueError):
        spec(opinion_counts={0: 3})  # does not sum to n
    with pytest.raises(ValueError):
        spec(cluster_sizes=(8, 8))  # exceeds n
    with pytest.raises(ValueError):
        spec(opinion_counts={0: 9, 7: 1})  # off-scale opinion
    with pytest.raises(ValueError):
        spec(p_in=1.2)
    with pytest.raises(ValueError):
        spec(homophily=2.0)
    with pytest.raises(ValueError):
        spec(periphery="middle")


def test_synth_spec_from_dict_roundtrip():
    data = {
        "n": 10,
        "opinion_counts": {"-1": 3, "0": 4, "1": 3},
        "cluster_sizes": [5, 5],
        "p_in": 0.6,
        "p_out": 0.05,
        "reciprocity": 0.8,
        "homophily": 0.85,
        "periphery": "low",
    }
    got = synth_spec_from_dict(data)
    assert got.opinion_counts == {-1: 3, 0: 4, 1: 3}
    assert got.cluster_sizes == (5, 5)
    assert got.periphery == "low"
    with pytest.raises(ValueError, match="missing"):
        synth_spec_from_dict({"n": 10})


def test_synth_deterministic():
    a = synth_wave(spec(), seed=11)
    b = synth_wave(spec(), seed=11)
    c = synth_wave(spec(), seed=12)
    assert a.opinions == b.opinions and a.edges == b.edges
    assert (a.opinions, a.edges) != (c.opinions, c.edges)


def test_synth_exact_histogram():
    for seed in range(5):
        wave = synth_wave(spec(), seed=seed)
        counts = {}
        for op in wave.opinions.values():
            counts[op] = counts.get(op, 0) + 1
        assert counts == {-1: 3, 0: 4, 1: 3}


def test_synth_single_clique():
    wave = synth_wave(
        spec(cluster_sizes=(10,), p_in=1.0, p_out=0.0, reciprocity=1.0), seed=3
    )
    assert len(wave.edges) == 90  # full bidirectional clique


def test_synth_periphery_low_places_low_opinions_outside():
    s = spec(
        n=12,
        opinion_counts={-2: 4, 0: 4, 2: 4},
        cluster_sizes=(4, 4),
        homophily=1.0,
        periphery="low",
    )
    wave = synth_wave(s, seed=0)
    # nodes 8..11 are outside every block and take the lowest values
    assert all(wave.opinions[v] == -2 for v in range(8, 12))
    assert all(wave.opinions[v] == 0 for v in range(0, 4))
    assert all(wave.opinions[v] == 2 for v in range(4, 8))


def test_synth_initial_is_network():
    net = synth_initial(spec(), seed=5)
    assert isinstance(net, DynamicNetwork)
    assert net.n == 10


def run_result(horizon=2, replicates=2):
    net = synth_initial(spec(), seed=5)
    cfg = SimulationConfig(
        params=ModelParams(w=5.0, k_amp=1.05, c=0.245, alpha=0.1, beta=0.15),
        horizon=horizon,
        replicates=replicates,
        master_seed=7,
    )
    return run(net, cfg)


def test_write_series_row_counts(tmp_path):
    result = run_result(horizon=0, replicates=1)
    path = tmp_path / "series.csv"
    write_series(result, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 3  # header + 1 replicate row + 1 mean row
    result = run_result(horizon=4, replicates=3)
    write_series(result, path)
    lines = path.read_text().splitlines()
    assert len(lines) == 1 + 3 * 5 + 5


def test_series_round_trip_bit_exact(tmp_path):
    result = run_result()
    path = tmp_path / "series.csv"
    write_series(result, path)
    _, mean_rows = read_series(path)
    for row, mean in zip(mean_rows, result.mean_series):
        assert row["t"] == mean.t
        assert row["avg_cluster_opinion"] == mean.avg_cluster_opinion
        assert row["avg_opinion_spread"] == mean.avg_opinion_spread
        assert row["avg_inner_connectivity"] == mean.avg_inner_connectivity
        assert row["avg_cluster_size"] == mean.avg_cluster_size


def test_read_series_replicate_rows(tmp_path):
    result = run_result()
    path = tmp_path / "series.csv"
    write_series(result, path)
    replicate_rows, mean_rows = read_series(path)
    assert len(replicate_rows) == 2 * 3
    assert len(mean_rows) == 3
