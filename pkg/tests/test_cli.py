"""Subcommand behavior, exit codes and output determinism."""

import json

import pytest

from coevonet.cli import EXIT_CONFIG, EXIT_DATA, main

CONFIG = {
    "w": 5.0,
    "k_amp": 1.05,
    "c": 0.245,
    "alpha": 0.10,
    "beta": 0.15,
    "amp_domain": [[-1.0, 0.0], [1.5, 2.0]],
    "bounds": [-2.0, 2.0],
    "horizon": 3,
    "replicates": 2,
    "master_seed": 11,
}

SYNTH_SPEC = {
    "n": 12,
    "opinion_counts": {"-1": 4, "0": 4, "1": 4},
    "cluster_sizes": [4, 4],
    "p_in": 0.8,
    "p_out": 0.05,
    "reciprocity": 0.9,
    "homophily": 0.5,
}

TWO_CLIQUE_WAVE = "\n".join(
    ["[opinions]"]
    + [f"{v},1" for v in range(4)]
    + [f"{v},-1" for v in range(4, 8)]
    + ["[edges]"]
    + [
        f"{a},{b}"
        for group in (range(4), range(4, 8))
        for a in group
        for b in group
        if a != b
    ]
    + ["0,4", "4,0"]
) + "\n"


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "config.json").write_text(json.dumps(CONFIG))
    (tmp_path / "spec.json").write_text(json.dumps(SYNTH_SPEC))
    (tmp_path / "wave.txt").write_text(TWO_CLIQUE_WAVE)
    return tmp_path


def run_cli(*argv):
    return main([str(a) for a in argv])


def test_simulate_writes_series_and_manifest(workdir):
    out = workdir / "out"
    code = run_cli(
        "simulate", "--config", workdir / "config.json", "--wave",
        workdir / "wave.txt", "--out", out, "--quiet",
    )
    assert code == 0
    assert (out / "series.csv").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["config"]["master_seed"] == 11
    assert len(manifest["inputs"]) == 2
    assert all(len(h) == 64 for h in manifest["inputs"].values())


def test_simulate_byte_identical_reruns(workdir):
    outs = []
    for name in ("a", "b"):
        out = workdir / name
        assert run_cli(
            "simulate", "--config", workdir / "config.json", "--wave",
            workdir / "wave.txt", "--out", out, "--quiet",
        ) == 0
        outs.append(out)
    a, b = outs
    assert (a / "series.csv").read_bytes() == (b / "series.csv").read_bytes()
    a_manifest = (a / "manifest.json").read_text().replace(str(a), "OUT")
    b_manifest = (b / "manifest.json").read_text().replace(str(b), "OUT")
    assert a_manifest == b_manifest


def test_simulate_thread_count_invariant(workdir):
    for name, threads in (("t1", "1"), ("t2", "2")):
        assert run_cli(
            "simulate", "--config", workdir / "config.json", "--wave",
            workdir / "wave.txt", "--out", workdir / name, "--threads", threads,
            "--quiet",
        ) == 0
    assert (workdir / "t1" / "series.csv").read_bytes() == (
        workdir / "t2" / "series.csv"
    ).read_bytes()


def test_seed_override(workdir):
    out = workdir / "seeded"
    run_cli(
        "simulate", "--config", workdir / "config.json", "--wave",
        workdir / "wave.txt", "--out", out, "--seed", "99", "--quiet",
    )
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["master_seed"] == 99


def test_simulate_missing_wave_is_data_error(workdir):
    assert run_cli(
        "simulate", "--config", workdir / "config.json", "--wave",
        workdir / "nope.txt", "--out", workdir / "out", "--quiet",
    ) == EXIT_DATA


def test_simulate_bad_config_is_config_error(workdir):
    bad = dict(CONFIG)
    del bad["alpha"]
    (workdir / "bad.json").write_text(json.dumps(bad))
    assert run_cli(
        "simulate", "--config", workdir / "bad.json", "--wave",
        workdir / "wave.txt", "--out", workdir / "out", "--quiet",
    ) == EXIT_CONFIG


def test_simulate_malformed_wave_is_data_error(workdir):
    (workdir / "broken.txt").write_text("[opinions]\n1,7\n")
    assert run_cli(
        "simulate", "--config", workdir / "config.json", "--wave",
        workdir / "broken.txt", "--out", workdir / "out", "--quiet",
    ) == EXIT_DATA


def test_sweep_writes_one_series_per_value(workdir):
    out = workdir / "sweep"
    code = run_cli(
        "sweep", "--config", workdir / "config.json", "--wave", workdir / "wave.txt",
        "--vary", "w", "--values", "1,5,100", "--out", out, "--quiet",
    )
    assert code == 0
    names = sorted(p.name for p in out.glob("series_*.csv"))
    assert names == ["series_w_1.csv", "series_w_100.csv", "series_w_5.csv"]
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["sweep"] == {"vary": "w", "values": [1.0, 5.0, 100.0]}


def test_sweep_rejects_out_of_range_value(workdir):
    assert run_cli(
        "sweep", "--config", workdir / "config.json", "--wave", workdir / "wave.txt",
        "--vary", "c", "--values", "0,0.7", "--out", workdir / "s", "--quiet",
    ) == EXIT_CONFIG


def test_cluster_lists_both_cliques(workdir, capsys):
    assert run_cli("cluster", "--wave", workdir / "wave.txt", "--quiet") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("cluster,size,m,")
    rows = [line.split(",") for line in lines[1:3]]
    assert {row[6] for row in rows} == {"0 1 2 3", "4 5 6 7"}
    assert all(row[2] == f"{6 / 7:.6f}" for row in rows)  # 6 internal edges, 1 bridge


def test_cluster_edgeless_wave(workdir, capsys):
    (workdir / "edgeless.txt").write_text("[opinions]\n1,0\n2,1\n[edges]\n")
    assert run_cli("cluster", "--wave", workdir / "edgeless.txt", "--quiet") == 0
    out = capsys.readouterr().out
    assert "averages,,,,,,0" in out
    assert "unclustered,0 1" in out


def test_validate_perfect_match_at_t0(workdir, capsys):
    out = workdir / "out"
    run_cli(
        "simulate", "--config", workdir / "config.json", "--wave",
        workdir / "wave.txt", "--out", out, "--quiet",
    )
    capsys.readouterr()
    mapping = {"surveys": [{"label": "wave", "step": 0, "month": 0.0}]}
    (workdir / "map.json").write_text(json.dumps(mapping))
    code = run_cli(
        "validate", "--series", out / "series.csv", "--mapping",
        workdir / "map.json", workdir / "wave.txt", "--quiet",
    )
    assert code == 0
    text = capsys.readouterr().out
    # t=0 metrics are deterministic, so model means equal the observation
    for line in text.splitlines():
        parts = line.split(",")
        if parts[0] == "wave" and len(parts) == 6 and parts[5]:
            assert float(parts[5]) == pytest.approx(0.0, abs=1e-9)


def test_validate_unmapped_label_is_data_error(workdir, capsys):
    out = workdir / "out"
    run_cli(
        "simulate", "--config", workdir / "config.json", "--wave",
        workdir / "wave.txt", "--out", out, "--quiet",
    )
    (workdir / "map.json").write_text(json.dumps({"surveys": []}))
    assert run_cli(
        "validate", "--series", out / "series.csv", "--mapping",
        workdir / "map.json", workdir / "wave.txt", "--quiet",
    ) == EXIT_DATA


def test_synth_deterministic_output(workdir):
    a, b = workdir / "a.txt", workdir / "b.txt"
    for path in (a, b):
        assert run_cli(
            "synth", "--spec", workdir / "spec.json", "--seed", "5", "--out",
            path, "--quiet",
        ) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert text.count("\n") >= 13  # 12 opinion lines + section headers


def test_synth_bad_spec_is_config_error(workdir):
    bad = dict(SYNTH_SPEC, opinion_counts={"0": 5})
    (workdir / "bad_spec.json").write_text(json.dumps(bad))
    assert run_cli(
        "synth", "--spec", workdir / "bad_spec.json", "--out",
        workdir / "w.txt", "--quiet",
    ) == EXIT_CONFIG
