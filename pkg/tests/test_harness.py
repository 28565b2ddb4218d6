import filecmp
import json

import numpy as np
import pytest

from qlcbench import ControlConfig, GdConfig, ProblemKind
from qlcbench.cli import cli_main, parse_generator
from qlcbench.harness import (
    AGG_CSV_HEADER,
    RUN_CSV_HEADER,
    ExperimentConfig,
    GraphSpec,
    MethodSpec,
    aggregate,
    build_instance,
    cost_report,
    instance_seeds,
    load_experiment_config,
    read_aggregate_csv,
    read_run_csv,
    run_experiment,
    run_sweep,
    write_aggregate_csv,
    write_run_csv,
)

SWEEP_TOML = """\
[experiment]
problem = "weighted_maxcut"
n = 6
n_instances = 2
seed = 11
k_max = 25

[graph]
generator = "regular"
degree = 3
weights = [0.0, 2.0]

[[methods]]
method = "falqon"
dt = [0.01]

[[methods]]
method = "gdqlc"
dt = [0.01, 0.03]
gd_iters = [1, 3]
lr_const = [0.1]
"""


def _small_config(n_instances=2, k_max=20) -> ExperimentConfig:
    return ExperimentConfig(
        problem=ProblemKind.WEIGHTED_MAXCUT,
        n_qubits=6,
        graph=GraphSpec(generator="regular", degree=3, weights=(0.0, 2.0)),
        n_instances=n_instances,
        seed=99,
        methods=(
            MethodSpec("falqon_dt0.01", ControlConfig(dt=0.01, k_max=k_max, method="falqon")),
            MethodSpec("gdqlc_dt0.01_L3_c0.1", ControlConfig(dt=0.01, k_max=k_max, method="gdqlc", gd=GdConfig(3, 0.1))),
        ),
    )


def test_instance_seeds_stable_and_distinct():
    assert instance_seeds(42, 0) == instance_seeds(42, 0)
    assert instance_seeds(42, 0) != instance_seeds(42, 1)
    assert instance_seeds(42, 0) != instance_seeds(43, 0)
    # adding instances never perturbs earlier ones: i-th derivation is index-local
    first_five = [instance_seeds(7, i) for i in range(5)]
    assert [instance_seeds(7, i) for i in range(3)] == first_five[:3]


def test_build_instance_deterministic_and_weighted():
    cfg = _small_config()
    g1, m1, gi1 = build_instance(cfg, 0)
    g2, m2, gi2 = build_instance(cfg, 0)
    assert g1 == g2 and m1 == m2 and gi1.e_min == gi2.e_min
    assert g1.degrees() == [3] * 6
    assert any(w != 1.0 for _, _, w in g1.edges)


def test_build_instance_error_carries_index():
    cfg = ExperimentConfig(
        problem=ProblemKind.MAXCUT,
        n_qubits=5,  # 5*3 odd: infeasible regular graph
        graph=GraphSpec(generator="regular", degree=3),
        n_instances=1,
        seed=1,
        methods=(MethodSpec("f", ControlConfig(dt=0.01, k_max=5, method="falqon")),),
    )
    with pytest.raises(RuntimeError, match="instance 0"):
        build_instance(cfg, 0)


def test_run_experiment_pairs_instances_and_is_deterministic():
    cfg = _small_config()
    records, aggregates = run_experiment(cfg)
    assert set(records) == {"falqon_dt0.01", "gdqlc_dt0.01_L3_c0.1"}
    for i in range(cfg.n_instances):
        # identical graph and ground info seen by both methods
        assert records["falqon_dt0.01"][i].e_min == records["gdqlc_dt0.01_L3_c0.1"][i].e_min
    records2, _ = run_experiment(cfg)
    for label in records:
        for r1, r2 in zip(records[label], records2[label]):
            np.testing.assert_array_equal(r1.r_a, r2.r_a)
    agg = aggregates["falqon_dt0.01"]
    assert agg.n_instances == cfg.n_instances
    assert len(agg.mean_r_a) == 20


def test_aggregate_rejects_mixed_lengths():
    cfg = _small_config()
    recs, _ = run_experiment(cfg)
    short_cfg = _small_config(k_max=10)
    short, _ = run_experiment(short_cfg)
    with pytest.raises(ValueError):
        aggregate("x", [recs["falqon_dt0.01"][0], short["falqon_dt0.01"][0]])


def test_run_csv_round_trip(tmp_path):
    cfg = _small_config(n_instances=1)
    records, _ = run_experiment(cfg)
    rec = records["falqon_dt0.01"][0]
    path = tmp_path / "run.csv"
    write_run_csv(rec, path)
    lines = path.read_text().splitlines()
    assert lines[0] == RUN_CSV_HEADER
    assert len(lines) == rec.layers + 1
    cols = read_run_csv(path)
    np.testing.assert_array_equal(cols["layer"], np.arange(1, rec.layers + 1))
    for name in ("beta", "a_val", "b_val", "e_p", "r_a", "p_succ"):
        np.testing.assert_array_equal(cols[name], getattr(rec, name))


def test_falqon_ratio_column_nondecreasing(tmp_path):
    cfg = _small_config(n_instances=1, k_max=120)
    records, _ = run_experiment(cfg)
    rec = records["falqon_dt0.01"][0]
    path = tmp_path / "f.csv"
    write_run_csv(rec, path)
    r_a = read_run_csv(path)["r_a"]
    assert np.all(np.diff(r_a) >= -1e-12)


def test_aggregates_recomputed_from_csvs_match(tmp_path):
    cfg = _small_config(n_instances=3)
    records, aggregates = run_experiment(cfg)
    label = "gdqlc_dt0.01_L3_c0.1"
    paths = []
    for i, rec in enumerate(records[label]):
        p = tmp_path / f"{label}__inst{i:03d}.csv"
        write_run_csv(rec, p)
        paths.append(p)
    r_a = np.stack([read_run_csv(p)["r_a"] for p in paths])
    p_succ = np.stack([read_run_csv(p)["p_succ"] for p in paths])
    agg = aggregates[label]
    np.testing.assert_array_equal(r_a.mean(axis=0), agg.mean_r_a)
    np.testing.assert_array_equal(r_a.std(axis=0), agg.sd_r_a)
    np.testing.assert_array_equal(p_succ.mean(axis=0), agg.mean_p)
    np.testing.assert_array_equal(p_succ.std(axis=0), agg.sd_p)


def test_aggregate_csv_round_trip(tmp_path):
    cfg = _small_config(n_instances=2)
    _, aggregates = run_experiment(cfg)
    agg = aggregates["falqon_dt0.01"]
    path = tmp_path / "agg.csv"
    write_aggregate_csv(agg, path)
    assert path.read_text().splitlines()[0] == AGG_CSV_HEADER
    cols = read_aggregate_csv(path)
    np.testing.assert_array_equal(cols["mean_r_a"], agg.mean_r_a)
    np.testing.assert_array_equal(cols["sd_p"], agg.sd_p)


def test_cost_report_contents():
    cfg = _small_config(n_instances=1, k_max=100)
    records, _ = run_experiment(cfg)
    falqon = records["falqon_dt0.01"][0]
    text = cost_report(falqon, n_shot=500)
    assert "evaluation events   : 100" in text
    assert "total shots         : 50000" in text
    gd_cfg = ExperimentConfig(
        problem=ProblemKind.MAXCUT,
        n_qubits=6,
        graph=GraphSpec(generator="regular", degree=3),
        n_instances=1,
        seed=3,
        methods=(MethodSpec("g", ControlConfig(dt=0.01, k_max=100, method="gdqlc", gd=GdConfig(7, 0.1))),),
    )
    rec = run_experiment(gd_cfg)[0]["g"][0]
    text = cost_report(rec, n_shot=1)
    assert "evaluation events   : 800" in text
    assert "ratio 8x" in text  # (L+1) over the falqon baseline


def test_load_experiment_config(tmp_path):
    path = tmp_path / "sweep.toml"
    path.write_text(SWEEP_TOML)
    cfg = load_experiment_config(path)
    assert cfg.problem is ProblemKind.WEIGHTED_MAXCUT
    assert cfg.n_qubits == 6 and cfg.n_instances == 2 and cfg.seed == 11
    labels = [m.label for m in cfg.methods]
    assert labels == [
        "falqon_dt0.01",
        "gdqlc_dt0.01_L1_c0.1",
        "gdqlc_dt0.01_L3_c0.1",
        "gdqlc_dt0.03_L1_c0.1",
        "gdqlc_dt0.03_L3_c0.1",
    ]
    assert all(m.control.k_max == 25 for m in cfg.methods)


def test_load_experiment_config_errors(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[experiment]\nproblem = 'maxcut'\n")
    with pytest.raises(ValueError):
        load_experiment_config(bad)
    bad.write_text(SWEEP_TOML.replace('method = "falqon"', 'method = "qaoa"'))
    with pytest.raises(ValueError):
        load_experiment_config(bad)


def test_run_sweep_outputs_and_reproducibility(tmp_path):
    cfg_path = tmp_path / "sweep.toml"
    cfg_path.write_text(SWEEP_TOML.replace("gd_iters = [1, 3]", "gd_iters = [1]").replace("dt = [0.01, 0.03]", "dt = [0.01]"))
    cfg = load_experiment_config(cfg_path)
    out1, out2 = tmp_path / "out1", tmp_path / "out2"
    run_sweep(cfg, out1)
    run_sweep(cfg, out2)
    assert not (out1 / "_INCOMPLETE").exists()
    manifest = json.loads((out1 / "manifest.json").read_text())
    assert manifest["labels"] == ["falqon_dt0.01", "gdqlc_dt0.01_L1_c0.1"]
    files = sorted(p.name for p in out1.iterdir())
    assert files == sorted(manifest["files"] + ["manifest.json"])
    for name in files:
        assert filecmp.cmp(out1 / name, out2 / name, shallow=False), f"{name} not byte-identical"


def test_parse_generator():
    assert parse_generator("regular3") == ("regular", 3.0)
    assert parse_generator("ba3") == ("ba", 3.0)
    assert parse_generator("er0.5") == ("er", 0.5)
    with pytest.raises(ValueError):
        parse_generator("smallworld4")


def test_cli_run_and_gen(tmp_path):
    out = tmp_path / "r.csv"
    code = cli_main([
        "run", "--problem", "maxcut", "--n", "8", "--generator", "regular3",
        "--method", "gdqlc", "--dt", "0.01", "--layers", "30", "--gd-iters", "7",
        "--lr-const", "0.1", "--seed", "7", "--out", str(out),
    ])
    assert code == 0
    assert len(out.read_text().splitlines()) == 31
    gfile = tmp_path / "g.edgelist"
    assert cli_main(["gen", "--n", "10", "--generator", "er0.5", "--seed", "3", "--out", str(gfile)]) == 0
    code = cli_main([
        "run", "--problem", "maxclique", "--graph-file", str(gfile), "--method", "falqon",
        "--dt", "0.005", "--layers", "20", "--seed", "1", "--out", str(tmp_path / "r2.csv"),
    ])
    assert code == 0


def test_cli_sweep_missing_config(tmp_path):
    out_dir = tmp_path / "never"
    code = cli_main(["sweep", "--config", str(tmp_path / "missing.toml"), "--out-dir", str(out_dir)])
    assert code != 0
    assert not out_dir.exists()


def test_cli_invalid_flags_exit_nonzero(tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli_main(["run", "--problem", "tsp", "--method", "falqon", "--dt", "0.01",
                  "--layers", "5", "--seed", "1", "--out", str(tmp_path / "x.csv")])
    assert exc.value.code != 0


def test_cli_infeasible_instance_exits_nonzero(tmp_path):
    code = cli_main(["run", "--problem", "maxcut", "--n", "5", "--generator", "regular3",
                     "--method", "falqon", "--dt", "0.01", "--layers", "5",
                     "--seed", "1", "--out", str(tmp_path / "x.csv")])
    assert code == 1
