"""Experiment configuration, seeded instance sweeps, aggregation, CSV persistence.

An experiment runs every configured method/grid point on the same sequence of
seeded problem instances (paired comparison) and aggregates the per-layer
metrics across instances. Instance seeds derive from the master seed through
``numpy.random.SeedSequence(master, spawn_key=(index,))``, so adding instances
never perturbs earlier ones.

Sweeps may run instances on a thread pool; set the environment variable
``QLCBENCH_THREADS`` to override the worker count (default 1, serial).
Results are assembled by instance index, so the output is identical either way.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .control import ControlConfig, GdConfig, RunRecord, run_control
from .graphs import Graph, assign_uniform_weights, gen_barabasi_albert, gen_erdos_renyi, gen_random_regular, read_edge_list
from .ising import GroundInfo, IsingModel, ProblemKind, encode_problem, ground_info

RUN_CSV_HEADER = "layer,beta,a_val,b_val,e_p,r_a,p_succ"
AGG_CSV_HEADER = "layer,mean_r_a,sd_r_a,mean_p,sd_p"

THREADS_ENV_VAR = "QLCBENCH_THREADS"


@dataclass(frozen=True)
class GraphSpec:
    """How to produce the instance topology (one generator or a fixed file)."""

    generator: str  # "regular" | "barabasi_albert" | "erdos_renyi" | "file"
    degree: int | None = None
    m: int | None = None
    p: float | None = None
    path: str | None = None
    weights: tuple[float, float] | None = None

    def __post_init__(self):
        need = {"regular": "degree", "barabasi_albert": "m", "erdos_renyi": "p", "file": "path"}
        if self.generator not in need:
            raise ValueError(f"unknown generator {self.generator!r}")
        if getattr(self, need[self.generator]) is None:
            raise ValueError(f"generator {self.generator!r} requires parameter {need[self.generator]!r}")
        if self.weights is not None and self.weights[0] > self.weights[1]:
            raise ValueError(f"invalid weight interval {self.weights}")


@dataclass(frozen=True)
class MethodSpec:
    label: str
    control: ControlConfig


@dataclass(frozen=True)
class ExperimentConfig:
    problem: ProblemKind
    n_qubits: int
    graph: GraphSpec
    n_instances: int
    seed: int
    methods: tuple[MethodSpec, ...]

    def __post_init__(self):
        if self.n_instances < 1:
            raise ValueError(f"n_instances must be >= 1, got {self.n_instances}")
        if not self.methods:
            raise ValueError("at least one method is required")
        labels = [m.label for m in self.methods]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate method labels: {labels}")


@dataclass
class AggregateRecord:
    """Per-layer mean and standard deviation of r_A and p across instances."""

    label: str
    n_instances: int
    mean_r_a: np.ndarray
    sd_r_a: np.ndarray
    mean_p: np.ndarray
    sd_p: np.ndarray


def instance_seeds(master_seed: int, index: int) -> tuple[int, int]:
    """Derive (topology_seed, weight_seed) for one instance, stably in index."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(index,))
    a, b = ss.generate_state(2, dtype=np.uint64)
    return int(a), int(b)


def build_instance(cfg: ExperimentConfig, index: int) -> tuple[Graph, IsingModel, GroundInfo]:
    """Generate, weight, and encode instance ``index``; errors carry the index."""
    topo_seed, weight_seed = instance_seeds(cfg.seed, index)
    spec = cfg.graph
    try:
        if spec.generator == "regular":
            g = gen_random_regular(cfg.n_qubits, spec.degree, topo_seed)
        elif spec.generator == "barabasi_albert":
            g = gen_barabasi_albert(cfg.n_qubits, spec.m, topo_seed)
        elif spec.generator == "erdos_renyi":
            g = gen_erdos_renyi(cfg.n_qubits, spec.p, topo_seed)
        else:
            g = read_edge_list(Path(spec.path).read_text(encoding="utf-8"))
            if g.n_vertices != cfg.n_qubits:
                raise ValueError(f"graph file has {g.n_vertices} vertices, config says {cfg.n_qubits}")
        if spec.weights is not None:
            g = assign_uniform_weights(g, spec.weights[0], spec.weights[1], weight_seed)
    except (ValueError, RuntimeError) as e:
        raise RuntimeError(f"instance {index}: {e}") from e
    m = encode_problem(cfg.problem, g)
    return g, m, ground_info(m)


def run_experiment(cfg: ExperimentConfig) -> tuple[dict[str, list[RunRecord]], dict[str, AggregateRecord]]:
    """Run every method on every instance; returns per-instance records and aggregates.

    All methods see the identical graph and ground-state info per instance.
    """
    workers = max(1, int(os.environ.get(THREADS_ENV_VAR, "1")))

    def one_instance(i: int) -> dict[str, RunRecord]:
        _, m, gi = build_instance(cfg, i)
        return {ms.label: run_control(m, gi, ms.control) for ms in cfg.methods}

    if workers == 1:
        per_instance = [one_instance(i) for i in range(cfg.n_instances)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_instance = list(pool.map(one_instance, range(cfg.n_instances)))

    records = {ms.label: [per_instance[i][ms.label] for i in range(cfg.n_instances)] for ms in cfg.methods}
    aggregates = {label: aggregate(label, recs) for label, recs in records.items()}
    return records, aggregates


def aggregate(label: str, records: list[RunRecord]) -> AggregateRecord:
    """Per-layer mean/sd (population) of r_A and p over equal-length runs."""
    lengths = {r.layers for r in records}
    if len(lengths) != 1:
        raise ValueError(f"cannot aggregate traces of different lengths: {sorted(lengths)}")
    r_a = np.stack([r.r_a for r in records])
    p = np.stack([r.p_succ for r in records])
    return AggregateRecord(
        label=label,
        n_instances=len(records),
        mean_r_a=r_a.mean(axis=0),
        sd_r_a=r_a.std(axis=0),
        mean_p=p.mean(axis=0),
        sd_p=p.std(axis=0),
    )


def _fmt(x: float) -> str:
    return repr(float(x))


def write_run_csv(record: RunRecord, path: str | Path) -> None:
    """One row per layer; full-precision decimals so parsing is lossless."""
    lines = [RUN_CSV_HEADER]
    for k in range(record.layers):
        lines.append(
            f"{k + 1},{_fmt(record.beta[k])},{_fmt(record.a_val[k])},{_fmt(record.b_val[k])},"
            f"{_fmt(record.e_p[k])},{_fmt(record.r_a[k])},{_fmt(record.p_succ[k])}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_run_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Parse a run CSV back into column arrays (inverse of write_run_csv)."""
    return _read_csv(path, RUN_CSV_HEADER)


def write_aggregate_csv(agg: AggregateRecord, path: str | Path) -> None:
    lines = [AGG_CSV_HEADER]
    for k in range(len(agg.mean_r_a)):
        lines.append(
            f"{k + 1},{_fmt(agg.mean_r_a[k])},{_fmt(agg.sd_r_a[k])},"
            f"{_fmt(agg.mean_p[k])},{_fmt(agg.sd_p[k])}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_aggregate_csv(path: str | Path) -> dict[str, np.ndarray]:
    return _read_csv(path, AGG_CSV_HEADER)


def _read_csv(path: str | Path, header: str) -> dict[str, np.ndarray]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != header:
        raise ValueError(f"{path}: expected header {header!r}")
    cols = header.split(",")
    data = {c: [] for c in cols}
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(cols):
            raise ValueError(f"{path}: bad row {ln!r}")
        for c, v in zip(cols, parts):
            data[c].append(float(v))
    out = {c: np.asarray(v) for c, v in data.items()}
    out["layer"] = out["layer"].astype(np.int64)
    return out


def cost_report(record: RunRecord, n_shot: int = 1) -> str:
    """Human-readable accounting of observable estimations and implied shots.

    gdqlc performs l_iters + 1 evaluation events per layer against falqon's
    one, so its shot budget is (L+1) times the falqon baseline at equal K.
    """
    lines = [
        f"method              : {record.method}",
        f"layers K            : {record.k_max}",
    ]
    if record.method == "gdqlc":
        lines.append(f"gd iterations L     : {record.l_iters}")
    lines += [
        f"evaluation events   : {record.expectation_evals}",
        f"shots per estimation: {n_shot}",
        f"total shots         : {record.expectation_evals * n_shot}",
    ]
    baseline = record.k_max  # falqon at the same depth
    lines.append(
        f"falqon baseline     : {baseline} events "
        f"(ratio {record.expectation_evals / baseline:g}x)"
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Declarative sweep configuration (TOML)
# ---------------------------------------------------------------------------

def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """Parse a TOML sweep config into an ExperimentConfig.

    Schema::

        [experiment]
        problem = "weighted_maxcut"   # maxcut | weighted_maxcut | maxclique | mincover
        n = 10
        n_instances = 20
        seed = 42
        k_max = 500

        [graph]
        generator = "regular"         # regular | barabasi_albert | erdos_renyi | file
        degree = 3                    # regular
        # m = 3                       # barabasi_albert
        # p = 0.5                     # erdos_renyi
        # path = "g.edgelist"         # file
        weights = [0.0, 2.0]          # optional uniform weight interval

        [[methods]]
        method = "falqon"
        dt = [0.01]

        [[methods]]
        method = "gdqlc"
        dt = [0.01, 0.05]
        gd_iters = [1, 3, 7]
        lr_const = [0.1]
        # lr_schedule = "sqrt_log"    # or "constant"

    Every combination in a method block's lists becomes one labelled grid point.
    """
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    try:
        exp = raw["experiment"]
        graph = raw["graph"]
        method_blocks = raw["methods"]
        problem = ProblemKind(exp["problem"])
        n = int(exp["n"])
        n_instances = int(exp["n_instances"])
        seed = int(exp["seed"])
        k_max = int(exp["k_max"])
    except KeyError as e:
        raise ValueError(f"{path}: missing config key {e}") from None
    weights = graph.get("weights")
    spec = GraphSpec(
        generator=graph["generator"],
        degree=graph.get("degree"),
        m=graph.get("m"),
        p=graph.get("p"),
        path=graph.get("path"),
        weights=tuple(weights) if weights is not None else None,
    )
    methods = []
    for block in method_blocks:
        methods.extend(_expand_method_block(block, k_max))
    return ExperimentConfig(
        problem=problem,
        n_qubits=n,
        graph=spec,
        n_instances=n_instances,
        seed=seed,
        methods=tuple(methods),
    )


def _expand_method_block(block: dict, k_max: int) -> list[MethodSpec]:
    method = block["method"]
    dts = [float(x) for x in _as_list(block.get("dt", [0.01]))]
    specs = []
    if method == "falqon":
        for dt in dts:
            specs.append(
                MethodSpec(f"falqon_dt{dt:g}", ControlConfig(dt=dt, k_max=k_max, method="falqon"))
            )
    elif method == "gdqlc":
        iters = [int(x) for x in _as_list(block.get("gd_iters", [7]))]
        consts = [float(x) for x in _as_list(block.get("lr_const", [0.1]))]
        schedule = block.get("lr_schedule", "sqrt_log")
        for dt, li, c in itertools.product(dts, iters, consts):
            gd = GdConfig(l_iters=li, lr_const=c, lr_schedule=schedule)
            specs.append(
                MethodSpec(
                    f"gdqlc_dt{dt:g}_L{li}_c{c:g}",
                    ControlConfig(dt=dt, k_max=k_max, method="gdqlc", gd=gd),
                )
            )
    else:
        raise ValueError(f"unknown method {method!r} in config")
    return specs


def _as_list(v):
    return v if isinstance(v, list) else [v]


def run_sweep(cfg: ExperimentConfig, out_dir: str | Path) -> dict[str, AggregateRecord]:
    """Execute a sweep and persist per-instance and aggregate CSVs.

    While the sweep is in flight an ``_INCOMPLETE`` marker sits in the output
    directory; it is removed only after every file has been written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    marker = out / "_INCOMPLETE"
    marker.write_text("sweep in progress\n", encoding="utf-8")
    records, aggregates = run_experiment(cfg)
    files = []
    for label in sorted(records):
        for i, rec in enumerate(records[label]):
            fname = f"{label}__inst{i:03d}.csv"
            write_run_csv(rec, out / fname)
            files.append(fname)
        fname = f"{label}__aggregate.csv"
        write_aggregate_csv(aggregates[label], out / fname)
        files.append(fname)
    manifest = {
        "problem": cfg.problem.value,
        "n_qubits": cfg.n_qubits,
        "n_instances": cfg.n_instances,
        "seed": cfg.seed,
        "labels": sorted(records),
        "files": files,
        "instance_seeds": [instance_seeds(cfg.seed, i) for i in range(cfg.n_instances)],
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    marker.unlink()
    return aggregates
