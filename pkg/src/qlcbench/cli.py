"""Command-line interface: run, sweep, gen, verify.

    qlcbench run    --problem maxcut --n 8 --generator regular3 --method gdqlc \
                    --dt 0.01 --layers 300 --gd-iters 7 --lr-const 0.1 --seed 7 --out r.csv
    qlcbench sweep  --config sweep.toml --out-dir results/
    qlcbench gen    --n 16 --generator ba3 --seed 3 --out g.edgelist
    qlcbench verify
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .control import ControlConfig, GdConfig, run_control
from .graphs import Graph, assign_uniform_weights, gen_barabasi_albert, gen_erdos_renyi, gen_random_regular, read_edge_list, write_edge_list
from .harness import cost_report, instance_seeds, load_experiment_config, run_sweep, write_run_csv
from .ising import ProblemKind, encode_problem, ground_info
from . import selftest

_GENERATOR_RE = re.compile(r"^(regular|ba|er)([0-9.]+)$")


def parse_generator(spec: str) -> tuple[str, float]:
    """Parse compact generator specs: regular<d>, ba<m>, er<p>."""
    m = _GENERATOR_RE.match(spec)
    if not m:
        raise ValueError(f"bad generator spec {spec!r}: expected e.g. regular3, ba3, er0.5")
    return m.group(1), float(m.group(2))


def parse_weights(spec: str) -> tuple[float, float]:
    parts = spec.split(",")
    if len(parts) != 2:
        raise ValueError(f"bad weights spec {spec!r}: expected LO,HI")
    return float(parts[0]), float(parts[1])


def _build_graph(args) -> Graph:
    topo_seed, weight_seed = instance_seeds(args.seed, 0)
    if args.graph_file:
        g = read_edge_list(Path(args.graph_file).read_text(encoding="utf-8"))
        if args.n is not None and g.n_vertices != args.n:
            raise ValueError(f"graph file has {g.n_vertices} vertices but --n={args.n}")
    else:
        if args.n is None:
            raise ValueError("--n is required with --generator")
        kind, param = parse_generator(args.generator)
        if kind == "regular":
            g = gen_random_regular(args.n, int(param), topo_seed)
        elif kind == "ba":
            g = gen_barabasi_albert(args.n, int(param), topo_seed)
        else:
            g = gen_erdos_renyi(args.n, param, topo_seed)
    if args.weights:
        lo, hi = parse_weights(args.weights)
        g = assign_uniform_weights(g, lo, hi, weight_seed)
    return g


def _cmd_run(args) -> int:
    g = _build_graph(args)
    model = encode_problem(ProblemKind(args.problem), g)
    gi = ground_info(model)
    gd = None
    if args.method == "gdqlc":
        gd = GdConfig(l_iters=args.gd_iters, lr_const=args.lr_const, lr_schedule=args.lr_schedule)
    cfg = ControlConfig(dt=args.dt, k_max=args.layers, method=args.method, gd=gd)
    record = run_control(model, gi, cfg)
    write_run_csv(record, args.out)
    print(f"wrote {args.out}: {record.layers} layers, final r_A={record.r_a[-1]:.6f}, final p={record.p_succ[-1]:.6f}")
    if args.nshot is not None:
        print(cost_report(record, args.nshot), end="")
    return 0


def _cmd_sweep(args) -> int:
    cfg = load_experiment_config(args.config)  # fails before any output exists
    aggregates = run_sweep(cfg, args.out_dir)
    for label in sorted(aggregates):
        agg = aggregates[label]
        print(f"{label}: {agg.n_instances} instances, final mean r_A={agg.mean_r_a[-1]:.6f}, mean p={agg.mean_p[-1]:.6f}")
    return 0


def _cmd_gen(args) -> int:
    g = _build_graph(args)
    Path(args.out).write_text(write_edge_list(g), encoding="utf-8")
    print(f"wrote {args.out}: {g.n_vertices} vertices, {g.n_edges} edges")
    return 0


def _cmd_verify(args) -> int:
    results = selftest.run_all()
    failed = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
        failed += not ok
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlcbench", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run one method on one seeded instance, write a trace CSV")
    run_p.add_argument("--problem", required=True, choices=[k.value for k in ProblemKind])
    run_p.add_argument("--n", type=int, default=None, help="vertex/qubit count")
    src = run_p.add_mutually_exclusive_group()
    src.add_argument("--generator", default="regular3", help="regular<d> | ba<m> | er<p>")
    src.add_argument("--graph-file", default=None, help="edge-list file instead of a generator")
    run_p.add_argument("--weights", default=None, help="uniform edge-weight interval LO,HI")
    run_p.add_argument("--method", required=True, choices=["falqon", "gdqlc"])
    run_p.add_argument("--dt", type=float, required=True)
    run_p.add_argument("--layers", type=int, required=True, help="number of layers K")
    run_p.add_argument("--gd-iters", type=int, default=7, help="gdqlc iterations per layer")
    run_p.add_argument("--lr-const", type=float, default=0.1)
    run_p.add_argument("--lr-schedule", default="sqrt_log", choices=["sqrt_log", "constant"])
    run_p.add_argument("--seed", type=int, required=True)
    run_p.add_argument("--out", required=True)
    run_p.add_argument("--nshot", type=int, default=None, help="print a measurement-cost report for this shot count")
    run_p.set_defaults(func=_cmd_run)

    sweep_p = sub.add_parser("sweep", help="run a configured experiment grid, write CSVs to a directory")
    sweep_p.add_argument("--config", required=True)
    sweep_p.add_argument("--out-dir", required=True)
    sweep_p.set_defaults(func=_cmd_sweep)

    gen_p = sub.add_parser("gen", help="generate a graph and write its edge list")
    gen_p.add_argument("--n", type=int, required=True)
    gen_p.add_argument("--generator", default="regular3")
    gen_p.add_argument("--weights", default=None)
    gen_p.add_argument("--seed", type=int, required=True)
    gen_p.add_argument("--out", required=True)
    gen_p.add_argument("--graph-file", default=None, help=argparse.SUPPRESS)
    gen_p.set_defaults(func=_cmd_gen)

    verify_p = sub.add_parser("verify", help="run the built-in oracle/invariant self-tests")
    verify_p.set_defaults(func=_cmd_verify)
    return parser


def cli_main(argv: list[str] | None = None) -> int:
    """Entry point returning an exit code (0 success, 1 failure, 2 usage)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
