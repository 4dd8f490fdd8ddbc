"""Command line interface.

Subcommands: model (QUBO/Ising export), oracle (exact optima), solve (one
run), sweep (full grid), report (analysis of a records CSV).
"""

from __future__ import annotations

import argparse
import json
import sys

from .graph import load_graph
from .ising import ising_to_dict, qubo_to_ising
from .oracle import brute_force_optimal_pds
from .qubo import build_pdp_qubo, default_penalties, qubo_to_dict
from .sweep import (
    RunConfig,
    load_sweep_config,
    read_records_csv,
    report,
    run_single,
    run_sweep,
)


def _add_graph_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", required=True, help="edge-list file (optional 'vertices N' header)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdqaoa",
                                     description="Perfect-domination solver via QUBO + low-depth QAOA")
    sub = parser.add_subparsers(dest="command", required=True)

    p_model = sub.add_parser("model", help="export the compiled QUBO or Ising model as JSON")
    _add_graph_arg(p_model)
    p_model.add_argument("--p1", type=float, default=None, help="domination penalty (default 1.2*|V|)")
    p_model.add_argument("--p2", type=float, default=None, help="perfect-condition penalty (default p1)")
    p_model.add_argument("--export", choices=("qubo", "ising"), default="qubo")

    p_oracle = sub.add_parser("oracle", help="brute-force optimal perfect dominating sets")
    _add_graph_arg(p_oracle)

    p_solve = sub.add_parser("solve", help="run one parameter combination")
    _add_graph_arg(p_solve)
    p_solve.add_argument("--q", type=int, required=True, help="circuit layers")
    p_solve.add_argument("--p1-mult", type=float, required=True, help="p1 = p1-mult * |V|")
    p_solve.add_argument("--rate", type=float, required=True, help="p2 = rate * p1")
    p_solve.add_argument("--max-evals", type=int, required=True, help="objective evaluation budget")
    p_solve.add_argument("--shots", type=int, default=10000)
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--delta", type=float, default=0.5, help="initial ramp scale")
    p_solve.add_argument("--tol", type=float, default=1e-6, help="objective spread tolerance")
    p_solve.add_argument("--objective", choices=("exact", "sampled"), default="exact")
    p_solve.add_argument("--out", default=None, help="directory for distribution/trace artifacts")

    p_sweep = sub.add_parser("sweep", help="run a full parameter grid")
    _add_graph_arg(p_sweep)
    p_sweep.add_argument("--config", required=True, help="JSON sweep config")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--no-artifacts", action="store_true", help="skip per-run dist/trace files")
    p_sweep.add_argument("--quiet", action="store_true")

    p_report = sub.add_parser("report", help="analyze a records CSV")
    p_report.add_argument("--records", required=True)
    p_report.add_argument("--fraction", type=float, default=0.2)
    p_report.add_argument("--out", required=True, help="output directory for report_*.csv")

    return parser


def _cmd_model(args) -> int:
    g = load_graph(args.graph)
    p1, p2 = args.p1, args.p2
    if p1 is None and p2 is None:
        p1, p2 = default_penalties(g)
    model = build_pdp_qubo(g, p1, p2)
    payload = qubo_to_dict(model) if args.export == "qubo" else ising_to_dict(qubo_to_ising(model))
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _cmd_oracle(args) -> int:
    g = load_graph(args.graph)
    size, sets = brute_force_optimal_pds(g)
    print(f"optimal PDS size: {size}")
    print(f"optimal PDS count: {len(sets)}")
    for s in sets:
        print("{" + ", ".join(map(str, s)) + "}")
    return 0


def _cmd_solve(args) -> int:
    g = load_graph(args.graph)
    config = RunConfig(
        graph=g, q=args.q, p1_mult=args.p1_mult, rate=args.rate,
        max_evals=args.max_evals, shots=args.shots, seed=args.seed,
        delta=args.delta, f_tol=args.tol, objective=args.objective,
    )
    record = run_single(config, out_dir=args.out)
    for column, value in zip(
        ("q", "p1_mult", "p1", "rate", "p2", "max_evals", "seed", "best_cost", "n_evals",
         "z_star", "z_star_prob", "is_ds", "is_pds", "is_opt", "ratio", "n_valid_samples",
         "shots", "wall_ms"),
        (record.q, record.p1_mult, record.p1, record.rate, record.p2, record.max_evals,
         record.seed, record.best_cost, record.n_evals, record.z_star, record.z_star_prob,
         record.is_ds, record.is_pds, record.is_opt, record.ratio, record.n_valid_samples,
         record.shots, record.wall_ms),
    ):
        print(f"{column}: {value}")
    return 0


def _cmd_sweep(args) -> int:
    g = load_graph(args.graph)
    config = load_sweep_config(args.config)
    records = run_sweep(
        g,
        q_values=config["q"],
        p1_multipliers=config["p1_multipliers"],
        rates=config["rates"],
        max_evals_values=config["max_evals"],
        seeds=config["seeds"],
        shots=config["shots"],
        delta=config["delta"],
        f_tol=config["f_tol"],
        out_dir=args.out,
        workers=args.workers,
        artifacts=not args.no_artifacts,
        progress=not args.quiet,
    )
    print(f"wrote {len(records)} records to {args.out}/records.csv")
    return 0


def _cmd_report(args) -> int:
    records = read_records_csv(args.records)
    bundle = report(records, fraction=args.fraction, out_dir=args.out)
    print(f"records: {bundle.n_records}")
    print(f"{bundle.n_pds} correct (z* is a PDS), {bundle.n_opt} optimal")
    print(f"top {args.fraction:.0%}: {bundle.top_count} records")
    for row in bundle.per_q:
        if row["n_defined"]:
            print(f"q={row['q']}: ratio min={row['min_ratio']:.4f} "
                  f"max={row['max_ratio']:.4f} avg={row['avg_ratio']:.4f} "
                  f"({row['n_defined']}/{row['n_records']} defined)")
        else:
            print(f"q={row['q']}: no defined ratios ({row['n_records']} records)")
    return 0


_COMMANDS = {
    "model": _cmd_model,
    "oracle": _cmd_oracle,
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "report": _cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
