"""End-to-end single runs and grid sweeps with persistent CSV records.

A sweep executes the Cartesian product of (q, p1 multiplier, rate, max
evaluations, seed).  Records are appended to records.csv in grid order as
they finish, so an interrupted sweep leaves a usable prefix.  Every metric
column is deterministic given the config and seed; only wall_ms varies.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitstrings import string_to_index, string_to_vertex_set
from .engine import expectation, marginal_counts, run_circuit, sample
from .graph import Graph
from .ising import diagonal_energies, qubo_to_ising
from .optimize import OptimizerConfig, init_angles, minimize, pack_angles, unpack_angles
from .oracle import UndefinedRatioError, approximation_ratio, brute_force_optimal_pds, check_pds
from .qubo import build_pdp_qubo

RECORD_COLUMNS = [
    "q", "p1_mult", "p1", "rate", "p2", "max_evals", "seed",
    "best_cost", "n_evals", "z_star", "z_star_prob",
    "is_ds", "is_pds", "is_opt", "ratio", "n_valid_samples", "shots", "wall_ms",
]

OBJECTIVE_MODES = ("exact", "sampled")


class RunStageError(RuntimeError):
    """A pipeline stage failed; the message names the stage."""


@contextmanager
def _stage(name: str):
    try:
        yield
    except RunStageError:
        raise
    except Exception as exc:
        raise RunStageError(f"stage {name!r} failed: {exc}") from exc


@dataclass(frozen=True)
class RunConfig:
    graph: Graph
    q: int
    p1_mult: float
    rate: float
    max_evals: int
    shots: int = 10000
    seed: int = 0
    delta: float = 0.5
    f_tol: float = 1e-6
    objective: str = "exact"

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.p1_mult <= 0:
            raise ValueError(f"p1_mult must be positive, got {self.p1_mult}")
        if not (0 < self.rate <= 1):
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")
        if self.max_evals < 1 or self.shots < 1:
            raise ValueError("max_evals and shots must be >= 1")
        if self.delta <= 0 or self.f_tol <= 0:
            raise ValueError("delta and f_tol must be positive")
        if self.objective not in OBJECTIVE_MODES:
            raise ValueError(f"objective must be one of {OBJECTIVE_MODES}, got {self.objective!r}")

    @property
    def p1(self) -> float:
        return self.p1_mult * self.graph.vertex_count

    @property
    def p2(self) -> float:
        return self.rate * self.p1

    def run_id(self) -> str:
        return f"q{self.q}_m{self.p1_mult:g}_r{self.rate:g}_e{self.max_evals}_s{self.seed}"


@dataclass(frozen=True)
class SweepRecord:
    q: int
    p1_mult: float
    p1: float
    rate: float
    p2: float
    max_evals: int
    seed: int
    best_cost: float
    n_evals: int
    z_star: str
    z_star_prob: float
    is_ds: bool
    is_pds: bool
    is_opt: bool
    ratio: float | None
    n_valid_samples: int
    shots: int
    wall_ms: int


def _make_objective(table, config: RunConfig):
    q = config.q
    if config.objective == "exact":
        def objective(x: np.ndarray) -> float:
            return expectation(run_circuit(table, unpack_angles(x, q)), table)
        return objective

    # Shot-based estimate.  The per-point seed is derived from the angle
    # bytes so the objective stays deterministic for the whole run.
    run_key = int(config.seed).to_bytes(8, "little", signed=True)

    def sampled_objective(x: np.ndarray) -> float:
        state = run_circuit(table, unpack_angles(x, q))
        digest = hashlib.blake2b(np.ascontiguousarray(x).tobytes(), digest_size=8, key=run_key).digest()
        counts = sample(state, config.shots, int.from_bytes(digest, "little"))
        total = 0.0
        for bits, c in counts.items():
            total += c * table.energies[string_to_index(bits)]
        return total / config.shots

    return sampled_objective


def run_single(config: RunConfig, out_dir: str | None = None, run_id: str | None = None) -> SweepRecord:
    """Full pipeline for one parameter combination.

    QUBO -> Ising -> energy table -> angle optimization -> final circuit ->
    seeded sampling -> decision-bit marginal -> validity flags and ratio.
    Writes dist_<id>.tsv and trace_<id>.csv when out_dir is given.
    """
    started = time.perf_counter()
    g = config.graph
    run_id = run_id or config.run_id()

    with _stage("build-qubo"):
        model = build_pdp_qubo(g, config.p1, config.p2)
    with _stage("qubo-to-ising"):
        hamiltonian = qubo_to_ising(model)
    with _stage("energy-table"):
        table = diagonal_energies(hamiltonian)
    with _stage("optimize"):
        x0 = pack_angles(init_angles(config.q, config.delta))
        opt_config = OptimizerConfig(max_evals=config.max_evals, f_tol=config.f_tol, seed=config.seed)
        trace = minimize(_make_objective(table, config), x0, opt_config)
    with _stage("final-circuit"):
        best_angles = unpack_angles(trace.best_angles, config.q)
        state = run_circuit(table, best_angles)
    with _stage("sampling"):
        counts = sample(state, config.shots, config.seed)
        decision_counts = marginal_counts(counts, g.vertex_count)
    with _stage("metrics"):
        z_star = min(decision_counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        z_star_prob = decision_counts[z_star] / config.shots
        verdict = check_pds(g, string_to_vertex_set(z_star))
        opt_size, opt_sets = brute_force_optimal_pds(g)
        is_opt = verdict.is_pds and tuple(sorted(string_to_vertex_set(z_star))) in opt_sets
        try:
            ratio_report = approximation_ratio(decision_counts, g, opt_size)
            ratio: float | None = ratio_report.ratio
            n_valid = ratio_report.n_valid_samples
        except UndefinedRatioError:
            ratio = None
            n_valid = 0

    wall_ms = int(round((time.perf_counter() - started) * 1000))
    record = SweepRecord(
        q=config.q, p1_mult=config.p1_mult, p1=config.p1, rate=config.rate, p2=config.p2,
        max_evals=config.max_evals, seed=config.seed,
        best_cost=trace.best_value, n_evals=trace.n_evals,
        z_star=z_star, z_star_prob=z_star_prob,
        is_ds=verdict.is_ds, is_pds=verdict.is_pds, is_opt=is_opt,
        ratio=ratio, n_valid_samples=n_valid, shots=config.shots, wall_ms=wall_ms,
    )
    if out_dir is not None:
        with _stage("artifacts"):
            os.makedirs(out_dir, exist_ok=True)
            _write_distribution(os.path.join(out_dir, f"dist_{run_id}.tsv"), decision_counts, config.shots)
            _write_trace(os.path.join(out_dir, f"trace_{run_id}.csv"), trace)
    return record


def _write_distribution(path: str, decision_counts: dict[str, int], shots: int) -> None:
    rows = sorted(decision_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("bitstring\tprobability\tcount\n")
        for bits, count in rows:
            fh.write(f"{bits}\t{count / shots!r}\t{count}\n")


def _write_trace(path: str, trace) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("eval_index,cost\n")
        for i, (_, value) in enumerate(trace.evaluations):
            fh.write(f"{i},{value!r}\n")


def _format_row(r: SweepRecord) -> str:
    cells = [
        str(r.q), repr(r.p1_mult), repr(r.p1), repr(r.rate), repr(r.p2),
        str(r.max_evals), str(r.seed), repr(r.best_cost), str(r.n_evals),
        r.z_star, repr(r.z_star_prob),
        "1" if r.is_ds else "0", "1" if r.is_pds else "0", "1" if r.is_opt else "0",
        "" if r.ratio is None else repr(r.ratio),
        str(r.n_valid_samples), str(r.shots), str(r.wall_ms),
    ]
    return ",".join(cells)


def write_records_csv(path: str, records: Sequence[SweepRecord]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(RECORD_COLUMNS) + "\n")
        for r in records:
            fh.write(_format_row(r) + "\n")


def read_records_csv(path: str) -> list[SweepRecord]:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path}: empty records file")
    header = lines[0].split(",")
    if header != RECORD_COLUMNS:
        raise ValueError(f"{path}: unexpected header {header}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(RECORD_COLUMNS):
            raise ValueError(f"{path}:{lineno}: expected {len(RECORD_COLUMNS)} cells, got {len(cells)}")
        records.append(SweepRecord(
            q=int(cells[0]), p1_mult=float(cells[1]), p1=float(cells[2]),
            rate=float(cells[3]), p2=float(cells[4]),
            max_evals=int(cells[5]), seed=int(cells[6]),
            best_cost=float(cells[7]), n_evals=int(cells[8]),
            z_star=cells[9], z_star_prob=float(cells[10]),
            is_ds=cells[11] == "1", is_pds=cells[12] == "1", is_opt=cells[13] == "1",
            ratio=None if cells[14] == "" else float(cells[14]),
            n_valid_samples=int(cells[15]), shots=int(cells[16]), wall_ms=int(cells[17]),
        ))
    return records


def default_grid() -> dict:
    """The default 420-combination experiment axes (3 * 7 * 4 * 5)."""
    return {
        "q": [1, 2, 5],
        "p1_multipliers": [0.8, 1.0, 1.2, 1.4, 1.6, 1.8, 2.0],
        "rates": [0.3, 0.5, 0.7, 1.0],
        "max_evals": [100, 200, 500, 1000, 10000],
        "seeds": [0],
    }


def load_sweep_config(path: str) -> dict:
    """Sweep config JSON: axis arrays q / p1_multipliers / rates / max_evals /
    seeds, scalars shots / delta / f_tol."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    config = {"seeds": [0], "shots": 10000, "delta": 0.5, "f_tol": 1e-6}
    config.update(raw)
    for axis in ("q", "p1_multipliers", "rates", "max_evals", "seeds"):
        if axis not in config:
            raise ValueError(f"sweep config missing axis {axis!r}")
        if not isinstance(config[axis], list) or not config[axis]:
            raise ValueError(f"sweep config axis {axis!r} must be a non-empty array")
    for scalar in ("shots", "delta", "f_tol"):
        if isinstance(config[scalar], list):
            raise ValueError(f"sweep config key {scalar!r} must be a scalar")
    return config


def _run_for_pool(args) -> SweepRecord:
    config, out_dir = args
    return run_single(config, out_dir=out_dir)


def run_sweep(
    graph: Graph,
    q_values: Sequence[int],
    p1_multipliers: Sequence[float],
    rates: Sequence[float],
    max_evals_values: Sequence[int],
    seeds: Sequence[int] = (0,),
    *,
    shots: int = 10000,
    delta: float = 0.5,
    f_tol: float = 1e-6,
    objective: str = "exact",
    out_dir: str | None = None,
    workers: int | None = None,
    artifacts: bool = True,
    progress: bool = False,
) -> list[SweepRecord]:
    """Run the full Cartesian grid; rows land in records.csv in grid order."""
    for name, axis in (("q_values", q_values), ("p1_multipliers", p1_multipliers),
                       ("rates", rates), ("max_evals_values", max_evals_values), ("seeds", seeds)):
        if not axis:
            raise ValueError(f"empty sweep axis {name}")
    configs = [
        RunConfig(graph=graph, q=q, p1_mult=m, rate=r, max_evals=e, seed=s,
                  shots=shots, delta=delta, f_tol=f_tol, objective=objective)
        for q, m, r, e, s in itertools.product(q_values, p1_multipliers, rates, max_evals_values, seeds)
    ]
    artifact_dir = out_dir if (out_dir is not None and artifacts) else None
    records_fh = None
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        records_fh = open(os.path.join(out_dir, "records.csv"), "w", encoding="utf-8")
        records_fh.write(",".join(RECORD_COLUMNS) + "\n")
        records_fh.flush()

    records: list[SweepRecord] = []
    workers = workers if workers is not None else (os.cpu_count() or 1)
    try:
        if workers <= 1:
            for i, config in enumerate(configs):
                record = run_single(config, out_dir=artifact_dir)
                records.append(record)
                if records_fh is not None:
                    records_fh.write(_format_row(record) + "\n")
                    records_fh.flush()
                if progress:
                    print(f"[{i + 1}/{len(configs)}] {config.run_id()} "
                          f"best_cost={record.best_cost:.4f} is_pds={record.is_pds}", flush=True)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_run_for_pool, (config, artifact_dir)) for config in configs]
                for i, future in enumerate(futures):
                    record = future.result()
                    records.append(record)
                    if records_fh is not None:
                        records_fh.write(_format_row(record) + "\n")
                        records_fh.flush()
                    if progress:
                        print(f"[{i + 1}/{len(configs)}] {configs[i].run_id()} "
                              f"best_cost={record.best_cost:.4f} is_pds={record.is_pds}", flush=True)
    finally:
        if records_fh is not None:
            records_fh.close()
    if out_dir is not None:
        write_summary_csv(os.path.join(out_dir, "summary.csv"), records)
    return records


def ratio_summary_by_q(records: Sequence[SweepRecord]) -> list[dict]:
    """Fig. 8-style min/max/avg approximation ratio per layer count."""
    out = []
    for q in sorted({r.q for r in records}):
        group = [r for r in records if r.q == q]
        defined = [r.ratio for r in group if r.ratio is not None]
        out.append({
            "q": q,
            "n_records": len(group),
            "n_defined": len(defined),
            "min_ratio": min(defined) if defined else None,
            "max_ratio": max(defined) if defined else None,
            "avg_ratio": sum(defined) / len(defined) if defined else None,
        })
    return out


def write_summary_csv(path: str, records: Sequence[SweepRecord]) -> None:
    rows = ratio_summary_by_q(records)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("q,n_records,n_defined,min_ratio,max_ratio,avg_ratio\n")
        for row in rows:
            cells = [str(row["q"]), str(row["n_records"]), str(row["n_defined"])]
            cells += ["" if row[k] is None else repr(row[k]) for k in ("min_ratio", "max_ratio", "avg_ratio")]
            fh.write(",".join(cells) + "\n")


@dataclass
class ReportBundle:
    n_records: int
    n_pds: int
    n_opt: int
    per_q: list[dict]
    top_tables: dict[str, dict]
    top_count: int


REPORT_AXES = ("q", "p1_mult", "rate", "max_evals")


def report(records: Sequence[SweepRecord], fraction: float = 0.2, out_dir: str | None = None) -> ReportBundle:
    """Per-layer ratio summary, top-fraction parameter frequencies for each
    axis, and counts of records whose z* is a correct / optimal PDS."""
    from .oracle import top_fraction_param_distribution

    if not records:
        raise ValueError("no records to report on")
    per_q = ratio_summary_by_q(records)
    top_tables = {axis: top_fraction_param_distribution(records, fraction, axis) for axis in REPORT_AXES}
    bundle = ReportBundle(
        n_records=len(records),
        n_pds=sum(1 for r in records if r.is_pds),
        n_opt=sum(1 for r in records if r.is_opt),
        per_q=per_q,
        top_tables=top_tables,
        top_count=math.ceil(fraction * len(records)),
    )
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, "report_counts.csv"), "w", encoding="utf-8") as fh:
            fh.write("metric,count\n")
            fh.write(f"records,{bundle.n_records}\n")
            fh.write(f"z_star_is_pds,{bundle.n_pds}\n")
            fh.write(f"z_star_is_opt,{bundle.n_opt}\n")
        with open(os.path.join(out_dir, "report_ratio_by_q.csv"), "w", encoding="utf-8") as fh:
            fh.write("q,n_records,n_defined,min_ratio,max_ratio,avg_ratio\n")
            for row in per_q:
                cells = [str(row["q"]), str(row["n_records"]), str(row["n_defined"])]
                cells += ["" if row[k] is None else repr(row[k]) for k in ("min_ratio", "max_ratio", "avg_ratio")]
                fh.write(",".join(cells) + "\n")
        for axis, table in top_tables.items():
            with open(os.path.join(out_dir, f"report_top_{axis}.csv"), "w", encoding="utf-8") as fh:
                fh.write("parameter,value,count\n")
                for value, count in table.items():
                    fh.write(f"{axis},{value:g},{count}\n" if isinstance(value, float)
                             else f"{axis},{value},{count}\n")
    return bundle
