#!/usr/bin/env python3
"""Benchmark the compiled statevector kernels against the numpy fallback.

Times each kernel and a composed optimizer evaluation (cost phase + mixer per
layer, then the expectation) on the 14-qubit worked example.  Run:

    python benchmarks/bench_backends.py [--repeats N]
"""

import argparse
import statistics
import time

import numpy as np

from pdqaoa import build_pdp_qubo, diagonal_energies, parse_edge_list, qubo_to_ising
from pdqaoa.backends import numpy_backend

try:
    from pdqaoa.backends import _core
except ImportError:
    _core = None

GRAPH_TEXT = "vertices 6\n0 1\n1 2\n1 3\n2 4\n3 4\n4 5"


def timeit(fn, repeats):
    fn()  # warm up
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def bench_backend(kernels, table, repeats):
    n = table.n_qubits
    size = 1 << n
    levels, level_index = table.levels()
    h_fields = {q: 0.3 for q in range(n)}
    field_qubits = np.fromiter(h_fields.keys(), dtype=np.int32)
    field_values = np.fromiter(h_fields.values(), dtype=np.float64)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)][:50]
    coup_a = np.array([p[0] for p in pairs], dtype=np.int32)
    coup_b = np.array([p[1] for p in pairs], dtype=np.int32)
    coup_values = np.full(len(pairs), 0.1)

    amps = np.full(size, 2.0 ** (-n / 2), dtype=np.complex128)
    gamma, beta = 0.37, 0.21
    phase_re, phase_im = np.cos(gamma * levels), -np.sin(gamma * levels)
    cos_b, sin_b = np.cos(beta), np.sin(beta)

    def one_evaluation(layers):
        work = np.full(size, 2.0 ** (-n / 2), dtype=np.complex128)
        for _ in range(layers):
            kernels.apply_phase_levels(work, phase_re, phase_im, level_index)
            kernels.apply_mixer(work, n, cos_b, sin_b)
        return kernels.expectation(work, table.energies)

    return {
        "energy_table": timeit(
            lambda: kernels.energy_table(n, 1.0, field_qubits, field_values, coup_a, coup_b, coup_values),
            repeats,
        ),
        "cost_phase": timeit(
            lambda: kernels.apply_phase_levels(amps, phase_re, phase_im, level_index), repeats
        ),
        "mixer": timeit(lambda: kernels.apply_mixer(amps, n, cos_b, sin_b), repeats),
        "expectation": timeit(lambda: kernels.expectation(amps, table.energies), repeats),
        "evaluation_q1": timeit(lambda: one_evaluation(1), repeats),
        "evaluation_q5": timeit(lambda: one_evaluation(5), repeats),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=50)
    args = parser.parse_args()

    graph = parse_edge_list(GRAPH_TEXT)
    table = diagonal_energies(qubo_to_ising(build_pdp_qubo(graph, 7.2, 3.6)))
    print(f"{table.n_qubits} qubits, {len(table.energies)} amplitudes, repeats={args.repeats}\n")

    python_times = bench_backend(numpy_backend, table, args.repeats)
    compiled_times = bench_backend(_core, table, args.repeats) if _core is not None else None

    header = f"{'kernel':<16}{'python':>12}{'compiled':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, py_t in python_times.items():
        if compiled_times is None:
            print(f"{name:<16}{py_t * 1e6:>10.0f}us{'n/a':>12}{'':>10}")
        else:
            c_t = compiled_times[name]
            print(f"{name:<16}{py_t * 1e6:>10.0f}us{c_t * 1e6:>10.0f}us{py_t / c_t:>9.1f}x")
    if compiled_times is None:
        print("\ncompiled extension not built; install with `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
