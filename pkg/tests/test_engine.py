import math

import numpy as np
import pytest

from pdqaoa import (
    IsingHamiltonian,
    QaoaAngles,
    StateVector,
    apply_cost_phase,
    apply_mixer,
    build_pdp_qubo,
    diagonal_energies,
    expectation,
    init_superposition,
    marginal_counts,
    marginal_decision_distribution,
    qubo_to_ising,
    run_circuit,
    sample,
)
from pdqaoa.engine import UNITARITY_ATOL
from pdqaoa.ising import EnergyTable


def _random_table(rng, n):
    return EnergyTable(rng.normal(scale=3.0, size=1 << n), n)


def _random_state(rng, n):
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    amps /= np.linalg.norm(amps)
    return StateVector(amps, n)


@pytest.fixture(scope="module")
def fig2_table(fig2_graph):
    return diagonal_energies(qubo_to_ising(build_pdp_qubo(fig2_graph, 7.2, 7.2)))


class TestInitSuperposition:
    def test_one_qubit(self):
        state = init_superposition(1)
        assert np.allclose(state.amplitudes, [1 / math.sqrt(2)] * 2)

    def test_two_qubits(self):
        state = init_superposition(2)
        assert np.allclose(state.amplitudes, [0.5] * 4)

    def test_fourteen_qubits(self):
        state = init_superposition(14)
        assert state.amplitudes.shape == (16384,)
        assert np.allclose(state.amplitudes, 2.0**-7)

    @pytest.mark.parametrize("n", [0, 27])
    def test_out_of_range(self, n):
        with pytest.raises(ValueError):
            init_superposition(n)


class TestCostPhase:
    def test_zero_angle_is_identity(self, fig2_table):
        state = init_superposition(14)
        out = apply_cost_phase(state, fig2_table, 0.0)
        assert np.allclose(out.amplitudes, state.amplitudes, atol=1e-12)

    def test_single_qubit_z_phases(self):
        table = diagonal_energies(IsingHamiltonian(1, 0.0, {0: 1.0}, {}))
        state = init_superposition(1)
        out = apply_cost_phase(state, table, math.pi / 2)
        expected = np.array([np.exp(-1j * math.pi / 2), np.exp(1j * math.pi / 2)]) / math.sqrt(2)
        assert np.allclose(out.amplitudes, expected, atol=1e-12)

    def test_magnitudes_preserved(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            state = _random_state(rng, n)
            table = _random_table(rng, n)
            out = apply_cost_phase(state, table, float(rng.uniform(0, 2 * math.pi)))
            assert np.allclose(np.abs(out.amplitudes), np.abs(state.amplitudes), atol=1e-12)

    def test_size_mismatch(self, fig2_table):
        with pytest.raises(ValueError, match="qubits"):
            apply_cost_phase(init_superposition(3), fig2_table, 0.1)


class TestMixer:
    def test_zero_angle_is_identity(self):
        rng = np.random.default_rng(5)
        state = _random_state(rng, 4)
        out = apply_mixer(state, 0.0)
        assert np.allclose(out.amplitudes, state.amplitudes, atol=1e-12)

    def test_half_pi_flips_basis_state(self):
        state = StateVector(np.array([1.0, 0.0], dtype=complex), 1)
        out = apply_mixer(state, math.pi / 2)
        assert np.allclose(out.amplitudes, [0.0, -1j], atol=1e-12)

    def test_plus_state_is_eigenvector(self):
        state = init_superposition(1)
        beta = 0.7341
        out = apply_mixer(state, beta)
        expected = np.exp(-1j * beta) * state.amplitudes
        assert np.allclose(out.amplitudes, expected, atol=1e-12)

    def test_inverse(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            state = _random_state(rng, n)
            beta = float(rng.uniform(0, math.pi))
            back = apply_mixer(apply_mixer(state, beta), -beta)
            assert np.allclose(back.amplitudes, state.amplitudes, atol=1e-9)


class TestRunCircuit:
    def test_zero_angles_leave_uniform(self, fig2_table):
        out = run_circuit(fig2_table, QaoaAngles((0.0,), (0.0,)))
        assert np.allclose(out.amplitudes, 2.0**-7, atol=1e-12)

    def test_offset_only_hamiltonian_keeps_uniform_magnitudes(self):
        table = diagonal_energies(IsingHamiltonian(3, 4.2, {}, {}))
        out = run_circuit(table, QaoaAngles((0.9, 1.7), (0.4, 0.2)))
        assert np.allclose(np.abs(out.amplitudes), 2.0**-1.5, atol=1e-9)

    def test_norm_preserved(self, fig2_table):
        rng = np.random.default_rng(3)
        for q in (1, 2, 5):
            angles = QaoaAngles(tuple(rng.uniform(0, 2 * math.pi, q)), tuple(rng.uniform(0, math.pi, q)))
            out = run_circuit(fig2_table, angles)
            assert abs(out.norm_squared() - 1.0) < UNITARITY_ATOL

    def test_expectation_shift_invariance(self):
        rng = np.random.default_rng(23)
        table = _random_table(rng, 5)
        shifted = EnergyTable(table.energies + 11.5, 5)
        angles = QaoaAngles((0.8, 0.3), (0.5, 0.9))
        f0 = expectation(run_circuit(table, angles), table)
        f1 = expectation(run_circuit(shifted, angles), shifted)
        assert f1 == pytest.approx(f0 + 11.5, abs=1e-9)


class TestAngles:
    def test_lengths_must_match(self):
        with pytest.raises(ValueError, match="equal length"):
            QaoaAngles((0.1,), (0.1, 0.2))

    def test_at_least_one_layer(self):
        with pytest.raises(ValueError, match="at least one layer"):
            QaoaAngles((), ())


class TestExpectation:
    def test_uniform_state_gives_mean(self, fig2_table):
        state = init_superposition(14)
        assert expectation(state, fig2_table) == pytest.approx(fig2_table.energies.mean(), abs=1e-9)

    def test_basis_state_gives_entry(self, fig2_table):
        amps = np.zeros(16384, dtype=complex)
        amps[37] = 1.0
        assert expectation(StateVector(amps, 14), fig2_table) == pytest.approx(
            float(fig2_table.energies[37]), abs=1e-12
        )

    def test_matches_independent_sum(self):
        rng = np.random.default_rng(29)
        state = _random_state(rng, 6)
        table = _random_table(rng, 6)
        by_hand = sum(abs(a) ** 2 * e for a, e in zip(state.amplitudes, table.energies))
        assert expectation(state, table) == pytest.approx(by_hand, abs=1e-9)


class TestSample:
    def test_basis_state_is_deterministic(self):
        amps = np.zeros(8, dtype=complex)
        amps[0] = 1.0
        counts = sample(StateVector(amps, 3), 100, seed=1)
        assert counts == {"000": 100}

    def test_uniform_counts_within_binomial_bound(self):
        counts = sample(init_superposition(2), 10**6, seed=99)
        assert sum(counts.values()) == 10**6
        for bits in ("00", "01", "10", "11"):
            assert abs(counts[bits] - 250000) < 3000

    def test_same_seed_reproduces_counts(self, fig2_table):
        state = run_circuit(fig2_table, QaoaAngles((0.4,), (0.3,)))
        assert sample(state, 5000, seed=7) == sample(state, 5000, seed=7)

    def test_shots_validated(self):
        with pytest.raises(ValueError, match="shots"):
            sample(init_superposition(1), 0, seed=0)


class TestMarginal:
    def test_identity_when_all_bits_kept(self):
        rng = np.random.default_rng(31)
        state = _random_state(rng, 4)
        probs = state.probabilities()
        marg = marginal_decision_distribution(probs, 4)
        assert len(marg) == 16
        for idx, p in enumerate(probs):
            key = format(idx, "04b")[::-1]
            assert marg[key] == pytest.approx(float(p), abs=1e-12)

    def test_uniform_fourteen_qubit_state(self):
        probs = init_superposition(14).probabilities()
        marg = marginal_decision_distribution(probs, 6)
        assert len(marg) == 64
        assert all(p == pytest.approx(1 / 64, abs=1e-12) for p in marg.values())

    def test_mass_sums_to_one(self):
        rng = np.random.default_rng(37)
        state = _random_state(rng, 9)
        marg = marginal_decision_distribution(state.probabilities(), 4)
        assert sum(marg.values()) == pytest.approx(1.0, abs=1e-9)

    def test_counts_mapping_input(self):
        marg = marginal_decision_distribution({"0010": 30, "0011": 10, "1000": 60}, 2)
        assert marg == {"00": pytest.approx(0.4), "10": pytest.approx(0.6)}

    def test_marginal_counts_aggregation(self):
        assert marginal_counts({"0010": 30, "0011": 10, "1000": 60}, 2) == {"00": 40, "10": 60}

    def test_n_decision_validated(self):
        with pytest.raises(ValueError, match="n_decision"):
            marginal_decision_distribution(init_superposition(3).probabilities(), 5)
