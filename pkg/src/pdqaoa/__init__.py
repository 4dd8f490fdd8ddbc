"""Perfect dominating sets via QUBO penalty encoding and low-depth QAOA on
an exact statevector simulator."""

from .backends import backend_name
from .bitstrings import bits_to_index, index_to_bits, index_to_string, string_to_index, string_to_vertex_set
from .engine import (
    QaoaAngles,
    StateVector,
    apply_cost_phase,
    apply_mixer,
    expectation,
    init_superposition,
    marginal_counts,
    marginal_decision_distribution,
    run_circuit,
    sample,
)
from .graph import Graph, GraphFormatError, closed_neighborhood, load_graph, parse_edge_list, serialize_edge_list
from .ising import EnergyTable, IsingHamiltonian, diagonal_energies, ising_to_dict, qubo_to_ising
from .optimize import (
    ObjectiveError,
    OptimizerConfig,
    OptTrace,
    init_angles,
    minimize,
    pack_angles,
    unpack_angles,
    wrap_angles,
)
from .oracle import (
    PdsVerdict,
    RatioReport,
    UndefinedRatioError,
    approximation_ratio,
    brute_force_ground_states,
    brute_force_optimal_pds,
    check_pds,
    top_fraction_param_distribution,
)
from .qubo import (
    PenaltyError,
    QuboModel,
    VariableRegistry,
    build_pdp_qubo,
    default_penalties,
    evaluate_qubo,
    qubo_to_dict,
    slack_coefficients,
)
from .sweep import (
    RunConfig,
    RunStageError,
    SweepRecord,
    default_grid,
    read_records_csv,
    report,
    run_single,
    run_sweep,
    write_records_csv,
)

__version__ = "0.1.0"
