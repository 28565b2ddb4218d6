"""Feedback-based quantum optimization on graph problems, simulated exactly."""

from .graphs import (
    Graph,
    assign_uniform_weights,
    complement,
    gen_barabasi_albert,
    gen_erdos_renyi,
    gen_random_regular,
    read_edge_list,
    write_edge_list,
)
from .ising import (
    GroundInfo,
    IsingModel,
    ProblemKind,
    diagonal_energies,
    encode_problem,
    energy_of_bitstring,
    ground_info,
)
from .statevector import (
    LayerObservables,
    apply_driver,
    apply_hd,
    apply_problem_phase,
    expval_a,
    expval_b,
    expval_hp,
    measure_layer,
    success_probability,
    uniform_state,
)
from .control import (
    ControlConfig,
    GdConfig,
    LayerDiag,
    RunRecord,
    falqon_run,
    gd_update,
    gdqlc_layer,
    gdqlc_run,
    learning_rate,
    run_control,
)

__version__ = "0.1.0"
