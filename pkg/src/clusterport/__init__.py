"""Dense state-vector simulation of two-qubit teleportation through a
four-qubit cluster-state channel, plus a small verification CLI."""

from .statevec import (
    MAX_QUBITS,
    StateVector,
    basis_state,
    fidelity,
    format_state,
    inner,
    normalize,
    relabel,
    reorder,
    tensor,
)
from .gates import PAULIS, apply_cz, apply_single, pauli_matrix
from .measurement import (
    BELL_OUTCOMES,
    BellOutcome,
    ProjectionResult,
    bell_probabilities,
    bell_vector,
    project_bell,
    sample_bell,
)
from .protocol import (
    CHANNEL_LABELS,
    INPUT_LABELS,
    MEASURED_PAIRS,
    OUTPUT_LABELS,
    OUTPUT_RELABELING,
    CorrectionOp,
    InputState,
    Scheme,
    TableEntry,
    TableReport,
    TrialResult,
    apply_correction,
    assemble_total,
    cluster_state,
    collapse_branch,
    default_probes,
    degenerate_inputs,
    derive_corrections,
    make_input,
    pauli_pair_fidelities,
    random_input,
    run_branch,
    table_lookup,
    target_state,
    verify_tables,
)
from .harness import (
    BranchRecord,
    InputSummary,
    Report,
    RunConfig,
    emit_report,
    run,
    run_derivation,
    run_enumeration,
    run_montecarlo,
    run_verification,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_QUBITS",
    "StateVector",
    "basis_state",
    "fidelity",
    "format_state",
    "inner",
    "normalize",
    "relabel",
    "reorder",
    "tensor",
    "PAULIS",
    "apply_cz",
    "apply_single",
    "pauli_matrix",
    "BELL_OUTCOMES",
    "BellOutcome",
    "ProjectionResult",
    "bell_probabilities",
    "bell_vector",
    "project_bell",
    "sample_bell",
    "CHANNEL_LABELS",
    "INPUT_LABELS",
    "MEASURED_PAIRS",
    "OUTPUT_LABELS",
    "OUTPUT_RELABELING",
    "CorrectionOp",
    "InputState",
    "Scheme",
    "TableEntry",
    "TableReport",
    "TrialResult",
    "apply_correction",
    "assemble_total",
    "cluster_state",
    "collapse_branch",
    "default_probes",
    "degenerate_inputs",
    "derive_corrections",
    "make_input",
    "pauli_pair_fidelities",
    "random_input",
    "run_branch",
    "table_lookup",
    "target_state",
    "verify_tables",
    "BranchRecord",
    "InputSummary",
    "Report",
    "RunConfig",
    "emit_report",
    "run",
    "run_derivation",
    "run_enumeration",
    "run_montecarlo",
    "run_verification",
    "__version__",
]
