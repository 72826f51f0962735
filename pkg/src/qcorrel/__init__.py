"""Correlation measures for bipartite quantum states under local projective measurements."""

from .core import (
    BipartiteState,
    DensityMatrix,
    EigenDecomposition,
    hermitian_eigen,
    make_classical_mixture,
    partial_trace,
    tensor_product,
)
from .errors import (
    ConvergenceFailure,
    CrossCheckFailure,
    DimensionMismatch,
    DuplicateTerm,
    IndexOutOfRange,
    InvalidWeights,
    MarginalsNotIdentical,
    NonHermitianInput,
    NotADistribution,
    QCorrelError,
    SchemaError,
    ValidationError,
    ZeroProbabilityOutcome,
)
from .infomeasures import (
    CorrelationReport,
    build_report,
    classical_mutual_information,
    conditional_entropy,
    correlation_measure,
    cover_thomas_measure,
    directional_ratio,
    quantum_mutual_information,
    shannon_entropy,
    total_correlation,
    von_neumann_entropy,
)
from .measurement import (
    ConditionalTable,
    JointDistribution,
    ProjectiveBasis,
    conditional_table,
    is_functional,
    joint_distribution,
    outcome_arrows,
    outcome_marginals,
    post_measurement_state,
)
from .stateio import StateSpec, parse_state_file, run_report

__version__ = "0.1.0"
