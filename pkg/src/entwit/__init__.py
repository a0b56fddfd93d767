"""Bipartite entanglement detection through two-qubit subspace witnesses and
a measurable lower bound on the convex-roof extended negativity.

The toolkit compresses an m x n state onto every pair of two-dimensional
local subspaces, runs CHSH and nonlinear two-qubit witnesses on the
compressed blocks, and assembles the per-subspace violations into a lower
bound on the convex-roof extended negativity that is tight on canonical
Schmidt-form pure states.  See the module docstrings of qstate, generators,
witness, cren, and states for the conventions; the `entwit` console script
(entwit.cli) exposes detection, bound computation, and parameter sweeps.
"""

from .qstate import (
    TAU_EQ,
    TAU_HERM,
    TAU_NORM,
    TAU_PSD,
    TAU_TR,
    DensityMatrix,
    DimensionMismatchError,
    Dims,
    NotHermitianError,
    NotPositiveError,
    PureState,
    SchmidtDecomposition,
    StateValidationError,
    TraceError,
    from_json,
    negativity,
    partial_transpose,
    partial_transpose_mat,
    pure_negativity,
    realignment_value,
    schmidt,
    to_json,
    trace_norm,
    validate_density,
    validate_pure,
)
from .generators import (
    PAULI,
    EmbeddedObservable,
    GeneratorPair,
    ObservableTriad,
    embed_observable,
    generator_matrix,
    rotation_zyz,
    so_generators,
    subspace_projector,
    tilde_operator,
    triad_from_rotation,
)
from .witness import (
    TAU_C,
    TAU_DETECT,
    BellSettings,
    OptimizerConfig,
    ProjectedState,
    SubspaceReport,
    WitnessSettings,
    bell_max,
    bell_value,
    best_report,
    c_coefficient,
    csv_rows,
    detect_entanglement,
    estimate_mean_shots,
    nonlinear_max,
    nonlinear_normalized,
    nonlinear_value,
    optimize_settings,
    project_state,
    reports_to_csv,
    subspace_report,
    subspace_reports,
)
from .cren import (
    CrenBoundReport,
    bound_from_rows,
    cren_lower_bound,
    cren_pure,
    pure_sum_identity,
    report_to_json,
)
from .states import (
    StateSpec,
    bennett_rho,
    example1_mixture,
    example2_mixture,
    isotropic,
    max_entangled,
    pure_from_schmidt,
    random_density,
    random_pure,
    rho_a,
)

__version__ = "0.1.0"

__all__ = [
    "BellSettings",
    "CrenBoundReport",
    "DensityMatrix",
    "DimensionMismatchError",
    "Dims",
    "EmbeddedObservable",
    "GeneratorPair",
    "NotHermitianError",
    "NotPositiveError",
    "ObservableTriad",
    "OptimizerConfig",
    "PAULI",
    "ProjectedState",
    "PureState",
    "SchmidtDecomposition",
    "StateSpec",
    "StateValidationError",
    "SubspaceReport",
    "TAU_C",
    "TAU_DETECT",
    "TAU_EQ",
    "TAU_HERM",
    "TAU_NORM",
    "TAU_PSD",
    "TAU_TR",
    "TraceError",
    "WitnessSettings",
    "bell_max",
    "bell_value",
    "bennett_rho",
    "best_report",
    "bound_from_rows",
    "c_coefficient",
    "cren_lower_bound",
    "cren_pure",
    "csv_rows",
    "detect_entanglement",
    "embed_observable",
    "estimate_mean_shots",
    "example1_mixture",
    "example2_mixture",
    "from_json",
    "generator_matrix",
    "isotropic",
    "max_entangled",
    "negativity",
    "nonlinear_max",
    "nonlinear_normalized",
    "nonlinear_value",
    "optimize_settings",
    "partial_transpose",
    "partial_transpose_mat",
    "project_state",
    "pure_from_schmidt",
    "pure_negativity",
    "pure_sum_identity",
    "random_density",
    "random_pure",
    "realignment_value",
    "report_to_json",
    "reports_to_csv",
    "rho_a",
    "rotation_zyz",
    "schmidt",
    "so_generators",
    "subspace_projector",
    "subspace_report",
    "subspace_reports",
    "tilde_operator",
    "to_json",
    "trace_norm",
    "triad_from_rotation",
    "validate_density",
    "validate_pure",
    "__version__",
]
