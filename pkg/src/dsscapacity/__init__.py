"""dsscapacity - capacity and secrecy bounds of heterogeneous distributed storage"""

from ._types import HelperSet, NodeIndex, Rational, RationalLike, SupportsBandwidth
from .capacity import (
    BoundsReport,
    CapacityWitness,
    average_upper_bound,
    bounds_report,
    evaluate_failure_sequence,
    exact_capacity,
    general_bounds,
    helper_only_bounds,
    homogeneous_capacity,
    second_form_helper_only_bounds,
    special_case_capacity,
    symmetric_repair_gain,
)
from .configfile import (
    config_digest,
    config_from_dict,
    config_to_dict,
    dumps_config,
    load_config,
    loads_config,
)
from .errors import (
    BadHelpers,
    BadUserSet,
    BandwidthExceedsStorage,
    CausalityViolation,
    ConfigFormatError,
    DimensionMismatch,
    DssError,
    DuplicateIndices,
    IncompleteTable,
    IndexOutOfRange,
    InternalCheckFailure,
    InvalidField,
    InvalidInput,
    LiftNotHomogeneous,
    ModelUnsupported,
    NegativeValue,
    NonIntegerUnits,
    NonPositiveScalar,
    NotAPermutation,
    OracleMismatch,
    ParamMismatch,
    ParamViolation,
    SandwichViolation,
    SearchTooLarge,
    TooManyPermutations,
)
from .flowgraph import (
    FlowGraph,
    NodeInstance,
    RepairEvent,
    RepairSchedule,
    build_flow_graph,
    chain_schedule,
    max_flow_min_cut,
    oracle_capacity,
    random_repair_event,
    random_schedule,
    schedule_cut,
)
from .lift import (
    LiftCertificate,
    LiftReport,
    combine_configs,
    lift_bound_check,
    permutation_lift,
    permute_config,
)
from .model import (
    DssConfig,
    Full,
    HelperOnly,
    Homogeneous,
    RepairBandwidthModel,
    SystemParams,
    expand_to_full,
    helper_sets,
    integer_scaled,
    node_avg_repair_bw,
    scale_config,
    sorted_beta_multiset,
    symmetrize,
    system_averages,
    validate,
)
from .rlncsim import (
    AdversarialRecord,
    FieldSpec,
    RlncState,
    TrialReport,
    adversarial_witness_trial,
    apply_schedule,
    init_storage,
    reconstruct_rank,
    repair_event,
    run_random_trials,
)
from .secrecy import (
    SecrecyParams,
    homogeneous_secrecy_bound,
    secrecy_bound_profile,
    secrecy_upper_bound,
)

__version__ = "0.1.0"
__all__ = [
    # Core types
    "Rational",
    "RationalLike",
    "NodeIndex",
    "HelperSet",
    "SupportsBandwidth",
    # Model
    "SystemParams",
    "Homogeneous",
    "HelperOnly",
    "Full",
    "RepairBandwidthModel",
    "DssConfig",
    "validate",
    "node_avg_repair_bw",
    "system_averages",
    "sorted_beta_multiset",
    "expand_to_full",
    "scale_config",
    "helper_sets",
    "integer_scaled",
    "symmetrize",
    # Config files
    "load_config",
    "loads_config",
    "config_from_dict",
    "config_to_dict",
    "dumps_config",
    "config_digest",
    # Capacity
    "CapacityWitness",
    "BoundsReport",
    "homogeneous_capacity",
    "average_upper_bound",
    "general_bounds",
    "helper_only_bounds",
    "second_form_helper_only_bounds",
    "evaluate_failure_sequence",
    "exact_capacity",
    "special_case_capacity",
    "symmetric_repair_gain",
    "bounds_report",
    # Secrecy
    "SecrecyParams",
    "homogeneous_secrecy_bound",
    "secrecy_upper_bound",
    "secrecy_bound_profile",
    # Lift
    "LiftReport",
    "LiftCertificate",
    "permute_config",
    "combine_configs",
    "permutation_lift",
    "lift_bound_check",
    # Flow graphs
    "NodeInstance",
    "RepairEvent",
    "RepairSchedule",
    "FlowGraph",
    "build_flow_graph",
    "max_flow_min_cut",
    "schedule_cut",
    "chain_schedule",
    "random_repair_event",
    "random_schedule",
    "oracle_capacity",
    # Simulation
    "FieldSpec",
    "RlncState",
    "TrialReport",
    "AdversarialRecord",
    "init_storage",
    "repair_event",
    "apply_schedule",
    "reconstruct_rank",
    "run_random_trials",
    "adversarial_witness_trial",
    # Errors
    "DssError",
    "InvalidInput",
    "InternalCheckFailure",
    "ConfigFormatError",
    "DimensionMismatch",
    "ParamViolation",
    "NegativeValue",
    "IncompleteTable",
    "IndexOutOfRange",
    "NonPositiveScalar",
    "ModelUnsupported",
    "SearchTooLarge",
    "DuplicateIndices",
    "NotAPermutation",
    "ParamMismatch",
    "TooManyPermutations",
    "CausalityViolation",
    "NonIntegerUnits",
    "InvalidField",
    "BadHelpers",
    "BadUserSet",
    "SandwichViolation",
    "LiftNotHomogeneous",
    "OracleMismatch",
    "BandwidthExceedsStorage",
]
