"""Consistent regulatory Boolean functions as a navigable space.

Shapes (antichain covers) with their order and signatures live in
:mod:`funspace.shapes`; local order navigation, enumeration and the
brute-force diagram oracle in :mod:`funspace.neighborhood`; network
dynamics in :mod:`funspace.dynamics`; model text I/O in
:mod:`funspace.modelio`; ensemble simulation and the built-in T-helper
model in :mod:`funspace.pbn`.
"""

from .errors import (
    ArityMismatch,
    ArityTooLarge,
    DedekindUnknown,
    DualRegulation,
    DuplicateComponent,
    EmptyClauseSet,
    FunspaceError,
    InvalidProbability,
    MissingMarker,
    ModelError,
    ModelSyntaxError,
    NoActivators,
    NotAChain,
    NotAntichain,
    NotAParent,
    NotAutoregulated,
    NotConsistent,
    NotCover,
    NotDNFAfterNormalization,
    ShapeError,
    SingleRegulator,
    StateSpaceTooLarge,
    ThresholdOutOfRange,
    UnknownVariable,
)
from .shapes import (
    FREE,
    MAX_ARITY,
    NEGATIVE,
    NON_OPERATIVE,
    OPERATIVE,
    POSITIVE,
    FunctionShape,
    RegulatorContext,
    Signature,
    evaluate,
    inf_shape,
    is_consistent,
    level,
    level_leq,
    majority_rule,
    make_shape,
    minimize,
    no_inhibitors,
    shape_from_truth_table,
    shape_leq,
    shape_lt,
    signatures,
    state_from_string,
    state_to_string,
    sup_shape,
    true_count,
    true_states,
)
from .neighborhood import (
    CHILD,
    PARENT_R1,
    PARENT_R2,
    PARENT_R3,
    HasseDiagram,
    HasseSlice,
    NeighborStep,
    build_hasse,
    children,
    count_consistent,
    enumerate_all,
    hasse_slice,
    independent,
    max_outside,
    parent_step,
    parents,
    random_path,
    siblings,
    verify_rules,
)
from .dynamics import (
    BooleanNetwork,
    BoundsReport,
    Component,
    STG,
    TraceRow,
    TransitionSet,
    attractors,
    component_transitions,
    f_star,
    network_from_functions,
    path_trace,
    shape_transition_counts,
    stable_states,
    stg_async,
    stg_sync,
    transition_bounds,
)
from .modelio import (
    ParsedFunction,
    load_model,
    network_to_json,
    parse_expression,
    parse_model,
    render_expression,
    render_model,
    slice_to_dot,
    stg_to_dot,
)
from .pbn import (
    EXPERIMENTS,
    FunctionEnsemble,
    NeighborTableEntry,
    ProbabilisticNetwork,
    RunOutcome,
    SimulationReport,
    classify_phenotype,
    experiment_network,
    neighbor_ensemble,
    randomized_network,
    run_experiment,
    simulate,
    th_initial_state,
    th_model,
    th_neighbor_table,
)

__version__ = "0.1.0"
