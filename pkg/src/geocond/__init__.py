"""Geometric conditioning of belief functions in the mass space, with classical operators and numerical oracles."""

from .classical import (
    ChainReport,
    IntervalAssignment,
    chain_values,
    conjunctive_condition,
    credal_condition,
    dempster_condition,
    dempster_interval,
    disjunctive_condition,
    nested_chain_check,
    suppes_condition,
)
from .combination import ConflictReport, conjunctive_combine, dempster_sum, disjunctive_combine
from .core import (
    BeliefVector,
    Diagnostics,
    Frame,
    MassFunction,
    PlausibilityVector,
    SignedMassFunction,
    UnnormalizedMass,
    belief_to_mass,
    categorical,
    convex_combine,
    mass_to_belief,
    moebius,
    plausibility_of,
    random_mass,
    vacuous,
    validate,
    zeta,
)
from .errors import (
    BadCount,
    BeliefError,
    DomainError,
    EmptyEvent,
    FormatError,
    FrameMismatch,
    InvalidMass,
    NotABeliefFunction,
    TooManyVertices,
    TotalConflict,
    UndefinedConditional,
    UndefinedDenominator,
    WeightMismatch,
    WrongDimensions,
    ZeroBelief,
)
from .induced import conditioning_induced_combine, dempster_decomposition_check
from .lp import (
    ConditionalSimplex,
    ConditioningSimplex,
    LinfPolytope,
    l1_barycenter_equals_l2,
    l1_condition,
    l2_condition,
    l2_condition_belief_space,
    linf_barycentre_belief_space,
    linf_condition,
    linf_norm_value,
)
from .oracle import (
    BetaVector,
    credal_sampling,
    grid_minimum,
    jousselme_distance,
    l2_project_linear_solve,
    lp_distance,
    sampled_nonimprovement,
)
from .plot import TernaryPlotScene, ternary_scene

__version__ = "0.1.0"
