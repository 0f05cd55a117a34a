"""Reasoning with movable evidence masses on finite frames."""

from .errors import *  # noqa: F401,F403
from .frame import (
    Frame,
    Refinement,
    RefinementReport,
    make_frame,
    make_product_frame,
    make_refinement,
    outer_reduction,
    product_refinement,
    refine_set,
    validate_refinement,
)
from .mass import (
    EvidenceTables,
    MassDistribution,
    bayesian,
    belief,
    commonality,
    make_mass,
    mass_from_belief,
    plausibility,
    project,
    tables,
    vacuous,
    vacuous_extension,
)
from .rules import (
    CompatibilityRelation,
    ImplicationRule,
    associated_set,
    compatibility_to_matrix,
    is_irregular,
    make_relation,
    rules_to_matrix,
    tweety,
)
from .specialization import (
    ApplyOutcome,
    FlowPlan,
    MonotonicityReport,
    SpecializationMatrix,
    apply,
    conditional_matrix,
    flow_to_matrix,
    identity,
    is_monotonic,
    is_specialization,
    make_matrix,
    monotonicity_violations,
    revision_matrix,
    strong_inclusion,
    witness_flow,
)
from .tolerance import epsilon, get_epsilon
from .updating import UpdateOutcome, condition, revise, revised_belief, revised_plausibility

__version__ = "0.1.0"
