"""povmkit: a toolkit for generalized quantum measurement theory.

Dense operator algebra, POVMs and frame-function state reconstruction,
the measurement-update calculus (Kraus forms, dilations, collapse
factorization, steering, teleportation), entropy and subentropy
uncertainty measures, and exchangeable-state Bayesian tomography.
"""

from .errors import (
    BadCompleteness,
    BadRank,
    DimensionMismatch,
    ImpossibleOutcome,
    InconsistentSamples,
    NotAJoint,
    NotAnEffect,
    NotAState,
    NotEfficient,
    NotHermitian,
    NotInformationallyComplete,
    NotPositive,
    NotUnitary,
    PovmkitError,
    PriorExcludesTruth,
    TooLarge,
    ZeroProbability,
    ZeroProbabilityData,
)
from .operators import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityOperator,
    Effect,
    HermitianOperator,
    Spectrum,
    UnitaryOperator,
    eig_hermitian,
    haar_random_unitary,
    identity,
    op_sqrt,
    operator_basis,
    partial_trace,
    pure_state,
    random_density,
    spanning_effects,
    tensor,
    trace_distance,
)
from .reconstruction import (
    FrameFunctionSample,
    FrameLawReport,
    Povm,
    PovmTree,
    RealFieldRankReport,
    TreeValidation,
    check_frame_function_laws,
    domino_povm,
    field_dimension_counts,
    frame_from_state,
    projective_povm,
    random_povm,
    real_rank_deficiency_demo,
    reconstruct_bipartite,
    reconstruct_state,
    tetrahedral_povm,
    trine_povm,
    validate_povm,
    validate_povm_tree,
)
from .measurement import (
    BipartitePureState,
    Dilation,
    KrausChannelSet,
    TeleportationTranscript,
    bayes_decomposition,
    born_probabilities,
    dilate_povm,
    efficient_posterior,
    kraus_from_dilation,
    polar_factor,
    posterior_states,
    povm_from_dilation,
    random_efficient_channel,
    raw_collapse,
    readjustment_unitary,
    simulate_teleportation,
    steering_povm,
)
from .entropy import (
    ProbabilityVector,
    UncertaintyChangeReport,
    UncertaintyReport,
    classical_condition,
    conditional_shannon,
    expected_posterior_uncertainty,
    mean_entropy,
    monte_carlo_mean_entropy,
    shannon,
    subentropy,
    subentropy_of_spectrum,
    uncertainty_report,
    von_neumann,
)
from .tomography import (
    Ensemble,
    MeasurementRecord,
    OutcomeSequence,
    RealFieldCounterexampleReport,
    SimplexDistribution,
    Trajectory,
    TrajectoryRow,
    classical_definetti_mixture,
    exchangeable_state,
    informational_completeness_check,
    permutation_invariance_check,
    predictive_state,
    quantum_bayes_update,
    real_field_counterexample,
    simulate_tomography_convergence,
    update_with_record,
)

__version__ = "0.1.0"
