"""confork: exact decision procedures for conjunctive-fork patterns of events.

The package decides whether a finite ternary relation is realizable as the
exact pattern of conjunctive forks of an event family, constructs an
explicit witnessing probability space when it is, produces a checkable
infeasibility certificate when it is not, and provides exact-rational
predicates for forks, conditional independence and causal betweenness over
finite probability spaces.
"""

from .betweenness import (
    AbstractBetweennessCheck,
    BetweennessDigraph,
    ForkBetweennessReport,
    check_abstract_betweenness,
    compare_fork_and_betweenness,
    extract_betweenness_relation,
    find_cycle,
    is_causally_between,
    pair_digraph,
    to_dot,
)
from .errors import (
    ConditioningOnNull,
    ConforkError,
    FormatError,
    GroundSetTooLarge,
    InconsistentParameters,
    MismatchedQuotient,
    NotAQuotient,
    NotRegularForkness,
    RoundTripError,
    TrivialConditioner,
    TrivialEvent,
)
from .rationals import format_rational, parse_rational
from .relations import (
    ALL_AXIOMS,
    FORKNESS_AXIOMS,
    AxiomReport,
    QuotientResult,
    TernaryRelation,
    check_forkness,
    check_regular,
    full_axiom_report,
    parse_relation,
    quotient,
    relation_to_json,
    sharp,
)
from .solver import (
    Equation,
    InfeasibilityCertificate,
    LinearSystem,
    PositiveSolution,
    build_system,
    certificate_to_json,
    combination,
    make_pair,
    parse_certificate,
    parse_solution,
    parse_system,
    scale_to_integers,
    solution_to_json,
    solve_positive,
    system_to_json,
    verify_certificate,
    verify_solution,
)
from .spaces import (
    FiniteProbabilitySpace,
    ForkConditions,
    IndexedEvents,
    conditionally_independent,
    cond_prob,
    correlation,
    covariance,
    distribution_to_json,
    extract_fork_relation,
    fork_conditions,
    is_conjunctive_fork,
    log_corr_compare,
    p_equal,
    p_nontrivial,
    parse_distribution,
    prob,
)
from .synthesis import (
    NotRepresentable,
    Representable,
    SynthesisParameters,
    SynthesisResult,
    build_families,
    character,
    choose_parameters,
    decode_atom,
    encode_atom,
    fork_represent,
    lift_representation,
    representation_to_json,
    synthesize_quotient_space,
)

__version__ = "0.1.0"
