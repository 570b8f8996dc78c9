"""Exact coherence checking and probability propagation for conditional events."""

from .coherence import (
    Assessment,
    CoherenceVerdict,
    ProbabilityInterval,
    SigmaSystem,
    build_sigma,
    check_coherence,
    extension_interval,
    sigma_feasible,
    solution_functionals,
)
from .conditionals import (
    ConditionalEvent,
    ConstituentSet,
    TruthValue3,
    biconditional,
    constituents,
    equivalent,
    gn_includes,
    n_conditional,
    negate,
    parse_conditional,
    quasi_conjunction,
    quasi_disjunction,
    truth_value,
)
from .errors import (
    CohereError,
    EventSyntaxError,
    ImpossibleAntecedentError,
    IncoherentAssessmentError,
    KBFormatError,
    NotPConsistentError,
    ProbabilityRangeError,
    SizeLimitError,
    UnknownAtomError,
)
from .events import (
    Atom,
    Context,
    Event,
    FALSE,
    TRUE,
    World,
    enumerate_worlds,
    implies,
    is_impossible,
    parse_event,
    world_equivalent,
)
from .inference import (
    GammaRegion,
    KnowledgeBase,
    RuleBounds,
    biconditional_value,
    compound_bounds,
    derangements,
    dual_compound_value,
    gn_chain_bounds,
    in_l_gamma_qc,
    in_l_gamma_qd,
    in_u_gamma_qc,
    in_u_gamma_qd,
    loop_entails,
    loop_family,
    or_rule_bounds,
    p_consistent,
    p_entails,
    p_entails_qc,
    qc_bounds,
    qd_bounds,
    rule_bounds,
)
from .tnorms import (
    DRASTIC,
    HAMACHER0,
    INF,
    LUKASIEWICZ,
    MINIMUM,
    OperatorFamily,
    PRODUCT,
    dual_eval,
    hamacher,
    hamacher0_conary,
    hamacher0_nary,
    tconorm,
    tnorm,
)

__version__ = "0.1.0"
