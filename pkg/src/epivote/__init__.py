"""Strategic voting under higher-order uncertainty.

Models of who knows what about an election, the manipulations that
knowledge enables, the worst-case equilibria of the induced game, and how
public announcements change all of it.
"""

from .dynamics import (
    PROPERTIES,
    HuntResult,
    PreservationReport,
    UpdateResult,
    check_preservation,
    random_announcement,
    random_conditional_profile,
    random_model,
    search_counterexample,
    update,
    update_conditional_profile,
)
from .errors import (
    DanglingState,
    EmptyResult,
    EmptySet,
    EpivoteError,
    FormulaSyntaxError,
    IncompleteProfileAtom,
    Indistinguishable,
    MissingTiebreak,
    ModelSyntaxError,
    OwnPreferenceViolation,
    PartitionError,
    SizeLimit,
    UnknownCandidate,
    UnknownState,
    UnknownVoter,
)
from .games import (
    ConditionalProfile,
    PayoffMatrix,
    VirtualVoter,
    conditional_profile,
    enumerate_conditional_equilibria,
    induced_votes,
    induced_winners,
    is_conditional_equilibrium,
    payoff,
    payoff_matrix,
    render_matrix,
    sincere_conditional_profile,
    virtual_voters,
    worst_winner,
)
from .logic import (
    And,
    Announce,
    AxiomReport,
    CharacteristicFormula,
    CompAtom,
    FALSE,
    Formula,
    Iff,
    Implies,
    Know,
    Not,
    Or,
    PrefAtom,
    ProfileAtom,
    Top,
    TRUE,
    WinsAtom,
    big_and,
    big_or,
    build_concept_formula,
    characteristic_formula,
    check_axioms,
    check_formula,
    denotation,
    evaluate,
    expand_abbreviations,
    parse,
    reduce_announcements,
    to_text,
    valid_on,
)
from .model import (
    Election,
    KnowledgeProfile,
    Preference,
    Profile,
    ProfileModel,
    hypercube,
    make_model,
    pref,
    profile,
    restrict,
    validate_model,
)
from .modelfile import load_model, parse_model, save_model, write_model
from .rules import (
    Plurality,
    dominant_preference,
    enumerate_equilibria,
    is_equilibrium_profile,
    is_manipulation,
    manipulations,
    plurality_winner,
    rule_for,
)
from .strategic import (
    KIND_ORDER,
    ManipulationReport,
    classify,
    dominant_manipulation_of_infoset,
    knows_manipulation,
    min_candidate,
    pessimistic_manipulation,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "Announce",
    "AxiomReport",
    "big_and",
    "big_or",
    "build_concept_formula",
    "characteristic_formula",
    "CharacteristicFormula",
    "check_axioms",
    "check_formula",
    "check_preservation",
    "classify",
    "CompAtom",
    "conditional_profile",
    "ConditionalProfile",
    "DanglingState",
    "denotation",
    "dominant_manipulation_of_infoset",
    "dominant_preference",
    "Election",
    "EmptyResult",
    "EmptySet",
    "enumerate_conditional_equilibria",
    "enumerate_equilibria",
    "EpivoteError",
    "evaluate",
    "expand_abbreviations",
    "FALSE",
    "Formula",
    "FormulaSyntaxError",
    "HuntResult",
    "hypercube",
    "Iff",
    "Implies",
    "IncompleteProfileAtom",
    "Indistinguishable",
    "induced_votes",
    "induced_winners",
    "is_conditional_equilibrium",
    "is_equilibrium_profile",
    "is_manipulation",
    "KIND_ORDER",
    "Know",
    "KnowledgeProfile",
    "knows_manipulation",
    "load_model",
    "make_model",
    "ManipulationReport",
    "manipulations",
    "min_candidate",
    "MissingTiebreak",
    "ModelSyntaxError",
    "Not",
    "Or",
    "OwnPreferenceViolation",
    "parse",
    "parse_model",
    "PartitionError",
    "payoff",
    "payoff_matrix",
    "PayoffMatrix",
    "pessimistic_manipulation",
    "Plurality",
    "plurality_winner",
    "pref",
    "PrefAtom",
    "Preference",
    "PreservationReport",
    "Profile",
    "profile",
    "ProfileAtom",
    "ProfileModel",
    "PROPERTIES",
    "random_announcement",
    "random_conditional_profile",
    "random_model",
    "reduce_announcements",
    "render_matrix",
    "restrict",
    "rule_for",
    "save_model",
    "search_counterexample",
    "sincere_conditional_profile",
    "SizeLimit",
    "to_text",
    "Top",
    "TRUE",
    "UnknownCandidate",
    "UnknownState",
    "UnknownVoter",
    "update",
    "update_conditional_profile",
    "UpdateResult",
    "valid_on",
    "validate_model",
    "virtual_voters",
    "VirtualVoter",
    "WinsAtom",
    "worst_winner",
    "write_model",
]
