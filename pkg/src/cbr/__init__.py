"""Choice by rejection: axioms, synthesis and identification of two-stage choice."""

from .axioms import (
    CBR_AXIOMS,
    TCBR_AXIOMS,
    AnalysisReport,
    AxiomId,
    AxiomVerdict,
    check,
    is_cbr,
    is_tcbr,
    replay,
    report,
)
from .choice import ChoiceFunction, choice, from_document, load, pairwise, parse, serialize, to_document
from .errors import (
    AxiomFailure,
    ChoiceDataError,
    ChoiceNotInMenu,
    DuplicateMenu,
    InternalInvariantBreach,
    InvalidRepresentation,
    MalformedDocument,
    MissingMenu,
    NotDecomposable,
    NotRepresentable,
    SizeCapExceeded,
    UnknownAlternative,
)
from .identification import IdentificationReport, identify, in_class, minimal_representation, p_hat, q_hat, r_max
from .relations import (
    BinaryRelation,
    Universe,
    is_acyclic,
    is_asymmetric,
    is_complete,
    is_linear_order,
    is_partial_order,
    is_tournament,
    is_transitive,
    maximal_set,
    minimal_set,
    restrict,
    transitive_closure,
)
from .representation import (
    Flavor,
    RepresentationPair,
    Verification,
    evaluate,
    induced_choice,
    synthesize_cbr,
    synthesize_tcbr,
    verify,
)
from .reversals import (
    Kind,
    Mode,
    Reversal,
    check_exclusivity,
    check_smp,
    decompose_double,
    find_reversals,
    has_double_reversal,
    has_single_reversal,
    revealed_r,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
