"""factorlab: factor congruences, central elements and first-coordinate
definability in finitely generated varieties, at desk scale."""

from .congruences import (
    CompactnessReport,
    Congruence,
    Decomposition,
    FactorPair,
    all_congruences,
    compactness_report,
    compose,
    congruence_from_partition,
    congruence_join,
    congruence_meet,
    decomposition_from_pair,
    factor_pairs,
    identity_congruence,
    partition_text,
    principal_congruence,
    quotient,
    total_congruence,
)
from .core import (
    FiniteAlgebra,
    Signature,
    direct_product,
    eval_term,
    is_homomorphism,
    pair_index,
    pair_split,
    subalgebra_generated,
    surjective_homomorphisms,
)
from .dfc import (
    CentralElement,
    CorrespondenceReport,
    DfcReport,
    central_elements,
    congruence_of_central,
    correspondence_check,
    verify_dfc,
)
from .errors import (
    EvalError,
    FactorLabError,
    FormulaSyntaxError,
    InternalCheckError,
    NoWitnessError,
    ResourceBoundError,
    ValidationError,
)
from .formulas import (
    DnfEvaluator,
    ExistentialDnf,
    Literal,
    PositiveExistential,
    eval_dnf,
    eval_in_product,
    parse_formula,
    parse_term_text,
    strip_to_positive,
)
from .freealg import FreeAlgebra, FreePairContext, free_algebra, free_pair_context
from .positivize import (
    PositivizeResult,
    PreservationReport,
    check_preservation,
    enumerate_witnesses,
    find_disjunct_witness,
    positivize,
)
from .terms import App, Term, Var, free_vars, is_closed, term_text
from .variety import (
    PoolEntry,
    VarietyContext,
    generate_pool,
    verify_zero_one_condition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
