"""Axiomatic toolkit for exponential, quasi-hyperbolic and semi-hyperbolic
discounting of lottery streams.

The package evaluates discounted expected utility, audits preference
oracles against executable axioms, elicits ``(u, delta, beta)`` by
constructive indifference searches, and fits weight profiles to finite
relations.
"""

from .discounting import (
    INFINITE,
    Classification,
    DiscountModel,
    Kind,
    classify,
    discount_factor,
    exponential,
    from_hayashi,
    hayashi_factors,
    quasi_hyperbolic,
    semi_hyperbolic,
    total_weight,
)
from .elicitation import (
    AUTO,
    ElicitationConfig,
    ElicitationRejected,
    ElicitationResult,
    calibrate_utility,
    query_ceiling,
    recover_discount,
    recover_full,
    weight_ratio,
)
from .errors import (
    ArgumentError,
    BudgetExhausted,
    ConstraintError,
    DiscountAxiomsError,
    DomainError,
    EssentialityError,
    InputError,
    OracleInconsistency,
)
from .fitlab import (
    FeasibilityProblem,
    FitResult,
    GeneratorSpec,
    brute_force_agreement,
    fit_weights,
    generate,
)
from .mixture_space import Lottery, UtilityFunction, expected_utility, mix, prize_set
from .representation import (
    AARepresentation,
    AdditiveRepresentation,
    DEURepresentation,
    Ordering,
    TailWeights,
    UniquenessTransform,
    apply_transform,
    compare,
    equivalent,
    evaluate,
    normalize,
    partial_sums,
    tail_bound,
)
from .streams import (
    ConstantStream,
    FiniteStream,
    InfiniteStream,
    UltimatelyConstantStream,
    mix_streams,
    replace_and_truncate,
    swap,
)

__version__ = "0.1.0"

__all__ = [
    "AARepresentation",
    "AUTO",
    "AdditiveRepresentation",
    "ArgumentError",
    "BudgetExhausted",
    "Classification",
    "ConstantStream",
    "ConstraintError",
    "DEURepresentation",
    "DiscountAxiomsError",
    "DiscountModel",
    "DomainError",
    "ElicitationConfig",
    "ElicitationRejected",
    "ElicitationResult",
    "EssentialityError",
    "FeasibilityProblem",
    "FiniteStream",
    "FitResult",
    "GeneratorSpec",
    "INFINITE",
    "InfiniteStream",
    "InputError",
    "Kind",
    "Lottery",
    "OracleInconsistency",
    "Ordering",
    "TailWeights",
    "UltimatelyConstantStream",
    "UniquenessTransform",
    "UtilityFunction",
    "apply_transform",
    "brute_force_agreement",
    "calibrate_utility",
    "classify",
    "compare",
    "discount_factor",
    "equivalent",
    "evaluate",
    "expected_utility",
    "exponential",
    "fit_weights",
    "from_hayashi",
    "generate",
    "hayashi_factors",
    "mix",
    "mix_streams",
    "normalize",
    "partial_sums",
    "prize_set",
    "quasi_hyperbolic",
    "query_ceiling",
    "recover_discount",
    "recover_full",
    "replace_and_truncate",
    "semi_hyperbolic",
    "swap",
    "tail_bound",
    "total_weight",
    "weight_ratio",
    "__version__",
]
