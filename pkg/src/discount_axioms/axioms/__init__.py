"""Executable axiom checkers, oracles, testbeds and the auditor."""

from .audit import Profile, audit, profile, run_axiom
from .checks import (
    check_convergence,
    check_early_bias,
    check_essentiality,
    check_impatience,
    check_mixture_continuity,
    check_mixture_independence,
    check_monotonicity,
    check_nontriviality,
    check_stationarity,
    check_stationarity_from_T,
    check_weak_order,
)
from .oracle import (
    FinitePreferenceRelation,
    MissingComparison,
    PreferenceOracle,
    RelationOracle,
    RepresentationOracle,
    as_oracle,
)
from .report import AxiomReport, AxiomResult, Comparison, Verdict, Witness
from .testbed import DEFAULT_GRID, Testbed

__all__ = [
    "AxiomReport",
    "AxiomResult",
    "Comparison",
    "DEFAULT_GRID",
    "FinitePreferenceRelation",
    "MissingComparison",
    "PreferenceOracle",
    "Profile",
    "RelationOracle",
    "RepresentationOracle",
    "Testbed",
    "Verdict",
    "Witness",
    "as_oracle",
    "audit",
    "check_convergence",
    "check_early_bias",
    "check_essentiality",
    "check_impatience",
    "check_mixture_continuity",
    "check_mixture_independence",
    "check_monotonicity",
    "check_nontriviality",
    "check_stationarity",
    "check_stationarity_from_T",
    "check_weak_order",
    "profile",
    "run_axiom",
]
