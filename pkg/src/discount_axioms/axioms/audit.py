"""Profiles bundle the axioms of one representation theorem; :func:`audit` runs them."""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from typing import Callable

from ..errors import ArgumentError
from .checks import (
    check_convergence,
    check_early_bias,
    check_essentiality,
    check_impatience,
    check_mixture_continuity,
    check_mixture_independence,
    check_monotonicity,
    check_nontriviality,
    check_stationarity_from_T,
    check_weak_order,
)
from .oracle import PreferenceOracle, as_oracle
from .report import AxiomReport, AxiomResult, Verdict
from .testbed import Testbed


@dataclass(frozen=True)
class Profile:
    """The axiom list of one theorem, for one horizon and bias horizon ``T``."""

    name: str
    infinite: bool
    T: int
    axioms: tuple[str, ...]
    theorem: str


def _sh_name(T: int) -> str:
    return {1: "exponential", 2: "quasi-hyperbolic (SH(2))"}.get(T, f"semi-hyperbolic SH({T})")


def profile(name: str) -> Profile:
    """Parse ``finite-aa``, ``finite-exp``, ``finite-sh<T>``, ``infinite-aa``,
    ``infinite-exp`` or ``infinite-sh<T>`` (also ``aa-only`` and upper-case
    forms such as ``FINITE_SH(2)``)."""
    key = name.strip().lower().replace("_", "-").replace("(", "").replace(")", "")
    if key == "aa-only":
        key = "finite-aa"
    m = re.fullmatch(r"(finite|infinite)-(aa|exp|sh(\d+))", key)
    if not m:
        raise ArgumentError(f"unknown audit profile {name!r}")
    infinite = m.group(1) == "infinite"
    horizon = "infinite-horizon" if infinite else "finite-horizon"
    kind = m.group(2)
    if kind == "aa":
        axioms = ("I1", "I2", "I3", "I4", "I5", "I6") if infinite else ("F1", "F2", "F3", "F4", "F5")
        return Profile(key, infinite, 1, axioms, f"{horizon} AA representation theorem")
    T = 1 if kind == "exp" else int(m.group(3))
    if T < 1:
        raise ArgumentError("bias horizon must be at least 1")
    if kind == "exp":
        axioms = (
            ("I1", "I2'", "I3", "I4", "I5", "I6", "I7")
            if infinite
            else ("F1", "F2'", "F3", "F4", "F5", "F6", "F7")
        )
    else:
        axioms = (
            ("I1", "I2''", "I3", "I4", "I5", "I6", "I7'", "I8")
            if infinite
            else ("F1", "F2''", "F3", "F4", "F5", "F6'", "F7'", "F8")
        )
    return Profile(key, infinite, T, axioms, f"{horizon} {_sh_name(T)} discounting theorem")


def _runner(axiom: str, p: Profile) -> Callable[[PreferenceOracle, Testbed], AxiomResult]:
    T = p.T
    table: dict[str, Callable] = {
        "F1": lambda o, tb: check_weak_order(o, tb),
        "F2": lambda o, tb: check_nontriviality(o, tb),
        "F2'": lambda o, tb: check_essentiality(o, tb, (1,)),
        "F2''": lambda o, tb: _renamed(check_essentiality(o, tb, tuple(range(1, T + 1))), "F2''"),
        "F3": lambda o, tb: check_mixture_independence(o, tb),
        "F4": lambda o, tb: check_mixture_continuity(o, tb),
        "F5": lambda o, tb: check_monotonicity(o, tb),
        "F6": lambda o, tb: check_impatience(o, tb, (1, 2)),
        "F6'": lambda o, tb: _renamed(check_impatience(o, tb, (T, T + 1)), "F6'"),
        "F7": lambda o, tb: check_stationarity_from_T(o, tb, 1),
        "F7'": lambda o, tb: _renamed(check_stationarity_from_T(o, tb, T), "F7'"),
        "F8": lambda o, tb: check_early_bias(o, tb, T),
        "I1": lambda o, tb: check_weak_order(o, tb, True),
        "I2": lambda o, tb: check_nontriviality(o, tb, True),
        "I2'": lambda o, tb: check_essentiality(o, tb, (1,), True),
        "I2''": lambda o, tb: _renamed(check_essentiality(o, tb, tuple(range(1, T + 1)), True), "I2''"),
        "I3": lambda o, tb: check_mixture_independence(o, tb, True),
        "I4": lambda o, tb: check_mixture_continuity(o, tb, True),
        "I5": lambda o, tb: check_monotonicity(o, tb, True),
        "I6": lambda o, tb: check_convergence(o, tb),
        "I7": lambda o, tb: check_stationarity_from_T(o, tb, 1, True),
        "I7'": lambda o, tb: _renamed(check_stationarity_from_T(o, tb, T, True), "I7'"),
        "I8": lambda o, tb: check_early_bias(o, tb, T, True),
    }
    return table[axiom]


def _renamed(r: AxiomResult, axiom: str) -> AxiomResult:
    return r if r.axiom == axiom else dataclasses.replace(r, axiom=axiom)


def run_axiom(evidence, tb: Testbed, axiom: str, profile_name: str = "finite-aa") -> AxiomResult:
    """Run a single named axiom; ``profile_name`` supplies ``T`` and the horizon."""
    p = profile(profile_name)
    return _runner(axiom, p)(as_oracle(evidence, tb.eps), tb)


def audit(evidence, tb: Testbed, profile_name: str | Profile) -> AxiomReport:
    """Run exactly the axioms of the named theorem on the testbed.

    Infinite-horizon profiles first check that the anchor is interior
    (some lottery strictly above and one strictly below it). Otherwise the
    audit is refused and every axiom is reported NOT_APPLICABLE.
    """
    p = profile_name if isinstance(profile_name, Profile) else profile(profile_name)
    oracle = as_oracle(evidence, tb.eps)
    if tb.T != p.T:
        tb = dataclasses.replace(tb, T=p.T)
    summary = tb.summary()
    if p.infinite:
        gate = check_nontriviality(oracle, tb, True)
        if gate.verdict is not Verdict.PASS:
            results = tuple(
                gate if a == "I2" else AxiomResult(a, Verdict.NOT_APPLICABLE, 0, note="anchor is not interior")
                for a in p.axioms
            )
            return AxiomReport(p.name, p.theorem, results, summary, gate, True, tb.anchor)
    else:
        gate = None
    results = []
    for a in p.axioms:
        if a == "I2" and gate is not None:
            results.append(gate)
            continue
        results.append(_runner(a, p)(oracle, tb))
    return AxiomReport(p.name, p.theorem, tuple(results), summary, gate, False, tb.anchor)
