"""Desk-scale oracles: weight fitting, violation generators, agreement scans.

With the utility fixed, every verdict of a finite relation is one linear
constraint on the weights, so representability of the evidence is a linear
feasibility problem. A feasibility failure under one ``u`` does not refute
representability under another; the joint problem is bilinear and out of
scope.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import linprog

from .axioms.oracle import FinitePreferenceRelation
from .axioms.testbed import Testbed
from .discounting import INFINITE, DiscountModel
from .errors import ArgumentError
from .mixture_space import Lottery, UtilityFunction, mix, prize_set
from .representation import (
    DEFAULT_EPS,
    AARepresentation,
    AdditiveRepresentation,
    DEURepresentation,
    Ordering,
    Representation,
    TailWeights,
    compare,
    ordering_of,
)
from .streams import FiniteStream, Stream, swap

DEFAULT_MARGIN = 1e-6

GREEDY_NOTE = "irreducible under greedy deletion"


class SpecError(ArgumentError):
    """A generator spec that cannot be honoured."""


# ---------------------------------------------------------------- fitting


@dataclass(frozen=True)
class FeasibilityProblem:
    """Find ``w >= 0`` with ``sum(w) = 1`` reproducing every verdict.

    Args:
        relation: a complete finite relation.
        u: the fixed, non-constant utility.
        margin: strictness margin ``eps_s`` for strict verdicts.
        eps_indiff: indifference band used when replaying verdicts; an
            indifference is enforced as ``|d . w| <= eps_indiff / 2``.
    """

    relation: FinitePreferenceRelation
    u: UtilityFunction
    margin: float = DEFAULT_MARGIN
    eps_indiff: float = DEFAULT_EPS

    def __post_init__(self):
        if not self.margin > 0:
            raise ArgumentError("strictness margin must be positive")
        if not self.margin > self.eps_indiff:
            raise ArgumentError("strictness margin must exceed the indifference band")
        if self.u.is_constant:
            raise ArgumentError("utility must be non-constant")
        if any(v is None for row in self.relation.verdicts for v in row):
            raise ArgumentError("relation must be complete")
        if self.relation.streams and tuple(self.relation.streams[0].periods[0].prizes) != tuple(self.u.prizes):
            raise ArgumentError("relation and utility use different prize sets")

    @property
    def n(self) -> int:
        return self.relation.n

    def utility_matrix(self) -> np.ndarray:
        """``M[i, t] = u(x_i at period t)``."""
        return np.array([[self.u.expected(a) for a in s.periods] for s in self.relation.streams])

    def constraints(self) -> list[tuple[int, int, Ordering]]:
        """Every informative verdict ``(i, j, v)``; trivial ``x ~ x`` entries are dropped."""
        out = []
        for i, row in enumerate(self.relation.verdicts):
            for j, v in enumerate(row):
                if i == j and v == Ordering.INDIFFERENT:
                    continue
                out.append((i, j, v))
        return out


@dataclass(frozen=True)
class Conflict:
    i: int
    j: int
    verdict: Ordering

    def to_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "verdict": self.verdict.symbol}


@dataclass(frozen=True)
class FitResult:
    """Outcome of :func:`fit_weights`.

    ``weights`` is set when feasible; ``conflict`` holds an infeasible subset
    when not.
    """

    feasible: bool
    weights: tuple[float, ...] | None
    margin: float
    achieved_margin: float | None = None
    conflict: tuple[Conflict, ...] = ()
    note: str = ""

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "status": "FEASIBLE" if self.feasible else "INFEASIBLE",
            "margin": self.margin,
            "note": self.note,
        }
        if self.weights is not None:
            out["weights"] = list(self.weights)
            out["achieved_margin"] = self.achieved_margin
        if self.conflict:
            out["conflict"] = [c.to_dict() for c in self.conflict]
        return out


def _replay(p: FeasibilityProblem, M: np.ndarray, w: np.ndarray) -> bool:
    vals = M @ w
    return all(ordering_of(vals[i], vals[j], p.eps_indiff) == v for i, j, v in p.constraints())


def _solve(p: FeasibilityProblem, M: np.ndarray, cons: list[tuple[int, int, Ordering]]) -> tuple[float, np.ndarray | None]:
    """Maximise the margin ``s`` over the constraint subset; returns ``(s*, w)``."""
    n = p.n
    rows, rhs = [], []
    band = 0.5 * p.eps_indiff
    for i, j, v in cons:
        d = M[i] - M[j]
        if v == Ordering.INDIFFERENT:
            rows += [np.append(d, 0.0), np.append(-d, 0.0)]
            rhs += [band, band]
        else:
            sign = 1.0 if v == Ordering.PREFER_X else -1.0
            rows.append(np.append(-sign * d, 1.0))
            rhs.append(0.0)
    c = np.zeros(n + 1)
    c[-1] = -1.0
    res = linprog(
        c,
        A_ub=np.array(rows) if rows else None,
        b_ub=np.array(rhs) if rows else None,
        A_eq=np.append(np.ones(n), 0.0)[None, :],
        b_eq=[1.0],
        bounds=[(0, None)] * n + [(None, 1.0)],
        method="highs",
        options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10},
    )
    if res.status != 0:
        return -np.inf, None
    w = np.clip(res.x[:n], 0.0, None)
    return float(-res.fun), w / w.sum()


def _feasible(p: FeasibilityProblem, M: np.ndarray, cons) -> bool:
    s, _ = _solve(p, M, cons)
    return s >= p.margin


def fit_weights(p: FeasibilityProblem) -> FitResult:
    """Fit a weight profile to a finite relation under a fixed utility.

    Strict verdicts need ``d . w >= margin`` and indifferences
    ``|d . w| <= eps_indiff / 2``, where ``d`` is the period-wise utility
    difference of the two streams. The margin-maximising solution is
    replayed against every verdict before it is returned. When infeasible,
    constraints are deleted greedily while infeasibility persists.
    """
    M = p.utility_matrix()
    uniform = np.full(p.n, 1.0 / p.n)
    if _replay(p, M, uniform):
        return FitResult(True, tuple(uniform.tolist()), p.margin, None, note="uniform weights reproduce the relation")
    cons = p.constraints()
    s, w = _solve(p, M, cons)
    if w is not None and s >= p.margin:
        if not _replay(p, M, w):
            raise ArithmeticError("fitted weights failed replay; tighten the indifference band")
        return FitResult(True, tuple(w.tolist()), p.margin, s)
    core = list(cons)
    for c in list(cons):
        trial = [k for k in core if k != c]
        if not _feasible(p, M, trial):
            core = trial
    return FitResult(False, None, p.margin, s if w is not None else None, tuple(Conflict(*c) for c in core), GREEDY_NOTE)


def relation_from(rep: Representation, streams, eps: float = DEFAULT_EPS) -> FinitePreferenceRelation:
    """Tabulate the verdicts of a representation on a stream list."""
    streams = tuple(streams)
    return FinitePreferenceRelation(streams, tuple(tuple(compare(rep, x, y, eps) for y in streams) for x in streams))


def pinning_streams(rep: Representation, anchor: Lottery) -> list[FiniteStream]:
    """Stream pairs whose indifferences pin every adjacent weight ratio.

    For each ``t`` the list holds ``[x+, x-]_{t,t+1}`` together with the
    mixture ``[x+, x+] lam [x-, x-]`` at the ``lam`` solving the indifference
    under ``rep``.
    """
    add = rep.as_additive()
    n = int(add.horizon)
    u = add.u
    hi, lo = Lottery.degenerate(u.prizes, u.best()), Lottery.degenerate(u.prizes, u.worst())
    out = []
    for t in range(1, n):
        wt, ws = add.weight(t), add.weight(t + 1)
        lam = wt / (wt + ws)
        e = mix(hi, lam, lo)

        def placed(a, b):
            return FiniteStream(tuple(a if k == t else b if k == t + 1 else anchor for k in range(1, n + 1)))

        out += [placed(hi, lo), placed(e, e)]
    return out


# ------------------------------------------------------------- generators

STANDARD_PRIZES = prize_set(["hi", "mid", "lo"])

TARGETS = ("NONE", "F5", "F6", "F6'", "F7", "F7'", "F8", "I6")


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate.

    Args:
        target: the axiom to violate, or ``"NONE"`` for a valid SH(T) model.
        T: bias horizon; sampled when ``None``.
        n: stream length; ``T + 2`` when ``None``.
        delta_range: range of the long-run factor.
        beta_range: range of the bias coefficients.
        seed: random seed.
        infinite: for ``NONE``, generate an infinite-horizon model.
        nonnegative_only: restrict to non-negative weights.
    """

    target: str = "NONE"
    T: int | None = None
    n: int | None = None
    delta_range: tuple[float, float] = (0.5, 0.95)
    beta_range: tuple[float, float] = (0.5, 1.0)
    seed: int = 0
    infinite: bool = False
    nonnegative_only: bool = False

    def __post_init__(self):
        t = self.target.upper().replace("PRIME", "'").replace("’", "'").replace("′", "'")
        object.__setattr__(self, "target", t)
        if t not in TARGETS:
            raise SpecError(f"unknown target {self.target!r}; choose from {', '.join(TARGETS)}")
        lo, hi = self.delta_range
        if not 0.0 < lo <= hi < 1.0:
            raise SpecError(f"delta range {self.delta_range} must lie inside (0, 1)")
        blo, bhi = self.beta_range
        if not 0.0 < blo <= bhi <= 1.0:
            raise SpecError(f"beta range {self.beta_range} must lie inside (0, 1]")
        if t == "F5" and self.nonnegative_only:
            raise SpecError("a monotonicity violation needs a negative weight, but only non-negative weights are allowed")
        if self.T is not None and self.T < 1:
            raise SpecError("T must be at least 1")
        if t in ("F6", "F7") and self.T not in (None, 1):
            raise SpecError(f"{t} belongs to the exponential theorem; T must be 1")
        if t in ("F7'", "F8", "F6'") and self.T is not None and self.T < 2:
            raise SpecError(f"{t} needs T >= 2")
        if self.n is not None and self.T is not None and self.n < self.T + 2:
            raise SpecError(f"n = {self.n} too small for T = {self.T}: need n >= T + 2")


@dataclass(frozen=True)
class Generated:
    """A generated representation with the audit outcome it is built to produce."""

    representation: Representation
    profile: str
    expected: dict[str, str]
    spec: GeneratorSpec
    T: int
    n: int
    model: DiscountModel
    details: dict[str, Any] = field(default_factory=dict)

    def testbed(self, **overrides) -> Testbed:
        return standard_testbed(self.n, self.T, seed=self.spec.seed, **overrides)

    def to_dict(self) -> dict:
        from .serialization import representation_to_json

        return {
            "target": self.spec.target,
            "seed": self.spec.seed,
            "profile": self.profile,
            "T": self.T,
            "n": self.n,
            "expected": self.expected,
            "representation": representation_to_json(self.representation),
            "details": self.details,
        }


def standard_testbed(n: int, T: int = 1, seed: int = 0, **overrides) -> Testbed:
    """Three prizes, anchor ``mid``, grid ``{0.25, 0.5, 0.75}``, length ``n``."""
    kw = dict(grid=(0.25, 0.5, 0.75), n=n, T=T, seed=seed)
    kw.update(overrides)
    return Testbed(STANDARD_PRIZES, Lottery.degenerate(STANDARD_PRIZES, "mid"), **kw)


def sample_utility(rng: np.random.Generator) -> UtilityFunction:
    """``u(mid) = 0`` between a positive ``u(hi)`` and a negative ``u(lo)``."""
    return UtilityFunction.from_mapping(
        {"hi": float(rng.uniform(0.5, 1.5)), "mid": 0.0, "lo": float(-rng.uniform(0.5, 1.5))},
        STANDARD_PRIZES,
    )


def sample_model(rng: np.random.Generator, T: int, spec: GeneratorSpec) -> DiscountModel:
    delta = float(rng.uniform(*spec.delta_range))
    blo, bhi = spec.beta_range
    betas = sorted(float(b) for b in rng.uniform(blo, bhi, size=T - 1))
    return DiscountModel(T, delta, tuple(betas))


def _weights_from_gammas(gammas) -> tuple[float, ...]:
    return tuple(np.cumprod(np.concatenate([[1.0], gammas])).tolist())


def _profile_name(infinite: bool, T: int, aa: bool = False) -> str:
    side = "infinite" if infinite else "finite"
    if aa:
        return f"{side}-aa"
    return f"{side}-exp" if T == 1 else f"{side}-sh{T}"


def generate(spec: GeneratorSpec) -> Generated:
    """Sample a valid model or a minimal perturbation violating one axiom.

    Perturbations act on the ratios ``gamma_t = w_{t+1} / w_t`` of a valid
    SH(T) profile: F6 raises the first ratio above 1; F7 and F7' bend the
    last tail ratio; F8 makes the ratio before some ``t <= T`` exceed the
    ratio at ``t``; F5 flips the sign of one weight; I6 adds a positive
    weight on the limit of the stream, which no truncation ever sees.
    """
    rng = np.random.default_rng([spec.seed, TARGETS.index(spec.target)])
    target = spec.target
    if spec.T is not None:
        T = spec.T
    elif target in ("F6", "F7"):
        T = 1
    elif target in ("F7'", "F8", "F6'"):
        T = int(rng.integers(2, 5))
    else:
        T = int(rng.integers(1, 5))
    n = spec.n if spec.n is not None else T + 2
    u = sample_utility(rng)
    model = sample_model(rng, T, spec)
    gammas = model.ratios(n)
    details: dict[str, Any] = {"base_model": {"T": T, "delta": model.delta, "betas": list(model.betas)}}
    infinite = spec.infinite

    if target == "NONE":
        rep: Representation = DEURepresentation(u, model, INFINITE if infinite else n)
        name = _profile_name(infinite, T)
        failing: set[str] = set()
    elif target == "F5":
        k = int(rng.integers(2, n + 1))
        w = list(model.factors(n))
        w[k - 1] = -float(rng.uniform(0.2, 0.8)) * w[k - 1]
        rep = AdditiveRepresentation(u, tuple(w))
        name, failing = _profile_name(False, T, aa=True), {"F5"}
        details["negative_period"] = k
    elif target in ("F6", "F6'"):
        rho = float(rng.uniform(1.1, 1.5))
        g = np.concatenate([gammas[: T - 1] / model.delta * rho, np.full(n - T, rho)])
        rep = AARepresentation(u, _weights_from_gammas(g))
        name, failing = _profile_name(False, T), {target}
        details["rho"] = rho
    elif target in ("F7", "F7'"):
        m = float(rng.uniform(0.4, 0.8))
        g = gammas.copy()
        g[-1] *= m
        rep = AARepresentation(u, _weights_from_gammas(g))
        name, failing = _profile_name(False, T), {target}
        details["tail_multiplier"] = m
    elif target == "F8":
        t_star = int(rng.integers(2, T + 1))
        m = float(rng.uniform(1.15, 1.6))
        g = gammas.copy()
        g[t_star - 2] = g[t_star - 1] * m
        rep = AARepresentation(u, _weights_from_gammas(g))
        name, failing = _profile_name(False, T), {"F8"}
        details.update(violated_at=t_star, multiplier=m)
    else:  # I6
        base = TailWeights(tuple(model.factors(T).tolist()), model.delta)
        c = 50.0 * base.total()
        rep = AdditiveRepresentation(u, base, limit_weight=c)
        name, failing = _profile_name(True, T, aa=True), {"I6"}
        details["limit_weight"] = c

    from .axioms.audit import profile

    axioms = profile(name).axioms
    expected = {a: ("FAIL" if a in failing else "PASS") for a in axioms}
    return Generated(rep, name, expected, spec, T, n, model, details)


# --------------------------------------------------------------- agreement


@dataclass(frozen=True)
class Agreement:
    fraction: float
    pairs: int
    disagreement: tuple[Stream, Stream, Ordering, Ordering] | None = None

    def __float__(self) -> float:
        return self.fraction


def _agreement_pool(tb: Testbed, infinite: bool) -> list[Stream]:
    if infinite:
        return tb.infinite_pool("agreement")
    pool = tb.finite_pool("agreement")
    if tb.n >= 2:
        pool += [swap(x, 1, 2) for x in pool]
    return pool


def brute_force_agreement(rep_a: Representation, rep_b: Representation, tb: Testbed, eps: float | None = None) -> Agreement:
    """Fraction of testbed stream pairs on which two representations agree.

    Finite pools are closed under swapping the first two periods.
    """
    if tuple(rep_a.u.prizes) != tuple(rep_b.u.prizes):
        raise ArgumentError("representations use different prize sets")
    eps = tb.eps if eps is None else eps
    infinite = rep_a.horizon == INFINITE
    if (rep_b.horizon == INFINITE) != infinite:
        raise ArgumentError("representations have different horizons")
    pool = _agreement_pool(tb, infinite)
    agree = total = 0
    first = None
    for x, y in itertools.combinations(pool, 2):
        va, vb = compare(rep_a, x, y, eps), compare(rep_b, x, y, eps)
        total += 1
        if va == vb:
            agree += 1
        elif first is None:
            first = (x, y, va, vb)
    return Agreement(agree / total if total else 1.0, total, first)
