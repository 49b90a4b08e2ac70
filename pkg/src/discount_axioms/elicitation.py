"""Recovering ``(u, delta, beta)`` from a preference oracle.

The procedure follows the constructive route of the representation
results:

1. rank the prizes with constant streams and calibrate ``u`` by standard
   gambles against the best and worst prize;
2. for adjacent periods, find ``lam`` with ``[x+, x-] ~ [x+, x+] lam [x-, x-]``
   (anchor elsewhere); then ``(1 - lam) w_t = lam w_s`` gives the weight ratio;
3. read ``delta`` off the constant tail of the ratios and ``beta_t`` off the
   ratios before it, validating the SH(T) constraints.

Every query goes through a :class:`Session` that enforces the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .discounting import INFINITE, DiscountModel
from .errors import ArgumentError, BudgetExhausted, DiscountAxiomsError, EssentialityError, OracleInconsistency
from .mixture_space import Lottery, Prizes, UtilityFunction, mix
from .representation import DEURepresentation, Ordering, compare
from .search import find_indifference
from .streams import ConstantStream, FiniteStream, Stream, UltimatelyConstantStream

AUTO = "auto"

PRESCAN = (0.0, 0.25, 0.5, 0.75, 1.0)


class ElicitationRejected(DiscountAxiomsError):
    """The elicited ratios violate an SH(T) constraint.

    Attributes:
        constraint: the violated constraint in plain words.
        axiom: the axiom whose failure the violation reflects.
        T: the bias horizon under which the violation was found.
    """

    def __init__(self, message: str, constraint: str, axiom: str, T: int | None, gammas=()):
        super().__init__(message)
        self.constraint = constraint
        self.axiom = axiom
        self.T = T
        self.gammas = tuple(gammas)


@dataclass(frozen=True)
class ElicitationConfig:
    """Settings of one elicitation session.

    Args:
        prizes: prize labels.
        anchor: the lottery ``x0`` filling unprobed periods.
        n: number of periods to probe (finite horizon) or to examine
            (infinite horizon).
        T: hypothesised bias horizon, or ``"auto"``.
        tol: bisection tolerance on mixture weights.
        budget: maximum number of oracle queries; ``None`` uses
            :func:`query_ceiling`.
        infinite: probe infinite streams instead of streams of length ``n``.
        probes: probe pairs for the verdict-agreement diagnostic.
        seed: seed for the probe pairs.
    """

    prizes: Prizes
    anchor: Lottery
    n: int
    T: int | str = AUTO
    tol: float = 1e-9
    budget: int | None = None
    infinite: bool = False
    probes: int = 200
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise ArgumentError("tolerance must be positive")
        if self.T != AUTO:
            if not isinstance(self.T, int) or self.T < 1:
                raise ArgumentError(f"T must be a positive integer or 'auto', got {self.T!r}")
        if self.n < 2:
            raise ArgumentError("need at least two periods")
        if self.budget is not None and self.budget < 0:
            raise ArgumentError("budget must be non-negative")


def _bisection_cost(tol: float) -> int:
    return len(PRESCAN) + 64 + 2 * (math.ceil(math.log2(1.0 / tol)) + 2)


def query_ceiling(cfg: ElicitationConfig) -> int:
    """Upper bound on the queries of :func:`recover_full` (probes excluded).

    Ranking costs ``2 |prizes|``; each of the ``|prizes| - 2`` standard
    gambles and ``n - 1`` weight ratios costs one pre-scan, one bisection to
    the indifference band and two edge searches.
    """
    k = len(cfg.prizes)
    return 2 * k + (max(0, k - 2) + cfg.n - 1) * _bisection_cost(cfg.tol)


class Session:
    """Budgeted query channel and stream factory for one elicitation."""

    def __init__(self, oracle, cfg: ElicitationConfig):
        from .axioms.oracle import as_oracle

        self.oracle = as_oracle(oracle)
        self.cfg = cfg
        self.budget = query_ceiling(cfg) if cfg.budget is None else cfg.budget
        self.queries = 0

    def compare(self, x: Stream, y: Stream) -> Ordering:
        if self.queries >= self.budget:
            raise BudgetExhausted(f"query budget of {self.budget} exhausted")
        self.queries += 1
        return Ordering(self.oracle.compare(x, y))

    def const(self, a: Lottery) -> Stream:
        return ConstantStream(a) if self.cfg.infinite else FiniteStream((a,) * self.cfg.n)

    def placed(self, entries: dict[int, Lottery]) -> Stream:
        """Stream with the given periods set and the anchor elsewhere."""
        x0 = self.cfg.anchor
        m = max(entries) if self.cfg.infinite else self.cfg.n
        periods = tuple(entries.get(t, x0) for t in range(1, m + 1))
        if self.cfg.infinite:
            return UltimatelyConstantStream(periods, x0)
        return FiniteStream(periods)

    def indifference(self, verdict) -> float:
        """Pre-scan the grid, then bisect the bracketing cell.

        ``verdict`` must be non-decreasing in the mixture weight; a pre-scan
        that says otherwise raises :class:`OracleInconsistency`.
        """
        vals = [verdict(g) for g in PRESCAN]
        if any(b < a for a, b in zip(vals, vals[1:])):
            raise OracleInconsistency(f"verdicts not monotone along the mixture line: {dict(zip(PRESCAN, vals))}")
        if vals[0] > 0 or vals[-1] < 0:
            raise OracleInconsistency("no indifference point on the mixture line")
        lo = max((i for i, v in enumerate(vals) if v < 0), default=0)
        hi = min((i for i, v in enumerate(vals) if v > 0), default=len(vals) - 1)
        band = find_indifference(verdict, PRESCAN[lo], PRESCAN[hi], self.cfg.tol, vals[lo], vals[hi])
        if band is None:
            raise OracleInconsistency("preference jumps across the mixture line without an indifference point")
        return band.centre


def _extremes(s: Session) -> tuple[str, str]:
    prizes = s.cfg.prizes
    deg = {p: Lottery.degenerate(prizes, p) for p in prizes}
    best = worst = prizes[0]
    for p in prizes[1:]:
        if s.compare(s.const(deg[p]), s.const(deg[best])) > 0:
            best = p
        if s.compare(s.const(deg[p]), s.const(deg[worst])) < 0:
            worst = p
    if best == worst or s.compare(s.const(deg[best]), s.const(deg[worst])) <= 0:
        raise OracleInconsistency("all prizes are indifferent; utility cannot be calibrated")
    return best, worst


def _calibrate(s: Session) -> UtilityFunction:
    prizes = s.cfg.prizes
    deg = {p: Lottery.degenerate(prizes, p) for p in prizes}
    best, worst = _extremes(s)
    values = {best: 1.0, worst: 0.0}
    for z in prizes:
        if z in values:
            continue
        target = s.const(deg[z])
        values[z] = s.indifference(lambda p: int(s.compare(s.const(mix(deg[best], p, deg[worst])), target)))
    u = UtilityFunction.from_mapping(values, prizes)
    return u.affine(1.0, -u.expected(s.cfg.anchor))


def calibrate_utility(oracle, cfg: ElicitationConfig) -> UtilityFunction:
    """Standard-gamble utility: ``u(best) - u(worst) = 1`` and ``u(x0) = 0``."""
    return _calibrate(Session(oracle, cfg))


def _lambda(s: Session, u: UtilityFunction, t: int, r: int) -> float:
    if t == r:
        raise ArgumentError("weight ratio needs two distinct periods")
    limit = math.inf if s.cfg.infinite else s.cfg.n
    if not (1 <= t <= limit and 1 <= r <= limit):
        raise ArgumentError(f"periods ({t}, {r}) outside 1..{s.cfg.n}")
    prizes = s.cfg.prizes
    hi, lo = Lottery.degenerate(prizes, u.best()), Lottery.degenerate(prizes, u.worst())
    y = s.placed({t: hi, r: lo})

    def verdict(lam: float) -> int:
        e = mix(hi, lam, lo)
        return int(s.compare(s.placed({t: e, r: e}), y))

    v0 = verdict(0.0)
    if v0 == 0:
        raise EssentialityError(f"period {t} is inessential", period=t)
    v1 = verdict(1.0)
    if v1 == 0:
        raise EssentialityError(f"period {r} is inessential", period=r)
    lam = s.indifference(verdict)
    if lam <= s.cfg.tol:
        raise EssentialityError(f"period {t} is inessential", period=t)
    if lam >= 1.0 - s.cfg.tol:
        raise EssentialityError(f"period {r} is inessential", period=r)
    return lam


def weight_ratio(oracle, u: UtilityFunction, t: int, s: int, cfg: ElicitationConfig) -> float:
    """``w_t / w_s = lam / (1 - lam)`` from the calibrated indifference."""
    lam = _lambda(Session(oracle, cfg), u, t, s)
    return lam / (1.0 - lam)


@dataclass(frozen=True)
class RatioEvidence:
    lambdas: tuple[float, ...]
    gammas: tuple[float, ...]


def _ratios(s: Session, u: UtilityFunction) -> RatioEvidence:
    lams, gammas = [], []
    for t in range(1, s.cfg.n):
        lam = _lambda(s, u, t + 1, t)
        lams.append(lam)
        gammas.append(lam / (1.0 - lam))
    return RatioEvidence(tuple(lams), tuple(gammas))


def _require_tail(cfg: ElicitationConfig) -> None:
    need = 3 if cfg.T == AUTO else int(cfg.T) + 2
    if cfg.n < need:
        raise ArgumentError(f"n = {cfg.n} too small: the tail needs n >= {need}")


def _model_from_ratios(ev: RatioEvidence, cfg: ElicitationConfig) -> tuple[DiscountModel, float, bool]:
    """Apply the SH(T) reading to the elicited ratios.

    Tail consistency is judged on the bisected mixture weights, whose error
    is controlled by the tolerance directly.
    """
    _require_tail(cfg)
    lams, gammas = np.array(ev.lambdas), np.array(ev.gammas)
    n1 = len(gammas)
    spread_tol = 10 * cfg.tol
    auto = cfg.T == AUTO
    if auto:
        T = next((c for c in range(1, n1) if np.ptp(lams[c - 1 :]) <= spread_tol), None)
        if T is None:
            raise ElicitationRejected(
                "ratios never settle into a geometric tail",
                "stationarity from T: no constant tail of ratios",
                "I7'" if cfg.infinite else "F7'",
                n1 - 1,
                gammas,
            )
    else:
        T = int(cfg.T)
        if np.ptp(lams[T - 1 :]) > spread_tol:
            raise ElicitationRejected(
                f"tail ratios {gammas[T - 1:].tolist()} are not constant",
                "stationarity from T: tail ratios differ",
                ("I7" if cfg.infinite else "F7") + ("'" if T > 1 else ""),
                T,
                gammas,
            )
    tail = gammas[T - 1 :]
    delta = float(np.mean(tail))
    residual = float(np.ptp(tail))
    if not delta < 1.0:
        axiom = "I6" if cfg.infinite else ("F6" if T == 1 else "F6'")
        raise ElicitationRejected(f"delta = {delta:.12g} is not below 1", "impatience / convergence: delta >= 1", axiom, T, gammas)
    beta_tol = 100 * cfg.tol
    betas = [float(g / delta) for g in gammas[: T - 1]]
    eb = "I8" if cfg.infinite else "F8"
    for i, b in enumerate(betas, start=1):
        if b > 1.0 + beta_tol:
            raise ElicitationRejected(f"beta_{i} = {b:.12g} exceeds 1", "early bias: beta_t <= 1", eb, T, gammas)
        # snap on both sides so rescaled oracles land on the same model
        betas[i - 1] = 1.0 if abs(b - 1.0) <= beta_tol else b
    for i in range(1, len(betas)):
        if betas[i] < betas[i - 1] - beta_tol:
            raise ElicitationRejected(
                f"beta_{i} = {betas[i - 1]:.12g} > beta_{i + 1} = {betas[i]:.12g}",
                "early bias: betas must be non-decreasing",
                eb,
                T,
                gammas,
            )
        betas[i] = max(betas[i], betas[i - 1])
    return DiscountModel(T, delta, tuple(betas)), residual, auto


def recover_discount(oracle, u: UtilityFunction, cfg: ElicitationConfig) -> DiscountModel:
    """Elicit ``gamma_t = w_{t+1} / w_t`` and read off ``(T, delta, beta)``.

    Raises:
        ElicitationRejected: naming the violated constraint and axiom.
    """
    _require_tail(cfg)
    s = Session(oracle, cfg)
    return _model_from_ratios(_ratios(s, u), cfg)[0]


@dataclass(frozen=True)
class ElicitationResult:
    """Outcome of :func:`recover_full`; ``model`` is ``None`` when rejected."""

    u: UtilityFunction | None
    model: DiscountModel | None
    status: str
    diagnostics: dict[str, Any] = field(default_factory=dict)
    rejection: ElicitationRejected | None = None

    @property
    def accepted(self) -> bool:
        return self.status == "ACCEPTED"

    def representation(self, cfg: ElicitationConfig) -> DEURepresentation:
        return DEURepresentation(self.u, self.model, INFINITE if cfg.infinite else cfg.n)

    def to_dict(self) -> dict:
        from .serialization import model_to_json

        out: dict[str, Any] = {"status": self.status, "diagnostics": self.diagnostics}
        if self.u is not None:
            out["u"] = self.u.as_dict()
        if self.model is not None:
            out["model"] = model_to_json(self.model)
        if self.rejection is not None:
            out["rejected"] = {
                "constraint": self.rejection.constraint,
                "axiom": self.rejection.axiom,
                "T": self.rejection.T,
                "reason": str(self.rejection),
            }
        return out


def _probe_pairs(cfg: ElicitationConfig) -> list[tuple[Stream, Stream]]:
    from .axioms.testbed import Testbed

    tb = Testbed(cfg.prizes, cfg.anchor, n=cfg.n, seed=cfg.seed, horizon_cap=max(cfg.n, 1))
    rng = tb.rng("probes")
    make = (lambda: tb.random_infinite(rng)) if cfg.infinite else (lambda: tb.random_finite(rng))
    return [(make(), make()) for _ in range(cfg.probes)]


def verdict_agreement(oracle, rep, cfg: ElicitationConfig) -> float:
    pairs = _probe_pairs(cfg)
    if not pairs:
        return 1.0
    agree = sum(Ordering(oracle.compare(x, y)) == compare(rep, x, y) for x, y in pairs)
    return agree / len(pairs)


def recover_full(oracle, cfg: ElicitationConfig) -> ElicitationResult:
    """Calibrate ``u``, elicit the ratios and fit the SH(T) model.

    A rejection is returned as a result with status ``REJECTED`` rather than
    raised. Budget exhaustion and oracle inconsistencies propagate.
    """
    _require_tail(cfg)
    s = Session(oracle, cfg)
    u = _calibrate(s)
    ev = _ratios(s, u)
    diag: dict[str, Any] = {
        "queries": s.queries,
        "query_ceiling": s.budget,
        "lambdas": list(ev.lambdas),
        "gammas": list(ev.gammas),
    }
    try:
        model, residual, auto = _model_from_ratios(ev, cfg)
    except ElicitationRejected as e:
        diag["queries"] = s.queries
        return ElicitationResult(u, None, "REJECTED", diag, e)
    diag["tail_residual"] = residual
    diag["T_selected_automatically"] = auto
    rep = DEURepresentation(u, model, INFINITE if cfg.infinite else cfg.n)
    diag["verdict_agreement"] = verdict_agreement(s.oracle, rep, cfg)
    return ElicitationResult(u, model, "ACCEPTED", diag)
