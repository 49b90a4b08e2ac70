"""Semi-hyperbolic SH(T) discount functions.

``SH(1)`` is exponential discounting and ``SH(2)`` quasi-hyperbolic
discounting. A model holds the bias horizon ``T``, the long-run factor
``delta`` and the bias coefficients ``beta_1 .. beta_{T-1}``::

    D(1) = 1
    D(t) = prod_{i<t} beta_i * delta          for 1 < t <= T
    D(t) = delta ** (t - T) * D(T)             for t > T
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConstraintError

INFINITE = math.inf

DEFAULT_RATIO_EPS = 1e-9


@dataclass(frozen=True)
class DiscountModel:
    """Parameters of an SH(T) discount function.

    Args:
        T: bias horizon, at least 1.
        delta: long-run per-period factor in (0, 1).
        betas: ``T - 1`` bias coefficients in (0, 1], weakly increasing.
        strict: additionally require strictly increasing betas.
    """

    T: int
    delta: float
    betas: tuple[float, ...] = ()
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if int(self.T) != self.T or self.T < 1:
            raise ConstraintError(f"T must be an integer >= 1, got {self.T}")
        if not 0.0 < self.delta < 1.0:
            raise ConstraintError(f"delta must lie in (0, 1), got {self.delta}")
        if len(self.betas) != self.T - 1:
            raise ConstraintError(f"SH({self.T}) needs {self.T - 1} betas, got {len(self.betas)}")
        for i, b in enumerate(self.betas, start=1):
            if not 0.0 < b <= 1.0:
                raise ConstraintError(f"beta_{i} = {b} outside (0, 1]", index=i)
        for i in range(1, len(self.betas)):
            prev, cur = self.betas[i - 1], self.betas[i]
            if cur < prev or (self.strict and cur == prev):
                order = "strictly increasing" if self.strict else "non-decreasing"
                raise ConstraintError(f"betas must be {order}: beta_{i} = {prev} > beta_{i + 1} = {cur}", index=i + 1)

    @property
    def kind(self) -> str:
        return {1: "exponential", 2: "quasi_hyperbolic"}.get(self.T, "semi_hyperbolic")

    def factor(self, t: int) -> float:
        return discount_factor(self, t)

    def factors(self, n: int) -> np.ndarray:
        """Vector ``(D(1), ..., D(n))`` built by chaining the period ratios."""
        if n <= 0:
            return np.empty(0)
        return np.cumprod(np.concatenate([[1.0], self.ratios(n)]))

    def ratios(self, n: int) -> np.ndarray:
        """Successive ratios ``D(t+1)/D(t)`` for ``t = 1 .. n-1``."""
        gammas = [b * self.delta for b in self.betas] + [self.delta] * max(0, n - self.T)
        return np.array(gammas[: max(0, n - 1)], dtype=float)


def discount_factor(m: DiscountModel, t: int) -> float:
    if t < 1:
        raise ConstraintError(f"periods start at 1, got {t}")
    return float(m.factors(t)[-1])


def exponential(delta: float) -> DiscountModel:
    return DiscountModel(1, delta)


def quasi_hyperbolic(beta: float, delta: float) -> DiscountModel:
    return DiscountModel(2, delta, (beta,))


def semi_hyperbolic(betas: Sequence[float], delta: float, strict: bool = False) -> DiscountModel:
    return DiscountModel(len(betas) + 1, delta, tuple(betas), strict=strict)


def from_hayashi(beta_primes: Sequence[float], delta: float) -> DiscountModel:
    """Build the model from compounded coefficients ``beta'_t = delta * beta_t``."""
    if not 0.0 < delta < 1.0:
        raise ConstraintError(f"delta must lie in (0, 1), got {delta}")
    return semi_hyperbolic([bp / delta for bp in beta_primes], delta)


def hayashi_factors(beta_primes: Sequence[float], delta: float, n: int) -> np.ndarray:
    """Discount factors written directly in the compounded parameterisation."""
    out = []
    for t in range(1, n + 1):
        T = len(beta_primes) + 1
        d = math.prod(beta_primes[: min(t, T) - 1])
        if t > T:
            d *= delta ** (t - T)
        out.append(d)
    return np.array(out)


def total_weight(m: DiscountModel, horizon: int | float = INFINITE) -> float:
    """Sum of ``D(t)`` up to ``horizon``; closed form for the infinite case."""
    if horizon == INFINITE:
        head = m.factors(m.T)
        return math.fsum(head[:-1]) + head[-1] / (1.0 - m.delta)
    horizon = int(horizon)
    if horizon < 0:
        raise ConstraintError("horizon must be non-negative")
    if horizon <= m.T:
        return math.fsum(m.factors(horizon)) if horizon else 0.0
    head = m.factors(m.T)
    k = horizon - m.T
    return math.fsum(head) + head[-1] * m.delta * (1.0 - m.delta**k) / (1.0 - m.delta)


class Kind(str, enum.Enum):
    EXPONENTIAL = "EXPONENTIAL"
    QUASI_HYPERBOLIC = "QUASI_HYPERBOLIC"
    SEMI_HYPERBOLIC = "SEMI_HYPERBOLIC"
    AMBIGUOUS = "AMBIGUOUS"
    NONE = "NONE"


@dataclass(frozen=True)
class Classification:
    """Outcome of :func:`classify`; ``model`` is set only for SH(T) verdicts."""

    kind: Kind
    model: DiscountModel | None = None
    reason: str = ""
    ratios: tuple[float, ...] = ()

    @property
    def T(self) -> int | None:
        return None if self.model is None else self.model.T

    def __bool__(self) -> bool:
        return self.model is not None


def classify(weights: Sequence[float], eps: float = DEFAULT_RATIO_EPS) -> Classification:
    """Identify the smallest SH(T) family a weight profile belongs to.

    The profile is read through its ratios ``gamma_t = w_{t+1} / w_t``. The bias
    horizon is the smallest ``T`` from which all remaining ratios agree within
    ``eps`` (at least two of them); their mean is ``delta`` and
    ``beta_t = gamma_t / delta`` for ``t < T``.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or len(w) == 0:
        return Classification(Kind.NONE, reason="empty weight profile")
    if np.any(w < 0):
        t = int(np.argmax(w < 0)) + 1
        return Classification(Kind.NONE, reason=f"negative weight at period {t}")
    if np.any(w == 0):
        t = int(np.argmax(w == 0)) + 1
        return Classification(Kind.NONE, reason=f"inessential period {t} (zero weight)")
    gammas = w[1:] / w[:-1]
    if len(w) < 3:
        return Classification(Kind.AMBIGUOUS, reason="fewer than two ratios; need n >= T + 2", ratios=tuple(gammas))
    n = len(w)
    T = None
    for cand in range(1, n - 1):
        tail = gammas[cand - 1 :]
        if tail.max() - tail.min() <= eps:
            T = cand
            break
    if T is None:
        return Classification(Kind.NONE, reason="no geometric tail of length >= 2", ratios=tuple(gammas))
    delta = float(np.mean(gammas[T - 1 :]))
    if not 0.0 < delta < 1.0:
        return Classification(Kind.NONE, reason=f"delta = {delta:.12g} outside (0, 1)", ratios=tuple(gammas))
    betas = [float(g / delta) for g in gammas[: T - 1]]
    for i, b in enumerate(betas, start=1):
        if b > 1.0 + eps:
            return Classification(Kind.NONE, reason=f"beta_{i} = {b:.12g} > 1", ratios=tuple(gammas))
        betas[i - 1] = min(b, 1.0)
    for i in range(1, len(betas)):
        if betas[i] < betas[i - 1] - eps:
            return Classification(
                Kind.NONE,
                reason=f"beta monotonicity violated: beta_{i} = {betas[i - 1]:.12g} > beta_{i + 1} = {betas[i]:.12g}",
                ratios=tuple(gammas),
            )
        betas[i] = max(betas[i], betas[i - 1])
    model = DiscountModel(T, delta, tuple(betas))
    kind = {1: Kind.EXPONENTIAL, 2: Kind.QUASI_HYPERBOLIC}.get(T, Kind.SEMI_HYPERBOLIC)
    return Classification(kind, model, ratios=tuple(gammas))
