"""Additive representations of preferences over streams.

Three layers:

* :class:`AdditiveRepresentation` is the general functional
  ``U(x) = sum_t w_t u(x_t) + c * u(tail)``. It accepts signed or
  non-summable weights and backs the perturbed oracles in :mod:`fitlab`.
* :class:`AARepresentation` adds the invariants of an AA representation:
  non-constant ``u`` and non-negative, summable, not-all-zero weights.
* :class:`DEURepresentation` ties the weights to an SH(T)
  :class:`~discount_axioms.discounting.DiscountModel`.

Infinite weight sequences are described by :class:`TailWeights`, a finite head
continued geometrically, which is exactly the shape of SH(T) weights.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from .discounting import INFINITE, DiscountModel
from .errors import ArgumentError, ConstraintError, DomainError, EssentialityError
from .mixture_space import Lottery, UtilityFunction, mix
from .streams import FiniteStream, InfiniteStream, Stream, constant_finite, mix_streams

DEFAULT_EPS = 1e-9


@dataclass(frozen=True)
class TailWeights:
    """Weights ``head[0], ..., head[m-1]`` followed by ``w_{t+1} = ratio * w_t``."""

    head: tuple[float, ...]
    ratio: float

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(float(w) for w in self.head))
        if not self.head:
            raise ArgumentError("tail weights need a non-empty head")
        if not math.isfinite(self.ratio) or self.ratio < 0:
            raise ArgumentError(f"tail ratio must be finite and >= 0, got {self.ratio}")

    @property
    def summable(self) -> bool:
        return self.ratio < 1.0 or self.head[-1] == 0.0

    def weight(self, t: int) -> float:
        m = len(self.head)
        if t <= m:
            return self.head[t - 1]
        return self.head[-1] * self.ratio ** (t - m)

    def weights(self, n: int) -> np.ndarray:
        m = len(self.head)
        if n <= m:
            return np.array(self.head[:n])
        tail = self.head[-1] * np.cumprod(np.full(n - m, self.ratio))
        return np.concatenate([self.head, tail])

    def total(self) -> float:
        return self.remainder(0)

    def remainder(self, p: int) -> float:
        """``sum_{t > p} w_t``, in closed form."""
        m = len(self.head)
        last = self.head[-1]
        if not self.summable:
            return math.inf if last > 0 else -math.inf
        if p < m:
            return math.fsum(self.head[p : m - 1]) + last / (1.0 - self.ratio)
        return last * self.ratio ** (p - m + 1) / (1.0 - self.ratio)

    def scaled(self, c: float) -> TailWeights:
        return TailWeights(tuple(c * w for w in self.head), self.ratio)


Weights = Union[tuple, TailWeights]


@dataclass(frozen=True)
class AdditiveRepresentation:
    """``U(x) = sum_t w_t u(x_t) + limit_weight * u(tail)``.

    Finite weights (a tuple) evaluate finite streams of the same length;
    :class:`TailWeights` evaluate eventually constant infinite streams.
    """

    u: UtilityFunction
    weights: Weights
    limit_weight: float = 0.0

    def __post_init__(self):
        if not isinstance(self.weights, TailWeights):
            object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
            if not self.weights:
                raise ArgumentError("weight profile must be non-empty")
            if self.limit_weight:
                raise ArgumentError("a limit term needs an infinite weight sequence")

    @property
    def infinite(self) -> bool:
        return isinstance(self.weights, TailWeights)

    @property
    def horizon(self) -> int | float:
        return INFINITE if self.infinite else len(self.weights)

    @property
    def prizes(self):
        return self.u.prizes

    def weight(self, t: int) -> float:
        if self.infinite:
            return self.weights.weight(t)
        return self.weights[t - 1]

    def weight_vector(self, n: int) -> np.ndarray:
        if self.infinite:
            return self.weights.weights(n)
        return np.array(self.weights[:n])

    def as_additive(self) -> AdditiveRepresentation:
        return self


class AARepresentation(AdditiveRepresentation):
    """Additive representation satisfying the AA invariants."""

    def __post_init__(self):
        super().__post_init__()
        if self.u.is_constant:
            raise ConstraintError("utility must be non-constant")
        if self.infinite:
            ws = self.weights.head
            if not self.weights.summable:
                raise ConstraintError("infinite weights must be summable")
        else:
            ws = self.weights
        for t, w in enumerate(ws, start=1):
            if w < 0:
                raise ConstraintError(f"weight w_{t} = {w} is negative", index=t)
        if not any(w > 0 for w in ws):
            raise ConstraintError("at least one weight must be positive")
        if self.limit_weight < 0:
            raise ConstraintError("limit weight must be non-negative")


@dataclass(frozen=True)
class DEURepresentation:
    """SH(T) discounted expected utility with ``D(1) = 1``."""

    u: UtilityFunction
    model: DiscountModel
    horizon: int | float = INFINITE

    def __post_init__(self):
        if self.u.is_constant:
            raise ConstraintError("utility must be non-constant")
        if self.horizon != INFINITE and (int(self.horizon) != self.horizon or self.horizon < 1):
            raise ArgumentError(f"horizon must be a positive integer or INFINITE, got {self.horizon}")

    @property
    def infinite(self) -> bool:
        return self.horizon == INFINITE

    @property
    def prizes(self):
        return self.u.prizes

    @cached_property
    def _additive(self) -> AdditiveRepresentation:
        m = self.model
        if self.infinite:
            w: Weights = TailWeights(tuple(m.factors(m.T)), m.delta)
        else:
            w = tuple(m.factors(int(self.horizon)))
        return AdditiveRepresentation(self.u, w)

    def as_additive(self) -> AdditiveRepresentation:
        return self._additive

    @property
    def weights(self) -> Weights:
        return self._additive.weights

    @property
    def limit_weight(self) -> float:
        return 0.0

    def weight(self, t: int) -> float:
        return self._additive.weight(t)

    def weight_vector(self, n: int) -> np.ndarray:
        return self._additive.weight_vector(n)


Representation = Union[AdditiveRepresentation, DEURepresentation]


@dataclass(frozen=True)
class UniquenessTransform:
    """``u' = A u + B`` and ``w' = C w``."""

    A: float = 1.0
    B: float = 0.0
    C: float = 1.0

    def __post_init__(self):
        if not self.A > 0:
            raise ConstraintError(f"A must be positive, got {self.A}")
        if not self.C > 0:
            raise ConstraintError(f"C must be positive, got {self.C}")
        if not math.isfinite(self.B):
            raise ConstraintError("B must be finite")


class Ordering(enum.IntEnum):
    PREFER_X = 1
    INDIFFERENT = 0
    PREFER_Y = -1

    @property
    def symbol(self) -> str:
        return {1: ">", 0: "=", -1: "<"}[int(self)]

    @classmethod
    def from_symbol(cls, s: str) -> Ordering:
        try:
            return {">": cls.PREFER_X, "=": cls.INDIFFERENT, "~": cls.INDIFFERENT, "<": cls.PREFER_Y}[s]
        except KeyError:
            raise ArgumentError(f"unknown verdict symbol {s!r}") from None

    def flip(self) -> Ordering:
        return Ordering(-int(self))


def evaluate(rep: Representation, x: Stream) -> float:
    """Value of stream ``x``; infinite streams use the closed-form tail."""
    add = rep.as_additive()
    u = add.u
    if isinstance(x, FiniteStream):
        if add.infinite:
            raise DomainError("infinite-horizon representation cannot evaluate a finite stream")
        if len(x) != len(add.weights):
            raise DomainError(f"stream has {len(x)} periods, representation has {len(add.weights)}")
        return math.fsum(w * u.expected(l) for w, l in zip(add.weights, x.periods))
    if isinstance(x, InfiniteStream):
        if not add.infinite:
            raise DomainError("finite-horizon representation cannot evaluate an infinite stream")
        tw: TailWeights = add.weights
        p = x.prefix_length
        memo: dict[int, float] = {}

        def eu(l: Lottery) -> float:
            v = memo.get(id(l))
            if v is None:
                v = memo[id(l)] = u.expected(l)
            return v

        terms = [w * eu(l) for w, l in zip(tw.weights(p).tolist(), x.prefix)]
        ut = u.expected(x.tail)
        if ut != 0.0:
            terms.append(ut * tw.remainder(p))
            if add.limit_weight:
                terms.append(add.limit_weight * ut)
        if any(math.isinf(t) for t in terms):
            return sum(terms)
        return math.fsum(terms)
    raise DomainError(f"not a stream: {type(x).__name__}")


def compare(rep: Representation, x: Stream, y: Stream, eps: float = DEFAULT_EPS) -> Ordering:
    return ordering_of(evaluate(rep, x), evaluate(rep, y), eps)


def ordering_of(ux: float, uy: float, eps: float = DEFAULT_EPS) -> Ordering:
    if ux == uy:
        return Ordering.INDIFFERENT
    d = ux - uy
    if d > eps:
        return Ordering.PREFER_X
    if d < -eps:
        return Ordering.PREFER_Y
    return Ordering.INDIFFERENT


def _rebuild(rep: Representation, u: UtilityFunction, c: float) -> Representation:
    """Same family as ``rep`` with utility ``u`` and weights scaled by ``c``."""
    if isinstance(rep, DEURepresentation) and c == 1.0:
        return DEURepresentation(u, rep.model, rep.horizon)
    add = rep.as_additive()
    w = add.weights.scaled(c) if add.infinite else tuple(c * v for v in add.weights)
    cls = AARepresentation if isinstance(rep, (AARepresentation, DEURepresentation)) else AdditiveRepresentation
    return cls(u, w, c * add.limit_weight)


def apply_transform(rep: Representation, tr: UniquenessTransform) -> Representation:
    """``u' = A u + B``, ``w' = C w``; a DEU representation with ``C != 1``
    becomes an AA representation, since ``D(1) = 1`` no longer holds."""
    return _rebuild(rep, rep.u.affine(tr.A, tr.B), tr.C)


def normalize(rep: Representation, x0: Lottery) -> Representation:
    """Canonical form ``u(x0) = 0``, ``max |u| = 1``, ``w_1 = 1``."""
    w1 = rep.weight(1)
    if w1 == 0.0:
        raise EssentialityError("cannot normalize: period 1 is inessential (w_1 = 0)", period=1)
    if w1 < 0:
        raise ConstraintError("cannot normalize: w_1 is negative", index=1)
    shift = rep.u.expected(x0)
    scale = max(abs(v - shift) for v in rep.u.values)
    if scale == 0.0:
        raise ConstraintError("utility is constant")
    u = UtilityFunction(rep.u.prizes, tuple((v - shift) / scale for v in rep.u.values))
    return _rebuild(rep, u, 1.0 / w1)


def partial_sums(rep: Representation, x: InfiniteStream, T_max: int) -> np.ndarray:
    """Truncated sums ``U_T(x) = sum_{t<=T} w_t u(x_t)`` for ``T = 1..T_max``."""
    add = rep.as_additive()
    if not add.infinite:
        raise DomainError("partial sums need an infinite-horizon representation")
    if not isinstance(x, InfiniteStream):
        raise DomainError("partial sums need an infinite stream")
    us = np.array([add.u.expected(l) for l in x.head(T_max)])
    return np.cumsum(add.weights.weights(T_max) * us)


def tail_bound(rep: Representation, T: int) -> float:
    """``max|u| * D(T+1) / (1 - delta)`` bound on ``|U - U_T|``."""
    if not isinstance(rep, DEURepresentation) or not rep.infinite:
        raise DomainError("tail bound needs an infinite DEU representation")
    umax = max(abs(v) for v in rep.u.values)
    return umax * rep.model.factor(T + 1) / (1.0 - rep.model.delta)


@dataclass(frozen=True)
class Equivalence:
    """Outcome of :func:`equivalent`.

    ``transform`` maps the second representation onto the first when
    ``equivalent`` holds; otherwise ``counterexample`` is a stream pair the
    two representations rank differently, when one could be built.
    """

    equivalent: bool
    transform: UniquenessTransform | None = None
    counterexample: tuple[Stream, Stream] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.equivalent


def _close(a: float, b: float, eps: float) -> bool:
    return abs(a - b) <= eps * max(1.0, abs(a), abs(b))


def _weights_for_comparison(rep: Representation, n: int) -> np.ndarray:
    return rep.as_additive().weight_vector(n)


def _compare_length(r1: Representation, r2: Representation) -> int:
    a1, a2 = r1.as_additive(), r2.as_additive()
    if a1.infinite:
        return max(len(a1.weights.head), len(a2.weights.head)) + 2
    return len(a1.weights)


def equivalent(r1: Representation, r2: Representation, eps: float = DEFAULT_EPS) -> Equivalence:
    """Decide whether ``r2`` maps onto ``r1`` by some uniqueness transform."""
    if r1.u.prizes != r2.u.prizes:
        raise DomainError("representations use different prize sets")
    a1, a2 = r1.as_additive(), r2.as_additive()
    if a1.infinite != a2.infinite or (not a1.infinite and len(a1.weights) != len(a2.weights)):
        return Equivalence(False, reason="different horizons")
    u1, u2 = np.array(r1.u.values), np.array(r2.u.values)
    s1, s2 = np.ptp(u1), np.ptp(u2)
    n = _compare_length(r1, r2)
    if s1 == 0 or s2 == 0:
        return Equivalence(False, reason="constant utility")
    A = s1 / s2
    B = float(np.mean(u1 - A * u2))
    if not np.all(np.abs(u1 - (A * u2 + B)) <= eps * max(1.0, s1)):
        return Equivalence(False, reason="utilities are not positive affine images",
                           counterexample=_utility_counterexample(r1, r2, n))
    w1, w2 = _weights_for_comparison(r1, n), _weights_for_comparison(r2, n)
    k = int(np.argmax(np.abs(w2) > 0)) if np.any(w2 != 0) else 0
    if w2[k] == 0 or w1[k] / w2[k] <= 0:
        return Equivalence(False, reason="weights are not a positive multiple",
                           counterexample=_weight_counterexample(r1, r2, n))
    C = float(w1[k] / w2[k])
    ok = all(_close(a, C * b, eps) for a, b in zip(w1, w2))
    if ok and a1.infinite:
        ok = _close(a1.weights.ratio, a2.weights.ratio, eps) and _close(
            a1.limit_weight, C * a2.limit_weight, eps
        )
    if not ok:
        return Equivalence(False, reason="weights are not a positive multiple",
                           counterexample=_weight_counterexample(r1, r2, n))
    return Equivalence(True, UniquenessTransform(float(A), B, C))


def _streams_of(rep: Representation, n: int, periods: dict[int, Lottery], fill: Lottery) -> Stream:
    if rep.as_additive().infinite:
        m = max(periods)
        return InfiniteStream(tuple(periods.get(t, fill) for t in range(1, m + 1)), fill)
    return FiniteStream(tuple(periods.get(t, fill) for t in range(1, n + 1)))


def _utility_counterexample(r1, r2, n):
    prizes = r1.u.prizes
    deg = {p: Lottery.degenerate(prizes, p) for p in prizes}
    u1, u2 = r1.u.as_dict(), r2.u.as_dict()
    for p in prizes:
        for q in prizes:
            if np.sign(u1[p] - u1[q]) != np.sign(u2[p] - u2[q]):
                return _const_pair(r1, n, deg[p], deg[q])
    best, worst = r1.u.best(), r1.u.worst()
    for z in prizes:
        l1 = (u1[z] - u1[worst]) / (u1[best] - u1[worst])
        l2 = (u2[z] - u2[worst]) / (u2[best] - u2[worst])
        if abs(l1 - l2) > 1e-6:
            g = mix(deg[best], 0.5 * (l1 + l2), deg[worst])
            return _const_pair(r1, n, deg[z], g)
    return None


def _const_pair(rep, n, a, b):
    if rep.as_additive().infinite:
        return InfiniteStream((), a), InfiniteStream((), b)
    return constant_finite(a, n), constant_finite(b, n)


def _weight_counterexample(r1, r2, n):
    prizes = r1.u.prizes
    hi = Lottery.degenerate(prizes, r1.u.best())
    lo = Lottery.degenerate(prizes, r1.u.worst())
    w1, w2 = _weights_for_comparison(r1, n), _weights_for_comparison(r2, n)
    for t in range(1, n + 1):
        for s in range(t + 1, n + 1):
            d1, d2 = w1[t - 1] + w1[s - 1], w2[t - 1] + w2[s - 1]
            if d1 <= 0 or d2 <= 0:
                continue
            l1, l2 = w1[t - 1] / d1, w2[t - 1] / d2
            if abs(l1 - l2) > 1e-6:
                lam = 0.5 * (l1 + l2)
                x = _streams_of(r1, n, {t: hi, s: hi}, lo)
                y = _streams_of(r1, n, {t: hi, s: lo}, lo)
                z = _streams_of(r1, n, {t: lo, s: lo}, lo)
                return y, mix_streams(x, lam, z)
    return None


def disagreement(r1: Representation, r2: Representation, pair, eps: float = DEFAULT_EPS) -> bool:
    x, y = pair
    return compare(r1, x, y, eps) != compare(r2, x, y, eps)
