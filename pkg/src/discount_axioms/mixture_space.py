"""Lotteries over a finite prize set, their mixtures, and expected utility.

The mixture set ``X`` is instantiated as the simplex of probability vectors
over an ordered tuple of prize labels. Every lottery keeps a reference to its
prize tuple; two lotteries can only be mixed when the tuples agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ArgumentError, DomainError

PROB_TOL = 1e-12

Prizes = tuple[str, ...]


def prize_set(ids: Iterable[str]) -> Prizes:
    """Validate and freeze an ordered collection of prize labels."""
    prizes = tuple(str(p) for p in ids)
    if not prizes:
        raise ArgumentError("prize set must be non-empty")
    if len(set(prizes)) != len(prizes):
        raise ArgumentError(f"prize ids must be unique: {prizes}")
    return prizes


@dataclass(frozen=True, eq=False)
class Lottery:
    """Finite probability distribution over ``prizes``.

    Equality is componentwise within ``PROB_TOL``; ``key`` gives the exact
    probability tuple for use as a cache key.
    """

    prizes: Prizes
    probs: tuple[float, ...]

    def __post_init__(self):
        if len(self.prizes) != len(self.probs):
            raise DomainError("probability vector does not match prize set")
        if any(not math.isfinite(p) or p < 0.0 for p in self.probs):
            raise ArgumentError(f"probabilities must be finite and >= 0: {self.probs}")
        if abs(math.fsum(self.probs) - 1.0) > PROB_TOL:
            raise ArgumentError(f"probabilities must sum to 1: {self.probs}")

    @classmethod
    def degenerate(cls, prizes: Prizes, prize: str) -> Lottery:
        if prize not in prizes:
            raise DomainError(f"unknown prize {prize!r}")
        return cls(prizes, tuple(1.0 if p == prize else 0.0 for p in prizes))

    @classmethod
    def from_mapping(cls, prizes: Prizes, mapping: Mapping[str, float]) -> Lottery:
        unknown = set(mapping) - set(prizes)
        if unknown:
            raise DomainError(f"unknown prizes {sorted(unknown)}")
        return cls(prizes, tuple(float(mapping.get(p, 0.0)) for p in prizes))

    @property
    def key(self) -> tuple[float, ...]:
        return self.probs

    def prob(self, prize: str) -> float:
        try:
            return self.probs[self.prizes.index(prize)]
        except ValueError:
            return 0.0

    @property
    def support(self) -> dict[str, float]:
        return {p: q for p, q in zip(self.prizes, self.probs) if q > 0.0}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lottery):
            return NotImplemented
        if self.probs is other.probs:
            return True
        return self.prizes == other.prizes and all(
            abs(a - b) <= PROB_TOL for a, b in zip(self.probs, other.probs)
        )

    def __hash__(self) -> int:
        return hash(self.prizes)

    def __repr__(self) -> str:
        body = ", ".join(f"{p}:{q:.6g}" for p, q in self.support.items())
        return f"Lottery({{{body}}})"


def mix(x: Lottery, lam: float, y: Lottery) -> Lottery:
    """Return the mixture ``x lam y``: probability ``lam`` on ``x``, the rest on ``y``."""
    if x.prizes != y.prizes:
        raise DomainError("cannot mix lotteries over different prize sets")
    if not 0.0 <= lam <= 1.0:
        raise ArgumentError(f"mixture weight must lie in [0, 1], got {lam}")
    if lam == 1.0:
        return x
    if lam == 0.0:
        return y
    mu = 1.0 - lam
    return Lottery(x.prizes, tuple(lam * a + mu * b for a, b in zip(x.probs, y.probs)))


@dataclass(frozen=True)
class UtilityFunction:
    """Utility values on prizes, extended to lotteries by expectation."""

    prizes: Prizes
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.prizes) != len(self.values):
            raise DomainError("utility table does not match prize set")
        if any(not math.isfinite(v) for v in self.values):
            raise ArgumentError("utilities must be finite")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, float], prizes: Prizes | None = None) -> UtilityFunction:
        prizes = prize_set(mapping) if prizes is None else prizes
        missing = [p for p in prizes if p not in mapping]
        if missing:
            raise DomainError(f"utility undefined for prizes {missing}")
        return cls(prizes, tuple(float(mapping[p]) for p in prizes))

    def __getitem__(self, prize: str) -> float:
        try:
            return self.values[self.prizes.index(prize)]
        except ValueError:
            raise DomainError(f"utility undefined for prize {prize!r}") from None

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.prizes, self.values))

    @property
    def spread(self) -> float:
        return max(self.values) - min(self.values)

    @property
    def is_constant(self) -> bool:
        return self.spread <= 0.0

    def best(self) -> str:
        return self.prizes[max(range(len(self.values)), key=self.values.__getitem__)]

    def worst(self) -> str:
        return self.prizes[min(range(len(self.values)), key=self.values.__getitem__)]

    def expected(self, x: Lottery) -> float:
        if x.prizes is self.prizes or x.prizes == self.prizes:
            return math.fsum(p * v for p, v in zip(x.probs, self.values))
        total = []
        for prize, p in zip(x.prizes, x.probs):
            if p > 0.0:
                total.append(p * self[prize])
        return math.fsum(total)

    def affine(self, scale: float, shift: float) -> UtilityFunction:
        return UtilityFunction(self.prizes, tuple(scale * v + shift for v in self.values))


def expected_utility(u: UtilityFunction, x: Lottery) -> float:
    """Expected utility of ``x`` under ``u``; mixture-linear by construction."""
    return u.expected(x)
