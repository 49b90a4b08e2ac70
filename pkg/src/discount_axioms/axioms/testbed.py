"""Finite instantiation of the universally quantified axioms.

A :class:`Testbed` fixes the prize set, the anchor ``x0``, a grid of mixture
weights, the stream length ``n``, the bias horizon ``T`` and the horizon cap
``H``, and derives from them a seeded family of lotteries and streams. Each
check draws its cases from a generator seeded with the testbed seed and the
check's own name, so results do not depend on the order in which checks run.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import ArgumentError
from ..mixture_space import Lottery, Prizes, mix
from ..streams import ConstantStream, FiniteStream, InfiniteStream, UltimatelyConstantStream

DEFAULT_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class Testbed:
    """Configuration of the case enumeration.

    Args:
        prizes: prize labels.
        anchor: the fixed lottery ``x0`` ending every ultimately constant stream.
        grid: mixture weights; 0 and 1 are always added.
        n: finite stream length.
        T: bias horizon for the SH(T) axioms.
        horizon_cap: largest truncation examined by the convergence check.
        seed: base seed for all sampled cases.
        eps: indifference band used when comparing oracle values.
        bisect_tol: edge tolerance for black-box indifference searches;
            ``0`` bisects to float resolution.
        n_streams: random streams in the weak-order and independence pools.
        n_contexts: random contexts per constructive case.
        n_cases: random cases per sampled check.
        convergence_periods: positions ``k`` probed by the convergence check.
    """

    prizes: Prizes
    anchor: Lottery
    grid: tuple[float, ...] = DEFAULT_GRID
    n: int = 3
    T: int = 1
    horizon_cap: int = 200
    seed: int = 0
    eps: float = 1e-9
    bisect_tol: float = 0.0
    n_streams: int = 8
    n_contexts: int = 2
    n_cases: int = 24
    convergence_periods: int = 2
    relation_streams: tuple[FiniteStream, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        grid = sorted({0.0, 1.0, *(float(g) for g in self.grid)})
        if any(not 0.0 <= g <= 1.0 for g in grid):
            raise ArgumentError(f"grid points must lie in [0, 1]: {grid}")
        object.__setattr__(self, "grid", tuple(grid))
        if self.anchor.prizes != tuple(self.prizes):
            raise ArgumentError("anchor must be a lottery over the testbed prizes")
        if self.n < 1 or self.T < 1:
            raise ArgumentError("n and T must be positive")
        if self.horizon_cap < self.n:
            raise ArgumentError(f"horizon cap {self.horizon_cap} must be at least n = {self.n}")

    @property
    def interior_grid(self) -> tuple[float, ...]:
        return tuple(g for g in self.grid if 0.0 < g < 1.0)

    def rng(self, salt: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(salt.encode())])

    @cached_property
    def degenerate(self) -> tuple[Lottery, ...]:
        return tuple(Lottery.degenerate(self.prizes, p) for p in self.prizes)

    @cached_property
    def lotteries(self) -> tuple[Lottery, ...]:
        """Degenerate lotteries plus pairwise mixtures at interior grid points."""
        out = list(self.degenerate)
        for a, b in itertools.combinations(self.degenerate, 2):
            out.extend(mix(a, g, b) for g in self.interior_grid)
        return tuple(out)

    def random_lotteries(self, rng: np.random.Generator, k: int) -> list[Lottery]:
        idx = rng.integers(0, len(self.lotteries), size=k)
        return [self.lotteries[i] for i in idx]

    def random_finite(self, rng: np.random.Generator, n: int | None = None) -> FiniteStream:
        return FiniteStream(tuple(self.random_lotteries(rng, n or self.n)))

    def random_infinite(self, rng: np.random.Generator, length: int | None = None) -> InfiniteStream:
        k = length or int(rng.integers(1, self.n + 1))
        return UltimatelyConstantStream(tuple(self.random_lotteries(rng, k)), self.anchor)

    def finite_pool(self, salt: str) -> list[FiniteStream]:
        if self.relation_streams is not None:
            return list(self.relation_streams)
        rng = self.rng(salt)
        pool = [FiniteStream((a,) * self.n) for a in self.degenerate]
        pool += [self.random_finite(rng) for _ in range(self.n_streams)]
        return pool

    def infinite_pool(self, salt: str) -> list[InfiniteStream]:
        """Sample of ``X**``: constant streams and ultimately constant ones."""
        rng = self.rng(salt)
        pool: list[InfiniteStream] = [ConstantStream(a) for a in self.degenerate]
        pool += [self.random_infinite(rng) for _ in range(self.n_streams)]
        return pool

    def summary(self) -> dict:
        return {
            "grid": list(self.grid),
            "n": self.n,
            "T": self.T,
            "horizon_cap": self.horizon_cap,
            "seed": self.seed,
            "eps": self.eps,
            "lotteries": len(self.lotteries),
            "n_streams": self.n_streams,
            "n_cases": self.n_cases,
        }
