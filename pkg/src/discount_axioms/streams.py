"""Consumption streams of lotteries and the constructions the axioms use.

Finite streams are elements of ``X^n``. Infinite streams are restricted to the
eventually-constant ones: an explicit prefix followed by a repeated tail
lottery. The two named kinds from the axioms are

* :class:`UltimatelyConstantStream` -- the tail is the fixed anchor ``x0``;
* :class:`ConstantStream` -- empty prefix, the tail is the repeated value.

Mixing an ultimately-constant stream with a constant one yields an
:class:`InfiniteStream` whose tail is ``x0 lam a``; it is still evaluable.
Periods are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

from .errors import ArgumentError, DomainError
from .mixture_space import Lottery, mix


def _check_prizes(lotteries: Sequence[Lottery]) -> None:
    if lotteries and any(l.prizes != lotteries[0].prizes for l in lotteries[1:]):
        raise DomainError("all lotteries in a stream must share one prize set")


@dataclass(frozen=True, eq=False)
class FiniteStream:
    periods: tuple[Lottery, ...]

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(self.periods))
        if not self.periods:
            raise ArgumentError("a finite stream needs at least one period")
        _check_prizes(self.periods)

    def __len__(self) -> int:
        return len(self.periods)

    def period(self, t: int) -> Lottery:
        if not 1 <= t <= len(self.periods):
            raise ArgumentError(f"period {t} outside 1..{len(self.periods)}")
        return self.periods[t - 1]

    @cached_property
    def key(self) -> tuple:
        return ("F",) + tuple(l.key for l in self.periods)

    def replace(self, t: int, a: Lottery) -> FiniteStream:
        self.period(t)
        return FiniteStream(self.periods[: t - 1] + (a,) + self.periods[t:])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteStream):
            return NotImplemented
        return self.periods == other.periods

    def __hash__(self) -> int:
        return hash(len(self.periods))

    def __repr__(self) -> str:
        return f"FiniteStream({list(self.periods)})"


@dataclass(frozen=True, eq=False)
class InfiniteStream:
    """``(prefix..., tail, tail, ...)`` with trailing copies of ``tail`` stripped."""

    prefix: tuple[Lottery, ...]
    tail: Lottery

    def __post_init__(self):
        prefix = list(self.prefix)
        _check_prizes(prefix + [self.tail])
        while prefix and prefix[-1] == self.tail:
            prefix.pop()
        object.__setattr__(self, "prefix", tuple(prefix))

    def period(self, t: int) -> Lottery:
        if t < 1:
            raise ArgumentError(f"periods start at 1, got {t}")
        return self.prefix[t - 1] if t <= len(self.prefix) else self.tail

    def head(self, m: int) -> tuple[Lottery, ...]:
        """First ``m`` periods, padding with the tail where needed."""
        return tuple(self.period(t) for t in range(1, m + 1))

    def shift(self, k: int = 1) -> InfiniteStream:
        """Drop the first ``k`` periods."""
        return _make_infinite(self.prefix[k:], self.tail)

    def prepend(self, *lotteries: Lottery) -> InfiniteStream:
        return _make_infinite(tuple(lotteries) + self.prefix, self.tail)

    def replace(self, t: int, a: Lottery) -> InfiniteStream:
        head = list(self.head(max(t, len(self.prefix))))
        head[t - 1] = a
        return _make_infinite(tuple(head), self.tail)

    @property
    def prefix_length(self) -> int:
        return len(self.prefix)

    @cached_property
    def key(self) -> tuple:
        return ("I", self.tail.key) + tuple(l.key for l in self.prefix)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InfiniteStream):
            return NotImplemented
        return self.tail == other.tail and self.prefix == other.prefix

    def __hash__(self) -> int:
        return hash(len(self.prefix))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.prefix)} + [{self.tail!r}, ...])"


class UltimatelyConstantStream(InfiniteStream):
    """Stream equal to the anchor ``x0`` after a finite prefix."""

    @property
    def anchor(self) -> Lottery:
        return self.tail


class ConstantStream(InfiniteStream):
    """The stream ``(a, a, ...)``."""

    def __init__(self, value: Lottery):
        super().__init__((), value)

    @property
    def value(self) -> Lottery:
        return self.tail


Stream = Union[FiniteStream, InfiniteStream]


def _make_infinite(prefix: tuple[Lottery, ...], tail: Lottery) -> InfiniteStream:
    s = InfiniteStream(prefix, tail)
    if not s.prefix:
        return ConstantStream(tail)
    return UltimatelyConstantStream(s.prefix, tail)


def ultimately_constant(prefix: Sequence[Lottery], anchor: Lottery) -> UltimatelyConstantStream:
    return UltimatelyConstantStream(tuple(prefix), anchor)


def constant_finite(a: Lottery, n: int) -> FiniteStream:
    return FiniteStream((a,) * n)


def mix_streams(x: Stream, lam: float, y: Stream) -> Stream:
    """Componentwise mixture ``x lam y``.

    Infinite operands are padded with their own tails to a common prefix
    length; the tail of the result is the mixture of the two tails.
    """
    if isinstance(x, FiniteStream) and isinstance(y, FiniteStream):
        if len(x) != len(y):
            raise DomainError(f"cannot mix streams of lengths {len(x)} and {len(y)}")
        return FiniteStream(tuple(mix(a, lam, b) for a, b in zip(x.periods, y.periods)))
    if isinstance(x, InfiniteStream) and isinstance(y, InfiniteStream):
        m = max(x.prefix_length, y.prefix_length)
        prefix = tuple(mix(a, lam, b) for a, b in zip(x.head(m), y.head(m)))
        return _make_infinite(prefix, mix(x.tail, lam, y.tail))
    raise DomainError("cannot mix a finite stream with an infinite one")


def place_at(a: Lottery, k: int, anchor: Lottery) -> InfiniteStream:
    """``[a]_k``: the lottery ``a`` in period ``k`` and the anchor elsewhere."""
    if k < 1:
        raise ArgumentError(f"periods start at 1, got {k}")
    return _make_infinite((anchor,) * (k - 1) + (a,), anchor)


def place_pair(a: Lottery, t: int, b: Lottery, s: int, anchor: Lottery) -> InfiniteStream:
    """``[a, b]_{t,s}``: ``a`` in period ``t``, ``b`` in period ``s``, anchor elsewhere."""
    if t == s:
        raise ArgumentError("the two periods must differ")
    m = max(t, s)
    prefix = [anchor] * m
    prefix[t - 1] = a
    prefix[s - 1] = b
    return _make_infinite(tuple(prefix), anchor)


def replace_and_truncate(
    x: InfiniteStream, k: int, a: Lottery, T: int, anchor: Lottery | None = None
) -> InfiniteStream:
    """``x^+_{k,T}``: copy periods ``1..T`` of ``x`` with period ``k`` set to ``a``,
    followed by the anchor.

    ``anchor`` defaults to the tail of ``x``, which is the session anchor for
    ultimately constant streams; pass it explicitly when ``x`` is a constant
    stream of some other lottery.
    """
    if not isinstance(x, InfiniteStream):
        raise DomainError("replace_and_truncate needs an infinite stream")
    if k < 1 or k > T:
        raise ArgumentError(f"need 1 <= k <= T, got k={k}, T={T}")
    if anchor is None:
        anchor = x.tail
    head = list(x.head(T))
    head[k - 1] = a
    return _make_infinite(tuple(head), anchor)


def swap(x: FiniteStream, i: int, j: int) -> FiniteStream:
    """Exchange periods ``i`` and ``j``."""
    n = len(x)
    if not (1 <= i <= n and 1 <= j <= n):
        raise ArgumentError(f"swap indices ({i}, {j}) outside 1..{n}")
    p = list(x.periods)
    p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
    return FiniteStream(tuple(p))


def rotate_for_stationarity(x: FiniteStream) -> FiniteStream:
    """``(a, x_2, ..., x_n) -> (x_2, ..., x_n, a)``."""
    if len(x) < 2:
        raise ArgumentError("rotation needs at least two periods")
    return FiniteStream(x.periods[1:] + x.periods[:1])


def truncate(x: InfiniteStream, T: int, anchor: Lottery) -> InfiniteStream:
    """Keep periods ``1..T`` of ``x`` and continue with the anchor."""
    return _make_infinite(x.head(T), anchor)
