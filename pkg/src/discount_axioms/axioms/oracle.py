"""Evidence sources for the axiom checkers.

An oracle answers pairwise comparisons of streams. Three kinds exist:
black-box callbacks, representation-backed oracles (which can also report
values, enabling analytic indifference construction), and finite tabulated
relations.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Callable, Sequence

from ..errors import ArgumentError, DomainError
from ..representation import DEFAULT_EPS, Ordering, Representation, evaluate, ordering_of
from ..streams import FiniteStream, Stream

Comparator = Callable[[Stream, Stream], Ordering]

_CACHE_PREFIX_LIMIT = 32


class MissingComparison(KeyError):
    """A tabulated relation has no verdict for the requested pair."""


class PreferenceOracle:
    """Wraps a comparator and counts queries.

    The counter is guarded by a lock so concurrent checkers see a monotone
    total.
    """

    def __init__(self, comparator: Comparator, name: str = "oracle"):
        self._comparator = comparator
        self.name = name
        self._count = 0
        self._lock = threading.Lock()

    @property
    def query_count(self) -> int:
        return self._count

    def _tick(self) -> None:
        with self._lock:
            self._count += 1

    def compare(self, x: Stream, y: Stream) -> Ordering:
        self._tick()
        return Ordering(self._comparator(x, y))

    def weakly_prefers(self, x: Stream, y: Stream) -> bool:
        return self.compare(x, y) >= 0

    def strictly_prefers(self, x: Stream, y: Stream) -> bool:
        return self.compare(x, y) > 0

    @property
    def has_values(self) -> bool:
        return False

    def value(self, x: Stream) -> float:
        raise ArgumentError(f"{self.name} does not expose values")

    @property
    def representation(self) -> Representation | None:
        return None


class RepresentationOracle(PreferenceOracle):
    """Oracle induced by a representation, with a value cache keyed by stream."""

    def __init__(self, rep: Representation, eps: float = DEFAULT_EPS, name: str = "representation"):
        super().__init__(self._compare_values, name)
        self._rep = rep
        self.eps = eps
        self._values: dict[tuple, float] = {}
        self._cache_lock = threading.Lock()

    @property
    def representation(self) -> Representation:
        return self._rep

    @property
    def has_values(self) -> bool:
        return True

    def value(self, x: Stream) -> float:
        long = not isinstance(x, FiniteStream) and x.prefix_length > _CACHE_PREFIX_LIMIT
        if long:
            return evaluate(self._rep, x)
        key = x.key
        v = self._values.get(key)
        if v is None:
            v = evaluate(self._rep, x)
            with self._cache_lock:
                self._values[key] = v
        return v

    def _compare_values(self, x: Stream, y: Stream) -> Ordering:
        return ordering_of(self.value(x), self.value(y), self.eps)


@dataclass(frozen=True)
class FinitePreferenceRelation:
    """Tabulated verdicts ``verdicts[i][j]`` for ``streams[i]`` versus ``streams[j]``.

    ``None`` marks a missing comparison; the weak-order check reports it.
    """

    streams: tuple[FiniteStream, ...]
    verdicts: tuple[tuple[Ordering | None, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "streams", tuple(self.streams))
        object.__setattr__(
            self,
            "verdicts",
            tuple(tuple(None if v is None else Ordering(v) for v in row) for row in self.verdicts),
        )
        m = len(self.streams)
        if len(self.verdicts) != m or any(len(r) != m for r in self.verdicts):
            raise DomainError(f"verdict matrix must be {m} x {m}")
        lengths = {len(s) for s in self.streams}
        if len(lengths) > 1:
            raise DomainError("all streams of a relation must have the same length")
        object.__setattr__(self, "_index", {s.key: i for i, s in enumerate(self.streams)})

    @property
    def n(self) -> int:
        return len(self.streams[0]) if self.streams else 0

    def __len__(self) -> int:
        return len(self.streams)

    def index(self, x: Stream) -> int | None:
        return self._index.get(x.key)

    def lookup(self, x: Stream, y: Stream) -> Ordering:
        i, j = self.index(x), self.index(y)
        if i is None or j is None:
            raise MissingComparison((x, y))
        v = self.verdicts[i][j]
        if v is None:
            raise MissingComparison((x, y))
        return v

    @classmethod
    def from_oracle(cls, streams: Sequence[FiniteStream], oracle: PreferenceOracle) -> FinitePreferenceRelation:
        streams = tuple(streams)
        rows = tuple(tuple(oracle.compare(x, y) for y in streams) for x in streams)
        return cls(streams, rows)


class RelationOracle(PreferenceOracle):
    """Oracle view of a tabulated relation; unknown pairs raise :class:`MissingComparison`."""

    def __init__(self, relation: FinitePreferenceRelation, name: str = "relation"):
        super().__init__(relation.lookup, name)
        self.relation = relation


def as_oracle(evidence, eps: float = DEFAULT_EPS) -> PreferenceOracle:
    """Coerce a representation, relation or oracle to an oracle."""
    if isinstance(evidence, PreferenceOracle):
        return evidence
    if isinstance(evidence, FinitePreferenceRelation):
        return RelationOracle(evidence)
    if hasattr(evidence, "as_additive"):
        return RepresentationOracle(evidence, eps)
    if callable(evidence):
        return PreferenceOracle(evidence)
    raise ArgumentError(f"cannot build an oracle from {type(evidence).__name__}")
