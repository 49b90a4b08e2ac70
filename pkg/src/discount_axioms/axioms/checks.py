"""One checker per axiom.

Every checker takes an oracle and a :class:`Testbed` and returns an
:class:`AxiomResult`. Finite-horizon axioms (F-series) work on streams of
length ``tb.n``; their infinite-horizon counterparts (I-series) are selected
with ``infinite=True`` and work on ultimately constant and constant streams.

Axioms whose premise is an indifference (stationarity, early bias) are
tested constructively: one period of a stream is set to the mixture
``e(lam) = hi lam lo`` of the best and worst prizes, the ``lam`` making the
premise an indifference is located, and the conclusion is then queried at
that point.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from ..mixture_space import Lottery, mix
from ..representation import Ordering
from ..search import find_indifference, linear_root, locate_switch
from ..streams import (
    ConstantStream,
    FiniteStream,
    InfiniteStream,
    Stream,
    UltimatelyConstantStream,
    mix_streams,
    place_at,
    replace_and_truncate,
)
from .oracle import FinitePreferenceRelation, MissingComparison, PreferenceOracle, RelationOracle, as_oracle
from .report import AxiomResult, Comparison, Verdict, Witness
from .testbed import Testbed

I = Ordering.INDIFFERENT


class _Query:
    """Oracle wrapper that turns missing tabulated verdicts into ``None``."""

    def __init__(self, oracle: PreferenceOracle):
        self.oracle = oracle

    def __call__(self, x: Stream, y: Stream) -> Ordering | None:
        try:
            return self.oracle.compare(x, y)
        except MissingComparison:
            return None

    def cmp(self, x: Stream, y: Stream) -> Comparison:
        return Comparison(x, y, self(x, y))


@dataclass
class _World:
    """Stream constructors for one horizon."""

    tb: Testbed
    infinite: bool

    @property
    def length(self) -> int:
        return self.tb.n

    def const(self, a: Lottery) -> Stream:
        return ConstantStream(a) if self.infinite else FiniteStream((a,) * self.tb.n)

    def make(self, periods: Sequence[Lottery], tail: Lottery | None = None) -> Stream:
        if not self.infinite:
            return FiniteStream(tuple(periods))
        tail = self.tb.anchor if tail is None else tail
        s = InfiniteStream(tuple(periods), tail)
        return UltimatelyConstantStream(s.prefix, tail) if s.prefix else ConstantStream(tail)

    def context(self, rng, length: int | None = None) -> list[Lottery]:
        return self.tb.random_lotteries(rng, length or self.length)

    def pool(self, salt: str) -> list[Stream]:
        return self.tb.infinite_pool(salt) if self.infinite else self.tb.finite_pool(salt)


class InducedOrder:
    """The relation on lotteries induced by constant streams."""

    def __init__(self, q: _Query, world: _World):
        self.q = q
        self.world = world
        self._memo: dict[tuple, Ordering | None] = {}

    def __call__(self, a: Lottery, b: Lottery) -> Ordering | None:
        key = (a.key, b.key)
        if key not in self._memo:
            self._memo[key] = self.q(self.world.const(a), self.world.const(b))
        return self._memo[key]

    def comparison(self, a: Lottery, b: Lottery) -> Comparison:
        return Comparison(self.world.const(a), self.world.const(b), self(a, b))

    def extremes(self, lotteries: Sequence[Lottery]) -> tuple[Lottery, Lottery]:
        best = worst = lotteries[0]
        for l in lotteries[1:]:
            if (self(l, best) or 0) > 0:
                best = l
            if (self(l, worst) or 0) < 0:
                worst = l
        return best, worst


def _evidence(check):
    """Let a checker accept a representation, relation or callback as well as an oracle."""

    @functools.wraps(check)
    def wrapper(evidence, tb: Testbed, *args, **kwargs):
        return check(as_oracle(evidence, tb.eps), tb, *args, **kwargs)

    return wrapper


def _result(axiom, failure, cases, note="", details=None) -> AxiomResult:
    if failure is not None:
        comps, extra = failure
        return AxiomResult(axiom, Verdict.FAIL, cases, Witness(tuple(comps), extra), note, details or {})
    verdict = Verdict.PASS if cases > 0 else Verdict.NOT_APPLICABLE
    return AxiomResult(axiom, verdict, cases, None, note, details or {})


def _replace(periods: Sequence[Lottery], changes: dict[int, Lottery]) -> list[Lottery]:
    out = list(periods)
    for t, a in changes.items():
        out[t - 1] = a
    return out


def _relation_of(oracle: PreferenceOracle) -> FinitePreferenceRelation | None:
    return oracle.relation if isinstance(oracle, RelationOracle) else None


# --- F1 / I1 ----------------------------------------------------------------


@_evidence
def check_weak_order(oracle: PreferenceOracle, tb: Testbed, infinite: bool = False) -> AxiomResult:
    """Completeness and transitivity over every triple of a stream pool."""
    axiom = "I1" if infinite else "F1"
    rel = _relation_of(oracle)
    if rel is not None:
        streams = list(rel.streams)
        m = [list(row) for row in rel.verdicts]
    else:
        q = _Query(oracle)
        streams = _World(tb, infinite).pool("weak_order")
        m = [[q(x, y) for y in streams] for x in streams]
    k = len(streams)
    for i in range(k):
        for j in range(k):
            v, w = m[i][j], m[j][i]
            if v is None:
                return _result(axiom, ([Comparison(streams[i], streams[j], None)], {"failure": "completeness"}), 0)
            if i == j and v != I:
                return _result(axiom, ([Comparison(streams[i], streams[i], v)], {"failure": "reflexivity"}), 0)
            if w is not None and v != w.flip():
                comps = [Comparison(streams[i], streams[j], v), Comparison(streams[j], streams[i], w)]
                return _result(axiom, (comps, {"failure": "asymmetry"}), 0)
    cases = 0
    for i, j, l in itertools.product(range(k), repeat=3):
        cases += 1
        if m[i][j] >= 0 and m[j][l] >= 0 and m[i][l] < 0:
            comps = [
                Comparison(streams[i], streams[j], m[i][j]),
                Comparison(streams[j], streams[l], m[j][l]),
                Comparison(streams[i], streams[l], m[i][l]),
            ]
            return _result(axiom, (comps, {"failure": "transitivity"}), cases)
    return _result(axiom, None, cases)


# --- F2 / I2 and essentiality -----------------------------------------------


@_evidence
def check_nontriviality(oracle: PreferenceOracle, tb: Testbed, infinite: bool = False) -> AxiomResult:
    """F2: some constant stream is strictly better than another.
    I2: the anchor lies strictly between two lotteries."""
    q = _Query(oracle)
    world = _World(tb, infinite)
    order = InducedOrder(q, world)
    L = tb.lotteries
    if not infinite:
        for a, b in itertools.product(L, repeat=2):
            if order(a, b) == Ordering.PREFER_X:
                return _result("F2", None, 1, details={"a": a, "b": b})
        comps = [order.comparison(a, L[0]) for a in L]
        return _result("F2", (comps, {"failure": "every constant stream is indifferent"}), len(L) ** 2)
    x0 = tb.anchor
    above = [a for a in L if order(a, x0) == Ordering.PREFER_X]
    below = [b for b in L if order(b, x0) == Ordering.PREFER_Y]
    if above and below:
        return _result("I2", None, len(L), details={"a": above[0], "b": below[0]})
    side = "above" if not above else "below"
    comps = [order.comparison(a, x0) for a in L]
    return _result("I2", (comps, {"failure": f"no lottery strictly {side} the anchor"}), len(L))


@_evidence
def check_essentiality(
    oracle: PreferenceOracle, tb: Testbed, periods: Sequence[int] = (1,), infinite: bool = False
) -> AxiomResult:
    """F2'/F2'' (finite) and I2'/I2'' (infinite) for the given periods."""
    periods = tuple(periods)
    if infinite:
        return _essentiality_infinite(oracle, tb, periods)
    axiom = "F2'" if periods == (1,) else "F2''"
    if max(periods) > tb.n:
        return AxiomResult(axiom, Verdict.NOT_APPLICABLE, 0, note=f"needs n >= {max(periods)}")
    q = _Query(oracle)
    world = _World(tb, False)
    order = InducedOrder(q, world)
    rng = tb.rng("essentiality")
    contexts = [[a] * tb.n for a in tb.degenerate] + [world.context(rng) for _ in range(tb.n_contexts)]
    D = tb.degenerate
    pairs = [(a, b) for a, b in itertools.product(D, repeat=2) if order(a, b) == Ordering.PREFER_X]
    details = _weight_details(oracle, max(periods))
    cases = 0
    first_attempt = None
    for a, b in pairs:
        for ctx in contexts:
            cases += 1
            comps = [q.cmp(world.make(_replace(ctx, {t: a})), world.make(_replace(ctx, {t: b}))) for t in periods]
            if all(c.verdict == Ordering.PREFER_X for c in comps):
                return _result(axiom, None, cases, details={**details, "a": a, "b": b, "periods": list(periods)})
            first_attempt = first_attempt or comps
    if first_attempt is None:
        comps = [order.comparison(a, D[0]) for a in D]
        return _result(axiom, (comps, {"failure": "no strictly ranked prize pair"}), cases, details=details)
    bad = [t for t, c in zip(periods, first_attempt) if c.verdict != Ordering.PREFER_X]
    return _result(
        axiom,
        (first_attempt, {"failure": "inessential period", "periods": bad, "searched": cases}),
        cases,
        details=details,
    )


def _essentiality_infinite(oracle, tb, periods):
    axiom = "I2'" if periods == (1,) else "I2''"
    q = _Query(oracle)
    x0 = ConstantStream(tb.anchor)
    details = _weight_details(oracle, max(periods))
    cases = 0
    found = {}
    attempts = {}
    for side, want in (("a", Ordering.PREFER_X), ("b", Ordering.PREFER_Y)):
        for c in tb.lotteries:
            cases += 1
            comps = [q.cmp(place_at(c, t, tb.anchor), x0) for t in periods]
            if all(cm.verdict == want for cm in comps):
                found[side] = c
                break
            best = attempts.get(side)
            score = sum(cm.verdict == want for cm in comps)
            if best is None or score > best[0]:
                attempts[side] = (score, comps)
    if len(found) == 2:
        return _result(axiom, None, cases, details={**details, **found, "periods": list(periods)})
    side = "a" if "a" not in found else "b"
    comps = attempts[side][1]
    bad = [t for t, c in zip(periods, comps) if c.verdict != (Ordering.PREFER_X if side == "a" else Ordering.PREFER_Y)]
    return _result(axiom, (comps, {"failure": f"no lottery '{side}' works for every period", "periods": bad}), cases, details=details)


def _weight_details(oracle: PreferenceOracle, m: int) -> dict:
    rep = oracle.representation
    if rep is None:
        return {}
    return {"weights": [float(w) for w in rep.as_additive().weight_vector(m)]}


# --- F3 / I3 ----------------------------------------------------------------


@_evidence
def check_mixture_independence(oracle: PreferenceOracle, tb: Testbed, infinite: bool = False) -> AxiomResult:
    """``x >= y`` iff ``x lam z >= y lam z`` for sampled triples and interior grid weights."""
    axiom = "I3" if infinite else "F3"
    q = _Query(oracle)
    pool = _World(tb, infinite).pool("independence")
    rng = tb.rng("independence")
    cases = 0
    for _ in range(tb.n_cases):
        i, j, k = (int(v) for v in rng.integers(0, len(pool), size=3))
        x, y, z = pool[i], pool[j], pool[k]
        v = q(x, y)
        if v is None:
            continue
        for lam in tb.interior_grid:
            xm, ym = mix_streams(x, lam, z), mix_streams(y, lam, z)
            w = q(xm, ym)
            if w is None:
                continue
            cases += 1
            if v != w:
                comps = [Comparison(x, y, v), Comparison(xm, ym, w)]
                return _result(axiom, (comps, {"lambda": lam}), cases)
    return _result(axiom, None, cases)


# --- F4 / I4 ----------------------------------------------------------------


@_evidence
def check_mixture_continuity(oracle: PreferenceOracle, tb: Testbed, infinite: bool = False) -> AxiomResult:
    """Scan ``alpha -> verdict(x alpha z, y)`` on the grid and bisect each switch.

    A switch must pass through an indifference point: if the bracket shrinks
    to adjacent floats with strict verdicts on both sides, the upper or
    lower contour set is not closed there.
    """
    axiom = "I4" if infinite else "F4"
    note = "y restricted to eventually constant streams" if infinite else ""
    if _relation_of(oracle) is not None:
        return AxiomResult(axiom, Verdict.NOT_APPLICABLE, 0, note="tabulated evidence cannot be bisected")
    q = _Query(oracle)
    pool = _World(tb, infinite).pool("continuity")
    rng = tb.rng("continuity")
    cases = 0
    for _ in range(tb.n_cases):
        i, j, k = (int(v) for v in rng.integers(0, len(pool), size=3))
        x, y, z = pool[i], pool[j], pool[k]

        def verdict(alpha: float) -> int:
            return int(q(mix_streams(x, alpha, z), y))

        signs = [verdict(g) for g in tb.grid]
        cases += 1
        strict = [(g, s) for g, s in zip(tb.grid, signs) if s != 0]
        flips = [(a, b) for a, b in zip(strict, strict[1:]) if a[1] != b[1]]
        if len(flips) > 1:
            pts = sorted({flips[0][0][0], flips[0][1][0], flips[1][1][0]})
            comps = [q.cmp(mix_streams(x, g, z), y) for g in pts]
            return _result(axiom, (comps, {"failure": "more than one switch", "alphas": pts}), cases, note)
        for (g0, s0), (g1, s1) in zip(zip(tb.grid, signs), zip(tb.grid[1:], signs[1:])):
            if s0 != 0 and s1 != 0 and s0 != s1:
                a, b, m, _ = locate_switch(verdict, g0, g1, s0)
                if m is None:
                    comps = [q.cmp(mix_streams(x, a, z), y), q.cmp(mix_streams(x, b, z), y)]
                    return _result(axiom, (comps, {"failure": "no indifference at the switch", "alphas": [a, b]}), cases, note)
    return _result(axiom, None, cases, note)


# --- F5 / I5 ----------------------------------------------------------------


@_evidence
def check_monotonicity(oracle: PreferenceOracle, tb: Testbed, infinite: bool = False) -> AxiomResult:
    """Period-wise weak dominance (in the induced order) implies weak preference."""
    axiom = "I5" if infinite else "F5"
    q = _Query(oracle)
    world = _World(tb, infinite)
    order = InducedOrder(q, world)
    rng = tb.rng("monotonicity")
    L = tb.lotteries
    hi, lo = order.extremes(tb.degenerate)
    cases = 0

    def verify(xs: list[Lottery], ys: list[Lottery], require_indifference: bool):
        nonlocal cases
        x, y = world.make(xs), world.make(ys)
        v = q(x, y)
        if v is None:
            return None
        cases += 1
        bad = v != I if require_indifference else v < 0
        if bad:
            comps = [Comparison(x, y, v)] + [order.comparison(a, b) for a, b in zip(xs, ys) if a is not b]
            return comps, {"failure": "dominated stream preferred" if v < 0 else "equivalent streams ranked strictly"}
        return None

    for t in range(1, world.length + 1):
        for c in range(tb.n_contexts + 1):
            ctx = world.context(rng)
            if c == 0:
                a, b = hi, lo
            else:
                a, b = (L[int(i)] for i in rng.integers(0, len(L), size=2))
                if (order(a, b) or 0) < 0:
                    a, b = b, a
            f = verify(_replace(ctx, {t: a}), _replace(ctx, {t: b}), order(a, b) == I)
            if f:
                return _result(axiom, f, cases)
    for _ in range(tb.n_cases):
        xs = world.context(rng)
        ys = []
        for a in xs:
            if rng.random() < 0.5:
                ys.append(a)
                continue
            below = [b for b in L if (order(a, b) or 0) >= 0]
            ys.append(below[int(rng.integers(0, len(below)))] if below else a)
        same = all(order(a, b) == I for a, b in zip(xs, ys))
        f = verify(xs, ys, same)
        if f:
            return _result(axiom, f, cases)
    return _result(axiom, None, cases)


# --- F6 / F6' ---------------------------------------------------------------


@_evidence
def check_impatience(oracle: PreferenceOracle, tb: Testbed, at: tuple[int, int] = (1, 2)) -> AxiomResult:
    """For ``a > b``: ``(.., a, b, ..) > (.., b, a, ..)`` at the given adjacent periods."""
    t, s = at
    axiom = "F6" if at == (1, 2) else "F6'"
    if s > tb.n:
        return AxiomResult(axiom, Verdict.NOT_APPLICABLE, 0, note=f"needs n >= {s}")
    q = _Query(oracle)
    world = _World(tb, False)
    order = InducedOrder(q, world)
    rng = tb.rng("impatience")
    L = tb.lotteries
    hi, lo = order.extremes(tb.degenerate)
    pairs = [(hi, lo)] + [tuple(L[int(i)] for i in rng.integers(0, len(L), size=2)) for _ in range(tb.n_cases)]
    cases = 0
    for a, b in pairs:
        if order(a, b) == Ordering.PREFER_Y:
            a, b = b, a
        if order(a, b) != Ordering.PREFER_X:
            continue
        for _ in range(tb.n_contexts):
            ctx = world.context(rng)
            x, y = world.make(_replace(ctx, {t: a, s: b})), world.make(_replace(ctx, {t: b, s: a}))
            v = q(x, y)
            if v is None:
                continue
            cases += 1
            if v != Ordering.PREFER_X:
                comps = [Comparison(x, y, v), order.comparison(a, b)]
                return _result(axiom, (comps, {"periods": [t, s], "a": a, "b": b}), cases)
    return _result(axiom, None, cases, details={"periods": [t, s]})


# --- constructive indifference ------------------------------------------------


def _solve(q: _Query, build: Callable[[float], tuple[Stream, Stream]], tol: float) -> float | None:
    """Mixture weight at which the pair ``build(lam)`` is indifferent.

    Value-exposing oracles are solved linearly and confirmed with one query;
    black boxes are bisected to the centre of the indifference band.
    """
    oracle = q.oracle
    if oracle.has_values:
        def f(lam):
            x, y = build(lam)
            return oracle.value(x) - oracle.value(y)

        lam = linear_root(f(0.0), f(1.0))
        if lam is not None and q(*build(lam)) == I:
            return lam

    def verdict(lam: float) -> int:
        v = q(*build(lam))
        return 2 if v is None else int(v)

    v0, v1 = verdict(0.0), verdict(1.0)
    if 2 in (v0, v1):
        return None
    band = find_indifference(verdict, 0.0, 1.0, tol, v0, v1)
    return None if band is None else band.centre


def _extremes(q: _Query, world: _World) -> tuple[Lottery, Lottery] | None:
    order = InducedOrder(q, world)
    hi, lo = order.extremes(world.tb.degenerate)
    if order(hi, lo) != Ordering.PREFER_X:
        return None
    return hi, lo


# --- F7 / F7' / I7 / I7' ---------------------------------------------------------


@_evidence
def check_stationarity(oracle: PreferenceOracle, tb: Testbed, infinite: bool = False) -> AxiomResult:
    return check_stationarity_from_T(oracle, tb, 1, infinite)


@_evidence
def check_stationarity_from_T(oracle: PreferenceOracle, tb: Testbed, T: int, infinite: bool = False) -> AxiomResult:
    """Common prefix ``x_1..x_{T-1}``, pivot ``a`` at ``T``: the ranking of two
    continuations must survive removing the pivot (and, in the finite case,
    appending it at the end)."""
    base = "I7" if infinite else "F7"
    axiom = base if T == 1 else base + "'"
    if not infinite and tb.n < T + 1:
        return AxiomResult(axiom, Verdict.NOT_APPLICABLE, 0, note=f"needs n >= {T + 1}")
    q = _Query(oracle)
    world = _World(tb, infinite)
    rng = tb.rng(f"stationarity{T}")
    L = tb.lotteries
    body_len = tb.n - T if not infinite else tb.n

    def pair(prefix, a, bx, by, tails=(None, None)):
        left = (world.make(prefix + [a] + bx, tails[0]), world.make(prefix + [a] + by, tails[1]))
        if infinite:
            right = (world.make(prefix + bx, tails[0]), world.make(prefix + by, tails[1]))
        else:
            right = (world.make(prefix + bx + [a]), world.make(prefix + by + [a]))
        return left, right

    cases = 0
    for _ in range(tb.n_cases):
        prefix = world.context(rng, T - 1) if T > 1 else []
        a = L[int(rng.integers(0, len(L)))]
        bx, by = world.context(rng, body_len), world.context(rng, body_len)
        tails = (None, None)
        if infinite and rng.random() < 0.25:
            tails = tuple(L[int(i)] for i in rng.integers(0, len(L), size=2))
        (l1, l2), (r1, r2) = pair(prefix, a, bx, by, tails)
        vl, vr = q(l1, l2), q(r1, r2)
        if vl is None or vr is None:
            continue
        cases += 1
        if vl != vr:
            return _result(axiom, ([Comparison(l1, l2, vl), Comparison(r1, r2, vr)], {"pivot": a, "construction": "sampled"}), cases)

    ext = _extremes(q, world)
    if ext is not None and body_len >= 2:
        hi, lo = ext
        for i in range(1, body_len):
            for _ in range(tb.n_contexts):
                prefix = world.context(rng, T - 1) if T > 1 else []
                a = L[int(rng.integers(0, len(L)))]
                ctx = world.context(rng, body_len)

                def build_a(lam, prefix=prefix, a=a, ctx=ctx, i=i):
                    bx = _replace(ctx, {i: mix(hi, lam, lo), i + 1: lo})
                    by = _replace(ctx, {i: lo, i + 1: hi})
                    return pair(prefix, a, bx, by)

                def build_b(lam, prefix=prefix, a=a, ctx=ctx, i=i):
                    bx = _replace(ctx, {i: hi, i + 1: lo})
                    by = _replace(ctx, {i: lo, i + 1: mix(hi, lam, lo)})
                    return pair(prefix, a, bx, by)

                for family, build in (("A", build_a), ("B", build_b)):
                    lam = _solve(q, lambda l: build(l)[0], tb.bisect_tol)
                    if lam is not None:
                        break
                if lam is None:
                    continue
                (l1, l2), (r1, r2) = build(lam)
                vl, vr = q(l1, l2), q(r1, r2)
                cases += 1
                if vl != vr:
                    details = {"pivot": a, "lambda": lam, "family": family, "construction": "indifference",
                               "periods": [T + i, T + i + 1]}
                    return _result(axiom, ([Comparison(l1, l2, vl), Comparison(r1, r2, vr)], details), cases)
    return _result(axiom, None, cases)


# --- F8 / I8 ----------------------------------------------------------------


@_evidence
def check_early_bias(oracle: PreferenceOracle, tb: Testbed, T: int, infinite: bool = False) -> AxiomResult:
    """For ``t = 2..T``: an indifference at periods ``(t, t+1)`` between
    ``(a, b)`` and ``(c, d)`` with ``a > c`` and ``b < d`` must turn into a weak
    preference once the pair is advanced to ``(t-1, t)``.

    The finite conclusion moves ``x_{t-1}`` to the last period; the infinite
    one drops it.
    """
    axiom = "I8" if infinite else "F8"
    if T < 2:
        return AxiomResult(axiom, Verdict.PASS, 0, note="vacuous: no period t with 2 <= t <= T")
    if not infinite and tb.n < T + 1:
        return AxiomResult(axiom, Verdict.NOT_APPLICABLE, 0, note=f"needs n >= {T + 1}")
    q = _Query(oracle)
    world = _World(tb, infinite)
    order = InducedOrder(q, world)
    ext = _extremes(q, world)
    if ext is None:
        return AxiomResult(axiom, Verdict.PASS, 0, note="vacuous: no strictly ranked prizes")
    hi, lo = ext
    rng = tb.rng("early_bias")
    length = max(tb.n, T + 1)
    cases = 0

    def conclusion(ctx, t, first, second):
        if infinite:
            return world.make(ctx[: t - 2] + [first, second] + ctx[t + 1 :])
        return world.make(ctx[: t - 2] + [first, second] + ctx[t + 1 :] + [ctx[t - 2]])

    for t in range(2, T + 1):
        for _ in range(tb.n_contexts):
            ctx = world.context(rng, length)

            def quad(lam, family):
                e = mix(hi, lam, lo)
                return (e, lo, lo, hi) if family == "A" else (hi, lo, lo, e)

            def premise(lam, family, ctx=ctx, t=t):
                a, b, c, d = quad(lam, family)
                return world.make(_replace(ctx, {t: a, t + 1: b})), world.make(_replace(ctx, {t: c, t + 1: d}))

            lam = None
            for family in ("A", "B"):
                lam = _solve(q, lambda l: premise(l, family), tb.bisect_tol)
                if lam is not None:
                    break
            if lam is None:
                continue
            a, b, c, d = quad(lam, family)
            if order(a, c) != Ordering.PREFER_X or order(b, d) != Ordering.PREFER_Y:
                continue
            p1, p2 = premise(lam, family)
            c1, c2 = conclusion(ctx, t, a, b), conclusion(ctx, t, c, d)
            vp, vc = q(p1, p2), q(c1, c2)
            if vp != I or vc is None:
                continue
            cases += 1
            if vc < 0:
                comps = [Comparison(p1, p2, vp), Comparison(c1, c2, vc), order.comparison(a, c), order.comparison(b, d)]
                details = {"t": t, "lambda": lam, "family": family, "a": a, "b": b, "c": c, "d": d}
                return _result(axiom, (comps, details), cases)
    return _result(axiom, None, cases, note="premise built by constructed indifference")


# --- I6 ---------------------------------------------------------------------


@_evidence
def check_convergence(oracle: PreferenceOracle, tb: Testbed) -> AxiomResult:
    """Improving (worsening) one period of ``x`` and truncating after ``T``
    must eventually yield a weakly better (worse) stream, for every ``T`` from
    some threshold up to the horizon cap."""
    q = _Query(oracle)
    world = _World(tb, True)
    x0 = tb.anchor
    H = tb.horizon_cap
    ext = _extremes(q, world)
    if ext is None:
        return AxiomResult("I6", Verdict.PASS, 0, note="vacuous: no strictly ranked prizes")
    hi, lo = ext
    rng = tb.rng("convergence")
    streams: list[InfiniteStream] = [ConstantStream(mix(hi, 0.5, x0)), ConstantStream(mix(lo, 0.5, x0))]
    streams.append(tb.random_infinite(rng))
    thresholds = []
    cases = 0
    for x in streams:
        for k in range(1, tb.convergence_periods + 1):
            xk = x.period(k)
            base = place_at(xk, k, x0)
            for sign, cand in ((1, hi), (-1, lo)):
                if q(place_at(cand, k, x0), base) != (Ordering.PREFER_X if sign > 0 else Ordering.PREFER_Y):
                    continue
                cases += 1
                last_bad = None
                for Tt in range(H, k - 1, -1):
                    xt = replace_and_truncate(x, k, cand, Tt, anchor=x0)
                    v = q(x, xt)
                    if v is None:
                        continue
                    if (sign > 0 and v > 0) or (sign < 0 and v < 0):
                        last_bad = Tt
                        break
                if last_bad == H:
                    xt = replace_and_truncate(x, k, cand, H, anchor=x0)
                    comps = [Comparison(x, xt, q(x, xt)), Comparison(place_at(cand, k, x0), base, q(place_at(cand, k, x0), base))]
                    details = {"k": k, "horizon": H, "direction": "+" if sign > 0 else "-", "replacement": cand}
                    return AxiomResult("I6", Verdict.FAIL_AT_HORIZON, cases, Witness(tuple(comps), details),
                                       note=f"no threshold found up to horizon {H}")
                thresholds.append(k if last_bad is None else last_bad + 1)
    details = {"max_threshold": max(thresholds) if thresholds else None, "horizon": H}
    return _result("I6", None, cases, note=f"certified up to horizon {H}", details=details)
