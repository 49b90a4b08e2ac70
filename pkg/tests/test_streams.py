from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from discount_axioms import (
    ConstantStream,
    FiniteStream,
    UltimatelyConstantStream,
    mix,
    mix_streams,
    replace_and_truncate,
    swap,
)
from discount_axioms.errors import ArgumentError, DomainError
from discount_axioms.streams import place_at, place_pair, rotate_for_stationarity

from strategies import lotteries, unit

finite_streams = st.integers(1, 5).flatmap(lambda n: st.lists(lotteries(), min_size=n, max_size=n)).map(
    lambda ls: FiniteStream(tuple(ls))
)


class TestFiniteStream:
    def test_period_indexing(self, deg):
        x = FiniteStream((deg["hi"], deg["lo"]))
        assert x.period(1) == deg["hi"] and x.period(2) == deg["lo"]
        with pytest.raises(ArgumentError):
            x.period(3)

    def test_empty(self):
        with pytest.raises(ArgumentError):
            FiniteStream(())


class TestInfiniteStream:
    def test_trailing_anchor_stripped(self, deg, x0):
        a = UltimatelyConstantStream((deg["hi"], x0, x0), x0)
        b = UltimatelyConstantStream((deg["hi"],), x0)
        assert a == b and a.prefix_length == 1

    def test_period_past_prefix(self, deg, x0):
        x = UltimatelyConstantStream((deg["hi"],), x0)
        assert x.period(50) == x0

    def test_shift(self, deg, x0):
        x = UltimatelyConstantStream((deg["hi"], deg["lo"]), x0)
        assert x.shift(1) == UltimatelyConstantStream((deg["lo"],), x0)
        assert isinstance(x.shift(2), ConstantStream)


class TestMixStreams:
    def test_one(self, deg):
        x = FiniteStream((deg["hi"], deg["lo"]))
        y = FiniteStream((deg["lo"], deg["mid"]))
        assert mix_streams(x, 1.0, y) == x

    def test_componentwise(self, deg):
        x = FiniteStream((deg["hi"], deg["lo"]))
        y = FiniteStream((deg["lo"], deg["mid"]))
        m = mix_streams(x, 0.5, y)
        assert m.periods == (mix(deg["hi"], 0.5, deg["lo"]), mix(deg["lo"], 0.5, deg["mid"]))

    def test_prefix_padding(self, deg, x0):
        x = UltimatelyConstantStream((deg["hi"], deg["lo"]), x0)
        y = UltimatelyConstantStream((deg["lo"], deg["lo"], deg["hi"], deg["hi"]), x0)
        m = mix_streams(x, 0.3, y)
        assert m.prefix_length == 4
        for t in range(1, 8):
            assert m.period(t) == mix(x.period(t), 0.3, y.period(t))

    def test_constant_with_ultimately_constant(self, deg, x0):
        a = deg["hi"]
        m = mix_streams(UltimatelyConstantStream((deg["lo"],), x0), 0.4, ConstantStream(a))
        assert m.tail == mix(x0, 0.4, a)
        assert m.period(1) == mix(deg["lo"], 0.4, a)

    def test_length_mismatch(self, deg):
        with pytest.raises(DomainError):
            mix_streams(FiniteStream((deg["hi"],)), 0.5, FiniteStream((deg["hi"], deg["lo"])))

    def test_finite_with_infinite(self, deg):
        with pytest.raises(DomainError):
            mix_streams(FiniteStream((deg["hi"],)), 0.5, ConstantStream(deg["hi"]))

    @given(finite_streams, unit, unit)
    def test_mixture_axiom_three(self, x, lam, mu):
        y = FiniteStream(tuple(reversed(x.periods)))
        lhs = mix_streams(mix_streams(x, mu, y), lam, y)
        rhs = mix_streams(x, lam * mu, y)
        for a, b in zip(lhs.periods, rhs.periods):
            assert max(abs(p - q) for p, q in zip(a.probs, b.probs)) <= 1e-12


class TestPlacement:
    def test_place_anchor_is_constant(self, x0):
        assert place_at(x0, 3, x0) == ConstantStream(x0)

    def test_place_first(self, deg, x0):
        assert place_at(deg["hi"], 1, x0).prefix == (deg["hi"],)

    @given(st.integers(1, 8))
    def test_place_equals_replace_and_truncate(self, k):
        from strategies import PRIZES
        from discount_axioms import Lottery

        x0 = Lottery.degenerate(PRIZES, "mid")
        a = Lottery.degenerate(PRIZES, "hi")
        assert place_at(a, k, x0) == replace_and_truncate(ConstantStream(x0), k, a, k)

    def test_pair(self, deg, x0):
        s = place_pair(deg["hi"], 3, deg["lo"], 1, x0)
        assert s.head(4) == (deg["lo"], x0, deg["hi"], x0)


class TestReplaceAndTruncate:
    def test_constant_anchor(self, deg, x0):
        assert replace_and_truncate(ConstantStream(x0), 1, deg["hi"], 1) == place_at(deg["hi"], 1, x0)

    def test_gap_filled_with_anchor(self, deg, x0):
        x = UltimatelyConstantStream((deg["lo"],), x0)
        y = replace_and_truncate(x, 1, deg["hi"], 4)
        assert y == UltimatelyConstantStream((deg["hi"],), x0)

    def test_truncation_of_constant_stream(self, deg, x0):
        y = replace_and_truncate(ConstantStream(deg["lo"]), 2, deg["hi"], 3, x0)
        assert y.head(5) == (deg["lo"], deg["hi"], deg["lo"], x0, x0)

    def test_k_beyond_T(self, deg, x0):
        with pytest.raises(ArgumentError):
            replace_and_truncate(ConstantStream(x0), 3, deg["hi"], 2)


class TestSwapRotate:
    def test_swap_identity(self, deg):
        x = FiniteStream((deg["hi"], deg["lo"]))
        assert swap(x, 1, 1) == x and swap(swap(x, 1, 2), 1, 2) == x

    def test_swap_degenerate(self, deg):
        assert swap(FiniteStream((deg["hi"], deg["lo"])), 1, 2) == FiniteStream((deg["lo"], deg["hi"]))

    def test_swap_range(self, deg):
        with pytest.raises(ArgumentError):
            swap(FiniteStream((deg["hi"],)), 1, 2)

    def test_rotate(self, deg):
        a, b, c = deg["hi"], deg["mid"], deg["lo"]
        assert rotate_for_stationarity(FiniteStream((a, b))) == FiniteStream((b, a))
        assert rotate_for_stationarity(FiniteStream((a, b, c))) == FiniteStream((b, c, a))
        x = FiniteStream((a, b))
        assert rotate_for_stationarity(rotate_for_stationarity(x)) == x

    def test_rotate_short(self, deg):
        with pytest.raises(ArgumentError):
            rotate_for_stationarity(FiniteStream((deg["hi"],)))

    @given(finite_streams, st.data())
    def test_measure_preserving(self, x, data):
        i = data.draw(st.integers(1, len(x)))
        j = data.draw(st.integers(1, len(x)))
        before = Counter(l.key for l in x.periods)
        assert Counter(l.key for l in swap(x, i, j).periods) == before
        if len(x) >= 2:
            assert Counter(l.key for l in rotate_for_stationarity(x).periods) == before
