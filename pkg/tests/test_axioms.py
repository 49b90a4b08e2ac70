import math

import pytest
from hypothesis import given, settings

from discount_axioms import (
    AARepresentation,
    AdditiveRepresentation,
    ConstantStream,
    DEURepresentation,
    FiniteStream,
    Lottery,
    Ordering,
    TailWeights,
    UtilityFunction,
    exponential,
    mix,
    prize_set,
    quasi_hyperbolic,
    semi_hyperbolic,
    tail_bound,
)
from discount_axioms.axioms import (
    FinitePreferenceRelation,
    PreferenceOracle,
    RepresentationOracle,
    Testbed as Bed,
    Verdict,
    audit,
    check_convergence,
    check_early_bias,
    check_essentiality,
    check_impatience,
    check_mixture_continuity,
    check_mixture_independence,
    check_monotonicity,
    check_nontriviality,
    check_stationarity,
    check_stationarity_from_T,
    check_weak_order,
    profile,
    run_axiom,
)
from discount_axioms.errors import ArgumentError
from discount_axioms.representation import ordering_of

from strategies import PRIZES, models

U = UtilityFunction.from_mapping({"hi": 1.0, "mid": 0.0, "lo": -0.8}, PRIZES)
X0 = Lottery.degenerate(PRIZES, "mid")
GRID = (0.25, 0.5, 0.75)


def bed(n=3, T=1, **kw):
    return Bed(PRIZES, X0, GRID, n=n, T=T, **kw)


def oracle(rep):
    return RepresentationOracle(rep)


def fin(weights):
    return oracle(AdditiveRepresentation(U, tuple(weights)))


def assert_replays(result, o):
    assert result.witness is not None
    assert result.witness.replay(o)


def u_oracle(fn, eps=1e-9):
    """Black-box oracle from a stream functional."""
    return PreferenceOracle(lambda x, y: ordering_of(fn(x), fn(y), eps))


class TestWeakOrder:
    def test_representation_passes(self):
        r = check_weak_order(oracle(DEURepresentation(U, exponential(0.9), 3)), bed())
        assert r.verdict is Verdict.PASS and r.cases_checked > 0

    def test_cycle(self, deg):
        x, y, z = (FiniteStream((deg[p],)) for p in ("hi", "mid", "lo"))
        P, I, N = Ordering.PREFER_X, Ordering.INDIFFERENT, Ordering.PREFER_Y
        rel = FinitePreferenceRelation((x, y, z), ((I, P, N), (N, I, P), (P, N, I)))
        r = check_weak_order(rel, bed(n=1))
        assert r.verdict is Verdict.FAIL and r.witness.details["failure"] == "transitivity"
        assert {s for c in r.witness.comparisons for s in (c.x, c.y)} == {x, y, z}

    def test_missing_comparison(self, deg):
        x, y = FiniteStream((deg["hi"],)), FiniteStream((deg["lo"],))
        I = Ordering.INDIFFERENT
        rel = FinitePreferenceRelation((x, y), ((I, None), (Ordering.PREFER_Y, I)))
        r = check_weak_order(rel, bed(n=1))
        assert r.verdict is Verdict.FAIL and r.witness.details["failure"] == "completeness"

    def test_relation_audit_skips_continuity(self):
        rep = DEURepresentation(U, exponential(0.9), 3)
        tb = bed()
        rel = FinitePreferenceRelation.from_oracle(tb.finite_pool("x"), oracle(rep))
        report = audit(rel, tb, "finite-aa")
        assert report["F4"].verdict is Verdict.NOT_APPLICABLE


class TestNontriviality:
    def test_constant_utility(self):
        r = check_nontriviality(u_oracle(lambda x: 0.0), bed())
        assert r.verdict is Verdict.FAIL

    def test_interior_anchor(self):
        p = prize_set(["a", "z", "b"])
        u = UtilityFunction.from_mapping({"a": 1, "z": 0.5, "b": 0}, p)
        z = Lottery.degenerate(p, "z")
        r = check_nontriviality(oracle(DEURepresentation(u, exponential(0.9))), Bed(p, z, GRID), True)
        assert r.verdict is Verdict.PASS
        assert u.expected(r.details["a"]) > 0.5 > u.expected(r.details["b"])

    def test_anchor_at_best_prize(self, deg):
        tb = Bed(PRIZES, deg["hi"], GRID)
        o = oracle(DEURepresentation(U, exponential(0.9)))
        r = check_nontriviality(o, tb, True)
        assert r.verdict is Verdict.FAIL and "above" in r.witness.details["failure"]
        assert_replays(r, o)

    def test_audit_refused_when_anchor_not_interior(self, deg):
        tb = Bed(PRIZES, deg["hi"], GRID)
        report = audit(DEURepresentation(U, exponential(0.9)), tb, "infinite-aa")
        assert report.refused and not report.ok
        assert all(r.verdict is Verdict.NOT_APPLICABLE for r in report.results if r.axiom != "I2")


class TestEssentiality:
    def test_zero_weight_period(self):
        o = fin((1.0, 0.0, 0.5))
        r = check_essentiality(o, bed(), (1, 2, 3))
        assert r.verdict is Verdict.FAIL and r.witness.details["periods"] == [2]
        assert_replays(r, o)

    @given(models(max_T=4))
    @settings(max_examples=15)
    def test_valid_models_essential(self, m):
        o = oracle(DEURepresentation(U, m, m.T + 1))
        assert check_essentiality(o, bed(n=m.T + 1), tuple(range(1, m.T + 1))).verdict is Verdict.PASS
        oi = oracle(DEURepresentation(U, m))
        assert check_essentiality(oi, bed(), tuple(range(1, m.T + 1)), True).verdict is Verdict.PASS

    def test_single_period(self):
        r = check_essentiality(fin((1.0,)), bed(n=1), (1,))
        assert r.verdict is Verdict.PASS


class TestIndependence:
    def test_linear_passes(self):
        assert check_mixture_independence(fin((1.0, 0.3, 0.2)), bed()).verdict is Verdict.PASS

    def test_min_oracle_fails(self):
        o = u_oracle(lambda x: min(U.expected(l) for l in x.periods))
        r = check_mixture_independence(o, bed(n=2))
        assert r.verdict is Verdict.FAIL and 0 < r.witness.details["lambda"] < 1
        assert_replays(r, o)


class TestContinuity:
    def test_linear_passes(self):
        assert check_mixture_continuity(fin((1.0, 0.5, 0.2)), bed()).verdict is Verdict.PASS

    def test_lexicographic_fails(self):
        def lex(x, y):
            for a, b in zip(x.periods, y.periods):
                o = ordering_of(U.expected(a), U.expected(b), 1e-12)
                if o:
                    return o
            return Ordering.INDIFFERENT

        o = PreferenceOracle(lex)
        r = check_mixture_continuity(o, bed(n=2))
        assert r.verdict is Verdict.FAIL
        assert_replays(r, o)

    def test_all_indifferent(self):
        assert check_mixture_continuity(u_oracle(lambda x: 0.0), bed()).verdict is Verdict.PASS


class TestMonotonicity:
    def test_signed_weight(self):
        o = fin((1.0, -0.5))
        r = check_monotonicity(o, bed(n=2))
        assert r.verdict is Verdict.FAIL
        assert_replays(r, o)

    def test_nonnegative_weights(self):
        assert check_monotonicity(fin((1.0, 0.0, 2.0)), bed()).verdict is Verdict.PASS


class TestImpatience:
    def test_exponential(self):
        assert check_impatience(fin((1.0, 0.9, 0.81)), bed()).verdict is Verdict.PASS

    def test_increasing_weights(self):
        o = fin((1.0, 1.2))
        r = check_impatience(o, bed(n=2))
        assert r.verdict is Verdict.FAIL and r.witness.details["periods"] == [1, 2]
        assert_replays(r, o)

    def test_equal_prizes_skipped(self):
        r = check_impatience(u_oracle(lambda x: 0.0), bed(n=2))
        assert r.verdict is Verdict.NOT_APPLICABLE and r.cases_checked == 0


class TestStationarity:
    def test_exponential(self):
        o = oracle(DEURepresentation(U, exponential(0.9), 4))
        assert check_stationarity(o, bed(n=4)).verdict is Verdict.PASS

    def test_quasi_hyperbolic_fails(self):
        o = oracle(DEURepresentation(U, quasi_hyperbolic(0.5, 0.9), 3))
        r = check_stationarity(o, bed())
        assert r.verdict is Verdict.FAIL
        left, right = r.witness.comparisons
        assert left.verdict != right.verdict
        assert_replays(r, o)

    def test_one_period(self):
        assert check_stationarity(fin((1.0,)), bed(n=1)).verdict is Verdict.NOT_APPLICABLE

    def test_matching_T_passes(self):
        o = oracle(DEURepresentation(U, semi_hyperbolic([0.6, 0.8], 0.95), 5))
        assert check_stationarity_from_T(o, bed(n=5), 3).verdict is Verdict.PASS

    def test_sh3_checked_with_T2(self):
        o = oracle(DEURepresentation(U, semi_hyperbolic([0.6, 0.8], 0.95), 4))
        r = check_stationarity_from_T(o, bed(n=4), 2)
        assert r.verdict is Verdict.FAIL and r.axiom == "F7'"
        assert_replays(r, o)

    def test_T1_equals_plain(self):
        o = oracle(DEURepresentation(U, quasi_hyperbolic(0.5, 0.9), 3))
        assert check_stationarity_from_T(o, bed(), 1) == check_stationarity(o, bed())

    def test_infinite(self):
        good = oracle(DEURepresentation(U, exponential(0.8)))
        bad = oracle(DEURepresentation(U, quasi_hyperbolic(0.5, 0.9)))
        assert check_stationarity(good, bed(), True).verdict is Verdict.PASS
        r = check_stationarity(bad, bed(), True)
        assert r.verdict is Verdict.FAIL and r.axiom == "I7"
        assert_replays(r, bad)


class TestEarlyBias:
    def test_decreasing_ratio(self):
        o = fin((1.0, 0.9, 0.45, 0.405, 0.3645))
        r = check_early_bias(o, bed(n=5), 3)
        assert r.verdict is Verdict.FAIL and r.witness.details["t"] == 2
        assert_replays(r, o)

    @given(models(max_T=4))
    @settings(max_examples=15)
    def test_valid_models(self, m):
        o = oracle(DEURepresentation(U, m, m.T + 2))
        r = check_early_bias(o, bed(n=m.T + 2), m.T)
        assert r.verdict is Verdict.PASS

    def test_vacuous(self):
        r = check_early_bias(u_oracle(lambda x: 0.0), bed(n=4), 3)
        assert r.verdict is Verdict.PASS and r.cases_checked == 0


class TestConvergence:
    def test_geometric_threshold_within_tail_bound(self):
        rep = DEURepresentation(U, exponential(0.9))
        tb = bed(horizon_cap=200)
        r = check_convergence(oracle(rep), tb)
        assert r.verdict is Verdict.PASS
        # smallest utility gap any improvement can produce at k <= 2
        gap = rep.as_additive().weight(2) * min(
            abs(U.expected(a) - U.expected(b)) for a in tb.lotteries for b in tb.lotteries if a != b and U.expected(a) != U.expected(b)
        )
        bound = next(T for T in range(1, 1000) if tail_bound(rep, T) < gap)
        assert r.details["max_threshold"] <= bound

    def test_divergent_weights(self):
        rep = AdditiveRepresentation(U, TailWeights((1.0,), 1.0))
        o = oracle(rep)
        r = check_convergence(o, bed(horizon_cap=50))
        assert r.verdict is Verdict.FAIL_AT_HORIZON and r.verdict.failed
        assert_replays(r, o)


PASSING = [
    ("finite-sh2", DEURepresentation(U, quasi_hyperbolic(0.7, 0.9), 4), 4),
    ("finite-sh3", DEURepresentation(U, exponential(0.9), 5), 5),
    ("finite-exp", DEURepresentation(U, exponential(0.6), 3), 3),
    ("infinite-sh2", DEURepresentation(U, quasi_hyperbolic(0.7, 0.9)), 4),
    ("infinite-aa", AARepresentation(U, TailWeights((1.0, 2.0, 0.3), 0.8)), 3),
]


class TestAudit:
    @pytest.mark.parametrize("name,rep,n", PASSING)
    def test_all_pass(self, name, rep, n):
        report = audit(rep, bed(n=n), name)
        assert report.all_pass, report.summary()
        assert report.certified

    def test_quasi_hyperbolic_under_exponential_profile(self):
        o = oracle(DEURepresentation(U, quasi_hyperbolic(0.7, 0.9), 3))
        report = audit(o, bed(), "finite-exp")
        assert report.failed == ("F7",)
        assert_replays(report["F7"], o)

    def test_profile_axiom_sets(self):
        assert profile("finite-exp").axioms == ("F1", "F2'", "F3", "F4", "F5", "F6", "F7")
        assert profile("FINITE_SH(2)").axioms == ("F1", "F2''", "F3", "F4", "F5", "F6'", "F7'", "F8")
        assert profile("infinite-aa").axioms == ("I1", "I2", "I3", "I4", "I5", "I6")
        assert profile("aa-only").name == "finite-aa"
        assert profile("infinite-sh4").T == 4
        with pytest.raises(ArgumentError):
            profile("finite-sh0")
        with pytest.raises(ArgumentError):
            profile("bogus")

    def test_deterministic(self):
        rep = DEURepresentation(U, quasi_hyperbolic(0.5, 0.9), 4)
        a = audit(rep, bed(n=4, seed=7), "finite-sh3").to_dict()
        b = audit(rep, bed(n=4, seed=7), "finite-sh3").to_dict()
        assert a == b

    def test_run_axiom(self):
        r = run_axiom(DEURepresentation(U, exponential(0.9), 3), bed(), "F6", "finite-exp")
        assert r.verdict is Verdict.PASS

    @given(models(max_T=3))
    @settings(max_examples=8)
    def test_soundness(self, m):
        rep = DEURepresentation(U, m, m.T + 2)
        name = "finite-exp" if m.T == 1 else f"finite-sh{m.T}"
        assert audit(rep, bed(n=m.T + 2), name).all_pass


class TestBed:
    def test_grid_closed(self):
        assert bed().grid == (0.0, 0.25, 0.5, 0.75, 1.0)

    def test_cap_at_least_n(self):
        with pytest.raises(ArgumentError):
            bed(n=5, horizon_cap=3)

    def test_lotteries(self):
        assert len(bed().lotteries) == 3 + 3 * 3
        assert mix(Lottery.degenerate(PRIZES, "hi"), 0.5, X0) in bed().lotteries

    def test_query_count_monotone(self):
        o = oracle(DEURepresentation(U, exponential(0.9)))
        before = o.query_count
        check_convergence(o, bed(horizon_cap=20))
        assert o.query_count > before
        assert ConstantStream(X0) == ConstantStream(X0)
        assert not math.isnan(o.value(ConstantStream(X0)))
