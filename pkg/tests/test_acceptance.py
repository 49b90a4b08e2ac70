"""Acceptance criteria 1-8.

Each test records one ``PASS``/``FAIL`` line, printed at the end of the
session, and then asserts the criterion.
"""

import itertools
import time

import numpy as np

from conftest import ACCEPTANCE
from discount_axioms import (
    AARepresentation,
    DEURepresentation,
    DiscountModel,
    FiniteStream,
    Lottery,
    UltimatelyConstantStream,
    UniquenessTransform,
    UtilityFunction,
    apply_transform,
    classify,
    compare,
    evaluate,
    exponential,
    mix,
    mix_streams,
    normalize,
    partial_sums,
    prize_set,
    quasi_hyperbolic,
    semi_hyperbolic,
    tail_bound,
    total_weight,
)
from discount_axioms.axioms import RepresentationOracle, audit
from discount_axioms.discounting import from_hayashi, hayashi_factors
from discount_axioms.elicitation import ElicitationConfig, recover_full
from discount_axioms.fitlab import (
    FeasibilityProblem,
    GeneratorSpec,
    fit_weights,
    generate,
    pinning_streams,
    relation_from,
    standard_testbed,
)


def record(number, ok, summary):
    line = f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'}  {summary}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def models_close(a, b, tol):
    return (
        a.T == b.T
        and abs(a.delta - b.delta) <= tol
        and len(a.betas) == len(b.betas)
        and all(abs(x - y) <= tol for x, y in zip(a.betas, b.betas))
    )


def test_1_representation_implies_axioms():
    start = time.perf_counter()
    bad = []
    for seed in range(100):
        T = 1 + seed % 4
        infinite = (seed // 4) % 2 == 1
        g = generate(GeneratorSpec("NONE", T=T, seed=seed, infinite=infinite))
        report = audit(g.representation, g.testbed(horizon_cap=200), g.profile)
        if not report.all_pass:
            bad.append((seed, g.profile, report.failed))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    record(1, ok, f"100 models (50 finite, 50 infinite), {len(bad)} not all-PASS, {elapsed:.1f}s (limit 60s)")
    assert not bad, bad
    assert elapsed < 60


def test_2_violation_localization():
    start = time.perf_counter()
    bad = []
    for target in ("F5", "F6", "F7", "F7'", "F8", "I6"):
        for seed in range(100):
            g = generate(GeneratorSpec(target, seed=seed))
            o = RepresentationOracle(g.representation)
            report = audit(o, g.testbed(), g.profile)
            if report.failed != (target,):
                bad.append((target, seed, report.failed))
                continue
            for r in report.results:
                if r.verdict.failed and not r.witness.replay(o):
                    bad.append((target, seed, "witness does not replay"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    record(2, ok, f"6 targets x 100 seeds, {len(bad)} mislocalized or non-replaying, {elapsed:.1f}s (limit 120s)")
    assert not bad, bad[:5]
    assert elapsed < 120


def _random_utility(rng, k):
    prizes = prize_set([f"z{i}" for i in range(k)])
    vals = rng.uniform(-1.0, 1.0, size=k)
    vals[0] = 0.0
    return prizes, UtilityFunction.from_mapping(dict(zip(prizes, vals.tolist())), prizes)


def test_3_elicitation_round_trip():
    rng = np.random.default_rng(3)
    worst = {"delta_beta": 0.0, "u": 0.0}
    failures = []
    cases = 0
    for delta, betas, k in itertools.product((0.6, 0.8, 0.9, 0.95), ((), (0.7,), (0.6, 0.8)), (3, 4, 5)):
        prizes, u = _random_utility(rng, k)
        m = semi_hyperbolic(list(betas), delta)
        n = m.T + 2
        anchor = Lottery.degenerate(prizes, prizes[0])
        rep = DEURepresentation(u, m, n)
        res = recover_full(RepresentationOracle(rep), ElicitationConfig(prizes, anchor, n))
        cases += 1
        if not res.accepted:
            failures.append((delta, betas, k, "rejected"))
            continue
        got = res.model
        err = max([abs(got.delta - m.delta)] + [abs(a - b) for a, b in zip(got.betas, m.betas)]) if got.T == m.T else np.inf
        uerr = float(np.max(np.abs(np.array(normalize(res.representation(ElicitationConfig(prizes, anchor, n)), anchor).u.values)
                                   - np.array(normalize(rep, anchor).u.values))))
        worst["delta_beta"] = max(worst["delta_beta"], err)
        worst["u"] = max(worst["u"], uerr)
        d = res.diagnostics
        if err > 1e-6 or uerr > 1e-6 or d["verdict_agreement"] != 1.0 or d["queries"] > d["query_ceiling"]:
            failures.append((delta, betas, k, err, uerr, d["verdict_agreement"], d["queries"], d["query_ceiling"]))
    ok = not failures
    record(3, ok, f"{cases} hidden models, max param err {worst['delta_beta']:.2e}, max u err {worst['u']:.2e} (tol 1e-6)")
    assert ok, failures


def test_4_uniqueness():
    rng = np.random.default_rng(4)
    U = UtilityFunction.from_mapping({"hi": 1.0, "mid": 0.0, "lo": -0.8}, prize_set(["hi", "mid", "lo"]))
    flips = 0
    mismatched = []
    worst = 0.0
    for trial in range(20):
        T = 1 + trial % 3
        m = semi_hyperbolic(sorted(rng.uniform(0.5, 1.0, size=T - 1).tolist()), float(rng.uniform(0.5, 0.95)))
        n = T + 2
        rep = DEURepresentation(U, m, n)
        tr = UniquenessTransform(float(rng.uniform(0.1, 10)), float(rng.uniform(-5, 5)), float(rng.uniform(0.1, 10)))
        other = apply_transform(rep, tr)
        tb = standard_testbed(n, T, seed=trial)
        prng = tb.rng("uniqueness")
        for _ in range(500 // 20):
            x, y = tb.random_finite(prng), tb.random_finite(prng)
            flips += compare(rep, x, y) != compare(other, x, y)
        anchor = tb.anchor
        cfg = ElicitationConfig(tb.prizes, anchor, n, T, tol=1e-12, probes=0)
        a = recover_full(RepresentationOracle(rep), cfg)
        b = recover_full(RepresentationOracle(other), cfg)
        na, nb = normalize(a.representation(cfg), anchor), normalize(b.representation(cfg), anchor)
        diff = max(
            [abs(a.model.delta - b.model.delta)]
            + [abs(p - q) for p, q in zip(a.model.betas, b.model.betas)]
            + np.abs(np.array(na.u.values) - np.array(nb.u.values)).tolist()
        )
        worst = max(worst, diff)
        if a.model.T != b.model.T or diff > 1e-9:
            mismatched.append((trial, a.model, b.model, diff))
    ok = flips == 0 and not mismatched
    record(4, ok, f"20 transforms x 25 pairs = 500 pairs, {flips} verdict flips; elicited models agree to {worst:.1e} (tol 1e-9)")
    assert ok, mismatched


def test_5_convergence():
    rng = np.random.default_rng(5)
    prizes = prize_set(["hi", "mid", "lo"])
    U = UtilityFunction.from_mapping({"hi": 1.0, "mid": 0.0, "lo": -0.8}, prizes)
    x0 = Lottery.degenerate(prizes, "mid")
    violations = 0
    streams_checked = 0
    for trial in range(30):
        T = 1 + trial % 4
        m = semi_hyperbolic(sorted(rng.uniform(0.3, 1.0, size=T - 1).tolist()), float(rng.uniform(0.5, 0.95)))
        rep = DEURepresentation(U, m)
        tb = standard_testbed(3, T, seed=trial)
        pool = tb.infinite_pool("acceptance") + [
            UltimatelyConstantStream(tuple(tb.random_lotteries(tb.rng(f"long{trial}"), 40)), x0)
        ]
        for x in pool:
            full = evaluate(rep, x)
            ps = partial_sums(rep, x, 200)
            slack = 1e-12 * max(1.0, abs(full))
            streams_checked += 1
            violations += sum(abs(full - ps[t - 1]) > tail_bound(rep, t) + slack for t in range(1, 201))
    e = abs(total_weight(exponential(0.9)) - 10.0)
    q = abs(total_weight(quasi_hyperbolic(0.7, 0.9)) - 7.3)
    ok = violations == 0 and e <= 1e-12 and q <= 1e-12
    record(5, ok, f"{streams_checked} streams x 200 horizons, {violations} bound violations; closed forms off by {e:.1e}, {q:.1e}")
    assert ok


def test_6_special_cases():
    rng = np.random.default_rng(6)
    exact = True
    worst = 0.0
    for _ in range(200):
        d = float(rng.uniform(0.01, 0.99))
        n = int(rng.integers(1, 60))
        e = exponential(d).factors(n)
        exact &= np.array_equal(e, quasi_hyperbolic(1.0, d).factors(n))
        exact &= np.array_equal(e, semi_hyperbolic([], d).factors(n))
        exact &= np.array_equal(e, DiscountModel(1, d).factors(n))
        T = int(rng.integers(1, 6))
        betas = sorted(rng.uniform(0.05, 1.0, size=T - 1).tolist())
        m = semi_hyperbolic(betas, d)
        bp = [d * b for b in betas]
        back = from_hayashi(bp, d)
        worst = max(
            [worst, abs(back.delta - m.delta)]
            + [abs(a - b) for a, b in zip(back.betas, m.betas)]
            + np.abs(back.factors(n) - hayashi_factors(bp, d, n)).tolist()
        )
    ok = bool(exact) and worst <= 1e-12
    record(6, ok, f"200 cases: exp == QH(1) == SH(1) bitwise {bool(exact)}; Hayashi round trip err {worst:.1e} (tol 1e-12)")
    assert ok


def test_7_fit_weights():
    rng = np.random.default_rng(7)
    prizes = prize_set(["hi", "mid", "lo"])
    x0 = Lottery.degenerate(prizes, "mid")
    infeasible = replay_fail = recover_fail = 0
    worst = 0.0
    for trial in range(60):
        T = 1 + trial % 3
        u = UtilityFunction.from_mapping(
            {"hi": float(rng.uniform(0.5, 1.5)), "mid": 0.0, "lo": -float(rng.uniform(0.5, 1.5))}, prizes
        )
        m = semi_hyperbolic(sorted(rng.uniform(0.5, 1.0, size=T - 1).tolist()), float(rng.uniform(0.5, 0.95)))
        n = T + 2
        rep = DEURepresentation(u, m, n)
        tb = standard_testbed(n, T, seed=trial)
        streams = tb.finite_pool("fit") + pinning_streams(rep, x0)
        rel = relation_from(rep, streams)
        res = fit_weights(FeasibilityProblem(rel, u))
        if not res.feasible:
            infeasible += 1
            continue
        fitted = AARepresentation(u, res.weights)
        if any(compare(fitted, x, y) != rel.verdicts[i][j] for i, x in enumerate(streams) for j, y in enumerate(streams)):
            replay_fail += 1
        c = classify(res.weights, 1e-6)
        if c.model is None or c.model.T != m.T:
            recover_fail += 1
            continue
        err = max([abs(c.model.delta - m.delta)] + [abs(a - b) for a, b in zip(c.model.betas, m.betas)])
        worst = max(worst, err)
        recover_fail += err > 1e-6
    ok = infeasible == replay_fail == recover_fail == 0
    record(7, ok, f"60 relations: {infeasible} infeasible, {replay_fail} replay failures, {recover_fail} misclassified; max param err {worst:.1e}")
    assert ok


def test_8_mixture_laws():
    rng = np.random.default_rng(8)
    prizes = prize_set(["a", "b", "c", "d"])
    U = UtilityFunction.from_mapping({"a": 1.0, "b": 0.2, "c": -0.4, "d": 0.0}, prizes)
    rep = DEURepresentation(U, semi_hyperbolic([0.6, 0.8], 0.9), 4)

    def lottery():
        p = rng.dirichlet(np.ones(len(prizes)))
        p[-1] = max(0.0, 1.0 - p[:-1].sum())
        return Lottery(prizes, tuple(p.tolist()))

    def gap(x, y):
        return max(abs(a - b) for a, b in zip(x.probs, y.probs))

    law = lin = 0.0
    for _ in range(10_000):
        x, y = lottery(), lottery()
        lam, mu = float(rng.random()), float(rng.random())
        law = max(
            law,
            gap(mix(x, 1.0, y), x),
            gap(mix(x, lam, y), mix(y, 1.0 - lam, x)),
            gap(mix(mix(x, mu, y), lam, y), mix(x, lam * mu, y)),
        )
        xs, ys = FiniteStream(tuple(lottery() for _ in range(4))), FiniteStream(tuple(lottery() for _ in range(4)))
        lin = max(lin, abs(evaluate(rep, mix_streams(xs, lam, ys)) - (lam * evaluate(rep, xs) + (1 - lam) * evaluate(rep, ys))))
    ok = law <= 1e-12 and lin <= 1e-9
    record(8, ok, f"10^4 cases: mixture-law err {law:.1e} (tol 1e-12), evaluate linearity err {lin:.1e} (tol 1e-9)")
    assert ok
