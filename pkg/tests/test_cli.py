import io
import json
import subprocess
import sys

import pytest

from discount_axioms.cli import EXIT_FOUND, EXIT_INPUT, EXIT_OK, bundled_examples, run

REP = {
    "u": {"hi": 1.0, "mid": 0.0, "lo": -0.8},
    "model": {"kind": "quasi_hyperbolic", "beta": 0.7, "delta": 0.9},
    "horizon": "infinite",
}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    return code, (json.loads(out) if out else None), err


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="in.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return _write


class TestExamples:
    def test_bundled(self):
        assert {"sh2_audit", "stationarity_violation"} <= set(bundled_examples())

    def test_sh2_audit_passes(self):
        code, out, _ = call("audit", "--input", "example:sh2_audit")
        assert code == EXIT_OK and "certified: hypotheses" in out

    def test_stationarity_violation(self):
        code, out, _ = call("audit", "--input", "example:stationarity_violation")
        assert code == EXIT_FOUND
        assert "F7" in out and "witness for F7" in out

    def test_unknown_example(self):
        code, _, err = call("audit", "--input", "example:nope")
        assert code == EXIT_INPUT and "available" in err


class TestWitnessReplay:
    def test_audit_witness_reverifies_under_compare(self, write):
        code, doc, _ = call_json("audit", "--input", "example:stationarity_violation")
        assert code == EXIT_FOUND
        source = json.loads(open(call_source("stationarity_violation")).read())
        failing = [r for r in doc["report"]["results"] if r["verdict"] == "FAIL"]
        assert [r["axiom"] for r in failing] == ["F7"]
        pairs = [c for r in failing for c in r["witness"]["comparisons"]]
        cmp_doc = {
            "prizes": doc["report"]["prizes"],
            "anchor": doc["report"]["anchor"],
            "representation": source["representation"],
            "pairs": pairs,
        }
        code, res, _ = call_json("compare", "--input", write(cmp_doc))
        assert code == EXIT_OK
        assert all(r["reproduced"] for r in res["results"])

    def test_generated_document_audits(self, write):
        code, doc, _ = call_json("generate", "--target", "F8", "--seed", "42")
        assert code == EXIT_OK and doc["target"] == "F8"
        code, rep, _ = call_json("audit", "--input", write(doc))
        assert code == EXIT_FOUND
        failed = [r["axiom"] for r in rep["report"]["results"] if r["verdict"] in ("FAIL", "FAIL_AT_HORIZON")]
        assert failed == ["F8"]


def call_source(name):
    from importlib import resources

    return str(resources.files("discount_axioms") / "data" / f"{name}.json")


class TestCommands:
    def test_eval(self, write):
        doc = {
            "prizes": ["hi", "mid", "lo"],
            "anchor": "mid",
            "representation": REP,
            "streams": [{"constant": "hi"}, {"prefix": ["mid", "hi"]}],
        }
        code, res, _ = call_json("eval", "--input", write(doc))
        assert code == EXIT_OK
        assert res["values"] == pytest.approx([7.3, 0.63])
        assert res["schema"] == "1"

    def test_compare_mismatch(self, write):
        doc = {
            "prizes": ["hi", "mid", "lo"],
            "anchor": "mid",
            "representation": REP,
            "pairs": [{"x": {"constant": "hi"}, "y": {"constant": "lo"}, "verdict": "<"}],
        }
        code, out, _ = call("compare", "--input", write(doc))
        assert code == EXIT_FOUND and "expected <" in out

    def test_elicit(self, write):
        doc = {"prizes": ["hi", "mid", "lo"], "anchor": "mid", "representation": {**REP, "horizon": 4}}
        code, res, _ = call_json("elicit", "--input", write(doc), "--T", "auto")
        assert code == EXIT_OK
        m = res["result"]["model"]
        assert m["T"] == 2 and m["delta"] == pytest.approx(0.9, abs=1e-6)
        assert m["betas"] == pytest.approx([0.7], abs=1e-6)

    def test_elicit_rejected(self, write):
        doc = {
            "prizes": ["hi", "mid", "lo"],
            "anchor": "mid",
            "representation": {"u": REP["u"], "weights": [1.0, 0.9, 0.45, 0.405, 0.3645]},
        }
        code, res, _ = call_json("elicit", "--input", write(doc))
        assert code == EXIT_FOUND and res["result"]["rejected"]["axiom"] == "F8"

    @pytest.mark.parametrize(
        "weights,code,kind",
        [([1, 0.9, 0.81, 0.729], EXIT_OK, "EXPONENTIAL"), ([1, -0.5, 0.2], EXIT_FOUND, "NONE")],
    )
    def test_classify(self, write, weights, code, kind):
        got, res, _ = call_json("classify", "--input", write({"weights": weights}))
        assert got == code and res["classification"]["kind"] == kind

    def test_fit(self, write):
        doc = {
            "prizes": ["hi", "mid", "lo"],
            "u": REP["u"],
            "relation": {
                "streams": [{"periods": ["hi", "lo", "mid"]}, {"periods": ["lo", "hi", "mid"]}],
                "verdicts": [["=", ">"], [">", "="]],
            },
        }
        code, res, _ = call_json("fit", "--input", write(doc))
        assert code == EXIT_FOUND and res["result"]["status"] == "INFEASIBLE"
        assert {(c["i"], c["j"]) for c in res["result"]["conflict"]} == {(0, 1), (1, 0)}


class TestErrors:
    def test_missing_delta(self, write):
        doc = {"prizes": ["hi", "mid", "lo"], "anchor": "mid", "profile": "finite-exp",
               "representation": {"u": REP["u"], "model": {"T": 1}, "horizon": 3}}
        code, _, err = call("audit", "--input", write(doc))
        assert code == EXIT_INPUT and "missing field 'delta'" in err

    def test_malformed_json(self, write):
        code, _, err = call("audit", "--input", write('{\n "prizes": [,\n}'))
        assert code == EXIT_INPUT and ":2:" in err

    def test_generate_needs_seed(self):
        code, _, err = call("generate", "--target", "F7")
        assert code == EXIT_INPUT and "seed" in err

    def test_unknown_command(self):
        assert call("frobnicate")[0] == EXIT_INPUT

    def test_missing_input(self):
        assert call("eval")[0] == EXIT_INPUT


class TestDeterminism:
    def test_audit_bytes(self):
        a = call("audit", "--input", "example:sh2_audit", "--format", "json")[1]
        b = call("audit", "--input", "example:sh2_audit", "--format", "json")[1]
        assert a == b and a

    def test_generate_bytes(self):
        a = call("generate", "--target", "F7'", "--seed", "5", "--format", "json")[1]
        b = call("generate", "--target", "F7'", "--seed", "5", "--format", "json")[1]
        assert a == b

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "discount_axioms.cli", "audit", "--input", "example:stationarity_violation"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == EXIT_FOUND
