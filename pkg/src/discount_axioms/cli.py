"""Command-line front door.

Every command reads one JSON document (``--input``; ``-`` for stdin,
``example:<name>`` for a bundled file) and writes a text or JSON report.
Exit status: 0 success or all-PASS, 1 a violation or rejection was found,
2 malformed input or configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Any, Callable, Mapping

from .axioms import Testbed, audit, profile
from .axioms.oracle import RepresentationOracle
from .discounting import INFINITE, Kind, classify
from .elicitation import AUTO, ElicitationConfig, recover_full
from .errors import DiscountAxiomsError, InputError
from .fitlab import DEFAULT_MARGIN, FeasibilityProblem, GeneratorSpec, fit_weights, generate
from .mixture_space import Lottery, Prizes
from .representation import DEFAULT_EPS, Ordering, compare, evaluate
from .serialization import (
    SCHEMA,
    _num,
    dump_json,
    load_json,
    lottery_from_json,
    lottery_to_json,
    prizes_from_json,
    relation_from_json,
    representation_from_json,
    representation_to_json,
    stream_from_json,
    stream_to_json,
    utility_from_json,
)

EXIT_OK, EXIT_FOUND, EXIT_INPUT = 0, 1, 2

DEFAULT_GRID = "0.25,0.5,0.75"


@dataclass(frozen=True)
class Outcome:
    status: int
    report: dict
    text: str


# ------------------------------------------------------------------ input


def read_input(spec: str) -> tuple[Any, str]:
    if spec == "-":
        return load_json(sys.stdin.read(), "<stdin>"), "<stdin>"
    if spec.startswith("example:"):
        name = spec.split(":", 1)[1]
        res = resources.files("discount_axioms") / "data" / f"{name}.json"
        if not res.is_file():
            raise InputError(f"no bundled example named {name!r}; available: {', '.join(bundled_examples())}")
        return load_json(res.read_text(), spec), spec
    try:
        with open(spec, encoding="utf-8") as fh:
            return load_json(fh.read(), spec), spec
    except OSError as e:
        raise InputError(f"{spec}: {e.strerror}") from None


def bundled_examples() -> list[str]:
    root = resources.files("discount_axioms") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def _obj(doc: Any, key: str, path: str = "$") -> Any:
    if not isinstance(doc, Mapping):
        raise InputError(f"{path}: expected an object")
    if key not in doc:
        raise InputError(f"{path}: missing field '{key}'")
    return doc[key]


def _prizes(doc: Mapping) -> Prizes:
    if "prizes" in doc:
        return prizes_from_json(doc["prizes"])
    for key in ("representation", "u"):
        node = doc.get(key)
        if isinstance(node, Mapping):
            u = node.get("u", node) if key == "representation" else node
            if isinstance(u, Mapping) and u:
                return prizes_from_json(list(u), f"$.{key}")
    raise InputError("$: missing field 'prizes'")


def _anchor(doc: Mapping, prizes: Prizes, required: bool = False) -> Lottery | None:
    if "anchor" not in doc:
        if required:
            raise InputError("$: missing field 'anchor'")
        return None
    return lottery_from_json(prizes, doc["anchor"], "$.anchor")


def _grid(text: str | None, doc_grid: Any) -> tuple[float, ...]:
    if text is not None:
        try:
            return tuple(float(g) for g in text.split(",") if g.strip())
        except ValueError:
            raise InputError(f"--lambda-grid: expected comma-separated numbers, got {text!r}") from None
    if doc_grid is not None:
        if not isinstance(doc_grid, list) or not all(isinstance(g, (int, float)) for g in doc_grid):
            raise InputError("$.testbed.grid: expected a list of numbers")
        return tuple(float(g) for g in doc_grid)
    return tuple(float(g) for g in DEFAULT_GRID.split(","))


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{path}: expected an integer")
    return value


def _compact(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _envelope(command: str, **body) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


# --------------------------------------------------------------- commands


def cmd_eval(args, doc) -> Outcome:
    prizes = _prizes(doc)
    anchor = _anchor(doc, prizes)
    rep = representation_from_json(_obj(doc, "representation"), prizes, "$.representation", strict=False)
    streams = [stream_from_json(prizes, s, anchor, f"$.streams[{i}]") for i, s in enumerate(_obj(doc, "streams"))]
    values = [evaluate(rep, x) for x in streams]
    text = "\n".join(f"U(stream {i}) = {v:.15g}" for i, v in enumerate(values))
    return Outcome(EXIT_OK, _envelope("eval", values=[_num(v) for v in values]), text)


def _pairs(doc: Mapping, prizes: Prizes, anchor) -> list[tuple[Any, Any, Ordering | None]]:
    key = "comparisons" if "comparisons" in doc else "pairs"
    out = []
    for i, item in enumerate(_obj(doc, key)):
        path = f"$.{key}[{i}]"
        x = stream_from_json(prizes, _obj(item, "x", path), anchor, f"{path}.x")
        y = stream_from_json(prizes, _obj(item, "y", path), anchor, f"{path}.y")
        v = item.get("verdict")
        try:
            expected = None if v is None else Ordering.from_symbol(v)
        except DiscountAxiomsError:
            raise InputError(f"{path}.verdict: expected '>', '=' or '<'") from None
        out.append((x, y, expected))
    return out


def cmd_compare(args, doc) -> Outcome:
    prizes = _prizes(doc)
    anchor = _anchor(doc, prizes)
    rep = representation_from_json(_obj(doc, "representation"), prizes, "$.representation", strict=False)
    rows, lines, mismatch = [], [], False
    for i, (x, y, expected) in enumerate(_pairs(doc, prizes, anchor)):
        v = compare(rep, x, y, args.eps_indiff)
        row: dict[str, Any] = {"x": stream_to_json(x, anchor), "y": stream_to_json(y, anchor), "verdict": v.symbol}
        line = f"pair {i}: x {v.symbol} y"
        if expected is not None:
            row["reproduced"] = v == expected
            mismatch |= v != expected
            line += "" if v == expected else f"  (expected {expected.symbol})"
        rows.append(row)
        lines.append(line)
    return Outcome(EXIT_FOUND if mismatch else EXIT_OK, _envelope("compare", results=rows), "\n".join(lines))


def _testbed(args, doc, prizes, anchor, n: int, T: int, relation=None) -> Testbed:
    tbdoc = doc.get("testbed", {}) or {}
    if not isinstance(tbdoc, Mapping):
        raise InputError("$.testbed: expected an object")
    kw: dict[str, Any] = {}
    for key in ("n_streams", "n_cases", "n_contexts", "convergence_periods"):
        if key in tbdoc:
            kw[key] = _int(tbdoc[key], f"$.testbed.{key}")
    cap = args.horizon_cap if args.horizon_cap is not None else tbdoc.get("horizon_cap", 200)
    seed = args.seed if args.seed is not None else tbdoc.get("seed", 0)
    return Testbed(
        prizes,
        anchor,
        grid=_grid(args.lambda_grid, tbdoc.get("grid")),
        n=n,
        T=T,
        horizon_cap=_int(cap, "horizon cap"),
        seed=_int(seed, "seed"),
        eps=args.eps_indiff,
        bisect_tol=args.bisect_tol if args.bisect_tol is not None else 0.0,
        relation_streams=relation,
        **kw,
    )


def cmd_audit(args, doc) -> Outcome:
    prizes = _prizes(doc)
    anchor = _anchor(doc, prizes, required=True)
    name = args.profile or doc.get("profile")
    if not name:
        raise InputError("no audit profile: pass --profile or set 'profile' in the input")
    p = profile(name)
    T = args.T if args.T is not None else p.T
    tbdoc = doc.get("testbed", {}) or {}
    if "relation" in doc:
        rel = relation_from_json(prizes, doc["relation"])
        evidence: Any = rel
        n, streams = rel.n, rel.streams
    else:
        rep = representation_from_json(_obj(doc, "representation"), prizes, "$.representation", strict=False)
        evidence = RepresentationOracle(rep, args.eps_indiff)
        if rep.horizon != INFINITE:
            n = int(rep.horizon)
        else:
            n = _int(tbdoc.get("n", p.T + 2), "$.testbed.n")
        streams = None
    tb = _testbed(args, doc, prizes, anchor, n, T, streams)
    report = audit(evidence, tb, p)
    status = EXIT_OK if report.ok else EXIT_FOUND
    body = report.to_dict()
    body.update(prizes=list(prizes), anchor=lottery_to_json(anchor))
    text = report.summary()
    for r in report.results:
        if r.witness is not None:
            text += f"\n  witness for {r.axiom}:"
            for c in r.witness.comparisons:
                v = "missing" if c.verdict is None else c.verdict.symbol
                text += f"\n    {_compact(stream_to_json(c.x, anchor))}  {v}  {_compact(stream_to_json(c.y, anchor))}"
    return Outcome(status, _envelope("audit", report=body), text)


def cmd_elicit(args, doc) -> Outcome:
    prizes = _prizes(doc)
    anchor = _anchor(doc, prizes, required=True)
    rep = representation_from_json(_obj(doc, "representation"), prizes, "$.representation", strict=False)
    T: int | str = AUTO if args.T in (None, AUTO) else int(args.T)
    if "n" in doc:
        n = _int(doc["n"], "$.n")
    elif rep.horizon != INFINITE:
        n = int(rep.horizon)
    else:
        n = 6 if T == AUTO else int(T) + 2
    cfg = ElicitationConfig(
        prizes,
        anchor,
        n=n,
        T=T,
        tol=args.bisect_tol if args.bisect_tol is not None else 1e-9,
        budget=_int(doc["budget"], "$.budget") if "budget" in doc else None,
        infinite=rep.horizon == INFINITE,
        seed=args.seed if args.seed is not None else 0,
    )
    res = recover_full(RepresentationOracle(rep, args.eps_indiff), cfg)
    if res.accepted:
        m = res.model
        text = f"ACCEPTED: T = {m.T}, delta = {m.delta:.12g}, betas = {[round(b, 12) for b in m.betas]}"
        text += f"\n  u = {res.u.as_dict()}\n  queries = {res.diagnostics['queries']}"
        text += f", verdict agreement = {res.diagnostics['verdict_agreement']}"
    else:
        rj = res.rejection
        text = f"REJECTED: {rj.constraint} (axiom {rj.axiom}, T = {rj.T}): {rj}"
    return Outcome(EXIT_OK if res.accepted else EXIT_FOUND, _envelope("elicit", result=res.to_dict()), text)


def cmd_classify(args, doc) -> Outcome:
    raw = _obj(doc, "weights")
    if not isinstance(raw, list) or not all(isinstance(w, (int, float)) and not isinstance(w, bool) for w in raw):
        raise InputError("$.weights: expected a list of numbers")
    c = classify(raw, args.eps_ratio)
    body: dict[str, Any] = {"kind": c.kind.value, "ratios": [float(g) for g in c.ratios]}
    if c.model is not None:
        body["model"] = {"T": c.model.T, "delta": c.model.delta, "betas": list(c.model.betas)}
        text = f"{c.kind.value}: T = {c.model.T}, delta = {c.model.delta:.12g}, betas = {list(c.model.betas)}"
    else:
        body["reason"] = c.reason
        text = f"{c.kind.value}: {c.reason}"
    return Outcome(EXIT_FOUND if c.kind is Kind.NONE else EXIT_OK, _envelope("classify", classification=body), text)


def cmd_fit(args, doc) -> Outcome:
    prizes = _prizes(doc)
    u = utility_from_json(_obj(doc, "u"), prizes)
    rel = relation_from_json(prizes, _obj(doc, "relation"))
    margin = doc.get("margin", DEFAULT_MARGIN)
    res = fit_weights(FeasibilityProblem(rel, u, float(margin), args.eps_indiff))
    if res.feasible:
        text = f"FEASIBLE: w = {[round(w, 12) for w in res.weights]}"
    else:
        pairs = ", ".join(f"s{c.i} {c.verdict.symbol} s{c.j}" for c in res.conflict)
        text = f"INFEASIBLE ({res.note}): {pairs}"
    return Outcome(EXIT_OK if res.feasible else EXIT_FOUND, _envelope("fit", result=res.to_dict()), text)


def cmd_generate(args, doc) -> Outcome:
    if args.seed is None:
        raise InputError("generate needs --seed")
    T = None if args.T in (None, AUTO) else int(args.T)
    g = generate(GeneratorSpec(args.target or "NONE", T=T, n=args.n, seed=args.seed, infinite=args.infinite))
    tb = g.testbed()
    out = {
        "prizes": list(tb.prizes),
        "anchor": lottery_to_json(tb.anchor),
        "profile": g.profile,
        "expected": g.expected,
        "representation": representation_to_json(g.representation),
        "testbed": {"n": g.n, "grid": [x for x in tb.grid if 0 < x < 1], "seed": args.seed},
        "target": g.spec.target,
        "details": g.details,
    }
    text = f"generated {g.spec.target} (profile {g.profile}, T = {g.T}, n = {g.n}); use --format json for the document"
    return Outcome(EXIT_OK, _envelope("generate", **out), text)


COMMANDS: dict[str, Callable[[argparse.Namespace, Any], Outcome]] = {
    "eval": cmd_eval,
    "compare": cmd_compare,
    "audit": cmd_audit,
    "elicit": cmd_elicit,
    "classify": cmd_classify,
    "fit": cmd_fit,
    "generate": cmd_generate,
}


# ----------------------------------------------------------------- parser


def _T(value: str) -> int | str:
    if value.lower() == AUTO:
        return AUTO
    try:
        t = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'auto', got {value!r}") from None
    if t < 1:
        raise argparse.ArgumentTypeError("T must be at least 1")
    return t


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discount-axioms",
        description="Evaluate, audit and elicit SH(T) discounted expected utility preferences.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="what to do")
    parser.add_argument("--input", "-i", help="JSON input file, '-' for stdin, or example:<name>")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--profile", help="audit profile, e.g. finite-sh2 or infinite-exp")
    parser.add_argument("--T", type=_T, help="bias horizon (integer) or 'auto'")
    parser.add_argument("--n", type=int, help="stream length for generate")
    parser.add_argument("--target", help="axiom to violate for generate (NONE for a valid model)")
    parser.add_argument("--infinite", action="store_true", help="generate an infinite-horizon model")
    parser.add_argument("--seed", type=int, help="random seed (mandatory for generate)")
    parser.add_argument("--eps-indiff", type=float, default=DEFAULT_EPS, help="indifference band (default 1e-9)")
    parser.add_argument("--eps-ratio", type=float, default=1e-9, help="ratio tolerance for classify (default 1e-9)")
    parser.add_argument("--bisect-tol", type=float, help="bisection tolerance (audit 0 = float resolution; elicit 1e-9)")
    parser.add_argument("--horizon-cap", type=int, help="largest truncation for convergence checks (default 200)")
    parser.add_argument("--lambda-grid", help=f"comma-separated mixture weights (default {DEFAULT_GRID})")
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    """Parse ``argv``, run the command and write the report; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        if args.command == "generate":
            doc: Any = {}
        else:
            if not args.input:
                raise InputError(f"{args.command} needs --input")
            doc, _ = read_input(args.input)
            if not isinstance(doc, Mapping):
                raise InputError("$: expected a JSON object")
        outcome = COMMANDS[args.command](args, doc)
    except (DiscountAxiomsError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT
    if args.format == "json":
        out.write(dump_json(outcome.report))
    else:
        out.write(outcome.text + "\n")
    return outcome.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
