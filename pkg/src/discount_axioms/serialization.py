"""JSON interchange (schema "1") for every domain object.

Lotteries are written as a prize id when degenerate and as a
``{prize: probability}`` map otherwise. Finite streams are
``{"periods": [...]}``. Infinite streams are ``{"prefix": [...], "tail": ...}``
where ``tail`` is ``"anchor"`` for the session anchor and a lottery otherwise.
Parsing errors raise :class:`~discount_axioms.errors.InputError` with a JSON
path locating the offending field.
"""

from __future__ import annotations

import json
import math
from typing import Any, Mapping

from .discounting import INFINITE, DiscountModel, from_hayashi, semi_hyperbolic
from .errors import ConstraintError, DiscountAxiomsError, InputError
from .mixture_space import Lottery, Prizes, UtilityFunction, prize_set
from .representation import (
    AARepresentation,
    AdditiveRepresentation,
    DEURepresentation,
    Ordering,
    Representation,
    TailWeights,
)
from .streams import ConstantStream, FiniteStream, InfiniteStream, Stream, UltimatelyConstantStream

SCHEMA = "1"


def _num(x: float) -> float | str:
    if math.isinf(x):
        return "infinite" if x > 0 else "-infinite"
    return float(x)


def lottery_to_json(x: Lottery) -> str | dict[str, float]:
    sup = x.support
    if len(sup) == 1 and next(iter(sup.values())) == 1.0:
        return next(iter(sup))
    return {p: q for p, q in sup.items()}


def lottery_from_json(prizes: Prizes, obj: Any, path: str = "$") -> Lottery:
    try:
        if isinstance(obj, str):
            return Lottery.degenerate(prizes, obj)
        if isinstance(obj, Mapping):
            return Lottery.from_mapping(prizes, {str(k): float(v) for k, v in obj.items()})
    except (DiscountAxiomsError, TypeError, ValueError) as e:
        raise InputError(f"{path}: {e}") from None
    raise InputError(f"{path}: a lottery is a prize id or a {{prize: probability}} map")


def stream_to_json(x: Stream, anchor: Lottery | None = None) -> dict:
    if isinstance(x, FiniteStream):
        return {"periods": [lottery_to_json(l) for l in x.periods]}
    tail: Any = "anchor" if anchor is not None and x.tail == anchor else lottery_to_json(x.tail)
    return {"prefix": [lottery_to_json(l) for l in x.prefix], "tail": tail}


def stream_from_json(prizes: Prizes, obj: Any, anchor: Lottery | None = None, path: str = "$") -> Stream:
    if not isinstance(obj, Mapping):
        raise InputError(f"{path}: a stream must be an object")
    if "periods" in obj:
        periods = _list(obj["periods"], f"{path}.periods")
        if not periods:
            raise InputError(f"{path}.periods: must be non-empty")
        return FiniteStream(tuple(lottery_from_json(prizes, l, f"{path}.periods[{i}]") for i, l in enumerate(periods)))
    if "constant" in obj:
        return ConstantStream(lottery_from_json(prizes, obj["constant"], f"{path}.constant"))
    if "prefix" in obj:
        prefix = tuple(
            lottery_from_json(prizes, l, f"{path}.prefix[{i}]")
            for i, l in enumerate(_list(obj["prefix"], f"{path}.prefix"))
        )
        tail = obj.get("tail", "anchor")
        if tail in ("anchor", None):
            if anchor is None:
                raise InputError(f"{path}.tail: stream refers to the anchor but none is declared")
            return UltimatelyConstantStream(prefix, anchor)
        t = lottery_from_json(prizes, tail, f"{path}.tail")
        return InfiniteStream(prefix, t) if prefix else ConstantStream(t)
    raise InputError(f"{path}: expected 'periods', 'prefix' or 'constant'")


def _list(obj: Any, path: str) -> list:
    if not isinstance(obj, list):
        raise InputError(f"{path}: expected a list")
    return obj


def _require(obj: Mapping, key: str, path: str) -> Any:
    if not isinstance(obj, Mapping):
        raise InputError(f"{path}: expected an object")
    if key not in obj:
        raise InputError(f"{path}: missing field '{key}'")
    return obj[key]


def _real(obj: Any, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise InputError(f"{path}: expected a number")
    return float(obj)


def model_to_json(m: DiscountModel) -> dict:
    return {"T": m.T, "delta": m.delta, "betas": list(m.betas)}


def model_from_json(obj: Any, path: str = "$") -> DiscountModel:
    """Accepts the canonical form and the shorthand kinds
    ``exponential``, ``quasi_hyperbolic`` and ``hayashi``."""
    if not isinstance(obj, Mapping):
        raise InputError(f"{path}: a model must be an object")
    kind = obj.get("kind")
    try:
        if kind == "hayashi":
            bp = [_real(b, f"{path}.beta_primes[{i}]") for i, b in enumerate(_list(_require(obj, "beta_primes", path), f"{path}.beta_primes"))]
            return from_hayashi(bp, _real(_require(obj, "delta", path), f"{path}.delta"))
        delta = _real(_require(obj, "delta", path), f"{path}.delta")
        if kind == "exponential":
            return DiscountModel(1, delta)
        if kind == "quasi_hyperbolic":
            return DiscountModel(2, delta, (_real(_require(obj, "beta", path), f"{path}.beta"),))
        if kind not in (None, "semi_hyperbolic"):
            raise InputError(f"{path}.kind: unknown model kind {kind!r}")
        betas = [_real(b, f"{path}.betas[{i}]") for i, b in enumerate(_list(obj.get("betas", []), f"{path}.betas"))]
        if "T" in obj:
            T = obj["T"]
            if isinstance(T, bool) or not isinstance(T, int):
                raise InputError(f"{path}.T: expected an integer")
            return DiscountModel(T, delta, tuple(betas))
        return semi_hyperbolic(betas, delta)
    except ConstraintError as e:
        idx = f" (index {e.index})" if e.index is not None else ""
        raise InputError(f"{path}: {e}{idx}") from None


def utility_to_json(u: UtilityFunction) -> dict[str, float]:
    return u.as_dict()


def utility_from_json(obj: Any, prizes: Prizes | None = None, path: str = "$.u") -> UtilityFunction:
    if not isinstance(obj, Mapping) or not obj:
        raise InputError(f"{path}: utility must be a non-empty {{prize: value}} map")
    vals = {str(k): _real(v, f"{path}.{k}") for k, v in obj.items()}
    try:
        return UtilityFunction.from_mapping(vals, prizes)
    except DiscountAxiomsError as e:
        raise InputError(f"{path}: {e}") from None


def representation_to_json(rep: Representation) -> dict:
    out: dict[str, Any] = {"u": utility_to_json(rep.u)}
    if isinstance(rep, DEURepresentation):
        out["model"] = model_to_json(rep.model)
        out["horizon"] = "infinite" if rep.infinite else int(rep.horizon)
        return out
    if rep.infinite:
        out["weights"] = {"head": list(rep.weights.head), "ratio": rep.weights.ratio}
    else:
        out["weights"] = list(rep.weights)
    if rep.limit_weight:
        out["limit_weight"] = rep.limit_weight
    return out


def representation_from_json(obj: Any, prizes: Prizes | None = None, path: str = "$", strict: bool = True) -> Representation:
    """Parse ``{"u", "weights"}`` or ``{"u", "model", "horizon"}``.

    With ``strict`` false, weight profiles that violate the AA invariants
    (signed or non-summable weights) are accepted as general additive
    functionals.
    """
    if not isinstance(obj, Mapping):
        raise InputError(f"{path}: a representation must be an object")
    if prizes is None and isinstance(obj.get("prizes"), list):
        prizes = _prizes(obj["prizes"], f"{path}.prizes")
    u = utility_from_json(_require(obj, "u", path), prizes, f"{path}.u")
    try:
        if "model" in obj:
            m = model_from_json(obj["model"], f"{path}.model")
            h = obj.get("horizon", "infinite")
            if h == "infinite":
                return DEURepresentation(u, m, INFINITE)
            if isinstance(h, bool) or not isinstance(h, int):
                raise InputError(f"{path}.horizon: expected an integer or \"infinite\"")
            return DEURepresentation(u, m, h)
        w = _require(obj, "weights", path)
        limit = _real(obj.get("limit_weight", 0.0), f"{path}.limit_weight")
        if isinstance(w, Mapping):
            head = [_real(v, f"{path}.weights.head[{i}]") for i, v in enumerate(_list(_require(w, "head", f"{path}.weights"), f"{path}.weights.head"))]
            weights: Any = TailWeights(tuple(head), _real(_require(w, "ratio", f"{path}.weights"), f"{path}.weights.ratio"))
        else:
            weights = tuple(_real(v, f"{path}.weights[{i}]") for i, v in enumerate(_list(w, f"{path}.weights")))
        cls = AARepresentation if strict else AdditiveRepresentation
        return cls(u, weights, limit)
    except InputError:
        raise
    except DiscountAxiomsError as e:
        raise InputError(f"{path}: {e}") from None


def _prizes(obj: Any, path: str) -> Prizes:
    try:
        return prize_set(_list(obj, path))
    except DiscountAxiomsError as e:
        raise InputError(f"{path}: {e}") from None


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def _default(o: Any) -> Any:
    if hasattr(o, "to_dict"):
        return o.to_dict()
    if isinstance(o, float):
        return _num(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def prizes_from_json(obj: Any, path: str = "$.prizes") -> Prizes:
    return _prizes(obj, path)


def relation_to_json(rel) -> dict:
    return {
        "streams": [stream_to_json(s) for s in rel.streams],
        "verdicts": [[None if v is None else v.symbol for v in row] for row in rel.verdicts],
    }


def relation_from_json(prizes: Prizes, obj: Any, path: str = "$.relation"):
    """Parse ``{"streams": [...], "verdicts": [[">", "=", "<", null], ...]}``."""
    from .axioms.oracle import FinitePreferenceRelation

    streams = _list(_require(obj, "streams", path), f"{path}.streams")
    parsed = []
    for i, s in enumerate(streams):
        x = stream_from_json(prizes, s, None, f"{path}.streams[{i}]")
        if not isinstance(x, FiniteStream):
            raise InputError(f"{path}.streams[{i}]: relations hold finite streams only")
        parsed.append(x)
    rows = _list(_require(obj, "verdicts", path), f"{path}.verdicts")
    verdicts = []
    for i, row in enumerate(rows):
        out = []
        for j, v in enumerate(_list(row, f"{path}.verdicts[{i}]")):
            if v is None:
                out.append(None)
                continue
            try:
                out.append(Ordering.from_symbol(v))
            except (KeyError, ValueError, TypeError):
                raise InputError(f"{path}.verdicts[{i}][{j}]: expected '>', '=', '<' or null, got {v!r}") from None
        verdicts.append(tuple(out))
    try:
        return FinitePreferenceRelation(tuple(parsed), tuple(verdicts))
    except DiscountAxiomsError as e:
        raise InputError(f"{path}: {e}") from None
