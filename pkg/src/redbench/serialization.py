"""Canonical JSON file formats for instances, colorings, and solutions.

Files are JSON with sorted keys, two-space indentation, naturals as
decimal integers, and an explicit format_version, so a loaded value
re-serializes to the identical bytes. Colorings are stored either as a
builder name with parameters or as an explicit table; parameters may nest
further colorings or a descending sequence.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from . import constructions
from .bitsupport import FiniteNatSet, SumMode
from .colorings import TupleColoring, UnaryColoring
from .constructions import InjectiveFunctionTable
from .errors import SchemaError
from .reductions import PRINCIPLES, Instance, Solution
from .wellorder import DescendingSequence, LinearOrder, OmegaTerm

FORMAT_VERSION = 1


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _require(payload: dict, field: str, kinds=None):
    if field not in payload:
        raise SchemaError(f"missing field {field!r}", field=field)
    value = payload[field]
    if kinds is not None and not isinstance(value, kinds):
        raise SchemaError(f"field {field!r} has the wrong type", field=field)
    return value


def _nat(payload: dict, field: str) -> int:
    value = _require(payload, field, int)
    if isinstance(value, bool) or value < 0:
        raise SchemaError(f"field {field!r} must be a natural number", field=field)
    return value


# ---------------------------------------------------------------------------
# linear orders and descending sequences


def order_payload(order: LinearOrder) -> dict:
    if order.size is None:
        return {"kind": "omega"}
    return {"kind": "finite", "size": order.size}


def order_from_payload(payload: dict) -> LinearOrder:
    kind = _require(payload, "kind", str)
    if kind == "omega":
        return LinearOrder.omega()
    if kind == "finite":
        return LinearOrder.finite(_nat(payload, "size"))
    raise SchemaError(f"unknown order kind {kind!r}", field="kind")


def alpha_payload(alpha: DescendingSequence) -> dict:
    return {
        "order": order_payload(alpha.order),
        "terms": [list(t.exponents) for t in alpha.terms],
    }


def alpha_from_payload(payload: dict) -> DescendingSequence:
    order = order_from_payload(_require(payload, "order", dict))
    terms = _require(payload, "terms", list)
    return DescendingSequence(order, tuple(OmegaTerm(tuple(t)) for t in terms))


# ---------------------------------------------------------------------------
# colorings

_UNARY_SIMPLE = {
    "identity": constructions.identity_coloring,
    "lam": constructions.lam_coloring,
    "mu": constructions.mu_coloring,
    "lam_minus": constructions.lam_minus_coloring,
    "pair_lam_mu": constructions.pair_lam_mu_coloring,
}


def _params_to_json(params: dict) -> dict:
    out = {}
    for key, value in params.items():
        if isinstance(value, UnaryColoring):
            out[key] = unary_coloring_payload(value)
        elif isinstance(value, TupleColoring):
            out[key] = tuple_coloring_payload(value)
        elif isinstance(value, DescendingSequence):
            out[key] = alpha_payload(value)
        else:
            out[key] = value
    return out


def unary_coloring_payload(c: UnaryColoring) -> dict:
    if c.provenance is None:
        raise SchemaError("coloring carries no serializable provenance")
    return {
        "kind": "unary_coloring",
        "domain_bound": c.domain_bound,
        "builtin": {
            "name": c.provenance["name"],
            "params": _params_to_json(c.provenance["params"]),
        },
    }


def tuple_coloring_payload(c: TupleColoring) -> dict:
    if c.provenance is None:
        raise SchemaError("coloring carries no serializable provenance")
    return {
        "kind": "tuple_coloring",
        "domain_bound": c.domain_bound,
        "builtin": {
            "name": c.provenance["name"],
            "params": _params_to_json(c.provenance["params"]),
        },
    }


def unary_coloring_from_payload(payload: dict) -> UnaryColoring:
    if _require(payload, "kind", str) != "unary_coloring":
        raise SchemaError("expected a unary_coloring payload", field="kind")
    bound = _nat(payload, "domain_bound")
    builtin = _require(payload, "builtin", dict)
    name = _require(builtin, "name", str)
    params = _require(builtin, "params", dict)
    if name == "table":
        values = _require(params, "values", list)
        if len(values) != bound:
            raise SchemaError("table length disagrees with domain_bound", field="values")
        return UnaryColoring.from_table(values, range_bound=params.get("range_bound"))
    if name == "constant":
        return constructions.constant_coloring(_nat(params, "value"), bound)
    if name == "mod":
        return constructions.mod_coloring(_nat(params, "modulus"), bound)
    if name in _UNARY_SIMPLE:
        return _UNARY_SIMPLE[name](bound)
    if name == "clip":
        base = unary_coloring_from_payload(_require(params, "base", dict))
        return constructions.clip_to_lambda_regressive(base, domain_bound=bound)
    if name == "guard_rt1":
        base = unary_coloring_from_payload(_require(params, "base", dict))
        return constructions.guard_rt1(base, _nat(params, "k"), domain_bound=bound)
    if name == "mu_recolor":
        base = unary_coloring_from_payload(_require(params, "base", dict))
        return constructions.mu_recoloring(base, _nat(params, "k"), domain_bound=bound)
    if name == "range":
        table = InjectiveFunctionTable(tuple(_require(params, "values", list)))
        return constructions.range_coloring(table, domain_bound=bound)
    if name == "wop":
        alpha = alpha_from_payload(_require(params, "alpha", dict))
        return constructions.wop_coloring(alpha, domain_bound=bound)
    raise SchemaError(f"unknown builtin name {name!r}", field="name")


def tuple_coloring_from_payload(payload: dict) -> TupleColoring:
    if _require(payload, "kind", str) != "tuple_coloring":
        raise SchemaError("expected a tuple_coloring payload", field="kind")
    bound = _nat(payload, "domain_bound")
    builtin = _require(payload, "builtin", dict)
    name = _require(builtin, "name", str)
    params = _require(builtin, "params", dict)
    if name == "tuple_table":
        entries = {tuple(k): v for k, v in _require(params, "entries", list)}
        return TupleColoring.from_table(
            _nat(params, "arity"),
            _nat(params, "domain_bound"),
            entries,
            range_bound=params.get("range_bound"),
        )
    if name == "tuple_constant":
        return constructions.tuple_constant_coloring(
            _nat(params, "value"), _nat(params, "arity"), bound
        )
    if name == "sum_mod":
        return constructions.sum_mod_coloring(
            _nat(params, "modulus"), _nat(params, "arity"), bound
        )
    if name == "cplus_fixed":
        base = tuple_coloring_from_payload(_require(params, "base", dict))
        return constructions.regressive_guard_fixed(base, _nat(params, "k"))
    if name == "cplus_shift":
        base = tuple_coloring_from_payload(_require(params, "base", dict))
        return constructions.regressive_guard_shift(base)
    if name == "sum_tuple":
        base = unary_coloring_from_payload(_require(params, "base", dict))
        return constructions.sum_tuple_coloring(base, _nat(params, "n"), domain_bound=bound)
    raise SchemaError(f"unknown builtin name {name!r}", field="name")


# ---------------------------------------------------------------------------
# instances

_COLORING_PRINCIPLES = ("unary_coloring", "tuple_coloring")


def instance_payload(instance: Instance) -> dict:
    p = instance.principle
    if p == "rt1":
        return {
            "kind": "rt1",
            "coloring": unary_coloring_payload(instance.payload),
            "k": instance.param("k"),
        }
    if p == "rt":
        return {
            "kind": "rt",
            "coloring": tuple_coloring_payload(instance.payload),
            "k": instance.param("k"),
            "n": instance.param("n"),
        }
    if p == "reg":
        out = {
            "kind": "reg",
            "coloring": tuple_coloring_payload(instance.payload),
            "n": instance.param("n"),
        }
        ground = instance.param("ground_set")
        if ground is not None:
            out["ground_set"] = list(ground.elements)
        return out
    if p == "ht":
        return {
            "kind": "ht",
            "coloring": unary_coloring_payload(instance.payload),
            "k": instance.param("k"),
            "mode": str(instance.param("mode")),
            "apart": bool(instance.param("apart", True)),
        }
    if p == "reght":
        return {
            "kind": "reght",
            "coloring": unary_coloring_payload(instance.payload),
            "mode": str(instance.param("mode")),
        }
    if p == "ran":
        return {"kind": "ran", "values": list(instance.payload.values)}
    if p == "wop":
        return {"kind": "wop", **alpha_payload(instance.payload)}
    if p == "unary_coloring":
        return unary_coloring_payload(instance.payload)
    if p == "tuple_coloring":
        return tuple_coloring_payload(instance.payload)
    raise SchemaError(f"unknown principle {p!r}", field="principle")


def instance_from_payload(principle: str, payload: dict) -> Instance:
    if principle == "rt1":
        return Instance(
            "rt1",
            unary_coloring_from_payload(_require(payload, "coloring", dict)),
            {"k": _nat(payload, "k")},
        )
    if principle == "rt":
        return Instance(
            "rt",
            tuple_coloring_from_payload(_require(payload, "coloring", dict)),
            {"k": _nat(payload, "k"), "n": _nat(payload, "n")},
        )
    if principle == "reg":
        params: dict = {"n": _nat(payload, "n")}
        if "ground_set" in payload:
            params["ground_set"] = FiniteNatSet(tuple(payload["ground_set"]))
        else:
            params["ground_set"] = None
        return Instance(
            "reg",
            tuple_coloring_from_payload(_require(payload, "coloring", dict)),
            params,
        )
    if principle == "ht":
        return Instance(
            "ht",
            unary_coloring_from_payload(_require(payload, "coloring", dict)),
            {
                "k": _nat(payload, "k"),
                "mode": SumMode.parse(_require(payload, "mode", str)),
                "apart": bool(payload.get("apart", True)),
            },
        )
    if principle == "reght":
        return Instance(
            "reght",
            unary_coloring_from_payload(_require(payload, "coloring", dict)),
            {"mode": SumMode.parse(_require(payload, "mode", str))},
        )
    if principle == "ran":
        return Instance(
            "ran", InjectiveFunctionTable(tuple(_require(payload, "values", list)))
        )
    if principle == "wop":
        return Instance("wop", alpha_from_payload(payload))
    if principle == "unary_coloring":
        return Instance("unary_coloring", unary_coloring_from_payload(payload))
    if principle == "tuple_coloring":
        return Instance("tuple_coloring", tuple_coloring_from_payload(payload))
    raise SchemaError(f"unknown principle {principle!r}", field="principle")


def instance_file(instance: Instance) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "principle": instance.principle,
        "payload": instance_payload(instance),
    }


def instance_from_file(doc: dict, validate: bool = True) -> Instance:
    if _nat(doc, "format_version") != FORMAT_VERSION:
        raise SchemaError(f"unsupported format_version {doc['format_version']}", field="format_version")
    principle = _require(doc, "principle", str)
    instance = instance_from_payload(principle, _require(doc, "payload", dict))
    if validate and principle in PRINCIPLES:
        PRINCIPLES[principle].validate_instance(instance)
    return instance


# ---------------------------------------------------------------------------
# solutions


def solution_file(solution: Solution) -> dict:
    if solution.kind == "finite_set":
        payload = {"elements": list(solution.payload.elements)}
    elif solution.kind == "range_table":
        payload = {
            "certified_bound": solution.payload["certified_bound"],
            "members": list(solution.payload["members"]),
        }
    elif solution.kind == "x_sequence":
        payload = {"values": list(solution.payload["values"])}
        if "stop_reason" in solution.payload:
            payload["stop_reason"] = solution.payload["stop_reason"]
    else:
        raise SchemaError(f"unknown solution kind {solution.kind!r}", field="kind")
    return {"format_version": FORMAT_VERSION, "kind": solution.kind, "payload": payload}


def solution_from_file(doc: dict) -> Solution:
    if _nat(doc, "format_version") != FORMAT_VERSION:
        raise SchemaError("unsupported format_version", field="format_version")
    kind = _require(doc, "kind", str)
    payload = _require(doc, "payload", dict)
    if kind == "finite_set":
        return Solution("finite_set", FiniteNatSet(tuple(_require(payload, "elements", list))))
    if kind == "range_table":
        return Solution(
            "range_table",
            {
                "certified_bound": _nat(payload, "certified_bound"),
                "members": tuple(_require(payload, "members", list)),
            },
        )
    if kind == "x_sequence":
        out = {"values": tuple(_require(payload, "values", list))}
        if "stop_reason" in payload:
            out["stop_reason"] = payload["stop_reason"]
        return Solution("x_sequence", out)
    raise SchemaError(f"unknown solution kind {kind!r}", field="kind")
