"""JSON formats for groups, fans, representations and filtered objects.

Rational entries may be written as JSON integers or as strings ``"p/q"``.
Output always uses strings for rationals and canonical key order.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Any

import jsonschema

from .exactla import mat, to_q
from .fans import Fan, is_primitive, make_fan, sigma0
from .filtobj import FiltrationObject, make_object
from .repcore import Rep, adjoint_rep, irrep, sl2_irrep, trivial_rep, validated
from .rootdata import CartanType, RootDatum, build_root_datum


class InputError(ValueError):
    """Malformed or schema-violating input; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*[1-9]\d*)?\s*$"},
    ]
}
_INT_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_Q_VECTOR = {"type": "array", "items": _RATIONAL}
_Q_MATRIX = {"type": "array", "items": _Q_VECTOR}

GROUP_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"enum": list("ABCDEFG")}, {"type": "integer", "minimum": 1}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "torus_rank": {"type": "integer", "minimum": 0},
        "weight_lattice": {"oneOf": [{"enum": ["adjoint", "sc"]}, _INT_MATRIX]},
    },
    "additionalProperties": False,
}

FAN_SCHEMA = {
    "oneOf": [
        {"const": "sigma0"},
        {
            "type": "object",
            "required": ["rays"],
            "properties": {
                "rays": _INT_MATRIX,
                "max_cones": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
            },
            "additionalProperties": False,
        },
    ]
}

REP_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "required": ["weights", "generators"],
            "properties": {
                "weights": _INT_MATRIX,
                "generators": {"type": "object", "patternProperties": {r"^[ef][1-9]\d*$": _Q_MATRIX}, "additionalProperties": False},
                "labels": {"type": "array", "items": {"type": "string"}},
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["construct"],
            "properties": {
                "construct": {"enum": ["irrep", "adjoint", "trivial", "sl2"]},
                "highest_weight": {"type": "array", "items": {"type": "integer"}},
                "n": {"type": "integer", "minimum": 0},
                "dim": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False,
        },
    ]
}

OBJECT_SCHEMA = {
    "type": "object",
    "required": ["rep"],
    "properties": {
        "group": GROUP_SCHEMA,
        "fan": FAN_SCHEMA,
        "rep": REP_SCHEMA,
        "tags": _INT_MATRIX,
        "filtrations": {
            "type": "object",
            "patternProperties": {
                r"^\d+$": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer"}, _Q_MATRIX],
                        "minItems": 2,
                        "maxItems": 2,
                    },
                }
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

SCHEMAS = {"group": GROUP_SCHEMA, "fan": FAN_SCHEMA, "rep": REP_SCHEMA, "object": OBJECT_SCHEMA}


def _path(err: jsonschema.ValidationError) -> str:
    parts = ["$"] + [f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path]
    return "".join(parts)


def check_schema(data: Any, kind: str) -> None:
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        best = jsonschema.exceptions.best_match(errors)
        raise InputError(best.message, _path(best))


def guess_kind(data: Any) -> str:
    if data == "sigma0":
        return "fan"
    if isinstance(data, dict):
        if "rep" in data:
            return "object"
        if "rays" in data:
            return "fan"
        if "weights" in data or "construct" in data:
            return "rep"
        if "type" in data:
            return "group"
    raise InputError("cannot tell which kind of document this is", "$")


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc), path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from exc


def lint(data: Any, kind: str) -> None:
    """Schema check plus cheap structural checks that need no computation."""
    check_schema(data, kind)
    if kind == "fan" and isinstance(data, dict):
        _lint_fan(data, "$")
    if kind == "object":
        fan = data.get("fan")
        if isinstance(fan, dict):
            _lint_fan(fan, "$.fan")
            nrays = len(fan["rays"])
        elif fan == "sigma0" and "group" in data:
            nrays = sum(r for _, r in data["group"]["type"])
        else:
            nrays = None
        if nrays is not None:
            for key in data.get("filtrations", {}):
                if int(key) >= nrays:
                    raise InputError(f"filtration references absent ray index {key}", f"$.filtrations.{key}")


def _lint_fan(fan: dict, where: str) -> None:
    rays = fan["rays"]
    for i, r in enumerate(rays):
        if not is_primitive(r):
            raise InputError(f"ray {r} is not primitive", f"{where}.rays[{i}]")
    for k, c in enumerate(fan.get("max_cones", [])):
        for j, i in enumerate(c):
            if i >= len(rays):
                raise InputError(f"absent ray index {i}", f"{where}.max_cones[{k}][{j}]")


# ---------------------------------------------------------------------------
# decoding
# ---------------------------------------------------------------------------


def group_from_json(data: Any) -> RootDatum:
    check_schema(data, "group")
    ct = CartanType(tuple((f, int(r)) for f, r in data["type"]), int(data.get("torus_rank", 0)))
    return build_root_datum(ct, data.get("weight_lattice", "adjoint"))


def fan_from_json(data: Any, datum: RootDatum) -> Fan:
    lint(data, "fan")
    if data == "sigma0":
        return sigma0(datum)
    return make_fan(datum, data["rays"], data.get("max_cones"))


def rep_from_json(data: Any, datum: RootDatum) -> Rep:
    check_schema(data, "rep")
    if "construct" in data:
        kind = data["construct"]
        if kind == "adjoint":
            return adjoint_rep(datum)
        if kind == "trivial":
            return trivial_rep(datum, data.get("dim", 1))
        if kind == "sl2":
            return sl2_irrep(datum, data.get("n", 0))
        if "highest_weight" not in data:
            raise InputError("irrep needs highest_weight", "$.rep")
        return irrep(datum, data["highest_weight"])
    n = datum.ss_rank
    gens = data["generators"]
    dim = len(data["weights"])
    e, f = [], []
    for i in range(1, n + 1):
        for name, out in (("e", e), ("f", f)):
            key = f"{name}{i}"
            if key not in gens:
                raise InputError(f"missing generator {key}", "$.rep.generators")
            m = mat(gens[key])
            if len(m) != dim or any(len(r) != dim for r in m):
                raise InputError(f"{key} must be {dim}x{dim}", f"$.rep.generators.{key}")
            out.append(m)
    extra = set(gens) - {f"{c}{i}" for c in "ef" for i in range(1, n + 1)}
    if extra:
        raise InputError(f"unexpected generator {sorted(extra)[0]}", "$.rep.generators")
    labels = tuple(data["labels"]) if "labels" in data else None
    rep = Rep(datum, tuple(tuple(w) for w in data["weights"]), tuple(e), tuple(f), labels)
    return validated(rep)


def object_from_json(data: Any, datum: RootDatum | None = None, fan: Fan | None = None) -> FiltrationObject:
    lint(data, "object")
    if datum is None:
        if "group" not in data:
            raise InputError("object needs a group (inline or --group)", "$.group")
        datum = group_from_json(data["group"])
    if fan is None:
        fan = fan_from_json(data.get("fan", "sigma0"), datum)
    rep = rep_from_json(data["rep"], datum)
    filts = {}
    for key, steps in data.get("filtrations", {}).items():
        for k, (_, vecs) in enumerate(steps):
            for v in vecs:
                if len(v) != rep.dim:
                    raise InputError(f"vector of length {len(v)} in a {rep.dim}-dimensional space", f"$.filtrations.{key}[{k}]")
        filts[int(key)] = [(d, [[to_q(x) for x in v] for v in vecs]) for d, vecs in steps]
    tags = data.get("tags")
    return make_object(rep, fan, filts, tags)


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------


def jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def dumps(data: Any) -> str:
    return json.dumps(jsonable(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, data: Any) -> None:
    """Write canonical JSON through a temporary file and rename it into place."""
    text = dumps(data)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def object_to_json(obj: FiltrationObject, group: bool = True) -> dict:
    out = obj.to_json()
    if group:
        out["group"] = obj.datum.to_json()
    return out
