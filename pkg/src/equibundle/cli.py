"""Command-line driver.

Exit status: 0 success or valid, 1 checked and negative, 2 input or usage error.
Reports go to stdout, or atomically to ``--out`` when given.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence

from .catops import (
    SplitAbsent,
    classify_pgl2,
    kostant_check,
    kostant_embedding,
    match_rank3_tables,
    split_check,
)
from .exactla import to_q
from .fans import Fan, validate_fan
from .filtobj import CLASS_C, validate
from .picard import divisor_of_weight, pic_group
from .repcore import freudenthal, irrep, weyl_dim
from .rootdata import RootDatum
from .serialize import (
    InputError,
    dumps,
    fan_from_json,
    group_from_json,
    guess_kind,
    lint,
    load_json,
    object_from_json,
    write_atomic,
)


class UsageError(ValueError):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _load_group(path: str | None, inline: Any = None) -> RootDatum:
    if path:
        return group_from_json(_checked(path, "group"))
    if inline is None:
        raise UsageError("a group is required (--group or inline \"group\")")
    return group_from_json(inline)


def _checked(path: str, kind: str) -> Any:
    data = load_json(path)
    try:
        lint(data, kind)
    except InputError as exc:
        raise InputError(str(exc), path) from exc
    return data


def _load_object(args):
    data = _checked(args.object, "object")
    datum = _load_group(args.group, data.get("group"))
    fan = _load_fan(args.fan, datum, data.get("fan", "sigma0"))
    return object_from_json(data, datum, fan)


def _load_fan(path: str | None, datum: RootDatum, default: Any = "sigma0") -> Fan:
    if path:
        return fan_from_json(_checked(path, "fan"), datum)
    return fan_from_json(default, datum)


def _emit(args, report: dict) -> None:
    if getattr(args, "out", None):
        write_atomic(args.out, report)
    else:
        sys.stdout.write(dumps(report))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    obj = _load_object(args)
    fan_report = validate_fan(obj.fan)
    report = validate(obj)
    out = {"fan": fan_report.to_json(), **report.to_json()}
    _emit(args, out)
    return 0 if fan_report.ok and report.klass == CLASS_C else 1


def cmd_classify(args) -> int:
    if args.type.upper() != "A1":
        raise UsageError("classification is implemented for type A1 only")
    classes = classify_pgl2(args.rank, args.max_gap)
    summary: dict[str, Any] = {
        "type": "A1",
        "rank": args.rank,
        "max_gap": args.max_gap,
        "count": len(classes),
        "classes": [c.to_json() for c in classes],
    }
    if args.rank == 3:
        summary["rank3_tables"] = match_rank3_tables(classes)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for k, c in enumerate(classes):
            write_atomic(os.path.join(args.out, f"class_{k:03d}.json"), c.to_json())
        write_atomic(os.path.join(args.out, "summary.json"), summary)
    else:
        sys.stdout.write(dumps(summary))
    return 0


def cmd_picard(args) -> int:
    datum = _load_group(args.group)
    fan = _load_fan(args.fan, datum)
    g = pic_group(fan)
    out = g.to_json()
    if args.element:
        data = _checked_element(args.element)
        divisor = [0] * len(fan.rays)
        for k, v in data.get("divisor", {}).items():
            if not 0 <= int(k) < len(fan.rays):
                raise InputError(f"absent ray index {k}", f"{args.element}: $.divisor.{k}")
            divisor[int(k)] = int(v)
        weight = data.get("weight") or [0] * datum.rank
        if len(weight) != datum.rank:
            raise InputError(f"weight must have length {datum.rank}", f"{args.element}: $.weight")
        el = g.element(divisor, weight)
        out["element"] = {
            "coordinates": list(el.coordinates),
            "kappa": list(datum.central_character(weight)),
        }
    _emit(args, out)
    return 0


def _checked_element(path: str) -> dict:
    data = load_json(path)
    if not isinstance(data, dict) or set(data) - {"divisor", "weight"}:
        raise InputError("expected an object with keys divisor and weight", f"{path}: $")
    div = data.get("divisor", {})
    if not isinstance(div, dict) or not all(isinstance(v, int) and k.isdigit() for k, v in div.items()):
        raise InputError("divisor must map ray indices to integers", f"{path}: $.divisor")
    w = data.get("weight", [])
    if not isinstance(w, list) or not all(isinstance(x, int) for x in w):
        raise InputError("weight must be a list of integers", f"{path}: $.weight")
    return data


def cmd_pairing(args) -> int:
    datum = _load_group(args.group)
    weight = _ints(args.weight)
    if len(weight) != datum.rank:
        raise UsageError(f"weight must have {datum.rank} entries")
    if args.fan is not None:
        fan = _load_fan(args.fan, datum)
        coeffs, integral = divisor_of_weight(fan, weight)
        out = {"divisor": [str(c) for c in coeffs], "integral": integral}
    else:
        if args.coweight is None:
            raise UsageError("give --coweight or --fan")
        try:
            cw = [to_q(x) for x in args.coweight.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad coweight {args.coweight!r}") from exc
        if len(cw) != datum.rank:
            raise UsageError(f"coweight must have {datum.rank} entries")
        if args.lattice:
            if any(c.denominator != 1 for c in cw):
                raise UsageError("lattice coordinates must be integers")
            cw = list(datum.coweight_from_lattice([int(c) for c in cw]))
        out = {"pairing": str(datum.pairing(cw, weight))}
    _emit(args, out)
    return 0


def cmd_kostant(args) -> int:
    obj = _load_object(args)
    report = kostant_check(obj)
    out = report.to_json()
    if report.converges:
        emb = kostant_embedding(obj)
        out["embedding"] = None if emb is None else [[str(x) for x in r] for r in emb.matrix]
    _emit(args, out)
    return 0 if report.ok else 1


def cmd_split(args) -> int:
    obj = _load_object(args)
    res = split_check(obj)
    if isinstance(res, SplitAbsent):
        _emit(args, {"split": False, "witness": res.witness})
        return 1
    _emit(args, {"split": True, **res.to_json()})
    return 0


def cmd_repinfo(args) -> int:
    datum = _load_group(args.group)
    lam = _ints(args.highest_weight)
    if len(lam) != datum.rank:
        raise UsageError(f"highest weight must have {datum.rank} entries")
    if not datum.is_dominant(lam):
        raise UsageError("highest weight is not dominant")
    mults = freudenthal(datum, lam)
    out: dict[str, Any] = {
        "highest_weight": lam,
        "weyl_dim": weyl_dim(datum, lam),
        "multiplicities": {",".join(map(str, w)): m for w, m in sorted(mults.items())},
        "central_character": list(datum.central_character(lam)),
    }
    if args.construct:
        out["constructed_dim"] = irrep(datum, lam).dim
    _emit(args, out)
    return 0


def cmd_schema_check(args) -> int:
    data = load_json(args.path)
    kind = args.kind or guess_kind(data)
    try:
        lint(data, kind)
    except InputError as exc:
        _emit(args, {"ok": False, "kind": kind, "error": str(exc)})
        return 1
    _emit(args, {"ok": True, "kind": kind})
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equibundle", description="Exact computations with filtered representations.")
    sub = p.add_subparsers(dest="command", required=True)

    def obj_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("object", help="object JSON file")
        s.add_argument("--group", help="group JSON file (overrides the inline group)")
        s.add_argument("--fan", help="fan JSON file (overrides the inline fan)")
        s.add_argument("--out", help="write the report here")
        s.set_defaults(fn=fn)

    obj_cmd("validate", cmd_validate, "check standardness, transversality and distributivity")
    obj_cmd("kostant", cmd_kostant, "check the Kostant conditions and embed into the canonical object")
    obj_cmd("split", cmd_split, "decompose an object with trivial semisimple action into lines")

    s = sub.add_parser("classify", help="classify objects on an irreducible fiber")
    s.add_argument("--type", required=True)
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--max-gap", type=int, default=2)
    s.add_argument("--out", help="directory for one file per class plus summary.json")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("picard", help="equivariant Picard group of a fan")
    s.add_argument("--group", required=True)
    s.add_argument("--fan", help="fan JSON file; defaults to the co-chamber fan")
    s.add_argument("--element", help='JSON file {"divisor": {"0": 2}, "weight": [1, 0]}')
    s.add_argument("--out")
    s.set_defaults(fn=cmd_picard)

    s = sub.add_parser("pairing", help="pair a coweight with a weight")
    s.add_argument("--group", required=True)
    s.add_argument("--weight", required=True, help="fundamental-weight coordinates, comma separated")
    s.add_argument("--coweight", help="fundamental-coweight coordinates, entries may be p/q")
    s.add_argument("--lattice", action="store_true", help="read --coweight in X_*(T) coordinates")
    s.add_argument("--fan", help="instead list the pairing with every ray of this fan")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_pairing)

    s = sub.add_parser("repinfo", help="dimension and weight multiplicities of an irreducible representation")
    s.add_argument("--group", required=True)
    s.add_argument("--highest-weight", required=True)
    s.add_argument("--construct", action="store_true", help="also build the module explicitly")
    s.add_argument("--out")
    s.set_defaults(fn=cmd_repinfo)

    s = sub.add_parser("schema-check", help="check a JSON file against the published formats")
    s.add_argument("path")
    s.add_argument("--kind", choices=["group", "fan", "rep", "object"])
    s.add_argument("--out")
    s.set_defaults(fn=cmd_schema_check)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.fn(args)
    except (InputError, UsageError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
