"""Command-line front end: JSON in, JSON or text out.

Each verb maps to one library operation.  Inputs are file paths or inline
JSON (an argument starting with '{' or '[' is parsed directly).  Exit codes:
0 on success, 1 on a domain error, 2 on malformed input or usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import inf as INF

from .errors import DomainError, InputError
from .novikov import (DoubleExpPoly, NovikovPoly, as_exponent, format_exponent,
                      in_image_qr, qr_tilde)
from .stepfn import StepFn, l1_distance
from .fcomplex import FieldSpec, FilteredChainMap, FilteredComplex, acyclic_truncation, hom_complex, random_complex
from .barcode import GradedBarcode, bottleneck, decompose, morse_data
from .ktheory import (Combination, PairingTable, euler_alpha, is_r_acyclic,
                      is_r_isomorphism, kappa_direct, kappa_formula, kappa_table,
                      kclass, seminorm_witness)


def _load_json(source: str):
    text = source
    if not source.lstrip().startswith(("{", "[")):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {source!r}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"bad JSON in {source!r}: {e}") from e


def _complex(source: str) -> FilteredComplex:
    return FilteredComplex.from_json(_load_json(source))


def _barcode(source: str) -> GradedBarcode:
    return GradedBarcode.from_json(_load_json(source))


def _poly(source: str) -> NovikovPoly:
    return NovikovPoly.from_json(_load_json(source))


def _stepfn(source: str) -> StepFn:
    return StepFn.from_json(_load_json(source))


def _map(source: str) -> FilteredChainMap:
    return FilteredChainMap.from_json(_load_json(source))


def _rational_text(value) -> str:
    return "inf" if value == INF else format_exponent(value)


def _morse_json(data) -> dict:
    return {name: {str(k): fn.to_json() for k, fn in getattr(data, name).items()}
            for name in ("P", "H", "Q")}


def _morse_text(data) -> str:
    blocks = []
    for name in ("P", "H", "Q"):
        table = getattr(data, name)
        blocks.append(f"{name}:")
        if not table:
            blocks.append("  (zero)")
        for k in sorted(table):
            indented = "\n".join("    " + line for line in str(table[k]).splitlines())
            blocks.append(f"  degree {k}:\n{indented}")
    return "\n".join(blocks)


def _witness_payload(args):
    c0, phi, weight = seminorm_witness(as_exponent(args.a), args.n, FieldSpec(args.field))
    return {"complex": c0.to_json(), "map": phi.to_json(),
            "weight": format_exponent(weight)}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perskt",
        description="Exact barcode classes, Novikov arithmetic, and pairings for filtered chain complexes.",
        epilog=("Combination expressions for kappa-table: terms like '-Z0+Y', "
                "'2*L', 't^{1/2}*L' (filtration shift), 'T^2 L' (translation), "
                "joined by + and -."))
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("--field", type=int, default=2, help="prime field for 'random'")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, *positional, **flags):
        sp = sub.add_parser(name)
        for arg in positional:
            sp.add_argument(arg)
        for flag, kwargs in flags.items():
            sp.add_argument("--" + flag.replace("_", "-"), **kwargs)
        return sp

    ratio = {"type": str, "required": True}
    verb("validate", "complex")
    verb("decompose", "complex")
    verb("barcode", "barcode_file")
    verb("lambda", "barcode_file")
    verb("kclass", "complex")
    verb("chi", "barcode_file")
    verb("euler-alpha", "complex", alpha=dict(ratio))
    verb("sum", "complex", "complex2")
    verb("shift", "complex", r=dict(ratio))
    verb("translate", "complex", k={"type": int, "required": True})
    verb("truncate", "complex", r=dict(ratio))
    verb("tensor", "complex", "complex2")
    verb("cone", "chain_map")
    verb("hom", "complex", "complex2")
    verb("dual", "complex", m0={"type": int, "default": 0})
    verb("qr", "complex", r=dict(ratio))
    verb("acyclic", "complex", r=dict(ratio))
    verb("riso", "chain_map", r=dict(ratio))
    verb("kappa", "complex", "complex2")
    verb("kappa-formula", "poly", "poly2")
    verb("kappa-table", "table", x={"type": str, "required": True},
         y={"type": str, "required": True})
    verb("bottleneck", "barcode_file", "barcode_file2")
    verb("l1", "stepfn", "stepfn2")
    verb("morse", "complex")
    verb("counts", "barcode_file")
    verb("length", "barcode_file")
    verb("abs-length", "barcode_file")
    verb("bar-length", "barcode_file")
    verb("gen-length", "barcode_file", weight=dict(ratio))
    verb("gap", "poly")
    verb("nplus", "poly")
    verb("in-image-qr", "poly", r=dict(ratio))
    verb("sigma", "dexp")
    verb("qr-tilde", "poly", r=dict(ratio))
    verb("witness", a=dict(ratio), n={"type": int, "required": True})
    verb("random", seed={"type": int, "default": 0},
         max_pieces={"type": int, "default": 4})
    return parser


def _run_verb(args):
    """Returns (json_payload, text). Raising DomainError/InputError maps to exit 1/2."""
    verb = args.verb
    if verb == "validate":
        problems = _complex(args.complex).validate()
        if problems:
            raise DomainError("; ".join(problems))
        return True, "ok"
    if verb == "decompose":
        bc = decompose(_complex(args.complex))
        return bc.to_json(), str(bc)
    if verb == "barcode":
        bc = _barcode(args.barcode_file)
        return bc.to_json(), str(bc)
    if verb == "lambda":
        poly = _barcode(args.barcode_file).lambda_poly()
        return poly.to_json(), str(poly)
    if verb == "kclass":
        poly = kclass(_complex(args.complex))
        return poly.to_json(), str(poly)
    if verb == "chi":
        fn = _barcode(args.barcode_file).chi_bar()
        return fn.to_json(), str(fn)
    if verb == "euler-alpha":
        value = euler_alpha(_complex(args.complex), as_exponent(args.alpha))
        return value, str(value)
    if verb == "sum":
        out = _complex(args.complex).direct_sum(_complex(args.complex2))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "shift":
        out = _complex(args.complex).shift(as_exponent(args.r))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "translate":
        out = _complex(args.complex).translate(args.k)
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "truncate":
        out = _complex(args.complex).truncate(as_exponent(args.r))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "tensor":
        out = _complex(args.complex).tensor(_complex(args.complex2))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "cone":
        out = _map(args.chain_map).cone()
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "hom":
        out = hom_complex(_complex(args.complex), _complex(args.complex2))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "dual":
        out = _complex(args.complex).dual(args.m0)
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "qr":
        out = acyclic_truncation(_complex(args.complex), as_exponent(args.r))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    if verb == "acyclic":
        value = is_r_acyclic(_complex(args.complex), as_exponent(args.r))
        return value, "true" if value else "false"
    if verb == "riso":
        value = is_r_isomorphism(_map(args.chain_map), as_exponent(args.r))
        return value, "true" if value else "false"
    if verb == "kappa":
        poly = kappa_direct(_complex(args.complex), _complex(args.complex2))
        return poly.to_json(), str(poly)
    if verb == "kappa-formula":
        poly = kappa_formula(_poly(args.poly), _poly(args.poly2))
        return poly.to_json(), str(poly)
    if verb == "kappa-table":
        table = PairingTable.from_json(_load_json(args.table))
        poly = kappa_table(table, Combination.parse(args.x), Combination.parse(args.y))
        return poly.to_json(), str(poly)
    if verb == "bottleneck":
        value = bottleneck(_barcode(args.barcode_file), _barcode(args.barcode_file2))
        return _rational_text(value), _rational_text(value)
    if verb == "l1":
        value = l1_distance(_stepfn(args.stepfn), _stepfn(args.stepfn2))
        return _rational_text(value), _rational_text(value)
    if verb == "morse":
        data = morse_data(_complex(args.complex))
        return _morse_json(data), _morse_text(data)
    if verb == "counts":
        total, finite, infinite, per_degree = _barcode(args.barcode_file).counts()
        payload = {"total": total, "finite": finite, "infinite": infinite,
                   "per_degree": {str(k): list(v) for k, v in sorted(per_degree.items())}}
        text = [f"total {total}", f"finite {finite}", f"infinite {infinite}"]
        for k, (tt, ff, ii) in sorted(per_degree.items()):
            text.append(f"degree {k}: total {tt}, finite {ff}, infinite {ii}")
        return payload, "\n".join(text)
    if verb == "length":
        value = _barcode(args.barcode_file).length()
        return format_exponent(value), format_exponent(value)
    if verb == "abs-length":
        value = _barcode(args.barcode_file).abs_length()
        return format_exponent(value), format_exponent(value)
    if verb == "bar-length":
        value = _barcode(args.barcode_file).bar_length()
        return format_exponent(value), format_exponent(value)
    if verb == "gen-length":
        value = _barcode(args.barcode_file).gen_length(_stepfn(args.weight))
        return format_exponent(value), format_exponent(value)
    if verb == "gap":
        value = _poly(args.poly).gap()
        return format_exponent(value), format_exponent(value)
    if verb == "nplus":
        value = _poly(args.poly).positive_mass()
        return value, str(value)
    if verb == "in-image-qr":
        value = in_image_qr(_poly(args.poly), as_exponent(args.r))
        return value, "true" if value else "false"
    if verb == "sigma":
        poly = DoubleExpPoly.from_json(_load_json(args.dexp)).sigma()
        return poly.to_json(), str(poly)
    if verb == "qr-tilde":
        out = qr_tilde(_poly(args.poly), as_exponent(args.r))
        return out.to_json(), str(out)
    if verb == "witness":
        payload = _witness_payload(args)
        return payload, json.dumps(payload, sort_keys=True)
    if verb == "random":
        out = random_complex(args.seed, max_pieces=args.max_pieces,
                             field=FieldSpec(args.field))
        return out.to_json(), json.dumps(out.to_json(), sort_keys=True)
    raise InputError(f"unknown verb {verb!r}")


_VALUE_FLAGS = {"--x", "--y", "--a", "--r", "--alpha", "--weight"}


def _normalize_argv(argv):
    """Join flag values onto their flags so leading '-' values survive argparse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_normalize_argv(list(argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        payload, text = _run_verb(args)
    except InputError as e:
        if args.output == "json":
            print(json.dumps({"ok": False, "result": None, "error": str(e)}, sort_keys=True))
        else:
            print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        if args.output == "json":
            print(json.dumps({"ok": False, "result": None, "error": str(e)}, sort_keys=True))
        else:
            print(f"error: {e}", file=sys.stderr)
        return 1
    if args.output == "json":
        print(json.dumps({"ok": True, "result": payload, "error": None}, sort_keys=True))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
