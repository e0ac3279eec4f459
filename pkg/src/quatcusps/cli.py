"""Command line interface.

Exit codes: 0 success, 1 usage or invalid input, 2 a mathematical hypothesis
(split algebra, ramified level prime, inconsistent mu) is violated.
Every integer is emitted as a decimal string in JSON and CSV output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Optional

from .cohomology import boundary_descriptor, boundary_report
from .groups import (
    CongruenceLevel,
    HypothesisError,
    cusp_count,
    cusp_count_level_one,
    global_index,
    local_group_order,
    resolve_class_number,
    sl4_order_oracle,
)
from .numtheory import (
    Place,
    hilbert_symbol,
    hilbert_symbol_oracle,
    is_prime,
    relevant_places,
    squarefree_part,
)
from .orders import maximalize, order_from_json, reduced_discriminant, standard_order
from .quaternion import QuaternionAlgebra, algebra_for_prime, class_number

SCHEMA_VERSION = "1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _s(n: int) -> str:
    return str(int(n))


def _prime(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not is_prime(n):
        raise argparse.ArgumentTypeError(f"{n} is not prime")
    return n


def _nonzero(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n == 0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return n


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {n}")
    return n


def _place(text: str) -> Place:
    try:
        return Place.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


# ---------------------------------------------------------------- rendering


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    rows: list[tuple[str, str]] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows += _flatten(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}[{i}]")
    else:
        rows.append((prefix, json.dumps(obj) if isinstance(obj, bool) or obj is None else str(obj)))
    return rows


def render(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    rows = _flatten(data)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["field", "value"])
        writer.writerows(rows)
        return buf.getvalue()
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


# ---------------------------------------------------------------- builders


def _algebra_block(A: QuaternionAlgebra) -> dict:
    return {
        "a": _s(A.a),
        "b": _s(A.b),
        "ramification": [str(v) for v in A.ramification],
        "definite": A.is_definite,
        "division": A.is_division,
        "discriminant": _s(A.discriminant),
    }


def _hilbert_rows(a: int, b: int, places: list[Place], with_oracle: bool) -> tuple[list[dict], int, bool]:
    a0, b0 = squarefree_part(a), squarefree_part(b)
    rows, product, agree = [], 1, True
    for v in places:
        s = hilbert_symbol(a, b, v)
        product *= s
        row = {"place": str(v), "symbol": _s(s)}
        if with_oracle:
            o = hilbert_symbol_oracle(a0, b0, v)
            row["oracle"] = _s(o)
            row["agree"] = o == s
            agree &= o == s
        rows.append(row)
    return rows, product, agree


def build_report(p: int, level_p: int, e: int, h: Optional[int] = None, oracle: bool = False) -> dict:
    A = algebra_for_prime(p)
    hval = resolve_class_number(A, h)
    level = CongruenceLevel.prime_power(level_p, e)
    c = cusp_count(A, hval, level_p, e)
    idx = global_index(A, level)
    coh = boundary_report(c)
    coh.check()
    desc = boundary_descriptor(A)
    data = {
        "schema": SCHEMA_VERSION,
        "algebra": _algebra_block(A),
        "class_number": {"value": _s(hval), "source": "supplied" if h is not None else "eichler"},
        "level": {"p": _s(level_p), "e": _s(e), "norm": _s(level.norm)},
        "index": {
            "value": _s(idx.value),
            "local_factors": [{"p": _s(q), "e": _s(k), "index": _s(v)} for q, k, v in idx.local_factors],
        },
        "cusp_count_level_one": _s(cusp_count_level_one(A, hval)),
        "cusp_count": _s(c),
        "cohomology": {
            "boundary_betti": [_s(x) for x in coh.boundary_betti],
            "r0": _s(coh.r0),
            "r13_sum": _s(coh.r13_sum),
            "r2": _s(coh.r2),
            "r4": _s(coh.r4),
            "total_image": _s(coh.total_image),
            "total_boundary": _s(coh.total_boundary),
        },
        "boundary": {
            "case": desc.case,
            "component_type": desc.component_type,
            "fibre_dim": _s(desc.fibre_dim),
            "base_dim": _s(desc.base_dim),
            "total_manifold_dim": _s(desc.total_manifold_dim),
        },
    }
    if oracle:
        rows, product, agree = _hilbert_rows(A.a, A.b, relevant_places(A.a, A.b), True)
        checks: dict = {"hilbert": {"places": rows, "product": _s(product), "agree": agree}}
        if level_p in (2, 3):
            enum = sl4_order_oracle(level_p)
            formula = local_group_order(A, level_p)
            checks["sl4"] = {"q": _s(level_p), "enumerated": _s(enum), "formula": _s(formula), "match": enum == formula}
        data["oracle"] = checks
    return data


# ---------------------------------------------------------------- commands


def cmd_report(args) -> dict:
    return build_report(args.p, args.level, args.e, args.h, args.oracle)


def cmd_cusps(args) -> dict:
    A = QuaternionAlgebra(args.a, args.b)
    data = {"schema": SCHEMA_VERSION, "algebra": _algebra_block(A)}
    h = resolve_class_number(A, args.h)
    data["class_number"] = {"value": _s(h), "source": "supplied" if args.h is not None else "eichler"}
    data["cusp_count_level_one"] = _s(cusp_count_level_one(A, h))
    if args.level is not None:
        idx = global_index(A, CongruenceLevel.prime_power(args.level, args.e))
        data["level"] = {"p": _s(args.level), "e": _s(args.e), "norm": _s(args.level**args.e)}
        data["index"] = {"value": _s(idx.value)}
        data["cusp_count"] = _s(cusp_count(A, h, args.level, args.e, args.mu))
    return data


def cmd_hilbert(args) -> dict:
    places = [args.place] if args.place is not None else relevant_places(args.a, args.b)
    rows, product, agree = _hilbert_rows(args.a, args.b, places, args.oracle)
    data = {"a": _s(args.a), "b": _s(args.b), "places": rows, "product": _s(product)}
    if args.oracle:
        data["agree"] = agree
    return data


def cmd_ramify(args) -> dict:
    return _algebra_block(QuaternionAlgebra(args.a, args.b))


def cmd_classnumber(args) -> dict:
    A = algebra_for_prime(args.p)
    return {"p": _s(args.p), "algebra": {"a": _s(A.a), "b": _s(A.b)}, "class_number": _s(class_number(args.p))}


def cmd_maximalize(args) -> dict:
    if args.order is not None:
        O = order_from_json(Path(args.order).read_text())
    else:
        if args.a is None or args.b is None:
            raise UsageError("maximalize needs --a and --b, or --order FILE")
        O = standard_order(QuaternionAlgebra(args.a, args.b))
    M = maximalize(O)
    return {
        "algebra": {"a": _s(M.algebra.a), "b": _s(M.algebra.b)},
        "discriminant": _s(M.algebra.discriminant),
        "input_reduced_discriminant": _s(reduced_discriminant(O)),
        "reduced_discriminant": _s(reduced_discriminant(M)),
        "basis": [[f"{c.numerator}/{c.denominator}" for c in e.coords] for e in M.basis],
        "contains_input": all(M.contains(e) for e in O.basis),
    }


def cmd_oracle(args) -> dict:
    if args.kind == "sl4":
        if args.q is None:
            raise UsageError("oracle sl4 needs --q")
        enum = sl4_order_oracle(args.q, workers=args.workers)
        A = QuaternionAlgebra(1, 1)
        formula = local_group_order(A, args.q)
        return {"kind": "sl4", "q": _s(args.q), "enumerated": _s(enum), "formula": _s(formula), "match": enum == formula}
    if args.a is None or args.b is None or args.place is None:
        raise UsageError("oracle hilbert needs --a, --b and --place")
    a0, b0 = squarefree_part(args.a), squarefree_part(args.b)
    o = hilbert_symbol_oracle(a0, b0, args.place)
    s = hilbert_symbol(args.a, args.b, args.place)
    return {"kind": "hilbert", "a": _s(args.a), "b": _s(args.b), "place": str(args.place), "oracle": _s(o), "symbol": _s(s), "match": o == s}


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quatcusps", description=__doc__.splitlines()[0])
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", parents=[fmt], help="full cusp and cohomology report for the definite algebra of discriminant p")
    p.add_argument("--p", type=_prime, required=True, help="discriminant of D")
    p.add_argument("--level", type=_prime, required=True, help="prime of the congruence level")
    p.add_argument("--e", type=_positive, required=True, help="exponent of the level")
    p.add_argument("--h", type=_positive, help="override the class number")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracles")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("cusps", parents=[fmt], help="cusp counts for Q(a, b)")
    p.add_argument("--a", type=_nonzero, required=True)
    p.add_argument("--b", type=_nonzero, required=True)
    p.add_argument("--h", type=_positive, help="class number (required unless D is definite of prime discriminant)")
    p.add_argument("--level", type=_prime)
    p.add_argument("--e", type=_positive, default=1)
    p.add_argument("--mu", type=_positive, help="|Lambda_D^x / Lambda_D^x(p^e)|, indefinite D only")
    p.set_defaults(func=cmd_cusps)

    p = sub.add_parser("hilbert", parents=[fmt], help="Hilbert symbols (a, b)_v")
    p.add_argument("--a", type=_nonzero, required=True)
    p.add_argument("--b", type=_nonzero, required=True)
    p.add_argument("--place", type=_place, help="'inf' or a prime; default: every relevant place")
    p.add_argument("--oracle", action="store_true", help="cross-check against the exhaustive search")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("ramify", parents=[fmt], help="ramification set of Q(a, b)")
    p.add_argument("--a", type=_nonzero, required=True)
    p.add_argument("--b", type=_nonzero, required=True)
    p.set_defaults(func=cmd_ramify)

    p = sub.add_parser("classnumber", parents=[fmt], help="class number of the definite algebra of prime discriminant")
    p.add_argument("--p", type=_prime, required=True)
    p.set_defaults(func=cmd_classnumber)

    p = sub.add_parser("maximalize", parents=[fmt], help="a maximal order containing Z<1,i,j,ij> or a given order")
    p.add_argument("--a", type=_nonzero)
    p.add_argument("--b", type=_nonzero)
    p.add_argument("--order", help="JSON file {a, b, basis: 4x4 'n/d' strings}")
    p.set_defaults(func=cmd_maximalize)

    p = sub.add_parser("oracle", parents=[fmt], help="run an enumeration oracle against its formula")
    p.add_argument("kind", choices=("sl4", "hilbert"))
    p.add_argument("--q", type=int, choices=(2, 3))
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--a", type=_nonzero)
    p.add_argument("--b", type=_nonzero)
    p.add_argument("--place", type=_place)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        data = args.func(args)
    except HypothesisError as exc:
        print(f"quatcusps: hypothesis violated: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as exc:
        print(f"quatcusps: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(data, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
