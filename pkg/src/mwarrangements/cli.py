"""Command-line interface: ``mwarr SUBCOMMAND --arrangement FILE ...``."""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import harness
from .arrangement import Arrangement, ArrangementError
from .osmodel import phi, psi, tilde_div
from .parsing import ParseError, parse_monomial, parse_pres, parse_unit
from .presentation import (
    basis,
    circuit_units,
    multiply,
    normal_form,
    rank,
    restriction_boundary,
    rpoly,
)


def load_arrangement(path: str) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return Arrangement.from_json(json.load(fh))


def _mono_text(arr: Arrangement, mono) -> str:
    return "".join(f"({arr.hyperplanes[i]})" for i in mono) or "1"


def _poly_text(coeffs: list[int]) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        t = "" if k == 0 else "t" if k == 1 else f"t^{k}"
        parts.append(str(c) if not t else (t if c == 1 else f"{c}{t}"))
    return " + ".join(parts) or "0"


def export_data(arr: Arrangement) -> dict:
    b = basis(arr)
    singles = [w for w in b if len(w) == 1]
    products = {}
    for (i,) in singles:
        for (j,) in singles:
            x = phi((i,), arr) * phi((j,), arr)
            nf = normal_form(x)
            products[f"{i + 1},{j + 1}"] = {
                ",".join(str(k + 1) for k in w): str(c) for w, c in nf.coords.items()
            }
    circuits = []
    for c in arr.circuits:
        rel = rpoly(arr, circuit_units(arr, c))
        circuits.append(
            {
                "members": [i + 1 for i in c.members],
                "central": c.is_central,
                "rpoly": rel.element.format(),
            }
        )
    return {
        "arrangement": arr.to_json(),
        "basis": [[i + 1 for i in w] for w in b],
        "ranks": rank(arr),
        "poincare": arr.poincare_polynomial(),
        "circuits": circuits,
        "products": products,
    }


def export_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("export.schema.json").read_text())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arrangement", "-a", metavar="FILE", help="arrangement JSON file")

    p = argparse.ArgumentParser(
        prog="mwarr", description="Milnor-Witt cohomology of hyperplane arrangement complements"
    )
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="hyperplanes, circuits and nbc sets")
    sub.add_parser("poincare", parents=[common], help="Poincare polynomial")
    sub.add_parser("basis", parents=[common], help="basis monomials")
    sub.add_parser("rank", parents=[common], help="ranks per degree")
    s = sub.add_parser("nf", parents=[common], help="normal form of an element")
    s.add_argument("expr")
    s = sub.add_parser("mul", parents=[common], help="normal form of a product")
    s.add_argument("left")
    s.add_argument("right")
    s = sub.add_parser("boundary", parents=[common], help="boundary onto a restriction")
    s.add_argument("expr")
    s.add_argument("index", type=int, help="1-based hyperplane index")
    s = sub.add_parser("psi", parents=[common], help="image in the exterior model")
    s.add_argument("expr")
    s = sub.add_parser("phi", parents=[common], help="word of a wedge monomial such as Y1^Y3")
    s.add_argument("mono")
    s = sub.add_parser("tdiv", parents=[common], help="twisted divisor of a unit")
    s.add_argument("unit")
    s = sub.add_parser("verify", parents=[common], help="run a consistency suite")
    s.add_argument("suite", choices=sorted(harness.SUITES))
    s.add_argument("--seeds", type=int, default=20)
    s.add_argument("--json", action="store_true", help="emit the report as JSON")
    sub.add_parser("export", parents=[common], help="dump basis, ranks, relations and products as JSON")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            report = harness.run_suite(args.suite, args.seeds)
            print(report.to_json() if args.json else report.to_text(), file=out)
            return 0 if report.ok else 1
        if not args.arrangement:
            raise ArrangementError(f"{args.command} needs --arrangement FILE")
        arr = load_arrangement(args.arrangement)
        return _dispatch(args, arr, out)
    except (OSError, json.JSONDecodeError, ArrangementError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args, arr: Arrangement, out) -> int:
    cmd = args.command
    if cmd == "info":
        print(f"field: {arr.field}", file=out)
        print(f"dimension: {arr.dim}", file=out)
        for i, h in enumerate(arr.hyperplanes, 1):
            print(f"H{i}: {h}", file=out)
        for c in arr.circuits:
            kind = "central" if c.is_central else "affine"
            print(f"circuit {{{', '.join(str(i + 1) for i in c.members)}}} ({kind})", file=out)
        print(f"nbc sets: {len(arr.nbc_sets)}", file=out)
    elif cmd == "poincare":
        print(f"poincare: {_poly_text(arr.poincare_polynomial())}", file=out)
    elif cmd == "basis":
        for w in basis(arr):
            print(f"{len(w)}: {_mono_text(arr, w)}", file=out)
    elif cmd == "rank":
        print("degree ranks: " + " ".join(map(str, rank(arr))), file=out)
    elif cmd == "nf":
        print(normal_form(parse_pres(args.expr, arr)), file=out)
    elif cmd == "mul":
        print(multiply(parse_pres(args.left, arr), parse_pres(args.right, arr)), file=out)
    elif cmd == "boundary":
        if not 1 <= args.index <= len(arr):
            raise ArrangementError(f"hyperplane index {args.index} out of range (1..{len(arr)})")
        b, restricted = restriction_boundary(parse_pres(args.expr, arr), args.index - 1)
        print("restriction: " + ", ".join(str(h) for h in restricted.hyperplanes), file=out)
        print(normal_form(b), file=out)
    elif cmd == "psi":
        print(psi(parse_pres(args.expr, arr)), file=out)
    elif cmd == "phi":
        print(phi(parse_monomial(args.mono, arr), arr).format(), file=out)
    elif cmd == "tdiv":
        print(tilde_div(parse_unit(args.unit, arr)), file=out)
    elif cmd == "export":
        print(json.dumps(export_data(arr), sort_keys=True, indent=2), file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
