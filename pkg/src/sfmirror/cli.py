"""Command line: ``sfmirror <command> ...``.

Exit status is 0 when every check passes, 1 on a verification failure and 2
on a usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import reports
from .catalog import TABLE1, TABLE1_PARAMS, corrected_structure, table1_row
from .cohomology import BidegreeError
from .lie import LieAlgebra
from .mirror import AFFINE_NAMES, affine_structure, build_mirror_pair
from .notation import ParseError, parse_form
from .scalar import ContextError
from .su3 import SU3Structure, StructureError

__all__ = ["main", "build_parser", "resolve_spec"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _params(args) -> dict:
    params = {}
    for item in getattr(args, "param", None) or ():
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        params[key.strip()] = _fraction(val.strip())
    if getattr(args, "lam", None) is not None:
        params["lambda"] = args.lam
    if getattr(args, "alpha", None) is not None:
        params["alpha"] = args.alpha
    return params


def resolve_spec(text: str, params: dict | None = None) -> tuple[str, dict]:
    """Accept Salamon text, a JSON list of components, a JSON object
    ``{"spec": ..., "params": {...}}``, or a catalog name ``row<k>``.
    Returns ``(salamon_text, params)``."""
    params = dict(params or {})
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"invalid JSON spec: {exc}")
        if isinstance(obj, dict):
            for k, v in (obj.get("params") or {}).items():
                params.setdefault(k, Fraction(str(v)))
            obj = obj.get("spec")
        if isinstance(obj, list):
            obj = "(" + ",".join(str(c) for c in obj) + ")"
        if not isinstance(obj, str):
            raise UsageError("JSON spec must be a list of components or carry a 'spec' field")
        return obj, params
    low = text.lower().replace(" ", "")
    if low.startswith("row"):
        try:
            row = table1_row(int(low[3:]))
        except (ValueError, IndexError):
            raise UsageError(f"unknown catalog row {text!r}")
        for k, v in TABLE1_PARAMS.items():
            params.setdefault(k, v)
        return row.algebra, params
    return text, params


def _affine_name(name: str) -> str:
    for n in AFFINE_NAMES:
        if n.lower() == name.lower():
            return n
    raise UsageError(f"unknown affine structure {name!r}; choose from {', '.join(AFFINE_NAMES)}")


def _pq(text: str) -> tuple[int, int]:
    try:
        p, q = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p,q got {text!r}")
    return p, q


# commands --------------------------------------------------------------------------

def cmd_check(args) -> reports.Report:
    spec, params = resolve_spec(args.spec, _params(args))
    return reports.check_report(spec, params)


def cmd_su3(args) -> reports.Report:
    params = _params(args)
    if args.row is not None:
        if not 1 <= args.row <= len(TABLE1):
            raise UsageError(f"row must be between 1 and {len(TABLE1)}")
        merged = {**TABLE1_PARAMS, **params}
        if args.corrected:
            if args.row not in (3, 5):
                raise UsageError("--corrected applies to rows 3 and 5 only")
            s = corrected_structure(args.row, merged)
        else:
            s = table1_row(args.row).structure(merged)
        return reports.su3_report(s, f"row {args.row}")
    if args.affine:
        pair = build_mirror_pair(affine_structure(_affine_name(args.affine),
                                                  reports._lam_value(args.affine, args.lam)))
        return reports.su3_report(pair.iia if args.side == "iia" else pair.iib,
                                  f"{pair.affine.name} {args.side.upper()}")
    if not args.spec:
        raise UsageError("su3 check needs --row, --affine or --spec")
    spec, params = resolve_spec(args.spec, params)
    g = LieAlgebra.from_salamon(spec, params)
    if args.omega is None and args.Omega is None:
        s = SU3Structure.standard(g)
    elif args.omega is None or args.Omega is None:
        raise UsageError("give both --omega and --Omega, or neither")
    else:
        s = SU3Structure(g, parse_form(args.omega, g.n, params), parse_form(args.Omega, g.n, params))
    return reports.su3_report(s, "structure")


def cmd_mirror(args) -> reports.Report:
    if args.action == "holonomy":
        return cmd_holonomy(args)
    if not args.affine:
        raise UsageError("mirror build needs --affine")
    name = _affine_name(args.affine)
    rep = reports.mirror_report(name, args.lam)
    if args.m is not None and name.startswith("E11"):
        hol = reports.holonomy_report(args.m, twisted=name == "E11-twisted", strict=args.strict)
        rep.body["holonomy"] = hol.to_json()
        rep.lines += hol.lines + [f"holonomy: {'PASS' if hol.ok else 'FAIL'}"]
        rep.ok = rep.ok and hol.ok
    return rep


def cmd_holonomy(args) -> reports.Report:
    m = 3 if args.m is None else args.m
    if m <= 2:
        raise UsageError("--m must be an integer greater than 2")
    return reports.holonomy_report(m, twisted=args.twisted, strict=args.strict)


def cmd_cohomology(args) -> reports.Report:
    cells = None if args.all_pq or not args.pq else args.pq
    if args.affine:
        return reports.cohomology_report(args.kind, affine=_affine_name(args.affine), lam=args.lam,
                                         cells=cells)
    target = args.algebra or args.spec
    if not target:
        raise UsageError("cohomology needs --algebra (spec or catalog name) or --affine")
    names = {n.lower(): n for n in AFFINE_NAMES}
    if target.lower() in names:
        return reports.cohomology_report(args.kind, affine=names[target.lower()], lam=args.lam,
                                         cells=cells)
    low = target.lower().replace(" ", "")
    if low.startswith("row") and low[3:].isdigit():
        row = table1_row(int(low[3:]))
        if row.affine:
            # the bidegrees depend on the fibration, which the row alone does not fix
            raise UsageError(f"row {row.index} needs a fibration: use --affine "
                             f"{' or '.join(row.affine)}")
    spec, params = resolve_spec(target, _params(args))
    return reports.cohomology_report(args.kind, algebra=spec, params=params, cells=cells)


def cmd_fm(args) -> reports.Report:
    return reports.fm_report()


def cmd_table1(args) -> reports.Report:
    params = {**TABLE1_PARAMS, **_params(args)}
    return reports.table1_report(params, corrected=args.corrected)


def cmd_table2(args) -> reports.Report:
    return reports.table2_report()


def cmd_catalog(args) -> reports.Report:
    return reports.catalog_report()


# parser ----------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, params: bool = False) -> None:
    p.add_argument("--json", action="store_true", help="print the JSON report")
    if params:
        p.add_argument("--lambda", dest="lam", type=_fraction, help="value of lambda")
        p.add_argument("--alpha", type=_fraction, help="value of alpha")
        p.add_argument("--param", action="append", metavar="NAME=VALUE",
                       help="value of a named parameter (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sfmirror",
                                     description="Semi-flat mirror pairs of Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="d^2 = 0, unimodularity and Betti numbers of a Lie algebra")
    p.add_argument("--spec", required=True, help="structure equations, JSON, or row<k>")
    _common(p, params=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("su3", help="SU(3)-structure checks")
    p.add_argument("action", choices=["check"])
    p.add_argument("--spec", help="structure equations, JSON, or row<k>")
    p.add_argument("--omega", help="the 2-form, e.g. e14+e25+e36")
    p.add_argument("--Omega", help="the complex 3-form")
    p.add_argument("--row", type=int, help="a type IIA catalog row")
    p.add_argument("--corrected", action="store_true", help="use the corrected form of row 3 or 5")
    p.add_argument("--affine", help="one side of a constructed mirror pair")
    p.add_argument("--side", choices=["iia", "iib"], default="iia")
    _common(p, params=True)
    p.set_defaults(func=cmd_su3)

    p = sub.add_parser("mirror", help="build a mirror pair or check lattice holonomy")
    p.add_argument("action", choices=["build", "holonomy"])
    p.add_argument("--affine", help=", ".join(AFFINE_NAMES))
    p.add_argument("--m", type=int, help="trace parameter of the E(1,1) lattice")
    p.add_argument("--twisted", action="store_true", help="twisted E(1,1) holonomy")
    p.add_argument("--strict", action="store_true", help="also check translation parts")
    _common(p, params=True)
    p.set_defaults(func=cmd_mirror)

    p = sub.add_parser("holonomy", help="same as 'mirror holonomy'")
    p.add_argument("--m", type=int)
    p.add_argument("--twisted", action="store_true")
    p.add_argument("--strict", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_holonomy)

    p = sub.add_parser("cohomology", help="Tseng-Yau or Bott-Chern numbers")
    p.add_argument("kind", choices=["ty", "bc"])
    p.add_argument("--algebra", help="structure equations, JSON, row<k> or affine name")
    p.add_argument("--spec", help="alias of --algebra")
    p.add_argument("--affine", help="use the IIA (ty) or IIB (bc) side of this mirror pair")
    p.add_argument("--all-pq", action="store_true", help="full 4x4 table (default)")
    p.add_argument("--pq", type=_pq, action="append", help="single cell p,q (repeatable)")
    _common(p, params=True)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("fm", help="Fourier-Mukai transform checks")
    p.add_argument("action", choices=["verify"])
    _common(p)
    p.set_defaults(func=cmd_fm)

    p = sub.add_parser("table1", help="SU(3) and type IIA checks for all catalog rows")
    p.add_argument("--corrected", action="store_true",
                   help="also report the corrected forms of rows 3 and 5")
    _common(p, params=True)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", help="recompute the mirror table")
    _common(p)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("catalog", help="list embedded data")
    p.add_argument("action", choices=["list"])
    _common(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        rep = args.func(args)
    except (UsageError, ParseError, ContextError, KeyError, ValueError,
            StructureError, BidegreeError, argparse.ArgumentTypeError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"sfmirror: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True, default=str))
    else:
        print(rep.text)
    return EXIT_OK if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
