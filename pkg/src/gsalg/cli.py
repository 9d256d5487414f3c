"""Command-line front end.

Subcommands map one-to-one onto the library layers: dims (graded dimension
tables with the degree-wise bound), construct (block blueprints), nilcheck
(nil-exponent certificates), bound (certificate conditions and the growth
ledger), jcount and symfun (combinatorial helpers).

Exit codes: 0 all checks passed, 1 a mathematical check failed (negative
slack, violated condition, failed ledger line, unverified membership),
2 usage or input errors.  Outputs are deterministic: fixed orderings, no
timestamps, exact rationals printed as num/den.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction
from math import lgamma, log
from typing import Dict, List, Optional

from .combinat import (
    DEFAULT_ENUM_CAP,
    orbit_size,
    validate_weak_tuple,
    weak_tuple_count,
    weak_tuples,
)
from .errors import (
    DegreeBelowTwo,
    DimensionBoundViolated,
    GsalgError,
    InvalidParams,
    NonHomogeneousGenerator,
    TooLarge,
)
from .field import GF2, FieldDescriptor, parse_field
from .freealg import ParseError, Polynomial, parse_poly, poly_str
from .graded import (
    DEFAULT_COLUMN_CAP,
    build_table,
    check_dimension_bounds,
    dimension_report,
    dimension_rows,
    write_dimension_csv,
)
from .gscore import (
    BoundCertificate,
    GSParams,
    build_blueprint,
    certificate_from_epsilon,
    check_blueprint,
    check_bound_conditions,
    load_blueprint,
    nil_certificate,
    parse_ratio,
    blueprint_table,
    save_blueprint,
    verify_growth,
)
from .symfun import monomial_window, window_generator


# -- input parsing helpers -------------------------------------------------------

def _read_generators(path: str, d: int, field: FieldDescriptor) -> List[Polynomial]:
    """One polynomial per line; '#' starts a comment line; blanks skipped."""
    gens: List[Polynomial] = []
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InvalidParams("cannot read generator file %s: %s" % (path, exc)) from None
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            poly = parse_poly(text, d, field)
        except ParseError as exc:
            raise InvalidParams("%s line %d: %s" % (path, lineno, exc)) from None
        # re-checked by build_table; duplicated here to name the line at fault
        if poly.is_zero() or not poly.is_homogeneous():
            raise NonHomogeneousGenerator(
                "%s line %d: generator must be homogeneous and nonzero" % (path, lineno)
            )
        if poly.degree() < 2:
            raise DegreeBelowTwo(
                "%s line %d: generator has degree %d < 2" % (path, lineno, poly.degree())
            )
        gens.append(poly)
    return gens


def _parse_r(text: str) -> Dict[int, int]:
    """'deg:count,deg:count' -> exact table."""
    table: Dict[int, int] = {}
    if not text.strip():
        return table
    for part in text.split(","):
        piece = part.strip()
        if ":" not in piece:
            raise InvalidParams("bad r entry %r (expected deg:count)" % (piece,))
        deg_s, count_s = piece.split(":", 1)
        try:
            deg, count = int(deg_s), int(count_s)
        except ValueError:
            raise InvalidParams("bad r entry %r (expected deg:count)" % (piece,)) from None
        table[deg] = table.get(deg, 0) + count
    return table


def _parse_b(text: str) -> List[int]:
    try:
        return [int(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidParams("bad b sequence %r (expected comma-separated integers)" % (text,)) from None


def _load_b_json(path: str) -> List[int]:
    """Accepts a bare JSON list or a dims JSON report (rows with b_n)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise InvalidParams("cannot read b sequence from %s: %s" % (path, exc)) from None
    if isinstance(data, list):
        seq = data
    elif isinstance(data, dict) and "rows" in data:
        rows = sorted(data["rows"], key=lambda rec: rec["n"])
        seq = [rec["b_n"] for rec in rows]
    else:
        raise InvalidParams("%s holds neither a list nor a dims report" % (path,))
    if not all(isinstance(x, int) for x in seq):
        raise InvalidParams("b sequence in %s has non-integer entries" % (path,))
    return seq


def _parse_tuple(text: str) -> tuple:
    try:
        return tuple(int(part.strip()) for part in text.split(",") if part.strip())
    except ValueError:
        raise InvalidParams("bad index tuple %r (expected comma-separated integers)" % (text,)) from None


# -- subcommands ------------------------------------------------------------------

def cmd_dims(args) -> int:
    field = parse_field(args.field)
    gens = _read_generators(args.gens, args.d, field)
    table = build_table(
        gens, args.maxdeg, d=args.d, field=field, column_cap=args.column_cap
    )
    rows = dimension_rows(table)
    buf = io.StringIO()
    write_dimension_csv(rows, buf)
    sys.stdout.write(buf.getvalue())
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(dimension_report(table, rows), indent=2))
            fh.write("\n")
    bad = check_dimension_bounds(rows)
    if bad:
        print(
            "negative slack at degree%s %s"
            % ("s" if len(bad) > 1 else "", ", ".join(map(str, bad))),
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_construct(args) -> int:
    params = None
    if args.eps is not None:
        params = GSParams(args.d, parse_ratio(args.eps))
    field = parse_field(args.field) if args.field is not None else None
    bp = build_blueprint(
        params,
        args.blocks,
        args.mode,
        d=args.d,
        field=field,
        toy_c=args.toy_c,
        toy_n=args.toy_n,
        enum_cap=args.enum_cap,
    )
    for block in bp.blocks:
        if block.j_count is not None:
            jtxt = str(block.j_count)
        else:
            jtxt = "~2^%.2f" % block.j_count_log2
        if block.margin is not None:
            mtxt = "margin=%s" % block.margin
        elif block.margin_log2_lo is not None:
            mtxt = "margin_log2>=%.4f" % block.margin_log2_lo
        else:
            mtxt = "margin=skipped(toy)"
        print(
            "block %d: c=%d q=%d n=%d |J|=%s %s"
            % (block.k, block.c, block.q, block.n, jtxt, mtxt)
        )
        if block.generators is not None:
            print("generators (block %d):" % block.k)
            for poly in block.generators:
                print("  %s" % poly_str(poly))
    if args.out:
        save_blueprint(bp, args.out)
        print("saved: %s" % args.out)
    report = check_blueprint(bp)
    if not report.ok:
        print("blueprint invariants FAILED", file=sys.stderr)
        return 1
    return 0


def cmd_nilcheck(args) -> int:
    bp = load_blueprint(args.blueprint)
    field = bp.field
    if args.field is not None:
        requested = parse_field(args.field)
        if field is not None and requested != field:
            raise InvalidParams(
                "blueprint was materialized over %s, not %s" % (field, requested)
            )
        field = requested
    if field is None:
        field = GF2
    g = parse_poly(args.g, bp.d, field)
    table = None
    if args.verify:
        if bp.mode != "dense":
            raise InvalidParams("--verify needs a dense blueprint (materialized generators)")
        table = blueprint_table(bp, column_cap=args.column_cap)
    cert = nil_certificate(g, bp, table)
    print("n=%d%s" % (cert.exponent, " verified" if cert.verified else ""))
    if args.verify and not cert.verified:
        return 1
    return 0


def cmd_bound(args) -> int:
    if args.eps is not None:
        cert = certificate_from_epsilon(GSParams(args.d, parse_ratio(args.eps)))
    elif args.v is not None and args.c is not None and args.u is not None:
        cert = BoundCertificate(
            args.d, parse_ratio(args.v), parse_ratio(args.c), parse_ratio(args.u)
        )
    else:
        raise InvalidParams("need --eps or all three of --v/--c/--u")
    if args.r is not None and args.r_from is not None:
        raise InvalidParams("--r and --r-from are mutually exclusive")
    if args.r_from is not None:
        r = load_blueprint(args.r_from).r_table()
    else:
        r = _parse_r(args.r or "")
    b: Optional[List[int]] = None
    if args.b is not None and args.b_json is not None:
        raise InvalidParams("--b and --b-json are mutually exclusive")
    if args.b is not None:
        b = _parse_b(args.b)
    elif args.b_json is not None:
        b = _load_b_json(args.b_json)
    range_max = args.range
    if range_max is None:
        range_max = max([2] + list(r) + ([len(b) - 1] if b else []))

    report = check_bound_conditions(r, cert, range_max)
    if report.ok_a:
        print("condition (a): pass (degrees 2..%d)" % range_max)
    else:
        deg = report.first_violation
        print(
            "condition (a): FAIL at degree %d (r_%d = %d > %s)"
            % (deg, deg, r.get(deg, 0), cert.c * cert.u ** (deg - 2))
        )
    print(
        "condition (b): %s ((v*d-c)/(v+u) = %s, v = %s)"
        % ("pass" if report.ok_b else "FAIL", report.b_value, report.v)
    )
    ok = report.ok
    if b is not None:
        growth = verify_growth(b, r, cert)
        if growth.ok:
            print("ledger: %d lines, all pass" % len(growth.lines))
        else:
            fail = growth.first_failure
            print(
                "ledger: FAIL %s at n=%d (%s < %s)"
                % (fail.kind, fail.n, fail.lhs, fail.rhs)
            )
        ok = ok and growth.ok
    return 0 if ok else 1


def cmd_jcount(args) -> int:
    q, n = args.q, args.n
    if q >= 2 and n >= 1:
        # cost gate: result size in bits, from Stirling (gate only, not a verdict)
        bits = (lgamma(n + q) - lgamma(n + 1) - lgamma(q)) / log(2)
        if bits > 2_000_000:
            raise TooLarge(
                "|J(%d, %d)| needs about %d bits; refusing to materialize" % (q, n, int(bits))
            )
    print("%d" % weak_tuple_count(q, n))
    if args.list:
        for tup in weak_tuples(q, n, cap=args.enum_cap):
            print(",".join(map(str, tup)))
    return 0


def cmd_symfun(args) -> int:
    j = _parse_tuple(args.j)
    if args.d is not None or args.c is not None:
        if args.d is None or args.c is None:
            raise InvalidParams("--d and --c go together")
        field = parse_field(args.field)
        window = monomial_window(args.d, args.c, cap=args.enum_cap)
        validate_weak_tuple(j, window.q)
        print("q = %d" % window.q)
        print("orbit size = %d" % orbit_size(j))
        h = window_generator(j, window, field, cap=args.enum_cap)
        print("h = %s" % poly_str(h))
    else:
        if args.q is None:
            raise InvalidParams("need --q, or --d with --c")
        validate_weak_tuple(j, args.q)
        print("q = %d" % args.q)
        print("orbit size = %d" % orbit_size(j))
    return 0


# -- parser ------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsalg",
        description="Graded dimension tables, growth certificates, and the "
        "block generator construction for quotients of free algebras.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("dims", help="dimension table of a finitely generated graded ideal")
    p.add_argument("--gens", required=True, help="generator file, one polynomial per line")
    p.add_argument("--d", type=int, required=True, help="number of variables")
    p.add_argument("--maxdeg", type=int, required=True, help="largest degree to tabulate")
    p.add_argument("--field", default="gf2", help="gf2 | gf<p> | q (default gf2)")
    p.add_argument("--csv", help="also write the CSV table to this path")
    p.add_argument("--json", help="also write the JSON report to this path")
    p.add_argument("--column-cap", type=int, default=DEFAULT_COLUMN_CAP,
                   help="refuse tables wider than this many columns")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("construct", help="build a block blueprint")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", help="accuracy parameter as a/b (required outside toy mode)")
    p.add_argument("--blocks", type=int, default=1)
    p.add_argument("--mode", choices=("symbolic", "dense"), default="symbolic")
    p.add_argument("--toy-c", type=int, dest="toy_c", help="toy window degree cap")
    p.add_argument("--toy-n", type=int, dest="toy_n", help="toy block degree")
    p.add_argument("--field", help="coefficient field for dense mode (default gf2)")
    p.add_argument("--out", help="write the blueprint JSON here")
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("nilcheck", help="nil-exponent certificate for a polynomial")
    p.add_argument("--blueprint", required=True, help="blueprint JSON path")
    p.add_argument("--g", required=True, help="polynomial in the text grammar")
    p.add_argument("--field", help="coefficient field (defaults to the blueprint's)")
    p.add_argument("--verify", action="store_true",
                   help="verify the membership g**n in the ideal (dense blueprints)")
    p.add_argument("--column-cap", type=int, default=DEFAULT_COLUMN_CAP)
    p.set_defaults(func=cmd_nilcheck)

    p = sub.add_parser("bound", help="certificate conditions and the growth ledger")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", help="derive (v, c, u) = (eps, eps^2, d-2*eps)")
    p.add_argument("--v", help="certificate v as a/b")
    p.add_argument("--c", help="certificate c as a/b")
    p.add_argument("--u", help="certificate u as a/b")
    p.add_argument("--r", help="generator counts 'deg:count,deg:count'")
    p.add_argument("--r-from", dest="r_from", help="read r from a blueprint JSON")
    p.add_argument("--b", help="dimension sequence 'b0,b1,...'")
    p.add_argument("--b-json", dest="b_json",
                   help="read the b sequence from a JSON list or dims report")
    p.add_argument("--range", type=int, help="largest degree for condition (a)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("jcount", help="number of weakly increasing index tuples")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="also enumerate the tuples")
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_jcount)

    p = sub.add_parser("symfun", help="orbit size and window generator of an index tuple")
    p.add_argument("--j", required=True, help="weakly increasing tuple '1,1,3'")
    p.add_argument("--q", type=int, help="index range (abstract mode)")
    p.add_argument("--d", type=int, help="number of variables (window mode)")
    p.add_argument("--c", type=int, help="window degree cap (window mode)")
    p.add_argument("--field", default="gf2")
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.set_defaults(func=cmd_symfun)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except DimensionBoundViolated as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except GsalgError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
