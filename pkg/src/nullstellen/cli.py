"""Command line front end.

Exit codes: 0 for success or a "yes" verdict, 1 for a "no" verdict or a
domain error (non-rational point, invalid certificate, ...), 2 for usage,
parse and file errors. Errors go to stderr as ``error:<kind>:<message>``.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from pathlib import Path

from . import extension as ext
from . import nullstellensatz as nss
from .errors import AlgebraError, IdealFileError, ParseError, UnknownVariable
from .groebner import Ideal, eliminate, intersect, is_member
from .parser import IdealFile, format_point, format_scalar, load_ideal, parse_point, parse_poly, print_poly
from .ring import ORDER_KINDS, MonomialOrder, varset
from .univariate import RationalFunction

YES, NO, USAGE = 0, 1, 2


class UsageError(Exception):
    kind = "usage"


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ideal(path: str, order: str | None = None) -> Ideal:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IdealFileError(f"cannot read {path}: {exc.strerror}") from None
    return load_ideal(IdealFile.from_json(text), order)


def _names(text: str) -> tuple[str, ...]:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def _print_basis(out, elements, order) -> None:
    if not elements:
        print("0", file=out)
    for g in elements:
        print(print_poly(g, order), file=out)


def cmd_gb(args, out):
    a = _ideal(args.ideal, args.order)
    _print_basis(out, a.gb.elements, a.order)
    return YES


def cmd_member(args, out):
    a = _ideal(args.ideal, args.order)
    found = is_member(parse_poly(args.f, a.vars), a)
    print("MEMBER" if found else "NOT MEMBER", file=out)
    return YES if found else NO


def cmd_eliminate(args, out):
    a = _ideal(args.ideal, args.order)
    keep = _names(args.keep)
    unknown = set(keep) - set(a.vars)
    if unknown:
        raise UnknownVariable(f"cannot keep unknown variables {sorted(unknown)}")
    c = eliminate(a, keep)
    _print_basis(out, c.gb.elements, c.order)
    return YES


def cmd_intersect(args, out):
    a = _ideal(args.ideal, args.order)
    b = _ideal(args.other, args.order)
    if set(a.vars) != set(b.vars):
        raise IdealFileError("both ideal files must declare the same variables")
    c = intersect(a, b.with_order(a.order))
    _print_basis(out, c.gb.elements, c.order)
    return YES


def cmd_solvable(args, out):
    ok = nss.solvable(_ideal(args.ideal, args.order))
    print("SOLVABLE" if ok else "UNSOLVABLE", file=out)
    return YES if ok else NO


def cmd_radmember(args, out):
    a = _ideal(args.ideal, args.order)
    f = parse_poly(args.f, a.vars)
    if not nss.radical_member(f, a):
        print("NOT MEMBER", file=out)
        return NO
    n = nss.least_power_in(f, a, args.bound)
    print("MEMBER exponent>bound" if n is None else f"MEMBER exponent<=N-check:{n}", file=out)
    return YES


def cmd_variety(args, out):
    a = _ideal(args.ideal, args.order)
    res = nss.variety_points(a)
    if res.tag == res.EMPTY:
        print("EMPTY", file=out)
    elif res.tag == res.NOT_ZERO_DIMENSIONAL:
        print("NOT ZERO-DIMENSIONAL", file=out)
    elif res.tag == res.NON_RATIONAL:
        print(f"NONRATIONAL {print_poly(res.witness)}", file=out)
    else:
        for p in res.points:
            print(format_point(p, res.variables), file=out)
    return YES


def _points(args) -> tuple[list[dict[str, Fraction]], tuple[str, ...]]:
    points = [parse_point(p) for p in args.point]
    vars = _names(args.vars) if args.vars else varset(v for p in points for v in p)
    return points, vars


def cmd_vanish(args, out):
    points, vars = _points(args)
    b = nss.vanishing_ideal(points, vars, MonomialOrder(args.order or "grevlex", vars))
    _print_basis(out, b.gb.elements, b.order)
    return YES


def cmd_point_ideal(args, out):
    points, vars = _points(args)
    if len(points) != 1:
        raise UsageError("point-ideal takes exactly one --point")
    m = nss.point_ideal(points[0], vars, MonomialOrder(args.order or "grevlex", vars))
    _print_basis(out, m.gb.elements, m.order)
    return YES


def cmd_maximal_point(args, out):
    m = _ideal(args.ideal, args.order)
    x = nss.maximal_point(m)
    print(format_point(x, m.order.variables), file=out)
    return YES


def cmd_statement_f(args, out):
    m = _ideal(args.ideal, args.order)
    keep = _names(args.keep)
    unknown = set(keep) - set(m.vars)
    if unknown:
        raise UnknownVariable(f"unknown variables {sorted(unknown)}")
    ok, x = nss.check_statement_f(m, keep)
    if ok:
        seq = [v for v in m.order.variables if v in x]
        print(f"TRUE {format_point(x, seq)}".rstrip(), file=out)
        return YES
    print("FALSE", file=out)
    return NO


def cmd_strong_nss(args, out):
    ok = nss.strong_nss_check(_ideal(args.ideal, args.order))
    print("HOLDS" if ok else "FAILS", file=out)
    return YES if ok else NO


def cmd_extend_check(args, out):
    a = _ideal(args.ideal, args.order)
    J = varset(set(_names(args.vars)) | set(a.vars))
    try:
        lines = Path(args.probes).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise IdealFileError(f"cannot read {args.probes}: {exc.strerror}") from None
    probes = [parse_poly(line, J) for line in lines if line.strip() and not line.lstrip().startswith("#")]
    ok = ext.corollary_check(a, J, probes, args.bound)
    print("CONSISTENT" if ok else "INCONSISTENT", file=out)
    return YES if ok else NO


def cmd_cylinder(args, out):
    points, _ = _points(args)
    J = varset(set(_names(args.vars)) | {v for p in points for v in p})
    f = parse_poly(args.f, J)
    ok = ext.cylinder_membership(f, points, J)
    print("MEMBER" if ok else "NOT MEMBER", file=out)
    return YES if ok else NO


def _load_certificate(path: str) -> ext.Claim5Certificate:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        var = data["var"]
        vars = data.get("vars", [var])
        entries = [(Fraction(e["z"]), Fraction(e["lambda"]), parse_poly(e["m"], vars), parse_poly(e["g"], vars))
                   for e in data["entries"]]
    except OSError as exc:
        raise IdealFileError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise IdealFileError(f"malformed certificate: {exc}") from None
    return ext.Claim5Certificate.build(var, entries)


def cmd_claim5(args, out):
    cert = _load_certificate(args.certificate)
    g = ext.claim5_construct(cert)
    z1 = cert.entries[0].z
    order = MonomialOrder("grevlex", (cert.var,))
    print(print_poly(g, order), file=out)
    print(f"g({format_point({cert.var: z1})}) = {print_poly(g.evaluate({cert.var: z1}))}", file=out)
    return YES


def cmd_claim3(args, out):
    num = parse_poly(args.num, [args.var])
    den = parse_poly(args.den, [args.var])
    r = RationalFunction(num, den, args.var)
    fac = ext.claim3_factor(r)
    print(f"scale {format_scalar(fac.scale)}", file=out)
    for root, k in fac.factors.items():
        print(f"root {format_scalar(root)} exponent {k}", file=out)
    poles = [root for root, k in fac.factors.items() if k < 0]
    names = {}
    n = 1
    for root in poles:
        while f"u{n}" == args.tj:
            n += 1
        names[root] = f"u{n}"
        n += 1
    f, g = ext.claim3_preimage(fac, args.tj, names)
    print(f"f = {print_poly(f)}", file=out)
    print(f"g = {print_poly(g)}", file=out)
    return YES


def build_parser() -> argparse.ArgumentParser:
    p = _ArgumentParser(prog="nullstellen", description="Exact Groebner-basis and Nullstellensatz checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add(name, fn, help, ideal=True, order=True):
        sp = sub.add_parser(name, help=help)
        if order:
            sp.add_argument("--order", choices=ORDER_KINDS)
        if ideal:
            sp.add_argument("ideal", help="ideal file (JSON)")
        sp.set_defaults(func=fn)
        return sp

    add("gb", cmd_gb, "print the reduced Groebner basis")
    add("member", cmd_member, "ideal membership").add_argument("--f", required=True)
    add("eliminate", cmd_eliminate, "contraction to a subset of the variables").add_argument("--keep", required=True)
    add("intersect", cmd_intersect, "intersection of two ideals").add_argument("other", help="second ideal file")
    add("solvable", cmd_solvable, "weak Nullstellensatz: is the variety nonempty?")
    sp = add("radmember", cmd_radmember, "radical membership (Rabinowitsch)")
    sp.add_argument("--f", required=True)
    sp.add_argument("--bound", type=int, default=nss.DEFAULT_POWER_BOUND)
    add("variety", cmd_variety, "rational points of a zero-dimensional ideal")
    for name, fn, help in (("vanish", cmd_vanish, "vanishing ideal of points"),
                           ("point-ideal", cmd_point_ideal, "maximal ideal of a point")):
        sp = add(name, fn, help, ideal=False)
        sp.add_argument("--point", action="append", required=True, help='e.g. "x=1,y=2/3"')
        sp.add_argument("--vars")
    add("maximal-point", cmd_maximal_point, "recover x from m = m_x")
    add("statement-f", cmd_statement_f, "contraction shape check").add_argument("--keep", required=True)
    add("strong-nss", cmd_strong_nss, "certify I(V(a)) = rad(a)")
    sp = add("extend-check", cmd_extend_check, "radical membership under ring extension")
    sp.add_argument("--vars", required=True, help="variables of the larger ring")
    sp.add_argument("--probes", required=True, help="file with one polynomial per line")
    sp.add_argument("--bound", type=int, default=nss.DEFAULT_POWER_BOUND)
    sp = add("cylinder", cmd_cylinder, "vanishing on a cylinder over points", ideal=False, order=False)
    sp.add_argument("--f", required=True)
    sp.add_argument("--point", action="append", required=True)
    sp.add_argument("--vars", default="", help="variables of the larger ring")
    sp = add("claim5", cmd_claim5, "verify a linear-relation certificate", ideal=False, order=False)
    sp.add_argument("certificate", help="certificate file (JSON)")
    sp = add("claim3", cmd_claim3, "split a rational function and build its preimage", ideal=False, order=False)
    sp.add_argument("--num", required=True)
    sp.add_argument("--den", default="1")
    sp.add_argument("--var", default="s")
    sp.add_argument("--tj", default="t")
    return p


def run(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stderr(err), redirect_stdout(out):
            args = build_parser().parse_args(argv)
        code = args.func(args, out)
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else USAGE
    except (UsageError, ParseError, UnknownVariable, IdealFileError) as exc:
        err.write(f"error:{exc.kind}:{exc}\n")
        code = USAGE
    except AlgebraError as exc:
        kind = exc.kind
        if getattr(exc, "reason", None) and kind == "not-checkable":
            kind = f"{kind}:{exc.reason}"
        err.write(f"error:{kind}:{exc}\n")
        code = NO
    return code, out.getvalue(), err.getvalue()


def main(argv: list[str] | None = None) -> int:
    code, stdout, stderr = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(stdout)
    sys.stderr.write(stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
