"""``uqsym`` command line.

Exit codes: 0 success, 1 a check failed, 2 usage or unknown identifier,
3 parse error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import actionfile, catalog
from .action import ScalingMap, check_iso
from .catalog import UnknownFamily
from .compat import PairCache, build_graph, enumerate_labelings, export_dot
from .expr import ParseError, parse_scalar
from .limit import PoleAtOne, SignObstruction, UnboundParameter, classical_limit, verify_lie
from .qspace import QSpace
from .relations import extract_constraints, verify
from .solve import enumerate_patterns, solve_pattern
from .coeff import format_param

OK, FAILED, USAGE, PARSE, IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _q_value(text):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--q expects a rational number, got {text!r}")
    if q == 0 or abs(q) == 1:
        raise UsageError("--q must be nonzero with |q| != 1")
    return q


def _bindings(items, params):
    out = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"--bind expects NAME=EXPR, got {item!r}")
        if name not in params:
            raise UsageError(f"unknown parameter {name!r}")
        out[name] = parse_scalar(val, params)
    return out


def _load(args, path):
    fam = actionfile.load(path)
    b = _bindings(getattr(args, "bind", None), fam.params)
    if b:
        fam = fam.substitute(b)
    if args.q is not None:
        fam = fam.at_q(args.q)
    return fam


def _out(lines):
    sys.stdout.write("".join(line + "\n" for line in lines))


def cmd_verify(args):
    fam = _load(args, args.file)
    rep = verify(fam)
    lines = rep.lines(failures_only=args.failures_only)
    bad = len(rep.failures())
    lines.append(f"checked {len(rep.residuals)} residuals, {bad} nonzero")
    lines.append("PASSED" if rep.passed else "FAILED")
    _out(lines)
    return OK if rep.passed else FAILED


def cmd_constraints(args):
    fam = _load(args, args.file)
    rep = verify(fam)
    cons = extract_constraints(rep)
    if not cons:
        _out(["no constraints"])
        return OK
    inv = fam.invertible()
    lines = [f"{format_param(c)} = 0" for c in cons]
    hopeless = [c for c in cons if not (c.params() - inv)]
    if hopeless:
        lines.append("unsatisfiable: some constraint involves no optional parameter")
        _out(lines)
        return FAILED
    _out(lines)
    return OK


def _default_tags(space, n):
    if space == "aq2":
        return list(catalog.AQ2_GRAPH_TAGS)
    if space == "aq3":
        return list(catalog.AQ3_STAR_TAGS + catalog.AQ3_PRIMED_TAGS)
    if space == "aqn":
        return list(catalog.aqn_tags(n))
    raise UsageError(f"unknown space {space!r} (expected aq2, aq3 or aqn)")


def _rank(space, n):
    if space == "aq2":
        return 2
    if space == "aq3":
        return 3
    if n is None or n < 2:
        raise UsageError("space aqn needs --n >= 2")
    return n


def _cache(args, space):
    n = _rank(space, args.n)
    sp = QSpace(n, args.q) if args.q is not None else None
    return PairCache(args.n if space == "aqn" else None, space=sp)


def _qualify(space, tags):
    return [t if "/" in t and t.split("/", 1)[0] in ("aq2", "aq3", "aqn") else f"{space}/{t}" for t in tags]


def cmd_compat(args):
    _rank(args.space, args.n)
    tags = _qualify(args.space, args.tags) if args.tags else _default_tags(args.space, args.n)
    n = args.n if args.space == "aqn" else None
    g = build_graph(tags, n, _cache(args, args.space))
    lines = ["vertices: " + " ".join(g.names)]
    for (i, j), r in sorted(g.results.items()):
        lines.append(f"{g.names[i]} -- {g.names[j]}: {r}")
    lines.append(f"edges: {len(g.edges)}")
    _out(lines)
    if args.dot:
        Path(args.dot).write_text(export_dot(g), encoding="utf-8")
    return OK


def cmd_enumerate(args):
    if args.m < 1:
        raise UsageError("--m must be positive")
    n = args.n if args.space == "aqn" else None
    _rank(args.space, args.n)
    tags = catalog.catalog_tags(args.space, n)
    labs = enumerate_labelings(args.m, tags, n, _cache(args, args.space))
    trivial = [lab for lab in labs if all(catalog.entry(t, n).trivial for t in lab)]
    rest = [lab for lab in labs if lab not in trivial]
    groups = []
    for lab in rest:
        for g in groups:
            if tuple(reversed(lab)) in g:
                g.append(lab)
                break
        else:
            groups.append([lab])
    lines = []
    k = 0
    if trivial:
        k += 1
        lines.append(f"family {k}: trivial on every vertex ({len(trivial)} sign labelings)")
        if args.all:
            lines += ["  " + " ".join(lab) for lab in trivial]
    for g in groups:
        k += 1
        lines.append(f"family {k}: {len(g)} orientation{'s' if len(g) > 1 else ''}")
        lines += ["  " + " ".join(lab) for lab in g]
    lines.append(f"total: {k} families, {len(labs)} labelings")
    _out(lines)
    return OK


def cmd_classify(args):
    ps = enumerate_patterns(args.n)
    try:
        p = ps.by_name(args.pattern)
    except KeyError:
        raise UsageError(f"no pattern {args.pattern!r} for n = {args.n}")
    res = solve_pattern(p, args.degree)
    lines = [str(p)]
    for i, fam in enumerate(res.families, 1):
        lines.append(f"solution {i}: parameters {', '.join(sorted(fam.free_params())) or '-'}")
        lines += ["  " + s for s in fam.describe().splitlines()]
    for fam, eqs in res.constraints:
        lines.append("unresolved: " + ", ".join(f"{format_param(c)} = 0" for c in eqs))
    lines.append(f"{len(res.families)} solutions")
    _out(lines)
    return OK


def cmd_limit(args):
    if args.q is not None:
        raise UsageError("limit works with symbolic q only")
    fam = _load(args, args.file)
    try:
        lie = classical_limit(fam)
    except UnboundParameter as exc:
        raise UsageError(str(exc))
    except (SignObstruction, PoleAtOne) as exc:
        _out([f"no classical limit: {exc}"])
        return FAILED
    rep = verify_lie(lie)
    lines = lie.describe().splitlines()
    lines += rep.lines(failures_only=args.failures_only)
    lines.append("PASSED" if rep.passed else "FAILED")
    _out(lines)
    return OK if rep.passed else FAILED


def cmd_iso(args):
    f1, f2 = _load(args, args.file1), _load(args, args.file2)
    params = {**f1.params, **f2.params}
    psi = ScalingMap(tuple(parse_scalar(s, params) for s in args.scale))
    if len(psi.factors) != f1.n:
        raise UsageError(f"--scale needs {f1.n} factors")
    ok, where = check_iso(f1, f2, psi)
    if ok:
        _out(["isomorphic"])
        return OK
    t, gen, i = where
    at = "k" if gen == "k" else f"{gen}(x{i})"
    _out([f"not isomorphic: vertex {t} differs at {at}"])
    return FAILED


def cmd_catalog(args):
    if args.emit:
        tag = args.emit
        if args.series is not None:
            fam = catalog.make_series_vertex(tag, args.series)
        else:
            fam = catalog.general_family(tag, args.n)
        if args.q is not None:
            fam = fam.at_q(args.q)
        text = actionfile.dumps(fam)
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return OK
    _out(catalog.list_ids(args.n or 4))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="uqsym", description="U_q(sl(m+1)) module-algebra structures on quantum n-spaces")
    ap.add_argument("--q", type=str, default=None, help="evaluate at a rational q (|q| != 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_bind(p):
        p.add_argument("--bind", action="append", metavar="NAME=EXPR", help="fix a parameter before checking")

    p = sub.add_parser("verify", help="check every defining relation")
    p.add_argument("file")
    p.add_argument("--failures-only", action="store_true")
    with_bind(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("constraints", help="parameter constraints from nonzero residuals")
    p.add_argument("file")
    with_bind(p)
    p.set_defaults(func=cmd_constraints)

    p = sub.add_parser("compat", help="pairwise compatibility graph")
    p.add_argument("space", choices=("aq2", "aq3", "aqn"))
    p.add_argument("--tags", nargs="+")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_compat)

    p = sub.add_parser("enumerate", help="labelings of the Dynkin path")
    p.add_argument("space", choices=("aq2", "aq3", "aqn"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--all", action="store_true", help="also list trivial sign labelings")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="solve a weight pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--degree", type=int, default=6)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("limit", help="classical limit q -> 1")
    p.add_argument("file")
    p.add_argument("--failures-only", action="store_true")
    with_bind(p)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("iso", help="check a diagonal isomorphism")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--scale", nargs="+", required=True)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("catalog", help="list or emit catalog entries")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--emit", metavar="ID")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--series", type=int, default=None, metavar="DEGREE",
                   help="emit the series solution truncated at DEGREE")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        if args.q is not None:
            args.q = _q_value(args.q)
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return IO
    except UnknownFamily as exc:
        print(f"error: unknown identifier {exc.args[0] if exc.args else ''}", file=sys.stderr)
        return USAGE
    except (UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
