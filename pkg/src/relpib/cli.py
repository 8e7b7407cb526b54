"""Command-line interface.

Exit codes: 0 success, 1 non-disputed discrepancy, 2 usage error,
3 internal invariant failure.  Every error also prints one line of the form
``relpib-error code=<n> kind=<kind> message=<json string>`` on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import __version__
from .families import get_family, irreducibility_screen, minpoly, resolvent_factorization, thue_form
from .numeric import PrecisionError
from .quartic_forms import EQUATION_ORDER, GeneratorTriple, build_forms, index_form_value
from .ring import ParseError, RingError, RingSpec, format_elt, parse
from .search import (
    ReducibleError,
    brute_force_box,
    reduce_instance,
    triple_strings,
    verify_theorem,
)
from .thue import solve_bounded

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _diagnostic(code: int, kind: str, message: str) -> None:
    print(f"relpib-error code={code} kind={kind} message={json.dumps(message)}", file=sys.stderr)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _diagnostic(EXIT_USAGE, "usage", message)
        raise SystemExit(EXIT_USAGE)


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, help="I, II, III (or 1, 2, 3)")
    p.add_argument("--D", type=int, default=1, help="squarefree D > 0 of M = Q(sqrt(-D))")
    p.add_argument("--t", required=True, help="parameter, e.g. 3, 1+2*w, -4*w")


def _format_arg(p: argparse.ArgumentParser, default: str) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default=default)
    p.add_argument("--output", help="write the primary output to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="relpib", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"relpib {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("forms", help="print F, Q1, Q2 and the resolvent factorization")
    _instance_args(p)
    _format_arg(p, "text")

    p = sub.add_parser("thue", help="bounded Thue search")
    _instance_args(p)
    p.add_argument("--qnorm-bound", type=int, required=True)
    p.add_argument("--rhs", help="comma-separated units to restrict the right-hand side")
    p.add_argument("--shards", type=int, default=1)
    _format_arg(p, "text")

    p = sub.add_parser("generators", help="generators of relative power integral bases")
    _instance_args(p)
    p.add_argument("--qnorm-bound", type=int, required=True)
    p.add_argument("--rhs", help="comma-separated units to restrict the right-hand side")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--self-check", action="store_true", help="re-verify every printed triple")
    _format_arg(p, "text")

    p = sub.add_parser("verify", help="reproduce a theorem and write a report")
    p.add_argument("--theorem", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--t-max", type=int, help="theorem 3: max |t|; theorem 4: max t")
    p.add_argument("--sample", action="append", metavar="D:T",
                   help="sample parameter for theorems 1-4, repeatable, e.g. 3:250+3*w")
    p.add_argument("--qnorm-bound", type=int)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--no-timings", action="store_true", help="report 0.0 seconds everywhere")
    _format_arg(p, "json")

    p = sub.add_parser("brute", help="brute-force oracle over a coordinate box")
    _instance_args(p)
    p.add_argument("--box", type=int, required=True, help="bound on the norm of x, y and z")
    _format_arg(p, "text")

    p = sub.add_parser("index", help="index form value of x*xi + y*xi^2 + z*xi^3")
    _instance_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    _format_arg(p, "text")
    return parser


def _ring(args) -> RingSpec:
    try:
        return RingSpec(args.D)
    except RingError as e:
        raise UsageError(str(e)) from e


def _elt(text: str, ring: RingSpec, name: str):
    try:
        return parse(text, ring)
    except ParseError as e:
        raise UsageError(f"--{name}: {e}") from e


def _instance(args):
    ring = _ring(args)
    try:
        family = get_family(args.family)
    except KeyError as e:
        raise UsageError(e.args[0]) from e
    try:
        family.check_ring(ring)
    except RingError as e:
        raise UsageError(str(e)) from e
    return family, ring, _elt(args.t, ring, "t")


def _rhs(args, ring):
    if not args.rhs:
        return None
    units = [_elt(s, ring, "rhs") for s in args.rhs.split(",")]
    if not all(u.is_unit() for u in units):
        raise UsageError("--rhs accepts units only")
    return units


def _header(family, ring, t) -> str:
    return f"# D={ring.D} family={family.id} t={format_elt(t)}"


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def cmd_forms(args) -> tuple[str, int]:
    family, ring, t = _instance(args)
    forms = build_forms(minpoly(family, t))
    F, Q1, Q2 = forms
    fmt = {
        "D": ring.D,
        "family": family.id,
        "t": format_elt(t),
        "f": [format_elt(c) for c in minpoly(family, t).coefficients],
        "F": [format_elt(c) for c in (F.c30, F.c21, F.c12, F.c03)],
        "Q1": [format_elt(c) for c in (Q1.xx, Q1.xy, Q1.yy, Q1.xz, Q1.yz, Q1.zz)],
        "Q2": [format_elt(c) for c in (Q2.xx, Q2.xy, Q2.yy, Q2.xz, Q2.yz, Q2.zz)],
        "thue": [format_elt(c) for c in thue_form(family, t).coefficients],
        "irreducible": irreducibility_screen(family, t),
    }
    factors = resolvent_factorization(family, RingSpec(family.required_D or ring.D))
    fmt["factorization"] = [str(f) for f in factors]
    if args.format == "json":
        return _dump(fmt), EXIT_OK
    if args.format == "csv":
        return _csv([[k, " ".join(v) if isinstance(v, list) else v] for k, v in fmt.items()],
                    ["field", "value"]), EXIT_OK
    lines = [_header(family, ring, t),
             "f(x)  = x^4 + ({}) x^3 + ({}) x^2 + ({}) x + ({})".format(*fmt["f"]),
             "F(u,v) coefficients on u^3, u^2v, uv^2, v^3: " + ", ".join(fmt["F"]),
             "Q1 coefficients on x^2, xy, y^2, xz, yz, z^2: " + ", ".join(fmt["Q1"]),
             "Q2 coefficients on x^2, xy, y^2, xz, yz, z^2: " + ", ".join(fmt["Q2"]),
             "F(U,V) = " + " * ".join(f"({f})" for f in fmt["factorization"]) + "  (formal in T)",
             "Thue form coefficients on p^4 .. q^4: " + ", ".join(fmt["thue"]),
             f"irreducible over M: {fmt['irreducible']}"]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_thue(args) -> tuple[str, int]:
    family, ring, t = _instance(args)
    sols = solve_bounded(thue_form(family, t), ring, args.qnorm_bound, _rhs(args, ring),
                         shards=args.shards, parallel=args.shards > 1)
    rows = [[format_elt(s.p), format_elt(s.q), format_elt(s.rhs)] for s in sols]
    if args.format == "json":
        return _dump({"D": ring.D, "family": family.id, "t": format_elt(t),
                      "qnorm_bound": args.qnorm_bound,
                      "solutions": [dict(zip(("p", "q", "rhs"), r)) for r in rows]}), EXIT_OK
    if args.format == "csv":
        return _csv(rows, ["p", "q", "rhs"]), EXIT_OK
    lines = [_header(family, ring, t), f"# qnorm_bound={args.qnorm_bound} classes={len(rows)}"]
    lines += [f"(p, q) = ({r[0]}, {r[1]})  form value {r[2]}" for r in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_generators(args) -> tuple[str, int]:
    family, ring, t = _instance(args)
    try:
        result = reduce_instance(family, t, args.qnorm_bound, _rhs(args, ring), shards=args.shards)
    except ReducibleError as e:
        raise UsageError(str(e)) from e
    gens = result.generators
    if args.self_check:
        forms = build_forms(minpoly(family, t))
        for g in gens:
            if index_form_value(forms, g).norm() != EQUATION_ORDER.target_norm:
                raise AssertionError(f"self-check failed for {g}")
    rows = [triple_strings(g) for g in gens]
    if args.format == "json":
        return _dump({"D": ring.D, "family": family.id, "t": format_elt(t),
                      "qnorm_bound": args.qnorm_bound, "generators": rows}), EXIT_OK
    if args.format == "csv":
        return _csv(rows, ["x", "y", "z"]), EXIT_OK
    lines = [_header(family, ring, t), f"# qnorm_bound={args.qnorm_bound} classes={len(rows)}"]
    lines += [f"alpha = ({r[0]}) xi + ({r[1]}) xi^2 + ({r[2]}) xi^3" for r in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def _samples(args):
    out = []
    for s in args.sample or []:
        D, sep, text = s.partition(":")
        if not sep:
            raise UsageError(f"--sample expects D:T, got {s!r}")
        try:
            ring = RingSpec(int(D))
        except (ValueError, RingError) as e:
            raise UsageError(f"--sample {s!r}: {e}") from e
        out.append(_elt(text, ring, "sample"))
    return out or None


def cmd_verify(args) -> tuple[str, int]:
    report = verify_theorem(args.theorem, t_max=args.t_max, samples=_samples(args),
                            qnorm_bound=args.qnorm_bound, shards=args.shards,
                            timings=not args.no_timings)
    if args.format == "json":
        text = report.to_json()
    elif args.format == "csv":
        text = report.to_csv()
    else:
        text = report.to_text()
    for d in report.discrepancies():
        logging.getLogger("relpib").warning("discrepancy: %s", d)
    return text, EXIT_OK if report.ok else EXIT_DISCREPANCY


def cmd_brute(args) -> tuple[str, int]:
    family, ring, t = _instance(args)
    try:
        gens = brute_force_box(family, t, args.box)
    except ValueError as e:
        raise UsageError(str(e)) from e
    rows = [triple_strings(g) for g in gens]
    if args.format == "json":
        return _dump({"D": ring.D, "family": family.id, "t": format_elt(t), "box": args.box,
                      "generators": rows}), EXIT_OK
    if args.format == "csv":
        return _csv(rows, ["x", "y", "z"]), EXIT_OK
    lines = [_header(family, ring, t), f"# box={args.box} classes={len(rows)}"]
    lines += [f"({r[0]}, {r[1]}, {r[2]})" for r in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_index(args) -> tuple[str, int]:
    family, ring, t = _instance(args)
    g = GeneratorTriple(_elt(args.x, ring, "x"), _elt(args.y, ring, "y"), _elt(args.z, ring, "z"))
    if not any(g):
        raise UsageError("the triple (x, y, z) must not be zero")
    forms = build_forms(minpoly(family, t))
    value = index_form_value(forms, g)
    verdict = value.norm() == EQUATION_ORDER.target_norm
    data = {"D": ring.D, "family": family.id, "t": format_elt(t), "triple": triple_strings(g),
            "Q1": format_elt(forms.Q1(*g)), "Q2": format_elt(forms.Q2(*g)),
            "value": format_elt(value), "norm": str(value.norm()), "index_one": verdict}
    if args.format == "json":
        return _dump(data), EXIT_OK
    if args.format == "csv":
        return _csv([[data[k] if not isinstance(data[k], list) else " ".join(data[k]) for k in data]],
                    list(data)), EXIT_OK
    lines = [_header(family, ring, t),
             f"Q1 = {data['Q1']}  Q2 = {data['Q2']}",
             f"index form value F(Q1, Q2) = {data['value']}  (norm {data['norm']})",
             f"relative index one: {str(verdict).lower()}"]
    return "\n".join(lines) + "\n", EXIT_OK


COMMANDS = {
    "forms": cmd_forms,
    "thue": cmd_thue,
    "generators": cmd_generators,
    "verify": cmd_verify,
    "brute": cmd_brute,
    "index": cmd_index,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        if getattr(args, "shards", 1) < 1:
            raise UsageError("--shards must be at least 1")
        if (getattr(args, "qnorm_bound", None) or 0) < 0:
            raise UsageError("--qnorm-bound must be nonnegative")
        text, code = COMMANDS[args.command](args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        _diagnostic(EXIT_USAGE, "usage", str(e))
        return EXIT_USAGE
    except (AssertionError, ArithmeticError, PrecisionError) as e:
        _diagnostic(EXIT_INTERNAL, "internal", f"{type(e).__name__}: {e}")
        return EXIT_INTERNAL
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_DISCREPANCY:
        _diagnostic(code, "discrepancy", "report contains non-disputed discrepancies")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
