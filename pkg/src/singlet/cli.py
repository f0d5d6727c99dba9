"""Command-line front end.

Global flags select the algebra (``--p``, optional ``--m``), the output
format, and the character truncation order; subcommands dispatch to the
library.  Exit codes: 0 success, 1 user error (bad flags, syntax/semantic
errors, domain errors, failing check suites), 2 internal invariant
violation.  JSON output is canonical and byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks
from .characters import ch_expr
from .errors import ExprSemanticError, SingletError
from .fusion import fuse
from .modules import (
    GenVerma,
    ModuleExpr,
    label,
    loewy_layers,
    lowest_weight,
    monodromy_phase_with_m21,
    t_grade,
    twist_phase,
    verma_quotient_factors,
)
from .modules import dual as dual_op
from .modules import k_class as k_class_op
from .orbifold import (
    OrbifoldParams,
    RProj,
    WSimple,
    induce as induce_op,
    list_simples,
    orbifold_char_expr,
    orbifold_fuse,
    orbifold_projective_cover,
)
from .parser import is_orbifold_expr, parse_expr
from .weights import Params

__all__ = ["main", "run_command"]

_DEFAULT_ORDER = 20


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="singlet", description=__doc__)
    parser.add_argument("--p", type=int, required=True, help="singlet parameter p >= 2")
    parser.add_argument("--m", type=int, default=None, help="cyclic orbifold order m >= 1")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument(
        "--order",
        type=int,
        default=None,
        help=f"character truncation order (default: $SINGLET_ORDER or {_DEFAULT_ORDER})",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def add(name, help_text, *positional):
        cmd = sub.add_parser(name, help=help_text)
        for arg, kind in positional:
            cmd.add_argument(arg, type=kind)
        return cmd

    add("fuse", "tensor product of two expressions", ("x", str), ("y", str))
    add("dual", "termwise contragredient of an expression", ("x", str))
    add("kclass", "composition factors as a Grothendieck class", ("x", str))
    add("factors", "composition factors of the generalized Verma quotient", ("r", int), ("s", int))
    add("loewy", "socle series of a single indecomposable", ("x", str))
    add("char", "truncated graded character of an expression", ("x", str))
    add("grade", "monodromy grading (coordinate mod 2) per summand", ("x", str))
    add("twist", "ribbon twist exponent per simple summand", ("x", str))
    add("monodromy", "monodromy exponent against the order-two current", ("x", str))
    add("verma", "structure report of the generalized Verma quotient", ("r", int), ("s", int))
    add("induce", "orbifold induction of a local expression (needs --m)", ("x", str))
    add("simples", "list the simple orbifold modules (needs --m)")
    add("orbfuse", "tensor product of two orbifold expressions (needs --m)", ("x", str), ("y", str))
    check = sub.add_parser("check", help="run built-in verification suites")
    check.add_argument("--suite", choices=checks.SUITE_NAMES + ("all",), default="all")
    return parser


def _resolve_order(args) -> int:
    if args.order is not None:
        order = args.order
    else:
        raw = os.environ.get("SINGLET_ORDER")
        if raw is None:
            return _DEFAULT_ORDER
        try:
            order = int(raw)
        except ValueError:
            raise SingletError(f"SINGLET_ORDER must be an integer, got {raw!r}") from None
    if order < 0:
        raise SingletError(f"truncation order must be >= 0, got {order}")
    return order


def _need_orbifold(args) -> OrbifoldParams:
    if args.m is None:
        raise SingletError(f"subcommand {args.command!r} requires --m")
    return OrbifoldParams(args.p, args.m)


def _orbifold_or_none(args) -> OrbifoldParams | None:
    return None if args.m is None else OrbifoldParams(args.p, args.m)


def _expr_json(expr: ModuleExpr):
    return expr.to_json()


def _layers_json(layers):
    return [[label(a) for a in layer] for layer in layers]


def _layers_text(layers) -> str:
    return " | ".join(", ".join(label(a) for a in layer) for layer in layers)


def _phase_table(expr: ModuleExpr, value_of) -> list[tuple[str, str]]:
    return [(label(atom), str(value_of(atom))) for atom, _ in expr.terms()]


def run_command(args) -> tuple[str, int]:
    """Execute a parsed command line; returns (rendered output, exit code)."""
    params = Params(args.p)
    as_json = args.format == "json"
    op = _orbifold_or_none(args)

    def render_expr(expr):
        return json.dumps(_expr_json(expr), separators=(",", ":")) if as_json else str(expr)

    def singlet_expr(text):
        expr = parse_expr(text, params, op)
        if is_orbifold_expr(expr):
            raise ExprSemanticError(
                f"{args.command} works on singlet expressions; use the orbifold subcommands"
            )
        return expr

    if args.command == "fuse":
        return render_expr(fuse(params, singlet_expr(args.x), singlet_expr(args.y))), 0

    if args.command == "dual":
        return render_expr(dual_op(params, singlet_expr(args.x))), 0

    if args.command == "kclass":
        return render_expr(k_class_op(params, singlet_expr(args.x))), 0

    if args.command == "factors":
        return render_expr(verma_quotient_factors(params, args.r, args.s)), 0

    if args.command == "loewy":
        expr = parse_expr(args.x, params, op)
        if expr.total() != 1:
            raise ExprSemanticError("loewy takes a single indecomposable label")
        atom = expr.atoms()[0]
        if is_orbifold_expr(expr):
            orb = _need_orbifold(args)
            if isinstance(atom, RProj):
                _, layers = orbifold_projective_cover(orb, WSimple(atom.r, atom.s))
            else:
                layers = [[atom]]
        else:
            layers = loewy_layers(params, atom)
        if as_json:
            return json.dumps({"layers": _layers_json(layers)}, separators=(",", ":")), 0
        return _layers_text(layers), 0

    if args.command == "char":
        order = _resolve_order(args)
        expr = parse_expr(args.x, params, op)
        if is_orbifold_expr(expr):
            result = orbifold_char_expr(_need_orbifold(args), expr, order)
        else:
            result = ch_expr(params, expr, order)
        if as_json:
            return json.dumps(result.to_json(), separators=(",", ":")), 0
        return "\n".join(str(s) for s in result.series()) or "0", 0

    if args.command in ("grade", "twist", "monodromy"):
        expr = singlet_expr(args.x)
        value_of = {
            "grade": lambda a: t_grade(params, a),
            "twist": lambda a: twist_phase(params, a).exponent,
            "monodromy": lambda a: monodromy_phase_with_m21(params, a).exponent,
        }[args.command]
        table = _phase_table(expr, value_of)
        if as_json:
            payload = [{"atom": atom, "value": value} for atom, value in table]
            return json.dumps(payload, separators=(",", ":")), 0
        return "\n".join(f"{atom}: {value}" for atom, value in table), 0

    if args.command == "verma":
        factors = verma_quotient_factors(params, args.r, args.s)
        layers = loewy_layers(params, GenVerma(args.r, args.s))
        h0 = lowest_weight(params, GenVerma(args.r, args.s))
        if as_json:
            payload = {
                "r": args.r,
                "s": args.s,
                "factors": _expr_json(factors),
                "layers": _layers_json(layers),
                "h0": str(h0),
            }
            return json.dumps(payload, separators=(",", ":")), 0
        return (
            f"G({args.r},{args.s}): factors = {factors}; layers = {_layers_text(layers)}; h0 = {h0}"
        ), 0

    if args.command == "induce":
        orb = _need_orbifold(args)
        return render_expr(induce_op(orb, singlet_expr(args.x))), 0

    if args.command == "simples":
        orb = _need_orbifold(args)
        labels = [label(a) for a in list_simples(orb)]
        if as_json:
            return json.dumps(labels, separators=(",", ":")), 0
        return "\n".join(labels), 0

    if args.command == "orbfuse":
        orb = _need_orbifold(args)
        x = parse_expr(args.x, params, orb)
        y = parse_expr(args.y, params, orb)
        if not (is_orbifold_expr(x) and is_orbifold_expr(y)):
            raise ExprSemanticError("orbfuse works on orbifold expressions; use fuse")
        return render_expr(orbifold_fuse(orb, x, y)), 0

    if args.command == "check":
        order = args.order if args.order is not None else 40
        names = checks.SUITE_NAMES if args.suite == "all" else (args.suite,)
        results = checks.run_suites(names, params, m=args.m, order=order)
        ok = all(r.ok for r in results)
        if as_json:
            payload = {
                "ok": ok,
                "suites": [
                    {"name": r.name, "cases": r.cases, "failures": r.failures} for r in results
                ],
            }
            return json.dumps(payload, separators=(",", ":")), 0 if ok else 1
        lines = [
            f"{r.name}: {r.cases} cases, {len(r.failures)} failures" for r in results
        ]
        for r in results:
            lines.extend(f"  FAIL {r.name}: {f}" for f in r.failures)
        lines.append("PASS" if ok else "FAIL")
        return "\n".join(lines), 0 if ok else 1

    raise _UsageError("a subcommand is required")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        output, code = run_command(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SingletError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - invariant violations
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
