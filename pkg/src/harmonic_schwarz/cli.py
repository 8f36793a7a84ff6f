"""Command-line driver.

Exit status: 0 success, 1 verification violations, 2 usage error,
3 I/O failure.  Every number is printed with 15 significant digits.
"""

from __future__ import annotations

import argparse
import ast
import functools
import json
import math
import operator
import sys
from pathlib import Path

from . import bounds as bnd
from .errors import HarmonicSchwarzError
from .harmonic import GridSpec, HarmonicMap, boundary_maximum
from .transforms import precompose_mobius, projection, strip_to_disk
from .verify import checks, corpus
from .verify.generate import Family, SampleSpec
from .verify.report import fmt, merge_reports, read_json, render_text, to_csv_text, to_json_text
from .verify.sharpness import sharpness_search

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}
# descriptive aliases for the numbered bound names
BOUND_ALIASES = {
    "analytic": "lemmaA",
    "arctan": "lemmaB",
    "interior": "lemma1.3",
    "boundary": "1.1",
    "general-boundary": "1.2",
}
BOUND_NAMES = ["lemmaA", "lemmaB", "lemma1.3", "1.1", "1.2", "slope", "slope-numeric", "ratio"]
_NAMES = {"pi": math.pi, "π": math.pi, "e": math.e, "j": 1j}


class UsageError(Exception):
    pass


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
        return _OPS[type(node.op)](_eval_node(node.operand))
    raise ValueError("unsupported expression")


def number(text: str) -> complex:
    """Arithmetic on literals and ``pi``/``π``, e.g. ``4/pi`` or ``0.5+0.2j``."""
    try:
        return complex(_eval_node(ast.parse(text.strip(), mode="eval")))
    except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def real(text: str) -> float:
    z = number(text)
    if z.imag:
        raise argparse.ArgumentTypeError(f"expected a real number: {text!r}")
    return z.real


# -- subcommands --------------------------------------------------------------


def cmd_bound(args) -> int:
    t = BOUND_ALIASES.get(args.theorem, args.theorem)
    p, r, a, alpha = args.p, args.r, args.a, args.alpha
    s = args.s
    if args.lam is not None:
        s = bnd.transported_aggregate(args.lam, a, p)
    needs_s = t in {"lemmaA", "lemma1.3", "1.1", "1.2", "slope", "slope-numeric", "ratio"}
    if needs_s and s is None:
        raise UsageError(f"--s (or --lam) is required for --theorem {t}")
    if t == "lemmaA":
        value = bnd.analytic_schwarz_pick_bound(p, s, r)
    elif t == "lemmaB":
        value = bnd.classical_harmonic_bound(p, r)
    elif t == "lemma1.3":
        value = bnd.improved_harmonic_bound(p, s, r)
    elif t == "1.1":
        value = bnd.boundary_lower_bound(p, s)
    elif t == "1.2":
        value = bnd.general_boundary_lower_bound(bnd.BoundQuery(p, s, a=a, alpha=alpha))
    elif t == "slope":
        value = bnd.limit_slope(p, s)
    elif t == "slope-numeric":
        value = bnd.limit_slope_numeric(p, s)
    else:
        value = bnd.moebius_ratio(s, r)
    print(fmt(value))
    return EXIT_OK


def _write(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_compose(args) -> int:
    if (args.mobius_a is None) == (args.strip_theta is None):
        raise UsageError("give exactly one of --mobius-a, --strip-theta")
    w = HarmonicMap.load(args.input)
    if args.mobius_a is not None:
        out = precompose_mobius(w, args.mobius_a, args.order).to_json()
    else:
        f = projection(w, args.strip_theta)
        out = strip_to_disk(f, args.order).to_json()
    _write(json.dumps(out, indent=1) + "\n", args.output)
    return EXIT_OK


def _single_map_report(args, grid: GridSpec):
    w = HarmonicMap.load(args.input)
    ineq = args.inequality
    if ineq == "lemma1.3":
        return checks.check_interior_bound(w, grid, args.tol or checks.INTERIOR_TOL)
    if ineq == "boundary":
        m, t = boundary_maximum(w)
        alpha = args.alpha if args.alpha_given else complex(math.cos(t), math.sin(t))
        w = w.scaled(1.0 / abs(w(alpha))) if not args.alpha_given else w
        return checks.check_boundary_theorem(w, alpha, args.tol or checks.BOUNDARY_TOL, a=args.a)
    if ineq == "transport":
        return checks.check_transport_identities(w, args.a, args.tol or checks.IDENTITY_TOL)
    if ineq == "coefficients":
        return checks.check_coefficients(w, tol=args.tol or checks.INTERIOR_TOL)
    raise UsageError(f"--input is not supported for --inequality {ineq}")


def cmd_verify(args) -> int:
    grid = GridSpec(args.radii, args.angles, args.rmax)
    if args.input is not None:
        report = _single_map_report(args, grid)
    else:
        kw = {"seed": args.seed, "workers": args.workers}
        if args.samples is not None:
            kw["samples"] = args.samples
        if args.tol is not None:
            kw["tol"] = args.tol
        ineq = args.inequality
        if ineq in ("lemma1.3", "boundary", "transport", "strip") and args.p:
            kw["ps"] = tuple(args.p)
        if ineq == "lemma1.3":
            kw["grid"] = grid
        if ineq == "boundary":
            kw["include_closed_forms"] = not args.no_closed_forms
        report = corpus.CORPORA[ineq](**kw)
    report = merge_reports([report])
    if args.output:
        Path(args.output).write_text(to_json_text(report))
    if args.csv:
        Path(args.csv).write_text(to_csv_text(report))
    sys.stdout.write(render_text(report))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def cmd_sharpness(args) -> int:
    spec = SampleSpec(
        seed=args.seed, p=args.p, degree=max(args.degree, args.p), family=args.family,
        zero=args.zero, rotation=args.rotation,
    )
    free = tuple(args.free) if args.free else None
    result = sharpness_search(args.p, spec, args.iterations, free)
    if args.output:
        Path(args.output).write_text(json.dumps(result.to_json(), indent=1) + "\n")
    print(f"family       {result.family}")
    print(f"p            {result.p}")
    print(f"best margin  {fmt(result.best_margin)}")
    print("params       " + " ".join(fmt(x) for x in result.params))
    print(f"evaluations  {len(result.trace)}")
    print(f"projections  {result.projections}")
    if result.suspected_error:
        print("SUSPECTED IMPLEMENTATION ERROR: negative margin contradicts the boundary theorem")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_report(args) -> int:
    report = read_json(args.input)
    sys.stdout.write(render_text(report))
    if args.csv:
        _write(to_csv_text(report), args.csv)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


@functools.lru_cache(maxsize=1)
def build_parser() -> argparse.ArgumentParser:
    # built once per process; parse_args leaves the parser untouched
    parser = argparse.ArgumentParser(
        prog="harmonic-schwarz",
        description="Schwarz-type bounds for harmonic self-maps of the disk with a zero of order p.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate one closed-form bound")
    b.add_argument(
        "--theorem",
        required=True,
        choices=BOUND_NAMES + list(BOUND_ALIASES),
        help="lemmaA|analytic: analytic bound (--s is |a_p|); lemmaB|arctan: arctan bound; "
        "lemma1.3|interior: improved interior bound; 1.1|boundary: boundary bound at the origin zero; "
        "1.2|general-boundary: boundary bound for a zero at --a and boundary point --alpha; "
        "slope: limit of (1-M^2)/(1-r); slope-numeric: its extrapolated difference quotient; "
        "ratio: Mobius ratio",
    )
    b.add_argument("--p", type=int, required=True)
    b.add_argument("--s", type=real, help="coefficient aggregate |a_p|+|b_p| (accepts e.g. 4/pi)")
    b.add_argument("--lam", type=real, help="Lambda_p(a); sets s = lam (1-|a|^2)^p")
    b.add_argument("--r", type=real, default=1.0)
    b.add_argument("--a", type=number, default=0j)
    b.add_argument("--alpha", type=number, default=1 + 0j)
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("compose", help="precompose with a disk automorphism or transport to the disk")
    c.add_argument("--input", required=True)
    c.add_argument("--output")
    c.add_argument("--mobius-a", type=number)
    c.add_argument("--strip-theta", type=real)
    c.add_argument("--order", type=int)
    c.set_defaults(func=cmd_compose)

    v = sub.add_parser("verify", help="run a seeded corpus (or one map) through a check")
    v.add_argument("--inequality", required=True, choices=sorted(corpus.CORPORA))
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--p", type=int, nargs="+")
    v.add_argument("--tol", type=real)
    v.add_argument("--radii", type=int, default=64)
    v.add_argument("--angles", type=int, default=256)
    v.add_argument("--rmax", type=real, default=0.999)
    v.add_argument("--input", help="verify this HarmonicMap JSON instead of a corpus")
    v.add_argument("--a", type=number, default=0j, help="zero location for --input")
    v.add_argument("--alpha", type=number, default=None, help="boundary point for --input")
    v.add_argument("--no-closed-forms", action="store_true")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--output", help="report JSON")
    v.add_argument("--csv", help="per-sample CSV rows")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sharpness", help="simplex search for the smallest boundary margin")
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--family", choices=[Family.MOBIUS_WITNESS.value, Family.POLYNOMIAL.value], default="mobius_witness")
    s.add_argument("--iterations", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--degree", type=int, default=4)
    s.add_argument("--zero", type=real, default=0.5, help="starting zero of the Mobius family")
    s.add_argument("--rotation", type=real, default=0.0)
    s.add_argument("--free", nargs="+", choices=["zero", "rotation"])
    s.add_argument("--output", help="trace JSON")
    s.set_defaults(func=cmd_sharpness)

    r = sub.add_parser("report", help="render a report JSON as text and CSV")
    r.add_argument("--input", required=True)
    r.add_argument("--csv", help="CSV destination ('-' for stdout)")
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "verify":
        args.alpha_given = args.alpha is not None
        if args.alpha is None:
            args.alpha = 1 + 0j
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HarmonicSchwarzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
