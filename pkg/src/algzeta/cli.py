"""Command line front end.

Every command prints a few ``#`` header lines (version, command, spec hash,
flags) followed by a CSV or JSON table. Exit codes: 0 ok, 1 usage, 2 domain
error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .action import count_fixed, growth_scan
from .errors import DomainError, NonIntegerCoefficient
from .factored import Factored
from .lattice import Subgroup, enumerate_subgroups, gronwall_witness, sigma
from .oracle import DEFAULT_CAP, cross_validate
from .primescan import DEFAULT_EPS, prime_value_scan, qualifying_density
from .specio import BUILTIN, load_spec
from .zeta import (
    classify_1d,
    orbit_sums,
    overconvergence_check,
    pole_cluster_scan,
    radius_hypothesis,
    radius_report,
    zeta_coefficients,
)
from ._table import render


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _show(x: Factored, decimal: bool) -> str:
    if not decimal:
        return str(x)
    return str(x.value) if x.is_integer() else repr(float(x))


class Run:
    """Collects header lines and the output table for one command."""

    def __init__(self, args, loaded=None):
        self.args = args
        self.loaded = loaded
        self.notes: list[str] = []
        self.body = ""
        self.failed = False

    def header(self) -> str:
        flags = {
            k: v
            for k, v in sorted(vars(self.args).items())
            if k not in ("command", "output", "handler", "spec") and v is not None
        }
        lines = [f"# algzeta {__version__}", f"# command: {self.args.command}"]
        if self.loaded is not None:
            lines.append(f"# spec: {self.loaded.source} sha256={self.loaded.sha256}")
        lines.append("# flags: " + " ".join(f"{k}={v}" for k, v in flags.items()))
        lines += [f"# {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def table(self, header, rows):
        self.body = render(header, rows, self.args.format)


def _spec(args):
    return load_spec(args.spec)


# --------------------------------------------------------------------------


def cmd_count(args) -> Run:
    loaded = _spec(args)
    spec = loaded.spec
    run = Run(args, loaded)
    if (args.hnf is None) == (args.n is None):
        raise UsageError("count needs exactly one of --hnf or --n")
    if args.n is not None:
        if spec.d != 1:
            raise UsageError("--n is for Z-actions; use --hnf")
        s = Subgroup(1, ((args.n,),))
    else:
        s = Subgroup.parse(args.hnf, spec.d)
    value = count_fixed(spec, s)
    run.notes.append(f"result: F({s}) = {_show(value, args.decimal)}")
    run.table(["hnf", "index", "count"], [[s, s.index, _show(value, args.decimal)]])
    return run


def cmd_zeta(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    os = orbit_sums(loaded.spec, args.terms, jobs=args.jobs)
    if args.table == "radius":
        rows = radius_report(os)
        run.table(
            ["n", "a_n", "root", "normalised_root", "limsup_estimate"],
            [[r.n, os[r.n], f"{r.root:.12g}", f"{r.normalised:.12g}", f"{r.limsup_estimate:.12g}"] for r in rows],
        )
        return run
    c = zeta_coefficients(os)
    run.notes.append(f"result: all {len(c)} coefficients are integers")
    run.table(["k", "a_k", "c_k"], [[k, os[k] if k else "", c[k]] for k in range(len(c))])
    return run


def cmd_growth(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    g = growth_scan(loaded.spec, args.max_index)
    status = "tail certified" if g.certified else "tail not certified"
    run.notes.append(f"result: g = {g.g}, attained at {g.argmax}, {status}")
    k = g.constants
    run.table(
        ["quantity", "value"],
        [
            ["g", g.g],
            ["g_float", f"{float(g.g):.12g}"],
            ["argmax", g.argmax],
            ["tail_bound", f"{g.tail_bound:.12g}"],
            ["certified", g.certified],
            ["sup_is_growth_rate", g.sup_is_growth_rate],
            ["subgroups_scanned", g.scanned],
            ["entropy", k.h],
            ["kappa", f"{k.kappa:.12g}"],
            ["log_lambda", f"{k.log_lam:.12g}"],
            ["E", k.E],
        ],
    )
    return run


def cmd_classify(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    cls = classify_1d(loaded.spec)
    run.notes.append(f"result: {cls}")
    run.notes.append(
        f"radius hypothesis: lim sup (F(n)/e^(hn))^(1/n) estimate over n <= {args.N} is "
        f"{radius_hypothesis(loaded.spec, args.N):.12g}"
    )
    rows = [["rational", "", "", "", "", _show(cls.h.exp(), args.decimal)]] if cls.rational else []
    rows += [
        ["boundary", w.place, w.degree, w.residue_order, w.p, _show(w.bound, args.decimal)] for w in cls.witnesses
    ]
    run.table(["verdict", "place", "degree", "residue_order", "p", "value"], rows)
    return run


def cmd_overconv(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    rows = overconvergence_check(loaded.spec, args.depth)
    run.notes.append(f"result: {sum(r.within_bound for r in rows)} of {len(rows)} values within bound")
    run.table(
        ["place", "k", "n", "value", "value_float", "bound", "within_bound"],
        [
            [r.witness.place, r.k, r.n, r.value, f"{float(r.value):.12g}", r.witness.bound, r.within_bound]
            for r in rows
        ],
    )
    return run


def cmd_poles(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    rings = pole_cluster_scan(loaded.spec, args.max_index)
    run.table(
        ["radius", "radius_float", "multiplicity", "hnf"],
        [[r.radius, f"{float(r.radius):.12g}", r.multiplicity, r.base] for r in rings],
    )
    return run


def cmd_primescan(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    scan = prime_value_scan(loaded.spec, args.eps, args.qmax, jobs=args.jobs)
    if args.qmax >= 10:
        dens = qualifying_density(scan.config, args.qmax)
        run.notes.append(f"density: {dens.qualifying} of {dens.primes} primes qualify")
    run.notes.append(f"threshold q0 = {scan.q0:.6g}; C2 = {scan.C2}")
    run.notes.append(
        "result: qualifying primes above q0 have value set "
        + ("{" + ", ".join(str(v) for v in sorted(scan.values_above_threshold())) + "}")
        + (" (matches {C2})" if scan.theorem_echo else " (DIFFERS from {C2})")
    )
    run.table(
        ["q", "qualifying", "above_threshold", "orders", "subgroups", "values"],
        [
            [
                r.q,
                r.qualifying,
                r.above_threshold,
                " ".join(f"{p}:{m}" for p, m in r.orders),
                r.subgroups,
                " ".join(_show(v, args.decimal) for v in r.values),
            ]
            for r in scan.rows
        ],
    )
    return run


def cmd_validate(args) -> Run:
    loaded = _spec(args)
    run = Run(args, loaded)
    report = cross_validate(loaded.spec, args.max_index, cap=args.cap, jobs=args.jobs)
    n = len(report.rows)
    if report.ok:
        run.notes.append(f"result: all {n} comparisons match")
    else:
        run.notes.append(f"result: {len(report.mismatches)} of {n} comparisons DIFFER")
    run.body = report.table(args.decimal, args.format)
    run.failed = not report.ok
    return run


def cmd_sigma(args) -> Run:
    run = Run(args)
    ns = range(1, args.n + 1) if args.upto else [args.n]
    run.table(["n", "sigma", f"subgroups_d{args.d}"], [[n, sigma(n), len(enumerate_subgroups(args.d, n))] for n in ns])
    return run


def cmd_gronwall(args) -> Run:
    run = Run(args)
    N, ratio = gronwall_witness(args.t, args.q, args.k)
    run.table(["N", "sigma", "ratio"], [[N, sigma(N), f"{ratio:.12g}"]])
    return run


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="algzeta", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"algzeta {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, handler, help, columns, spec=True):
        p = sub.add_parser(name, help=help, description=f"{help}. Columns: {columns}.")
        if spec:
            p.add_argument("--spec", required=True, help=f"spec file, or a builtin: {', '.join(BUILTIN)}")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--decimal", action="store_true", help="print counts as decimal integers")
        p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
        p.set_defaults(handler=handler)
        return p

    p = command("count", cmd_count, "periodic point count of one subgroup", "hnf, index, count")
    p.add_argument("--hnf", help="row-major generator matrix, columns as generators, e.g. 3,1,0,1")
    p.add_argument("--n", type=_positive, help="period, for Z-actions")

    p = command("zeta", cmd_zeta, "orbit sums and zeta coefficients", "k, a_k, c_k (or n, a_n, root, normalised_root, limsup_estimate)")
    p.add_argument("--terms", type=_positive, default=20)
    p.add_argument("--table", choices=("coefficients", "radius"), default="coefficients")

    p = command("growth", cmd_growth, "growth rate scan with tail bound", "quantity, value")
    p.add_argument("--max-index", type=_positive, default=7)

    p = command("classify", cmd_classify, "rational or boundary verdict for a single automorphism", "verdict, place, degree, residue_order, p, value")
    p.add_argument("--N", type=_positive, default=200, help="range for the radius hypothesis estimate")

    p = command("overconv", cmd_overconv, "overconvergence table along n_k = l p^k", "place, k, n, value, value_float, bound, within_bound")
    p.add_argument("--depth", type=int, default=6, help="K >= 2")

    p = command("poles", cmd_poles, "pole rings of a suspended action", "radius, radius_float, multiplicity, hnf")
    p.add_argument("--max-index", type=_positive, default=9)

    p = command("primescan", cmd_primescan, "value sets on prime-index subgroups", "q, qualifying, above_threshold, orders, subgroups, values")
    p.add_argument("--eps", type=_fraction, default=DEFAULT_EPS, help="rational, e.g. 1/10")
    p.add_argument("--qmax", type=_positive, default=600)

    p = command("validate", cmd_validate, "formula counts against the brute-force oracle", "index, hnf, formula_count, oracle_count, match")
    p.add_argument("--max-index", type=_positive, default=24)
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="largest index the oracle accepts")

    p = command("sigma", cmd_sigma, "divisor sums and subgroup counts", "n, sigma, subgroups_d", spec=False)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=int, choices=(1, 2, 3), default=2)
    p.add_argument("--upto", action="store_true", help="tabulate 1..n")

    p = command("gronwall", cmd_gronwall, "least N = t mod q divisible by the primes up to k", "N, sigma, ratio", spec=False)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        run = args.handler(args)
    except UsageError as exc:
        print(f"algzeta: usage error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"algzeta: {exc}", file=sys.stderr)
        return 1
    except NonIntegerCoefficient as exc:
        print(f"algzeta: internal failure: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"algzeta: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"algzeta: usage error: {exc}", file=sys.stderr)
        return 1
    text = run.header() + run.body
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 3 if run.failed else 0
