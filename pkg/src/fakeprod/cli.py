"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import pipeline
from .errors import FakeprodError, RegressionMismatch, ValidationError
from .polyfield import root_disc
from .primedec import prime_splitting
from .quatvol import (
    algebra_new,
    brauer_siegel_hbound,
    cf_lower_bound,
    gkb_volume,
    max_degree,
    odlyzko_voight_min,
    regulator_lower_bound,
    root_disc_ceiling,
    volume_report,
)
from .torsion import fake_verdict
from .zetacalc import DEFAULT_CUTOFF, zeta_values

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_REGRESSION = 3

_TAG = re.compile(r"^(\d+)\^(\d+)('*)$")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--fields", metavar="PATH", help="field table file (default: bundled tables)")
    p.add_argument("--cutoff", type=_positive, default=DEFAULT_CUTOFF,
                   help="Euler product cutoff (default: %(default)s)")
    p.add_argument("--format", choices=["human", "csv", "md", "jsonl"], default="human")
    p.add_argument("--jobs", type=_positive, default=1, help="parallel field workers")
    p.add_argument("--ka-index", type=_positive, default=1, help="[k_A:k]")
    p.add_argument("--kpa-index", type=_positive, default=1, help="[k'_A:k]")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="fakeprod", description="Fake products of projective lines: "
                     "zeta values, quaternion algebra volumes and candidate enumeration.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    field = sub.add_parser("field", help="inspect a bundled field")
    fsub = field.add_subparsers(dest="action", required=True, parser_class=_Parser)
    info = fsub.add_parser("info", parents=[common])
    info.add_argument("--disc", type=_positive, required=True)
    dec = fsub.add_parser("decompose", parents=[common])
    dec.add_argument("--disc", type=_positive, required=True)
    dec.add_argument("--p", type=_positive, required=True, nargs="+")

    zeta = sub.add_parser("zeta", parents=[common], help="zeta_k(-1) and zeta_k(2)")
    zeta.add_argument("--disc", type=_positive, required=True)
    zeta.add_argument("--zeta2", action="store_true", help="also print the zeta_k(2) interval")

    alg = sub.add_parser("algebra", help="quaternion algebra invariants")
    asub = alg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    euler = asub.add_parser("euler", parents=[common])
    euler.add_argument("--disc", type=_positive, required=True)
    euler.add_argument("--n", type=_positive, default=4)
    euler.add_argument("--ram", nargs="*", default=[], metavar="TAG",
                       help="ramified primes as p^f tags, e.g. 2^2 5^1")

    bounds = sub.add_parser("bounds", help="finiteness bounds")
    bsub = bounds.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cf = bsub.add_parser("cf", parents=[common])
    cf.add_argument("--max-degree", action="store_true")
    cf.add_argument("--m", type=_positive)
    rd = bsub.add_parser("rootdisc", parents=[common])
    rd.add_argument("--m", type=_positive, nargs="*", default=[4, 5, 6, 7, 8])
    bs = bsub.add_parser("bs", parents=[common])
    bs.add_argument("--disc", type=_positive, required=True)
    bs.add_argument("--regulator", type=float, help="regulator lower bound "
                    "(default: c1 exp(c2 m))")

    enum = sub.add_parser("enumerate", parents=[common], help="candidate algebras")
    enum.add_argument("--n", type=int, choices=[4, 6], default=4)

    sub.add_parser("verify", parents=[common], help="regression check of the two fakes")

    tables = sub.add_parser("tables", parents=[common], help="field or candidate tables")
    tables.add_argument("--which", choices=["fields", "candidates"], default="fields")
    tables.add_argument("--degree", type=int, choices=[4, 5, 6], nargs="*", default=[4, 5, 6])
    return parser


def _fields(args, degrees=(4, 5, 6)):
    return pipeline.load_fields(args.fields, degrees)


def _field(args):
    return pipeline.field_by_disc(args.disc, _fields(args))


def parse_ideal(K, tag: str):
    mo = _TAG.match(tag.replace("p", "", 1) if tag.startswith("p") else tag)
    if not mo:
        raise ValidationError(f"bad ideal tag {tag!r}; expected p^f")
    for ideal in prime_splitting(K, int(mo.group(1))).ideals:
        if ideal.tag == tag.lstrip("p"):
            return ideal
    raise ValidationError(f"no prime {tag} in the field with d_k = {K.d_k}")


def _records(out, header, rows, fmt):
    if fmt == "jsonl":
        for row in rows:
            out.write(json.dumps(dict(zip(header, row))) + "\n")
    else:
        out.write(pipeline.emit(header, rows, fmt))


def _pairs(out, pairs, fmt):
    if fmt == "human":
        out.write("".join(f"{k}: {v}\n" for k, v in pairs))
    else:
        _records(out, [k for k, _ in pairs], [[v for _, v in pairs]], fmt)


def _cmd_field(args, out):
    K = _field(args)
    if args.action == "info":
        pairs = [("degree", K.m), ("d_k", K.d_k), ("polynomial", str(K.f)),
                 ("poly_disc", K.poly_disc), ("index", K.index),
                 ("root_disc", f"{float(root_disc(K)):.6f}"),
                 ("cyclotomic_tag", K.cyclotomic_tag if K.cyclotomic_tag else "")]
        _pairs(out, pairs, args.format)
        return
    header = ["p", "ideal", "e", "f", "norm"]
    rows = []
    for p in args.p:
        for ideal in prime_splitting(K, p).ideals:
            rows.append([p, ideal.tag, ideal.e, ideal.f, ideal.norm])
    _records(out, header, rows, args.format)


def _cmd_zeta(args, out):
    K = _field(args)
    z = zeta_values(K, args.cutoff)
    if args.format == "human" and not args.zeta2:
        out.write(f"{z.zeta_minus1.numerator}/{z.zeta_minus1.denominator}\n")
        return
    pairs = [("d_k", K.d_k), ("zeta_m1", pipeline._frac(z.zeta_minus1))]
    if args.zeta2:
        pairs += [("zeta2_lower", f"{float(z.zeta2.lower):.12f}"),
                  ("zeta2_upper", f"{float(z.zeta2.upper):.12f}")]
    _pairs(out, pairs, args.format)


def _cmd_algebra(args, out):
    K = _field(args)
    A = algebra_new(K, args.n, [parse_ideal(K, t) for t in args.ram])
    rep = volume_report(A, args.cutoff)
    pairs = [("algebra", A.label), ("euler", pipeline._frac(rep.vol_norm1)),
             ("index", pipeline._frac(rep.required_index)),
             ("analytic_lower", f"{float(rep.euler_analytic.a):.10f}"),
             ("analytic_upper", f"{float(rep.euler_analytic.b):.10f}"),
             ("consistent", rep.consistent)]
    g = gkb_volume(A, args.ka_index, args.cutoff)
    pairs += [("ka_index", args.ka_index), ("normalizer_volume", f"{float(g.a):.10f}")]
    if args.n % 2 == 0:
        v = fake_verdict(A, zeta_values(K, args.cutoff).zeta_minus1)
        pairs += [("verdict", v.status), ("reason", v.reason)]
    _pairs(out, pairs, args.format)


def _cmd_bounds(args, out):
    if args.action == "cf":
        if args.max_degree:
            out.write(f"{max_degree()}\n")
            return
        m = args.m or 4
        lo = cf_lower_bound(m, args.kpa_index)
        _pairs(out, [("m", m), ("kpa_index", args.kpa_index), ("lower_bound", f"{float(lo.a):.6e}")],
               args.format)
    elif args.action == "rootdisc":
        header = ["m", "ceiling", "minimum", "below"]
        rows = []
        for m in args.m:
            c = root_disc_ceiling(m)
            try:
                lo = odlyzko_voight_min(m)
                rows.append([m, f"{float(c.a):.4f}", f"{lo:.3f}", lo < float(c.a)])
            except ValidationError:
                rows.append([m, f"{float(c.a):.4f}", "", ""])
        _records(out, header, rows, args.format)
    else:
        K = _field(args)
        R = args.regulator if args.regulator is not None else float(regulator_lower_bound(K.m))
        h = brauer_siegel_hbound(K, 2, R, args.cutoff)
        _pairs(out, [("d_k", K.d_k), ("regulator_lower", R), ("h_upper", f"{float(h):.6g}")],
               args.format)


def _cmd_enumerate(args, out):
    fields = _fields(args)
    if args.n == 4:
        rows = pipeline.enumerate_candidates(fields, 4, args.cutoff, args.jobs)
        rows = pipeline.judge(rows, fields)
    else:
        rows = pipeline.enumerate_n6(fields, args.cutoff, args.jobs)
    out.write(pipeline.emit_candidates(rows, args.format))


def _cmd_verify(args, out):
    fields = _fields(args)
    report = pipeline.verify_examples(fields, args.cutoff, args.jobs)
    out.write(pipeline.emit_candidates(report.rows, args.format))
    if args.format == "human":
        confirmed = ", ".join(str(r.d_k) for r in report.confirmed)
        out.write(f"fake_confirmed: {confirmed}\n")


def _cmd_tables(args, out):
    fields = _fields(args, tuple(args.degree))
    if args.which == "fields":
        out.write(pipeline.emit_tables(fields, args.format, args.cutoff, args.jobs))
    else:
        rows = pipeline.judge(pipeline.enumerate_candidates(fields, 4, args.cutoff, args.jobs), fields)
        out.write(pipeline.emit_candidates(rows, args.format))


COMMANDS = {
    "field": _cmd_field,
    "zeta": _cmd_zeta,
    "algebra": _cmd_algebra,
    "bounds": _cmd_bounds,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
    "tables": _cmd_tables,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        COMMANDS[args.command](args, out)
    except RegressionMismatch as exc:
        print(f"regression mismatch: {exc}", file=err)
        return EXIT_REGRESSION
    except (FakeprodError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INVALID
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
