"""Command line front end.

Exit codes: 0 success (including OUT/BOUNDARY verdicts and refuted
counterexample claims, which are answers), 1 failed check, 2 bad input,
3 point outside a domain or convergence disk.
"""

from __future__ import annotations

import argparse
import sys

from .calculus import (
    OutsideDomainError,
    OutsideOpenDiskError,
    difference_quotient_check,
    evaluate_series,
    holomorphy_report,
    to_text,
)
from .convergence import cauchy_hadamard, spectrum_membership
from .counterexamples import PASSED, REPRODUCED, REGISTRY
from .lattice import OrderCalcError, OrderDisk, RealElement
from .parsing import (
    ParseError,
    format_complex_element,
    format_extended,
    format_real,
    parse_complex_element,
    parse_expression,
    parse_extended_element,
    parse_family,
    parse_real_element,
)
from .supcompletion import (
    ExtendedPositive,
    band_projection_from,
    finite_part,
    infinite_part,
    three_part_decompose,
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_radius(text: str, model) -> RealElement:
    try:
        value = float(text)
    except ValueError:
        r = parse_real_element(text)
        if r.model != model:
            raise ParseError("radius and point models differ")
        return r
    if value <= 0:
        raise ParseError("scalar radius must be positive")
    return RealElement.constant(model, value)


def _max_coord(x: RealElement) -> float:
    values = list(x.prefix)
    if not x.model.is_finite:
        values.append(x.tail)
    return max(values) if values else 0.0


def _fmt_band(band) -> str:
    return "{" + ",".join(str(i) for i in sorted(band.indices)) + "}"


# -- subcommands ---------------------------------------------------------------

def _cmd_radius(args) -> int:
    fam = parse_family(_read(args.family))
    report = cauchy_hadamard(fam)
    print(report.to_text())
    return 0 if report.identities_hold() else 1


def _cmd_decompose(args) -> int:
    u = parse_extended_element(args.element)
    parts = three_part_decompose(u)
    u_f = finite_part(u)
    u_inf = infinite_part(u)
    recombined = ExtendedPositive.from_real(u_f) + u_inf
    disjoint = all(min(a, b) == 0 for a, b in
                   zip(ExtendedPositive.from_real(u_f).coords, u_inf.coords))
    absorbed = 3 * u_inf == u_inf
    print(f"u={format_extended(u)}")
    print(f"u_F={format_real(u_f)}")
    print(f"u_inf={format_extended(u_inf)}")
    print(f"band_finite={_fmt_band(parts.finite_band)}")
    print(f"band_infinite={_fmt_band(parts.infinite_band)}")
    print(f"band_zero={_fmt_band(parts.disjoint_band)}")
    print(f"support={_fmt_band(band_projection_from(u))}")
    print(f"sum_is_u={'true' if recombined == u else 'false'}")
    print(f"parts_disjoint={'true' if disjoint else 'false'}")
    print(f"infinite_part_absorbs={'true' if absorbed else 'false'}")
    ok = recombined == u and disjoint and absorbed
    return 0 if ok else 1


def _cmd_diff_check(args) -> int:
    expr = parse_expression(args.expr)
    point = parse_complex_element(args.point)
    radius = _parse_radius(args.radius, point.model)
    if args.samples > 1:
        region = OrderDisk(point, radius, is_open=True)
        report = holomorphy_report(expr, region, sample_count=args.samples,
                                   depth=args.depth, tol=args.tol, seed=args.seed)
        print(f"subject={report.subject}")
        print(f"center={format_complex_element(point)}")
        print(f"radius={format_real(radius)}")
        print(f"samples={len(report.samples)}")
        print(f"seed={report.seed}")
        for k, s in enumerate(report.samples):
            if s.verdict != "PASS":
                print(f"sample_{k}_failure={s.failure}")
        print(f"verdict={report.verdict}")
        return 0 if report.passed else 1
    rep = difference_quotient_check(expr, point, radius,
                                    depth=args.depth, tol=args.tol)
    print(f"expression={to_text(expr)}")
    print(f"point={format_complex_element(point)}")
    print(f"radius={format_real(radius)}")
    print(f"steps={len(rep.residual_ratios)}")
    print(f"final_residual={_max_coord(rep.final_residual):.6e}")
    if rep.failure is not None:
        print(f"failure={rep.failure}")
    print(f"verdict={rep.verdict}")
    return 0 if rep.passed else 1


def _cmd_series(args) -> int:
    fam = parse_family(_read(args.family))
    center = parse_complex_element(args.center)
    point = parse_complex_element(args.point)
    r = (point - center).modulus()
    verdict = spectrum_membership(fam, center, r, tail_tolerance=args.tail_tol,
                                  max_terms=args.max_terms)
    print(f"membership={verdict.membership}")
    print("q=[" + ", ".join(f"{q:g}" for q in verdict.q) + "]")
    if verdict.membership == "OUT":
        w = verdict.witness
        print(f"witness=coordinate {w.coordinate}, term {w.index} has "
              f"|a_n| r^n = {w.term:.6g}")
        return 0
    if verdict.membership == "BOUNDARY":
        coords = ",".join(str(k) for k in verdict.boundary_coordinates)
        print(f"boundary_coordinates={{{coords}}}")
        return 0
    value, cutoff = evaluate_series(fam, center, point,
                                    tail_tolerance=args.tail_tol,
                                    max_terms=args.max_terms)
    print(f"cutoff={cutoff}")
    print(f"tail_bound={verdict.tail_bound:.6e}")
    print(f"value={format_complex_element(value)}")
    return 0


def _cmd_counterexamples(args) -> int:
    if args.action == "list":
        for name in REGISTRY:
            print(name)
        return 0
    names = list(REGISTRY) if args.name == "all" else [args.name]
    ok = True
    reports = []
    for name in names:
        report = REGISTRY[name]()
        reports.append(report.to_text())
        ok = ok and report.verdict in (REPRODUCED, PASSED)
    print("\n\n".join(reports))
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercalc",
        description="Coordinatewise complex calculus with order-based error control.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("radius", help="radius of convergence report for a family file")
    p.add_argument("family", help="path to a coefficient family file")
    p.set_defaults(fn=_cmd_radius)

    p = sub.add_parser("decompose", help="split an extended element into parts")
    p.add_argument("element", help="extended literal like '[2, inf, 0]'")
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("diff-check", help="difference quotient check for an expression")
    p.add_argument("expr", help="expression like 'z^2 + inv(z)'")
    p.add_argument("point", help="element literal like '[1+1i, 2]'")
    p.add_argument("--radius", default="0.5",
                   help="step radius: scalar or element literal (default 0.5)")
    p.add_argument("--depth", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--samples", type=int, default=1,
                   help="more than 1 samples the whole disk around the point")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_diff_check)

    p = sub.add_parser("series", help="evaluate a power series inside its disk")
    p.add_argument("family", help="path to a coefficient family file")
    p.add_argument("--center", required=True, help="element literal")
    p.add_argument("--point", required=True, help="element literal")
    p.add_argument("--tail-tol", type=float, default=1e-9, dest="tail_tol")
    p.add_argument("--max-terms", type=int, default=10000, dest="max_terms")
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("counterexamples", help="run the boundary phenomena witnesses")
    p.add_argument("action", choices=("run", "list"))
    p.add_argument("name", nargs="?", default="all",
                   choices=("all", *REGISTRY.keys()))
    p.set_defaults(fn=_cmd_counterexamples)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (OutsideDomainError, OutsideOpenDiskError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OrderCalcError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
