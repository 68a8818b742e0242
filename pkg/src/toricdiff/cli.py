"""Command line front end.

Exit codes: 0 success, 1 validation failure or bad input, 2 oracle
mismatch, 3 unbounded degree box.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bundles import (
    ToricDivisor,
    ample_multiplier,
    divisor_of_virtual,
    nef_decompose,
)
from .cohomology import (
    ALL_CONES,
    MAXIMAL_CONES,
    classical_cohomology,
    cohomology_table,
    default_degree_box,
    good_cover_report,
    h0_containment,
)
from .errors import ToricError, UnboundedBoxError
from .exceptional import FORWARD_CONVENTION, REVERSE_CONVENTION, NefSequence, is_exceptional_sequence
from .polyhedra import LatticePolyhedron, compatibility_witness, validate_fan
from .problem import ORACLES, load_problem, parse_box, parse_field, parse_vector
from .render import render_svg

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_UNBOUNDED = 3


def _emit(text: str, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _option(args, problem, name, default):
    value = getattr(args, name, None)
    if value is None:
        value = problem.options.get(name, default)
    return value


def cmd_validate(args) -> int:
    problem = load_problem(args.file)
    report = validate_fan(problem.fan, problem.tail)
    lines = [str(report)]
    clean = report.ok
    if not clean:
        print("\n".join(lines + ["invalid"]))
        return EXIT_INVALID
    for name, (plus, minus) in problem.bundles.items():
        for side, poly in (("plus", plus), ("minus", minus)):
            if not _tail_matches(poly, problem.tail):
                lines.append(f"[compatibility] bundles.{name}.{side}: tail cone {list(poly.tail)} differs from tail_rays")
                clean = False
                continue
            k = compatibility_witness(poly, problem.fan)
            if k is not None:
                lines.append(f"[compatibility] bundles.{name}.{side}: support function not linear on maximal cone {k}")
                clean = False
    lines.append("clean" if clean else "invalid")
    print("\n".join(lines))
    return EXIT_OK if clean else EXIT_INVALID


def _tail_matches(poly, tail) -> bool:
    return poly.same_tail(LatticePolyhedron.neutral(poly.dim, tail))


def _check_oracles(bundle, table, box, oracle, prime, seed) -> list:
    mismatches = []
    fan = bundle.fan
    use_classical = oracle in ("classical", "all")
    use_h0 = oracle in ("h0", "all")
    if use_classical and not fan.is_simplicial():
        if oracle == "classical":
            raise ToricError("classical oracle needs a simplicial fan")
        use_classical = False
    divisor = divisor_of_virtual(bundle) if use_classical else None
    for m in box:
        dims = list(table[m])
        if use_classical:
            ref = classical_cohomology(divisor, fan, m, prime)
            if ref != dims:
                mismatches.append(f"classical oracle at m={m}: {ref} vs cech {dims}")
        if use_h0:
            ref = h0_containment(bundle, m)
            if ref != dims[0]:
                mismatches.append(f"containment oracle at m={m}: h0={ref} vs cech {dims[0]}")
        if oracle == "all":
            rep = good_cover_report(bundle, m, seed=seed)
            if not rep.ok:
                mismatches.append(f"good cover check failed: {rep.summary()}")
    return mismatches


def cmd_cohomology(args) -> int:
    problem = load_problem(args.file)
    bundle = problem.bundle(args.bundle)
    box = parse_box(args.box) if args.box else problem.degree_box
    if box is None:
        box = default_degree_box(bundle)
    if box is None:
        raise UnboundedBoxError("the tail cone is non-trivial; pass --box lo1,lo2:hi1,hi2")
    cover = _option(args, problem, "cover", MAXIMAL_CONES)
    prime = parse_field(_option(args, problem, "field", "q"))
    oracle = _option(args, problem, "oracle", "none")
    seed = int(_option(args, problem, "seed", 0))
    table = cohomology_table(bundle, box, cover, prime)
    fmt = args.format
    _emit(table.to_json() + "\n" if fmt == "json" else table.to_tsv(), args.out)
    if oracle != "none":
        mismatches = _check_oracles(bundle, table, box, oracle, prime, seed)
        if mismatches:
            for line in mismatches:
                print(f"MISMATCH {line}", file=sys.stderr)
            return EXIT_MISMATCH
        print(f"oracle '{oracle}' agrees on {len(box)} degrees", file=sys.stderr)
    return EXIT_OK


def cmd_exceptional(args) -> int:
    problem = load_problem(args.file)
    polys = []
    for name in args.names:
        plus, minus = problem.parts(name)
        if minus.points != ((0,) * problem.fan.dim,):
            raise ToricError(f"bundle {name!r} must be nef: its minus part has to be the origin")
        polys.append(plus)
    box = parse_box(args.box) if args.box else None
    report = is_exceptional_sequence(NefSequence(tuple(polys), problem.fan), args.direction, box)
    print(str(report))
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_nef_decompose(args) -> int:
    problem = load_problem(args.file)
    ample = problem.ample_polyhedron()
    if args.divisor:
        divisor = ToricDivisor(parse_vector(args.divisor))
    elif args.bundle:
        divisor = divisor_of_virtual(problem.bundle(args.bundle))
    else:
        raise ToricError("give a bundle name or --divisor")
    result = nef_decompose(divisor, problem.fan, ample)
    n = ample_multiplier(divisor, problem.fan, ample)
    doc = {
        "divisor": list(divisor),
        "multiplier": n,
        "plus": [list(p) for p in result.plus.points],
        "minus": [list(p) for p in result.minus.points],
        "tail_rays": [list(t) for t in result.tail],
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    problem = load_problem(args.file)
    bundle = problem.bundle(args.bundle)
    box = parse_box(args.box) if args.box else problem.degree_box
    svg = render_svg(bundle, parse_vector(args.degree), box)
    _emit(svg, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricdiff",
        description="Cohomology of toric line bundles from differences of lattice polyhedra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem file (JSON)")
    common.add_argument("--out", help="write output to this path instead of stdout")

    p = sub.add_parser("validate", parents=[common], help="check fan axioms and compatibility")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", parents=[common], help="table of non-zero cohomology degrees")
    p.add_argument("bundle")
    p.add_argument("--box", help="degree box lo1,lo2:hi1,hi2")
    p.add_argument("--oracle", choices=ORACLES)
    p.add_argument("--cover", choices=(MAXIMAL_CONES, ALL_CONES))
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--field", help="q or fp:<prime>")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("exceptional", parents=[common], help="check an exceptional sequence")
    p.add_argument("names", nargs="+", help="bundle names in sequence order")
    p.add_argument("--direction", choices=(FORWARD_CONVENTION, REVERSE_CONVENTION), default=REVERSE_CONVENTION)
    p.add_argument("--box")
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("nef-decompose", parents=[common], help="write a divisor as a difference of nef polyhedra")
    p.add_argument("bundle", nargs="?")
    p.add_argument("--divisor", help="coefficients in ray order, comma separated")
    p.set_defaults(func=cmd_nef_decompose)

    p = sub.add_parser("render", parents=[common], help="SVG picture of minus and plus - m")
    p.add_argument("bundle")
    p.add_argument("--degree", required=True, help="m1,m2")
    p.add_argument("--box")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnboundedBoxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except (ToricError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
