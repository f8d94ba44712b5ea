"""``projline`` command-line front end."""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys

from . import _kernels
from .abstract_line import (
    DEFAULT_ASSOC_BOUND,
    DEFAULT_MODEL_BOUND,
    DEFAULT_VIOLATION_CAP,
    build_coordinate_model,
    line_to_json,
    load_line,
    save_line,
    verify_axioms,
)
from .arrows import arrow_to_json, parse_arrow
from .bundles import affine_cocycle, gf3_all_permutations, gf3_projectivity_count, gf3_unique_structure
from .coordinate_line import CoordinateLine, ProjPoint
from .errors import ParseError, ProjlineError
from .fundamental import CENSUS_DEFAULT_BOUND, transport_projectivity, uniqueness_census
from .moebius import enumerate_pgl, induced_projectivity, pgl_cayley_table
from .punctured import affine_combine, vector_add, vector_scale
from .scalars import FieldContext


class UsageError(Exception):
    pass


def _field(args) -> FieldContext:
    if args.rational and args.prime is not None:
        raise UsageError("give either -p/--prime or --rational, not both")
    if args.rational:
        return FieldContext.rational()
    if args.prime is None:
        raise UsageError("this command needs a field: -p/--prime P or --rational")
    return FieldContext.prime(args.prime)


def _triple(text: str) -> tuple[str, str, str]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"expected three comma-separated points, got {text!r}")
    return tuple(parts)


def _pair(text: str) -> tuple[str, str]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 2:
        raise UsageError(f"expected two comma-separated points, got {text!r}")
    return tuple(parts)


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


# --- subcommands ------------------------------------------------------------------


def cmd_build_model(args):
    ctx = _field(args)
    if not ctx.is_prime:
        raise UsageError("build-model needs a prime field")
    line = build_coordinate_model(ctx.p, bound=args.bound)
    if args.output is None:
        # the structure file itself is the JSON output
        sys.stdout.write(line_to_json(line))
        return 0
    save_line(line, args.output)
    entries = sum(line.hom_size(X, Y) * line.hom_size(Y, Z) for X in range(line.n) for Y in range(line.n) for Z in range(line.n))
    _emit(args, f"wrote {args.output}: {line.n} points, {entries} composites", {"file": args.output, "points": line.n, "entries": entries})
    return 0


def cmd_verify(args):
    line = load_line(args.file)
    report = verify_axioms(line, early_exit=args.early_exit, cap=args.cap, assoc_bound=args.assoc_bound)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.summary())
        for v in report.violations:
            print("  " + str(v))
    return 0 if report.passed else 1


def cmd_crossratio(args):
    ctx = _field(args)
    line = CoordinateLine(ctx)
    A, B, C, D = (line.point(s) for s in args.points)
    mu = line.cross_ratio(A, B, C, D)
    _emit(args, str(mu), {"points": [str(q) for q in (A, B, C, D)], "cross_ratio": str(mu)})
    return 0


def cmd_compose(args):
    ctx = _field(args)
    line = CoordinateLine(ctx)
    f = parse_arrow(args.f, ctx, line.point)
    g = parse_arrow(args.g, ctx, line.point)
    fg = line.compose(f, g)
    _emit(args, str(fg), {"f": arrow_to_json(f), "g": arrow_to_json(g), "fg": arrow_to_json(fg)})
    return 0


def cmd_find_projectivity(args):
    src, dst = load_line(args.src), load_line(args.dst)
    phi = transport_projectivity(src, dst, _triple(args.triple), _triple(args.to))
    mapping = phi.as_dict()
    _emit(args, "\n".join(f"{a} -> {b}" for a, b in mapping.items()), {"map": mapping, "functorial": True})
    return 0


def cmd_census(args):
    src, dst = load_line(args.src), load_line(args.dst)
    rng = random.Random(args.seed)
    t = _triple(args.triple) if args.triple else tuple(rng.sample(src.points, 3))
    t2 = _triple(args.to) if args.to else tuple(rng.sample(dst.points, 3))
    count = uniqueness_census(src, dst, t, t2, bound=args.bound)
    _emit(args, f"{','.join(t)} -> {','.join(t2)}: {count}", {"triple": list(t), "to": list(t2), "count": count})
    return 0


def cmd_pgl(args):
    ctx = _field(args)
    if not ctx.is_prime:
        raise UsageError("pgl needs a prime field")
    if args.cayley:
        elems, table = pgl_cayley_table(ctx.p)
        text = "\n".join(f"{i}: {g}" for i, g in enumerate(elems)) + "\n" + "\n".join(" ".join(str(v) for v in row) for row in table)
        _emit(args, text, {"elements": [str(g) for g in elems], "table": table.tolist()})
        return 0
    elems = enumerate_pgl(ctx.p)
    if args.list:
        _emit(args, "\n".join(str(g) for g in elems), {"elements": [str(g) for g in elems]})
    else:
        _emit(args, str(len(elems)), {"count": len(elems)})
    return 0


def _weighted_terms(ctx, line, text):
    terms = []
    for item in text.split(","):
        if ":" not in item:
            raise UsageError(f"combination term {item!r} must look like w:POINT")
        w, pt = item.split(":", 1)
        terms.append((ctx.parse(w), line.point(pt)))
    return terms


def cmd_affine(args):
    ctx = _field(args)
    line = CoordinateLine(ctx)
    A = line.point(args.puncture)
    terms = _weighted_terms(ctx, line, args.combine)
    aux = tuple(line.point(s) for s in _pair(args.aux)) if args.aux else None
    X = affine_combine(line, A, terms, aux)
    _emit(args, str(X), {"puncture": str(A), "result": str(X)})
    return 0


def cmd_vec(args):
    ctx = _field(args)
    line = CoordinateLine(ctx)
    A, B = line.point(args.puncture), line.point(args.zero)
    aux = line.point(args.aux) if args.aux else None
    if args.add:
        X, Y = (line.point(s) for s in args.add)
        R = vector_add(line, A, B, X, Y, aux)
    else:
        lam, X = ctx.parse(args.scale[0]), line.point(args.scale[1])
        R = vector_scale(line, A, B, lam, X, aux)
    _emit(args, str(R), {"puncture": str(A), "zero": str(B), "result": str(R)})
    return 0


def cmd_cocycle(args):
    ctx = _field(args)
    line = CoordinateLine(ctx)
    A = line.point(args.base)
    s1 = tuple(line.point(s) for s in _pair(getattr(args, "from")))
    s2 = tuple(line.point(s) for s in _pair(args.to))
    g = affine_cocycle(line, A, s1, s2)
    v0, v1 = g.values()
    _emit(args, f"t={g.t} s={g.s}", {"t": str(g.t), "s": str(g.s), "value_at_0": str(v0), "value_at_1": str(v1)})
    return 0


def cmd_gf3_demo(args):
    line, cert = gf3_unique_structure()
    all_perm = gf3_all_permutations()
    n_proj = gf3_projectivity_count()
    n_pgl = len(enumerate_pgl(3))
    induced = {induced_projectivity(g) for g in enumerate_pgl(3)}
    cr = {str(line.cross_ratio(*q)) for q in itertools.permutations(line.points)}
    data = {
        "points": line.n,
        "hom_set_size": len(line.hom(line.points[0], line.points[1])),
        "structures_found": cert.solutions,
        "search_nodes": cert.nodes,
        "unique": cert.unique,
        "cross_ratios": sorted(cr),
        "projectivities": n_proj,
        "all_permutations_projective": all_perm,
        "pgl_order": n_pgl,
        "distinct_induced": len(induced),
    }
    text = "\n".join(
        [
            f"points: {data['points']}",
            f"arrows per hom-set between distinct points: {data['hom_set_size']}",
            f"valid composition tables found: {cert.solutions} ({cert.nodes} search nodes); unique: {cert.unique}",
            f"cross ratios of the four points in all 24 orders: {', '.join(data['cross_ratios'])}",
            f"projectivities: {n_proj}; every permutation projective: {all_perm}",
            f"|PGL(2,3)| = {n_pgl}; distinct induced projectivities: {len(induced)}",
        ]
    )
    _emit(args, text, data)
    return 0


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", "--prime", type=int, help="work over GF(p)")
    common.add_argument("--rational", action="store_true", help="work over the rationals")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="seed for any sampling (default 0)")

    parser = argparse.ArgumentParser(prog="projline", description="Abstract projective lines over prime fields.")
    parser.add_argument("--version", action="version", version=f"projline ({_kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-model", parents=[common], help="write the coordinate model P(GF(p)^2) as a structure file")
    s.add_argument("-o", "--output", help="structure file to write (default: print it)")
    s.add_argument("--bound", type=int, default=DEFAULT_MODEL_BOUND)
    s.set_defaults(func=cmd_build_model)

    s = sub.add_parser("verify", parents=[common], help="check a structure file against the axioms")
    s.add_argument("file")
    s.add_argument("--early-exit", action="store_true")
    s.add_argument("--cap", type=int, default=DEFAULT_VIOLATION_CAP)
    s.add_argument("--assoc-bound", type=int, default=DEFAULT_ASSOC_BOUND)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("crossratio", parents=[common], help="cross ratio (A,B;C,D) of four points a1:a2")
    s.add_argument("points", nargs=4)
    s.set_defaults(func=cmd_crossratio)

    s = sub.add_parser("compose", parents=[common], help="compose arrows SRC>DST@DIR or AT*LAMBDA, left to right")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_compose)

    for name, func, helptext in (
        ("find-projectivity", cmd_find_projectivity, "the projectivity carrying one triple to another"),
        ("census", cmd_census, "count projectivities extending a triple assignment"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("src")
        s.add_argument("dst")
        if name == "census":
            s.add_argument("--triple", help="A,B,C (default: drawn with --seed)")
            s.add_argument("--to", help="A',B',C' (default: drawn with --seed)")
            s.add_argument("--bound", type=int, default=CENSUS_DEFAULT_BOUND)
        else:
            s.add_argument("--triple", required=True)
            s.add_argument("--to", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("pgl", parents=[common], help="enumerate PGL(2, p)")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true")
    g.add_argument("--list", action="store_true")
    g.add_argument("--cayley", action="store_true")
    s.set_defaults(func=cmd_pgl)

    s = sub.add_parser("affine", parents=[common], help="affine combination on a punctured line")
    s.add_argument("--puncture", required=True)
    s.add_argument("--combine", required=True, help="w1:P1,w2:P2,...")
    s.add_argument("--aux", help="auxiliary B,C for the chart")
    s.set_defaults(func=cmd_affine)

    s = sub.add_parser("vec", parents=[common], help="vector operations on a punctured line")
    s.add_argument("--puncture", required=True)
    s.add_argument("--zero", required=True)
    s.add_argument("--aux", help="auxiliary unit point for the chart")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--add", nargs=2, metavar=("X", "Y"))
    g.add_argument("--scale", nargs=2, metavar=("LAMBDA", "X"))
    s.set_defaults(func=cmd_vec)

    s = sub.add_parser("cocycle", parents=[common], help="affine-bundle cocycle between two frames at a base point")
    s.add_argument("--base", required=True)
    s.add_argument("--from", required=True)
    s.add_argument("--to", required=True)
    s.set_defaults(func=cmd_cocycle)

    s = sub.add_parser("gf3-demo", parents=[common], help="the four-point line over GF(3)")
    s.set_defaults(func=cmd_gf3_demo)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ProjlineError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
