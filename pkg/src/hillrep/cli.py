"""Command-line interface: ``hillrep <command> ...``.

Every command writes machine-readable JSON to stdout (or ``--out``) and
diagnostics to stderr.  Exit codes: 0 ok, 1 I/O failure, 2 malformed input,
3 map not *-linear, 4 verification or comparison failure, 5 missing
provenance.
"""

import argparse
import sys

import numpy as np

from . import fileformats as ff
from .errors import (
    DifferentMaps,
    DimensionMismatch,
    MissingProvenance,
    NotStarLinear,
    SpanDeficient,
)
from .hill import apply_hill, compare, hill, minimal_rank, representation_residuals
from .linmap import (
    apply,
    choi,
    is_hermitian_preserving,
    random_star_linear,
    star_linearity_deviation,
)
from .structure import analyze_structure

EXIT_OK, EXIT_IO, EXIT_SCHEMA, EXIT_NOT_STAR, EXIT_VERIFY, EXIT_PROVENANCE = range(6)
DEFAULT_TOL = 1e-10


class VerificationFailed(Exception):
    pass


def _emit(obj, out=None):
    text = ff.write_json(obj, out)
    if out is None:
        sys.stdout.write(text)


def _load_map(path):
    return ff.map_from_dict(ff.read_json(path))


def _load_hill(path):
    return ff.hill_from_dict(ff.read_json(path))


def _complex_list(values):
    return [[float(z.real), float(z.imag)] for z in values]


def cmd_analyze(args):
    lmap = _load_map(args.map)
    choi_dev, shuffle_dev = star_linearity_deviation(lmap)
    eig = np.linalg.eigvals(choi(lmap).M)
    eig = eig[np.lexsort((eig.imag, eig.real))]
    _emit({
        "star_linear": choi_dev <= args.tol and shuffle_dev <= args.tol,
        "hermitian_choi": choi_dev <= args.tol,
        "shuffle_identity": shuffle_dev <= args.tol,
        "hermitian_preserving": is_hermitian_preserving(lmap, tol=args.tol),
        "m": minimal_rank(lmap, args.tol),
        "choi_eigenvalues": _complex_list(eig),
    })


def cmd_hill(args):
    lmap = _load_map(args.map)
    rep = hill(lmap, args.strategy, args.tol)
    _emit(ff.hill_to_dict(rep, args.tol), args.out)


def cmd_verify(args):
    lmap = _load_map(args.map)
    rep, _ = _load_hill(args.rep)
    if (rep.n, rep.q) != (lmap.n, lmap.q):
        raise VerificationFailed(
            f"representation is for {rep.q}x{rep.q} -> {rep.n}x{rep.n}, map is {lmap.q}x{lmap.q} -> {lmap.n}x{lmap.n}"
        )
    res = representation_residuals(lmap, rep)
    ok = (
        res["L_rel"] <= args.tol
        and res["H_hermitian"] <= args.tol
        and res["H_inverse_condition"] > args.tol
        and rep.m == minimal_rank(lmap, args.tol)
    )
    res = {"ok": ok, "m": rep.m, **res}
    _emit(res)
    if not ok:
        raise VerificationFailed("representation does not reproduce the map")


def cmd_compare(args):
    repA, _ = _load_hill(args.rep_a)
    repB, _ = _load_hill(args.rep_b)
    bridge = compare(repA, repB, args.tol)
    _emit({
        "Phi": ff.encode_matrix(bridge.Phi) if repA.m else [],
        "Xi": ff.encode_matrix(bridge.Xi) if repA.m else [],
        "residuals": bridge.residuals,
    })


def cmd_convert(args):
    lmap = _load_map(args.map)
    _emit(ff.map_to_dict(lmap, args.to), args.out)


def cmd_random(args):
    lmap = random_star_linear(args.n, args.q, args.rank, args.seed, args.field)
    _emit(ff.map_to_dict(lmap, args.representation), args.out)


def cmd_structure(args):
    report = analyze_structure(_load_map(args.map), args.tol)
    _emit({
        "star_linear": report.star_linear,
        "block_patterns": sorted(report.block_patterns),
        "entry_patterns": sorted(report.entry_patterns),
        "duality_consistent": report.duality_consistent,
    })


def cmd_apply(args):
    V = ff.matrix_from_dict(ff.read_json(args.matrix))
    if args.rep:
        rep, _ = _load_hill(args.rep)
        out = apply_hill(rep, V)
    else:
        out = apply(_load_map(args.map), V)
    _emit(ff.matrix_to_dict(out), args.out)


def build_parser():
    parser = argparse.ArgumentParser(prog="hillrep", description="Hill representations of *-linear matrix maps")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    def tol(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="shared numerical tolerance")

    p = add("analyze", cmd_analyze, "*-linearity and minimal size of a map")
    p.add_argument("map")
    tol(p)

    p = add("hill", cmd_hill, "construct a minimal Hill representation")
    p.add_argument("map")
    p.add_argument("--strategy", choices=["blocks", "qr"], default="blocks")
    p.add_argument("--out")
    tol(p)

    p = add("verify", cmd_verify, "check a representation against a map")
    p.add_argument("map")
    p.add_argument("rep")
    tol(p)

    p = add("compare", cmd_compare, "bridge between two representations of one map")
    p.add_argument("rep_a")
    p.add_argument("rep_b")
    tol(p)

    p = add("convert", cmd_convert, "switch between matricization and Choi matrix")
    p.add_argument("map")
    p.add_argument("--to", choices=["choi", "matricization"], required=True)
    p.add_argument("--out")

    p = add("random", cmd_random, "random *-linear map of given Choi rank")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--field", choices=["real", "complex"], default="complex")
    p.add_argument("--representation", choices=["matricization", "choi"], default="matricization")
    p.add_argument("--out")

    p = add("structure", cmd_structure, "block/entry structural patterns")
    p.add_argument("map")
    tol(p)

    p = add("apply", cmd_apply, "evaluate a map (or a representation) on a matrix")
    p.add_argument("map")
    p.add_argument("matrix")
    p.add_argument("--rep", help="evaluate this Hill file instead of the map")
    p.add_argument("--out")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ff.SchemaError, DimensionMismatch) as exc:
        print(f"hillrep: malformed input: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"hillrep: {exc}", file=sys.stderr)
        return EXIT_IO
    except NotStarLinear as exc:
        print(f"hillrep: {exc}", file=sys.stderr)
        return EXIT_NOT_STAR
    except (VerificationFailed, DifferentMaps, SpanDeficient) as exc:
        print(f"hillrep: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except MissingProvenance as exc:
        print(f"hillrep: {exc}", file=sys.stderr)
        return EXIT_PROVENANCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
