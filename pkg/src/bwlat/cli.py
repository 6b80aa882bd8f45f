"""
Command-line interface for the Barnes-Wall lattice workbench.
Builds lattices, runs verification suites, streams minimal vectors and
produces gluing certificates and mass tables.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional
import logging

from . import __version__
from .asymptotics import mass, minkowski_bound, render_table
from .barnes_wall import BWLattice, build_bw
from .config import CERTIFICATES_DIR, CODES_DIR, DEFAULT_SEED, LATTICES_DIR, MAX_BW_LEVEL, ensure_dirs_exist
from .e8_frames import e8_frame_orbits
from .errors import BwlatError
from .formats.cache import load_bw_with_fallback
from .formats.certificate import certificate_from, read_certificate, verify_certificate, write_certificate
from .formats.lattice_file import write_code, write_lattice
from .formats.mv_stream import write_mv_stream
from .gf2_codes import (
    code_from_affine_codim2,
    code_properties,
    extended_hamming,
    hamming,
    indecomposable_doubly_even,
    simplex,
)
from .minimal_vectors import minimal_vectors_structural
from .quadratic_f2 import avoiding_maps_survey
from .verification import SUITES, verify_bw, verify_washtenaw, verify_ypsilanti
from .washtenaw import TwoSpecialLattice, washtenaw_series, washtenawize
from .ypsilanti import desk_scale_ypsilanti, separation_witness

# Set up logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DESK_SCALE_RANK = 128

CODE_FAMILIES = {
    "hamming": hamming,
    "extended": extended_hamming,
    "simplex": simplex,
    "affine2": code_from_affine_codim2,
    "doublyeven": indecomposable_doubly_even,
}


def _status(ok: bool, text: str) -> None:
    print(f"{'✅' if ok else '❌'} {text}")


def _parse_base(text: str) -> int:
    if not text.startswith("bw") or not text[2:].isdigit():
        raise argparse.ArgumentTypeError(f"Base must look like bw<level>, got {text!r}")
    return int(text[2:])


def _load_bw(args: argparse.Namespace, d: int) -> BWLattice:
    if args.no_cache:
        return build_bw(d)
    return load_bw_with_fallback(d)


def cmd_build(args: argparse.Namespace) -> int:
    l = _load_bw(args, args.d)
    path = args.output or LATTICES_DIR / f"bw{args.d}.lat"
    write_lattice(l.lattice, path, include_gram=args.gram)
    print(f"RANK: {l.rank}")
    print(f"DUALITY_LEVEL: {l.duality_level}")
    print(f"DETERMINANT: {l.lattice.determinant}")
    print(f"FILE: {path}")
    _status(True, f"Built BW_{args.d}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_bw(
        args.d, suite=args.suite, seed=args.seed, sample=args.sample, lattice=_load_bw(args, args.d)
    )
    text = report.render()
    print(text, end="")
    if args.output:
        Path(args.output).parent.mkdir(parents=True, exist_ok=True)
        Path(args.output).write_text(text)
    _status(report.passed, f"BW_{args.d} {args.suite} suite {'verified' if report.passed else 'failed'}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_minvec(args: argparse.Namespace) -> int:
    stream = minimal_vectors_structural(_load_bw(args, args.d), args.q)
    print(f"COUNT: {stream.count}")
    print(f"NORM: {stream.norm}")
    if args.count_only:
        return EXIT_OK
    path = args.output or LATTICES_DIR / f"bw{args.d}_mv_q{args.q}.txt"
    write_mv_stream(path, stream.count, stream.denom_exp, stream.chunks())
    print(f"FILE: {path}")
    return EXIT_OK


def cmd_frames(args: argparse.Namespace) -> int:
    report = e8_frame_orbits()
    for f in report.frames:
        print(f"FRAME {f.name}: d-invariant {f.d_invariant}, frame {'yes' if f.is_frame else 'no'}")
    print(f"D_INVARIANTS: {' '.join(str(x) for x in report.d_invariants)}")
    ok = report.all_frames and report.d_invariants == (1, 2, 3, 4)
    _status(ok, "Four frame orbits distinguished" if ok else "Frame orbits not distinguished")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_codes(args: argparse.Namespace) -> int:
    code = CODE_FAMILIES[args.family](args.r)
    props = code_properties(code)
    print(f"LENGTH: {code.length}")
    print(f"DIMENSION: {code.dimension}")
    print(f"MIN_WEIGHT: {props.min_weight}")
    print(f"DOUBLY_EVEN: {props.is_doubly_even}")
    print(f"SELF_ORTHOGONAL: {props.is_self_orthogonal}")
    print(f"INDECOMPOSABLE: {props.is_indecomposable}")
    path = args.output or CODES_DIR / f"{args.family}_{args.r}.code"
    write_code(code, path)
    print(f"FILE: {path}")
    return EXIT_OK


def cmd_washtenawize(args: argparse.Namespace) -> int:
    base = TwoSpecialLattice.from_bw(_load_bw(args, args.base))
    w = washtenawize(base, indecomposable_doubly_even(args.degree))
    report = verify_washtenaw(w)
    print(report.render(), end="")
    if args.output:
        write_lattice(w.lattice, args.output)
        print(f"FILE: {args.output}")
    _status(report.passed, f"Washtenawization of BW_{args.base}, degree {args.degree}")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_series(args: argparse.Namespace) -> int:
    w = washtenaw_series(args.j, args.k, allow_below_bound=args.allow_below_bound)
    print(f"RANK: {w.rank}")
    print(f"DUALITY_LEVEL: {w.duality_level}")
    print(f"EXPECTED_RATIO: {w.expected_ratio}")
    print(f"PROVENANCE: {'; '.join(w.provenance)}")
    if args.output:
        write_lattice(w.lattice, args.output)
        print(f"FILE: {args.output}")
    return EXIT_OK


def cmd_ypsilanti(args: argparse.Namespace) -> int:
    if args.rank != DESK_SCALE_RANK:
        print(f"❌ Only the rank-{DESK_SCALE_RANK} desk-scale analogue is supported")
        return EXIT_USAGE
    y = desk_scale_ypsilanti(seed=args.seed, negative_control=args.negative_control)
    report = verify_ypsilanti(y)
    print(report.render(), end="")
    witness = separation_witness(y)
    if witness is not None:
        vector, e = witness
        norm = sum(int(x) * int(x) for x in vector) / float(1 << (2 * e))
        print(f"CROSS_VECTOR_NORM: {norm:g}")

    attempts = next((int(p.split()[1]) for p in y.provenance if p.startswith("attempts ")), 1)
    cert = certificate_from(y, seed=args.seed, attempts=attempts)
    suffix = "_control" if args.negative_control else ""
    path = args.output or CERTIFICATES_DIR / f"ypsilanti_seed{args.seed}{suffix}.cert"
    write_certificate(cert, path)
    print(f"FILE: {path}")
    _status(report.passed, "Ypsilanti gluing verified" if report.passed else "Ypsilanti gluing failed")
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_check_certificate(args: argparse.Namespace) -> int:
    cert = read_certificate(args.file)
    check = verify_certificate(cert)
    for line in check.failures:
        print(f"FAIL {line}")
    print(f"RESULT: {'verified' if check.passed else 'failed'}")
    _status(check.passed, f"Certificate {args.file}")
    return EXIT_OK if check.passed else EXIT_FAILED


def cmd_mass(args: argparse.Namespace) -> int:
    if args.table:
        print(render_table())
        return EXIT_OK
    if args.n is None:
        print("❌ Give -n <dimension> or --table")
        return EXIT_USAGE
    value = mass(args.n)
    print(f"MASS: {value.value}")
    print(f"LOG10: {value.log10:.6f}")
    if args.minkowski:
        print(f"MINKOWSKI: {minkowski_bound(args.n)}")
    return EXIT_OK


def cmd_survey(args: argparse.Namespace) -> int:
    survey = avoiding_maps_survey(args.b, args.a, group=args.group)
    print(f"GROUP: {survey.group}")
    print(f"GROUP_ORDER: {survey.group_order}")
    print(f"STABILIZER_ORDER: {survey.stabilizer_order}")
    for k in sorted(survey.class_sizes):
        print(f"CLASS {k}: {survey.class_sizes[k]}")
    print(f"NONEMPTY_K: {' '.join(str(k) for k in survey.nonempty_k)}")
    print(f"DIVISIBLE: {survey.divisible}")
    ok = survey.nonempty_k == survey.expected_k and survey.divisible
    _status(ok, "Survey matches the expected k range" if ok else "Survey deviates from the expected k range")
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for all randomness (default: 0)")
    common.add_argument("--no-cache", action="store_true", help="Rebuild lattices instead of using output/cache")

    parser = argparse.ArgumentParser(
        prog="bw",
        description="Barnes-Wall lattice workbench",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s build -d 4                       # Write BW_4 to output/lattices
  %(prog)s verify -d 4 --suite full         # Full invariant suite
  %(prog)s minvec -d 6 --count-only         # Number of minimal vectors
  %(prog)s ypsilanti --rank 128 --seed 42   # Desk-scale gluing with certificate
  %(prog)s mass --table                     # Lower-bound coefficient table
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="Build BW_d and write a lattice file")
    p.add_argument("-d", type=int, required=True, choices=range(1, MAX_BW_LEVEL + 1), metavar="D")
    p.add_argument("--gram", action="store_true", help="Append the Gram block")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", parents=[common], help="Run a verification suite on BW_d")
    p.add_argument("-d", type=int, required=True, choices=range(1, MAX_BW_LEVEL + 1), metavar="D")
    p.add_argument("--suite", choices=SUITES, default="quick")
    p.add_argument("--sample", type=int, help="Membership sample size above level 5")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minvec", parents=[common], help="Stream minimal vectors of BW_d[q]")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-q", type=int, default=0, help="Twist")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_minvec)

    p = sub.add_parser("frames", parents=[common], help="Frame orbits of E8")
    p.add_argument("which", choices=["e8-orbits"])
    p.set_defaults(func=cmd_frames)

    p = sub.add_parser("codes", parents=[common], help="Build a code family member")
    p.add_argument("family", choices=sorted(CODE_FAMILIES))
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_codes)

    p = sub.add_parser("washtenawize", parents=[common], help="Washtenawize a Barnes-Wall lattice")
    p.add_argument("--base", type=_parse_base, required=True, help="bw<level>")
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_washtenawize)

    p = sub.add_parser("series", parents=[common], help="Member W(k) of the j-Washtenaw series")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--allow-below-bound", action="store_true")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("ypsilanti", parents=[common], help="Glue two Washtenawized BW_3 along an avoiding isometry")
    p.add_argument("--rank", type=int, default=DESK_SCALE_RANK)
    p.add_argument("--negative-control", action="store_true", help="Force one matched minimal coset pair")
    p.add_argument("-o", "--output", type=Path)
    p.set_defaults(func=cmd_ypsilanti)

    p = sub.add_parser("check-certificate", parents=[common], help="Re-verify a Ypsilanti certificate")
    p.add_argument("file", type=Path)
    p.set_defaults(func=cmd_check_certificate)

    p = sub.add_parser("mass", parents=[common], help="Mass formula and asymptotics table")
    p.add_argument("-n", type=int)
    p.add_argument("--table", action="store_true")
    p.add_argument("--minkowski", action="store_true", help="Also print the Minkowski bound f(n)")
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("survey-avoiding", parents=[common], help="Exhaustive avoiding-map survey")
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("--group", choices=["orthogonal", "general_linear"], default="orthogonal")
    p.set_defaults(func=cmd_survey)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ensure_dirs_exist()

    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("\n⏹️  Interrupted by user")
        return EXIT_FAILED
    except FileNotFoundError as e:
        print(f"❌ {e}")
        return EXIT_USAGE
    except BwlatError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {type(e).__name__}: {e}")
        return EXIT_USAGE


def main() -> None:
    """Main CLI entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
