"""Command-line interface.

Exit codes: 0 on success (and for compatible/matching verdicts), 2 when a
membership check fails or a reference-table diff is found, 1 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import files
from .chambers import cubicles, extremal_edges
from .engine import GenerationOptions, generate_system
from .polytope import check_membership, reduce_system
from .spectra import Spectrum, SystemFormat

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DIFF = 2


def _format(text: str) -> SystemFormat:
    return SystemFormat(tuple(int(p) for p in text.split("x")))


def _parse_spectrum(text: str) -> Spectrum:
    return Spectrum(Fraction(p) for p in text.split(","))


def cmd_edges(args) -> int:
    fmt = _format(args.format)
    edges = extremal_edges(fmt)
    for e in edges:
        print(e.serialize())
    print(f"# {len(edges)} extremal edges for {args.format}", file=sys.stderr)
    return EXIT_OK


def cmd_cubicles(args) -> int:
    fmt = _format(args.format)
    found = cubicles(fmt)
    for c in found:
        print(c.serialize())
    print(f"# {len(found)} cubicles for {args.format}", file=sys.stderr)
    return EXIT_OK


def _generation_options(args) -> GenerationOptions:
    return GenerationOptions(
        unit_coefficients_only=not args.all_coeffs,
        qubit_fast_path=args.qubit_fast_path)


def cmd_generate(args) -> int:
    fmt = _format(args.format)
    system = generate_system(fmt, _generation_options(args))
    meta = {"command": "generate", "all-coeffs": args.all_coeffs,
            "qubit-fast-path": args.qubit_fast_path}
    text = files.serialize_system(system, meta)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    if args.system:
        system = files.read_system(args.system)
    else:
        system = generate_system(_format(args.format),
                                 _generation_options(args))
    reduced, report = reduce_system(system)
    text = files.serialize_system(reduced, {"command": "reduce"})
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    summary = {
        "input": len(system.inequalities),
        "kept": len(reduced.inequalities),
        "removed": len(report.removed),
        "orbits": len(report.orbits),
        "witnesses": len(report.witnesses),
    }
    print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def cmd_check(args) -> int:
    fmt = _format(args.format)
    if args.system:
        system = files.read_system(args.system)
    else:
        reduced, _ = reduce_system(generate_system(fmt))
        system = reduced
    margins = [_parse_spectrum(s) for s in args.margins]
    composite = _parse_spectrum(args.composite)
    verdict = check_membership(system, margins, composite)
    print(json.dumps({
        "compatible": verdict.compatible,
        "violated": list(verdict.violated),
        "margins_checked": verdict.margins_checked,
    }))
    return EXIT_OK if verdict.compatible else EXIT_DIFF


def cmd_kron(args) -> int:
    from . import symgroup

    diagrams = [tuple(int(p) for p in d.split(",")) for d in args.diagrams]
    if len(diagrams) != 3:
        print("kron needs exactly three diagrams", file=sys.stderr)
        return EXIT_ERROR
    lam, mu, nu = diagrams
    if args.reduced:
        print(symgroup.reduced_kronecker(lam, mu, nu))
    else:
        print(symgroup.kronecker(lam, mu, nu))
    return EXIT_OK


def cmd_sample(args) -> int:
    from . import sampler

    fmt = _format(args.format)
    if args.system:
        system = files.read_system(args.system)
    else:
        system, _ = reduce_system(generate_system(fmt))
    report = sampler.necessity_trial(system, fmt, args.trials, args.seed,
                                     args.tol)
    print(sampler.report_to_json(report))
    return EXIT_OK if report["compatible"] else EXIT_DIFF


def cmd_verify_tables(args) -> int:
    drifted = files.verify_checksums()
    if drifted:
        print(json.dumps({"checksum_drift": drifted}))
        return EXIT_DIFF
    formats = ["2x2", "2x2x2", "2x3"]
    if args.extended:
        formats += ["2x4", "3x3", "2x2x3", "2x2x2x2"]
    failures = []
    results = {}
    for name in formats:
        fmt = _format(name)
        opts = GenerationOptions(qubit_fast_path=fmt.is_qubit and
                                 fmt.rank == 4)
        reduced, _ = reduce_system(generate_system(fmt, opts))
        diff = files.verify_fixture(reduced, files.fixture_for_format(fmt))
        results[name] = {
            "matched": len(diff.matched),
            "missing": len(diff.missing_from_generated),
            "extra": len(diff.extra_in_generated),
            "annotations": diff.annotations,
        }
        if not diff.exact_match:
            failures.append(name)
    print(json.dumps({"results": results, "failures": failures}, indent=2))
    return EXIT_DIFF if failures else EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qmarginal",
        description="Exact inequality systems for the quantum marginal "
                    "problem of univariant spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", required=True,
                       help="subsystem dimensions, e.g. 2x2x3")

    p = sub.add_parser("edges", help="list extremal edges")
    add_format(p)
    p.set_defaults(func=cmd_edges)

    p = sub.add_parser("cubicles", help="list realizable cubicle rankings")
    add_format(p)
    p.set_defaults(func=cmd_cubicles)

    p = sub.add_parser("generate", help="generate candidate inequalities")
    add_format(p)
    p.add_argument("--all-coeffs", action="store_true",
                   help="keep every nonzero structure constant, not only 1")
    p.add_argument("--qubit-fast-path", action="store_true",
                   help="use the qubit shortcut (qubit formats only)")
    p.add_argument("--output", help="write the system file here")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="reduce to an irredundant system")
    add_format(p)
    p.add_argument("--system", help="input system file (default: generate)")
    p.add_argument("--all-coeffs", action="store_true")
    p.add_argument("--qubit-fast-path", action="store_true")
    p.add_argument("--output", help="write the reduced system here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check", help="test spectra against a system")
    add_format(p)
    p.add_argument("--system", help="system file (default: reduced system)")
    p.add_argument("--composite", required=True,
                   help="composite spectrum, e.g. 1/2,1/2,0,0")
    p.add_argument("--margins", nargs="+", required=True,
                   help="one spectrum per subsystem")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kron", help="Kronecker coefficient of three diagrams")
    p.add_argument("diagrams", nargs="+",
                   help="three diagrams as comma lists, e.g. 5,2 5,1,1 6,1")
    p.add_argument("--reduced", action="store_true",
                   help="stable coefficient of reduced diagrams")
    p.set_defaults(func=cmd_kron)

    p = sub.add_parser("sample", help="random-state necessity trial")
    add_format(p)
    p.add_argument("--system", help="system file (default: reduced system)")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify-tables",
                       help="check fixtures against regenerated systems")
    p.add_argument("--extended", action="store_true",
                   help="include the large formats (slow)")
    p.set_defaults(func=cmd_verify_tables)

    args = parser.parse_args(argv)
    sys.setrecursionlimit(100000)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
