"""Command-line front end.

Exit codes: 0 valid output, 1 invalid input/decomposition, 2 impossibility
certificate, 3 usage error, 4 search exhausted or timed out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fileformat
from .compose import UnverifiedInputError
from .cycles import SearchExhausted, cycle_decomposition_pow2, hamiltonian_decomposition
from .graphcore import Decomposition, Hypercube, build_graph, parse_descriptor
from .sunlet import (
    MAX_SUNLET16_DIMENSION,
    spanning_sunlets_q4n,
    sunlet16,
    sunlet_multiple,
    torus_sunlet_pair,
)
from .verify import ImpossibilityCertificate, counting_obstruction, divisibility_check, verify_decomposition

EXIT_OK, EXIT_INVALID, EXIT_IMPOSSIBLE, EXIT_USAGE, EXIT_SEARCH = 0, 1, 2, 3, 4

TARGETS = ("sunlet16", "torus-sunlet", "spanning-sunlet", "ham", "cycles", "sunlet-multi")
REQUIRED = {
    "sunlet16": ("n",),
    "torus-sunlet": ("k",),
    "spanning-sunlet": ("n",),
    "ham": ("n",),
    "cycles": ("n", "t"),
    "sunlet-multi": ("m",),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hdecomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="build, verify and write a decomposition")
    gen.add_argument("target", choices=TARGETS)
    gen.add_argument("--n", type=int, help="hypercube dimension (for sunlet-multi: dimension of the cycle input)")
    gen.add_argument("--k", type=int, help="torus side, or cycle length for built-in sunlet-multi input")
    gen.add_argument("--t", type=int, help="cycle length exponent for the cycles target")
    gen.add_argument("--m", type=int, help="multiplier for sunlet-multi")
    gen.add_argument("--cycles", type=Path, help="imported hdecomp/1 cycle decomposition for sunlet-multi")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--timeout", type=float, default=60.0, help="search time budget in seconds")
    gen.add_argument("--out", default="-", help="output path, '-' for stdout")
    gen.add_argument("--format", choices=("hdecomp", "edges"), default="hdecomp")

    ver = sub.add_parser("verify", help="check a decomposition file")
    ver.add_argument("path", type=Path)
    ver.add_argument("--graph", help="host graph override, e.g. Q6 or C4xC4")

    info = sub.add_parser("info", help="arithmetic summary for L_16 on Q_n")
    info.add_argument("--n", type=int, required=True)
    return parser


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _pow2_exponent(k: int) -> int:
    if k < 4 or k & (k - 1):
        raise UsageError(f"--k must be a power of two >= 4, got {k}")
    return k.bit_length() - 1


def _generate(args) -> tuple[Decomposition | ImpossibilityCertificate, str]:
    missing = [f"--{p}" for p in REQUIRED[args.target] if getattr(args, p) is None]
    if missing:
        raise UsageError(f"{args.target} requires {', '.join(missing)}")
    target = args.target
    if target == "sunlet16":
        return sunlet16(args.n), f"sunlet16 n={args.n}"
    if target == "torus-sunlet":
        return torus_sunlet_pair(args.k), f"torus-sunlet k={args.k}"
    if target == "spanning-sunlet":
        return spanning_sunlets_q4n(args.n), f"spanning-sunlet n={args.n}"
    if target == "ham":
        return hamiltonian_decomposition(args.n), f"ham n={args.n}"
    if target == "cycles":
        d = cycle_decomposition_pow2(args.n, args.t, seed=args.seed, timeout=args.timeout)
        return d, f"cycles n={args.n} t={args.t}"

    # sunlet-multi
    if (args.k is None) == (args.cycles is None):
        raise UsageError("sunlet-multi needs exactly one of --k or --cycles")
    if args.cycles is not None:
        try:
            cd, _ = fileformat.read(args.cycles)
        except OSError as exc:
            raise UsageError(f"cannot read {args.cycles}: {exc}") from None
        if not isinstance(cd.graph, Hypercube) or cd.kind.shape != "cycle":
            raise UsageError("--cycles must hold a cycle decomposition of a hypercube")
        if args.n is not None and cd.graph.n != args.n:
            raise UsageError(f"--n {args.n} does not match the imported Q_{cd.graph.n}")
        source = f"imported C{cd.kind.cycle_length}"
    else:
        if args.n is None:
            raise UsageError("sunlet-multi with --k requires --n")
        cd = cycle_decomposition_pow2(args.n, _pow2_exponent(args.k), seed=args.seed, timeout=args.timeout)
        source = f"k={args.k}"
    return sunlet_multiple(args.m, cd), f"sunlet-multi m={args.m} n={cd.graph.n} {source}"


def cmd_generate(args) -> int:
    try:
        result, generator = _generate(args)
    except UsageError as exc:
        print(f"hdecomp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except fileformat.FormatError as exc:
        print(f"hdecomp: malformed input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnverifiedInputError as exc:
        print(f"hdecomp: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SearchExhausted as exc:
        print(f"hdecomp: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except ValueError as exc:
        print(f"hdecomp: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if isinstance(result, ImpossibilityCertificate):
        text = json.dumps({"certificate": result.to_obj()}) + "\n"
        if args.out != "-":
            Path(args.out).write_text(text)
        sys.stdout.write(text)
        return EXIT_IMPOSSIBLE

    report = verify_decomposition(None, result)
    if not report.valid:  # pragma: no cover - constructions are verified in tests
        print(f"hdecomp: internal error, output failed verification: {report.summary()}", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "edges":
        _emit(fileformat.dumps_edges(result), args.out)
    else:
        _emit(fileformat.dumps(result, generator, args.seed), args.out)
    if args.out != "-":
        print(f"wrote {len(result)} pieces of {result.kind} in {result.graph} to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = args.path.read_text()
    except OSError as exc:
        print(f"hdecomp: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        d, _ = fileformat.loads(text)
    except fileformat.FormatError as exc:
        print(f"invalid: malformed file: {exc}")
        return EXIT_INVALID
    try:
        host = build_graph(parse_descriptor(args.graph) if args.graph else d.graph)
    except ValueError as exc:
        print(f"hdecomp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = verify_decomposition(host, d)
    if report.valid:
        print(f"valid: {report.piece_count} pieces of {d.kind} in {args.graph or d.graph}")
        return EXIT_OK
    print(f"invalid: {len(report.failures)} failure(s)")
    for f in report.failures[:50]:
        print(f"  {f}")
    if len(report.failures) > 50:
        print(f"  ... {len(report.failures) - 50} more")
    return EXIT_INVALID


def cmd_info(args) -> int:
    n = args.n
    if n < 1:
        print("hdecomp: --n must be positive", file=sys.stderr)
        return EXIT_USAGE
    edges = n << (n - 1)
    print(f"Q{n}: {1 << n} vertices, {edges} edges, degree {n}")
    cert = divisibility_check(n)
    if cert is not None:
        print(f"divisibility: fail (16 does not divide {edges})")
        print("counting: not applicable")
        print("L16-decomposition: impossible (divisibility)")
        return EXIT_OK
    print(f"divisibility: pass ({edges} / 16 = {edges // 16})")
    cert = counting_obstruction(n)
    if cert is not None:
        pieces, forced, available = cert.detail
        print(f"counting: fail ({pieces} pieces force {forced} degree-3 vertices, only {available} exist)")
        print("L16-decomposition: impossible (degree_counting)")
        return EXIT_OK
    print("counting: pass")
    note = "" if n <= MAX_SUNLET16_DIMENSION else f" (generation capped at Q{MAX_SUNLET16_DIMENSION})"
    print(f"L16-decomposition: constructible, {edges // 16} pieces{note}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    handler = {"generate": cmd_generate, "verify": cmd_verify, "info": cmd_info}[args.command]
    return handler(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
