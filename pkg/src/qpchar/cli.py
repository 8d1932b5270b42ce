"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 verification or property
failure, 4 overflow or unsound truncation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import quasiparticle as qp
from .affine import WeightSpec, make_algebra, make_weight
from .basis import enumerate_basis
from .errors import CoefficientOverflow, ConfigError, InternalInconsistency, UnsoundTruncation
from .fermionic import fermionic_character
from .properties import run_identity_suite
from .verify import VerifyReport, acceptance_matrix, verify_case

EXIT_OK, EXIT_CONFIG, EXIT_FAIL, EXIT_RESOURCE = 0, 2, 3, 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qpchar", description="Characters of principal subspaces via quasi-particle bases.")
    sub = parser.add_subparsers(dest="command", required=True)

    def weight_args(p, required=True):
        p.add_argument("--family", choices=["B", "C", "F4", "G2"], required=required)
        p.add_argument("--rank", type=int)
        p.add_argument("--k0", type=int, default=1)
        p.add_argument("--kj", type=int, default=0)
        p.add_argument("--j", type=int)
        p.add_argument("--output", metavar="PATH")

    p = sub.add_parser("character", help="fermionic character up to a q-degree")
    weight_args(p)
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--cross-term", choices=["min", "literal"], default="min")

    p = sub.add_parser("enumerate", help="census or listing of basis monomials")
    weight_args(p)
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--emit", choices=["counts", "list"], default="counts")

    p = sub.add_parser("verify", help="compare census and fermionic sum; without --family runs the full matrix")
    weight_args(p, required=False)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--cross-term", choices=["min", "literal"], default="min")

    p = sub.add_parser("identities", help="randomized identity suite")
    weight_args(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("diagram", help="column diagram of one color's charges")
    p.add_argument("charges", type=int, nargs="*")
    p.add_argument("--output", metavar="PATH")
    return parser


def _weight(args) -> WeightSpec | None:
    if getattr(args, "family", None) is None:
        return None
    algebra = make_algebra(args.family, args.rank)
    j = args.j if args.kj else None
    if not args.kj and args.j is not None:
        raise ConfigError("--j given but --kj is 0")
    return make_weight(algebra, args.k0, args.kj, j)


def _emit(text: str, path: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _series_out(series, fmt: str) -> str:
    if fmt == "csv":
        return series.to_csv()
    if fmt == "text":
        return series.to_text()
    return series.to_json(indent=2)


def cmd_character(args) -> int:
    weight = _weight(args)
    _check_degree(args.max_degree)
    series = fermionic_character(weight, args.max_degree, args.cross_term)
    _emit(_series_out(series, args.format), args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    weight = _weight(args)
    _check_degree(args.max_degree)
    census = enumerate_basis(weight, args.max_degree, emit=args.emit)
    if args.emit == "counts":
        _emit(_series_out(census.counts, args.format), args.output)
        return EXIT_OK
    monos = census.monomials
    if args.format == "text":
        out = "\n".join(qp.render_monomial(m) for m in monos)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        l = weight.algebra.rank
        writer.writerow(["energy"] + [f"n_{i}" for i in range(1, l + 1)] + ["monomial"])
        for m in monos:
            writer.writerow([m.total_energy, *m.color_type, qp.render_monomial(m)])
        out = buf.getvalue()
    else:
        out = json.dumps(
            [
                {
                    "energy": m.total_energy,
                    "colors": list(m.color_type),
                    "monomial": qp.render_monomial(m),
                    "particles": [[list(pair) for pair in c] for c in m.colors],
                }
                for m in monos
            ],
            indent=2,
        )
    _emit(out, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    weight = _weight(args)
    if args.max_degree is not None:
        _check_degree(args.max_degree)
    if weight is None:
        cases = [(w, args.max_degree if args.max_degree is not None else n) for w, n in acceptance_matrix()]
    else:
        cases = [(weight, args.max_degree if args.max_degree is not None else 10)]
    report = VerifyReport([verify_case(w, n, args.cross_term) for w, n in cases])
    _emit(report.to_text() if args.format == "text" else report.to_json(), args.output)
    return EXIT_OK if report.status == "equal" else EXIT_FAIL


def cmd_identities(args) -> int:
    weight = _weight(args)
    if args.samples < 1:
        raise ConfigError("--samples must be at least 1")
    report = run_identity_suite(weight, args.samples, args.seed)
    if args.format == "text":
        out = f"{weight.label} samples={report.samples} " + " ".join(f"{k}={v}" for k, v in report.passed.items())
        out += " pass" if report.ok else f" FAIL {report.counterexample}"
    else:
        out = json.dumps(dict(report.to_dict(), weight=weight.label, seed=args.seed), indent=2)
    _emit(out, args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_diagram(args) -> int:
    charges = sorted(args.charges)
    if any(n < 1 for n in charges):
        raise ConfigError("charges must be positive integers")
    _emit(qp.diagram(charges), args.output)
    return EXIT_OK


def _check_degree(n: int) -> None:
    if n < 0:
        raise ConfigError("--max-degree must be nonnegative")


COMMANDS = {
    "character": cmd_character,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "identities": cmd_identities,
    "diagram": cmd_diagram,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"qpchar: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CoefficientOverflow, UnsoundTruncation, InternalInconsistency) as exc:
        print(f"qpchar: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        # e.g. a malformed QPCHAR_THREADS
        print(f"qpchar: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
