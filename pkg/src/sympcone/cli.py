"""Command-line interface.

    sympcone cone-check   --input matrix.json
    sympcone recover-flag --input basis.json [--seed S] [--budget B]
    sympcone classify     --input spectral.json
    sympcone suite        --suite NAME [--n N] [--seed S] [--samples K]

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 internal error, 2 bad input, 3 no smooth point found, 4 L is not a flag
subspace, 5 suite failure.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from .exact_linalg import Subspace, flatten
from .nilcone import (
    NoSmoothPoint,
    NotAFlagSubspace,
    NotEndSp,
    check_step_identities,
    extract_flag,
    in_cone,
    is_smooth_point,
    recover_flag,
    tangent_codim,
)
from .spectral import DegenerateSpectralData, PolyHiggs, SpectralData, classify_discriminant, hitchin
from .suites import SUITES, run_suite
from .symplectic import SymplecticSpace

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_BAD_INPUT = 2
EXIT_NO_SMOOTH_POINT = 3
EXIT_NOT_FLAG_SUBSPACE = 4
EXIT_SUITE_FAILURE = 5

DEFAULT_SEED = 0


class BadInput(Exception):
    pass


def _rational(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise BadInput(f"expected an exact rational (integer or \"p/q\" string), got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise BadInput(f"not a rational number: {x!r}") from None


def _matrix(rows):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise BadInput("matrix must be a non-empty list of rows")
    if any(len(r) != len(rows) for r in rows):
        raise BadInput("matrix must be square")
    return np.array([[_rational(x) for x in r] for r in rows], dtype=object)


def _space_for(data, size):
    if size % 2:
        raise BadInput(f"matrix size {size} is odd; expected 2n x 2n")
    n = size // 2
    if "n" in data and int(data["n"]) != n:
        raise BadInput(f"n = {data['n']} does not match matrix size {size}")
    return SymplecticSpace(n)


def _read_input(args):
    if args.json is not None:
        text = args.json
    elif args.input is None:
        raise BadInput("no input given (use --input PATH, --input - or --json TEXT)")
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as e:
            raise BadInput(f"cannot read {args.input}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise BadInput(f"malformed JSON: {e}") from None


def cmd_cone_check(args):
    data = _read_input(args)
    if isinstance(data, list):
        data = {"matrix": data}
    if not isinstance(data, dict):
        raise BadInput("expected a matrix or {\"n\", \"matrix\"}")
    A = _matrix(data.get("matrix"))
    space = _space_for(data, A.shape[0])
    try:
        cone = in_cone(space, A)
    except NotEndSp:
        raise BadInput("not symmetric-symplectic: J A is not symmetric") from None
    report = {"n": space.n, "in_cone": cone, "smooth": False}
    if cone:
        report["smooth"] = is_smooth_point(space, A)
        report["tangent_codim"] = tangent_codim(space, A)
        if report["smooth"]:
            report["flag"] = extract_flag(space, A).to_json()
    return report, EXIT_OK


def cmd_recover_flag(args):
    data = _read_input(args)
    if isinstance(data, list):
        data = {"basis": data}
    if not isinstance(data, dict):
        raise BadInput("expected a basis list or {\"n\", \"basis\"}")
    basis = data.get("basis")
    if not isinstance(basis, list) or not basis:
        raise BadInput("expected a non-empty \"basis\" list")
    vectors = []
    for b in basis:
        if b and isinstance(b[0], list):
            b = flatten(_matrix(b))
        vectors.append([_rational(x) for x in b])
    size = len(vectors[0])
    d = int(round(size ** 0.5))
    if d * d != size or any(len(v) != size for v in vectors):
        raise BadInput("basis vectors must all be flattened square matrices of the same size")
    space = _space_for(data, d)
    L = Subspace(size, vectors)
    report = recover_flag(space, L, seed=args.seed, budget=args.budget)
    out = report.to_json()
    out["n"] = space.n
    out["step_identities"] = check_step_identities(space, L, seed=args.seed, certify=True).to_json()
    return out, EXIT_OK


def cmd_classify(args):
    data = _read_input(args)
    if not isinstance(data, dict):
        raise BadInput("expected a JSON object with \"s\" or \"higgs\"")
    try:
        if "higgs" in data:
            theta = PolyHiggs.from_json(data)
            spectral = hitchin(theta.space, theta)
        elif "s" in data:
            spectral = SpectralData.from_json(data)
        else:
            raise BadInput("expected a JSON object with \"s\" or \"higgs\"")
    except (ValueError, TypeError, KeyError) as e:
        raise BadInput(str(e)) from None
    try:
        verdict = classify_discriminant(spectral)
    except DegenerateSpectralData as e:
        raise BadInput(f"degenerate spectral data: {e}") from None
    out = verdict.to_json()
    out["spectral_data"] = spectral.to_json()
    return out, EXIT_OK


def cmd_suite(args):
    if args.suite not in SUITES:
        raise BadInput(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}")
    if args.samples is not None and args.samples < 0:
        raise BadInput("--samples must be nonnegative")
    summary = run_suite(args.suite, args.n, seed=args.seed, samples=args.samples)
    summary["seed"] = args.seed
    summary["passed"] = not summary["failures"]
    return summary, EXIT_OK if summary["passed"] else EXIT_SUITE_FAILURE


COMMANDS = {
    "cone-check": cmd_cone_check,
    "recover-flag": cmd_recover_flag,
    "classify": cmd_classify,
    "suite": cmd_suite,
}


def _default_seed():
    raw = os.environ.get("SYMPCONE_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise BadInput(f"SYMPCONE_SEED must be an integer, got {raw!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="sympcone", description="Exact symplectic nilpotent cone and spectral curve tools.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="JSON file, or - for stdin")
        p.add_argument("--json", help="inline JSON input")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--budget", type=int, default=10000)
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--suite", default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_BAD_INPUT if e.code else EXIT_OK
    try:
        if args.seed is None:
            args.seed = _default_seed()
        if args.n < 1:
            raise BadInput("--n must be at least 1")
        if args.budget < 1:
            raise BadInput("--budget must be at least 1")
        out, code = COMMANDS[args.command](args)
    except BadInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except NoSmoothPoint as e:
        print(f"error: no smooth point: {e}", file=sys.stderr)
        return EXIT_NO_SMOOTH_POINT
    except NotAFlagSubspace as e:
        print(f"error: not a flag subspace: {e}", file=sys.stderr)
        return EXIT_NOT_FLAG_SUBSPACE
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
