"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 spectrum not rational,
3 internal guard tripped (pair cap, degenerate sample, disagreement between
the two routes). Errors are written to stderr as one JSON record per line.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import hilbert, jordanstruct, oracle
from .eigenideal import _fstr, eigenscheme_ideal, jordan_matrix
from .errors import (DegenerateSampleError, DimensionError, EigenschemeError, GroebnerCapError,
                     InconsistencyError, InsufficientSampleError, InvalidArgumentError,
                     ParseError, UnsupportedFieldError, ValidationError)
from .formats import load_matrix, load_spec
from .groebner import DEFAULT_MAX_PAIRS, buchberger
from .qpoly import GREVLEX, LEX

EXIT_OK, EXIT_USAGE, EXIT_FIELD, EXIT_GUARD = 0, 1, 2, 3
VERBS = ("ideal", "gb", "decompose", "jordan", "diagonalizable", "hilbert", "disc-degree")


class UsageError(Exception):
    pass


class Disagreement(Exception):
    """Raised after output is written when the two routes disagree."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eigenscheme", description="Eigenscheme ideals of rational matrices.")
    p.add_argument("verb", choices=VERBS)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--matrix", metavar="FILE", help="matrix file (text or JSON)")
    src.add_argument("--spec", metavar="FILE", help="Jordan spec file or inline JSON")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--tmax", type=int, default=hilbert.DEFAULT_TMAX)
    p.add_argument("--component", type=int, metavar="N",
                   help="hilbert: use the N-th component of the decomposition")
    p.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS, dest="max_pairs",
                   help="gb: S-pair budget before aborting")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-r", type=int, dest="r", help="matrix size for disc-degree")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _matrix(args):
    if args.matrix:
        return load_matrix(args.matrix)
    if args.spec:
        return jordan_matrix(load_spec(args.spec))
    raise UsageError(f"{args.verb} needs --matrix or --spec")


def _polys(ideal_or_gb) -> list:
    return [str(g) for g in ideal_or_gb]


def _reports(args):
    if args.spec:
        spec = load_spec(args.spec)
        return spec, jordanstruct.decompose_general(spec)
    if args.matrix:
        spec, _, reports = jordanstruct.decompose_matrix(load_matrix(args.matrix))
        return spec, reports
    raise UsageError(f"{args.verb} needs --matrix or --spec")


def _cmd_ideal(args):
    I = eigenscheme_ideal(_matrix(args))
    return {"generators": _polys(I)}, "\n".join(_polys(I)) or "0"


def _cmd_gb(args):
    order = LEX if args.order == "lex" else GREVLEX
    gb = buchberger(eigenscheme_ideal(_matrix(args)), order, args.max_pairs)
    return {"order": args.order, "basis": _polys(gb)}, "\n".join(gb.lines()) or "0"


def _report_text(rep) -> str:
    return (f"lambda={_fstr(rep.eigenvalue)} j={rep.j} dim={rep.dimension} deg={rep.degree}\n"
            f"  generators: {', '.join(_polys(rep.generators)) or '0'}\n"
            f"  radical: {', '.join(_polys(rep.radical)) or '0'}")


def _cmd_decompose(args):
    _, reports = _reports(args)
    data = {"components": [r.to_data() for r in reports]}
    return data, "\n".join(_report_text(r) for r in reports)


def _cmd_jordan(args):
    A = _matrix(args)
    expected = oracle.jordan_type_oracle(A)
    _, _, reports = jordanstruct.decompose_matrix(A)
    measured = [hilbert.measured_report(r, args.tmax) for r in reports]
    recovered = hilbert.reconstruct_jordan(measured, A.rows)
    agree = recovered.canonical() == expected.canonical()
    data = {"ideal": recovered.to_data(), "oracle": expected.to_data(), "agree": agree}
    text = (f"ideal:  {json.dumps(recovered.to_data())}\n"
            f"oracle: {json.dumps(expected.to_data())}\n"
            f"agree:  {'yes' if agree else 'no'}")
    return data, text, agree


def _cmd_diagonalizable(args):
    A = _matrix(args)
    via_ideal = jordanstruct.diagonalizable_via_ideal(A)
    via_oracle = oracle.diagonalizable_oracle(A)
    agree = via_ideal == via_oracle
    yn = lambda b: "yes" if b else "no"  # noqa: E731
    data = {"ideal": via_ideal, "oracle": via_oracle, "agree": agree}
    return data, f"ideal: {yn(via_ideal)}\noracle: {yn(via_oracle)}\nagree: {yn(agree)}", agree


def _cmd_hilbert(args):
    if args.component is not None:
        _, reports = _reports(args)
        if not 1 <= args.component <= len(reports):
            raise UsageError(f"--component must be in 1..{len(reports)}")
        ideal = reports[args.component - 1].generators
    else:
        ideal = eigenscheme_ideal(_matrix(args))
    sample = hilbert.hilbert_function(ideal, args.tmax)
    return {"values": sample.to_data()}, " ".join(str(v) for v in sample.values)


def _cmd_disc_degree(args):
    if args.r is None:
        raise UsageError("disc-degree needs -r")
    deg = oracle.discriminant_degree_experiment(args.r, args.seed)
    return {"r": args.r, "seed": args.seed, "degree": deg}, str(deg)


COMMANDS = {
    "ideal": _cmd_ideal,
    "gb": _cmd_gb,
    "decompose": _cmd_decompose,
    "jordan": _cmd_jordan,
    "diagonalizable": _cmd_diagonalizable,
    "hilbert": _cmd_hilbert,
    "disc-degree": _cmd_disc_degree,
}


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, UnsupportedFieldError):
        return EXIT_FIELD
    if isinstance(exc, (GroebnerCapError, DegenerateSampleError, InconsistencyError,
                        InsufficientSampleError, Disagreement)):
        return EXIT_GUARD
    if isinstance(exc, (UsageError, ParseError, ValidationError, DimensionError,
                        InvalidArgumentError)):
        return EXIT_USAGE
    return EXIT_GUARD


def _fail(exc: BaseException, err) -> int:
    code = _exit_code(exc)
    record = {"error": type(exc).__name__, "message": str(exc), "exit": code}
    if isinstance(exc, UnsupportedFieldError) and exc.factor:
        record["factor"] = exc.factor
    err.write(json.dumps(record) + "\n")
    return code


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.verb](args)
        data, text = result[0], result[1]
        agree = result[2] if len(result) > 2 else True
        out.write((json.dumps(data) if args.format == "json" else text) + "\n")
        if not agree:
            raise Disagreement(f"{args.verb}: the ideal and the oracle disagree")
        return EXIT_OK
    except (UsageError, EigenschemeError, ValueError, RuntimeError, Disagreement) as exc:
        return _fail(exc, err)


if __name__ == "__main__":
    sys.exit(main())
