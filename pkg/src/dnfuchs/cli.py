"""Command-line front end: ``dnfuchs {construct,reconstruct,analyze,monodromy,verify}``.

Reports are JSON with sorted keys and no timestamps, so identical inputs give
byte-identical output. Exit codes: 0 ok, 1 verification failure, 2 input
error, 3 numerical degeneracy.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .dn import (
    DNMatrix,
    build_L_infinity,
    build_L_zero,
    check_adjoint,
    check_adjoint_zero,
    check_symmetry,
    fuchs_test,
    reconstruct,
    residues,
    to_DN0,
)
from .errors import (
    DegenerateSpectrum,
    DNError,
    InexactInput,
    MalformedMatrix,
    MalformedOperator,
    NearSingularity,
    NullVector,
    ParseError,
    QuotientIllConditioned,
    RepeatedSingularity,
    SingularSolve,
    StepUnderflow,
    TruncationTooSmall,
)
from .monodromy import DEFAULT_MONO_TOL, monodromy_report
from .ode import DEFAULT_ODE_TOL
from .spectral import DEFAULT_TOL, analyze_spectrum, infinity_exponents
from .verify import DEFAULT_SIZES, SUITES, corrupted_symmetry_fixture, run_verification
from .weyl import CanonicalDN, WeylElement, infer_order, to_canonical

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3

INPUT_ERRORS = (ParseError, MalformedMatrix, MalformedOperator, InexactInput, OSError, json.JSONDecodeError)
NUMERIC_ERRORS = (DegenerateSpectrum, NearSingularity, StepUnderflow, QuotientIllConditioned,
                  NullVector, SingularSolve, RepeatedSingularity, TruncationTooSmall)


@dataclass
class RunConfig:
    command: str
    input: str | None
    output: str | None
    n: list | None
    tol_spectral: float
    tol_ode: float
    tol_mono: float
    truncation: int | None
    seed: int

    def __post_init__(self):
        for name in ("tol_spectral", "tol_ode", "tol_mono"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def to_json(self) -> dict:
        return {**asdict(self), "version": __version__}


def _default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_default, allow_nan=True) + "\n"


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _error(exc: Exception) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


def _check_n(cfg: RunConfig, n: int) -> None:
    if cfg.n and n not in cfg.n:
        raise MalformedMatrix(f"input has n={n} but --n requested {cfg.n}")


def _load_matrix(cfg: RunConfig) -> DNMatrix:
    A = DNMatrix.from_json(_load(cfg.input))
    _check_n(cfg, A.n)
    return A


# ---------------------------------------------------------------- commands


def cmd_construct(cfg: RunConfig) -> tuple[dict, int]:
    A = _load_matrix(cfg)
    if not A.exact:
        raise InexactInput("construct needs exact entries (strings like \"3/2\" or integers)")
    L = build_L_infinity(A)
    c = to_canonical(L, A.n)
    report = {
        "matrix": A.to_json(),
        "operator": {"text": str(L), **L.to_json()},
        "canonical": c.to_json(),
        "canonical_w": to_DN0(c).to_json(),
        "verdicts": {
            "matrix_symmetric": A.is_symmetric(),
            "coefficient_symmetry": check_symmetry(c),
            "adjoint": check_adjoint(L, A.n),
            "adjoint_w_chart": check_adjoint_zero(build_L_zero(A), A.n),
        },
    }
    return report, EXIT_OK


def _canonical_from(obj) -> CanonicalDN:
    if "canonical" in obj:
        obj = obj["canonical"]
    if "g" in obj:
        return CanonicalDN.from_json(obj)
    if "terms" in obj:
        L = WeylElement.from_json(obj)
        n = int(obj["n"]) if "n" in obj else infer_order(L)
        return to_canonical(L, n)
    raise ParseError("expected a canonical form ({n, chart, g}) or an operator ({terms})")


def cmd_reconstruct(cfg: RunConfig) -> tuple[dict, int]:
    try:
        c = _canonical_from(_load(cfg.input))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DNError):
            raise
        raise ParseError(f"invalid operator JSON: {exc}") from exc
    _check_n(cfg, c.n)
    A = reconstruct(c)
    return {"matrix": A.to_json(), "canonical": c.to_json()}, EXIT_OK


def _section(fn):
    try:
        return fn()
    except NUMERIC_ERRORS as exc:
        return _error(exc)


def cmd_analyze(cfg: RunConfig) -> tuple[dict, int]:
    """Degenerate spectra and repeated singularities are reported per section."""
    A = _load_matrix(cfg)
    report: dict = {"matrix": A.to_json()}
    if A.exact:
        L = build_L_infinity(A)
        report["operator"] = str(L)
        report["residues"] = _section(lambda: residues(L, A.n).to_json())
        report["fuchs"] = _section(lambda: fuchs_test(L, A.n).to_json())
    report["spectrum"] = _section(lambda: analyze_spectrum(A, cfg.tol_spectral).to_json())
    report["infinity"] = _section(lambda: infinity_exponents(A, cfg.truncation, cfg.tol_spectral).to_json())
    return report, EXIT_OK


def cmd_monodromy(cfg: RunConfig) -> tuple[dict, int]:
    A = _load_matrix(cfg)
    rep = monodromy_report(A, cfg.tol_ode, cfg.tol_mono, cfg.tol_spectral)
    return {"matrix": A.to_json(), "monodromy": rep.to_json()}, EXIT_OK


def _fixture(spec: str | None) -> list:
    if spec is None:
        return []
    if spec == "corrupted-symmetry":
        return [corrupted_symmetry_fixture()]
    return [DNMatrix.from_json(_load(spec))]


def cmd_verify(cfg: RunConfig, suites=None, fixture: str | None = None) -> tuple[dict, int]:
    sizes = tuple(cfg.n) if cfg.n else DEFAULT_SIZES
    summary = run_verification(cfg.seed, sizes, suites, _fixture(fixture))
    report = summary.to_json()
    report["failed"] = summary.failed()
    return report, EXIT_OK if summary.passed else EXIT_VERIFY


COMMANDS = {
    "construct": cmd_construct,
    "reconstruct": cmd_reconstruct,
    "analyze": cmd_analyze,
    "monodromy": cmd_monodromy,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, nargs="+", help="expected n (sizes to sample for verify)")
    common.add_argument("--tol-spectral", type=float, default=DEFAULT_TOL, help="eigenvalue gap tolerance")
    common.add_argument("--tol-ode", type=float, default=DEFAULT_ODE_TOL, help="DP5 cross-check tolerance")
    common.add_argument("--tol-mono", type=float, default=DEFAULT_MONO_TOL, help="monodromy check tolerance")
    common.add_argument("--truncation", type=int, default=None, help="series order at infinity")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for property suites")
    common.add_argument("--out", default=None, help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="dnfuchs", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dnfuchs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("construct", "matrix JSON -> operator, canonical forms, symmetry verdicts"),
        ("reconstruct", "operator or canonical JSON -> matrix JSON"),
        ("analyze", "matrix JSON -> residues, Fuchs test, residue matrices, exponents at infinity"),
        ("monodromy", "matrix JSON -> monodromy report with polarization"),
    ]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("input", help="JSON file, or - for stdin")
    p = sub.add_parser("verify", parents=[common], help="run the seeded property suites")
    p.add_argument("--suites", nargs="+", choices=sorted(SUITES), default=None)
    p.add_argument("--fixture", default=None,
                   help="matrix JSON (or 'corrupted-symmetry') fed to the symmetry checks as symmetric")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(args.command, getattr(args, "input", None), args.out, args.n, args.tol_spectral,
                        args.tol_ode, args.tol_mono, args.truncation, args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        if args.command == "verify":
            body, code = cmd_verify(cfg, args.suites, args.fixture)
        else:
            body, code = COMMANDS[args.command](cfg)
    except INPUT_ERRORS as exc:
        body, code = _error(exc), EXIT_INPUT
    except NUMERIC_ERRORS as exc:
        body, code = _error(exc), EXIT_NUMERIC
    report = {"config": cfg.to_json(), "exit_code": code, **body}
    text = dumps(report)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INPUT or code == EXIT_NUMERIC:
        print(f"dnfuchs: {body['error']}: {body['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
