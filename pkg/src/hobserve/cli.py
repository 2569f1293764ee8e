"""Command-line front end: ``hobserve {analyze, design, simulate, verify}``.

Every run writes ``<output>.manifest.json`` next to its main output, also on
failure.  Exit codes: 0 ok, 1 parse error, 2 precondition failed, 3 numerical
failure, 4 verification checks failed.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import __version__
from .config import from_env
from .errors import (
    ConvergenceError,
    DegreeError,
    DivergenceError,
    NoncentralTargetError,
    NotObservableError,
    SingularMatrixError,
    UnsupportedRootsError,
)
from .hmatrix import rank, right_spectrum
from .io import (
    FORMAT_VERSION,
    ParseError,
    design_to_dict,
    dumps,
    load_gain,
    load_system,
    parse_quat,
    parse_quat_list,
    system_to_dict,
)
from .observer import METHODS, place, target_from_poles, verify_design
from .qpoly import QPoly, left_substitute_matrix
from .quat import Quat
from .realization import (
    annihilation_residual,
    controllability_matrix,
    is_controllable,
    observability_matrix,
    spectrum_via_companion,
    to_observable_companion,
)
from .simulate import SimConfig, simulate_error, simulate_observer, write_csv
from .verify import run_suite

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NUMERIC, EXIT_CHECKS = 0, 1, 2, 3, 4

PRECONDITION_ERRORS = (NotObservableError, DegreeError, NoncentralTargetError, UnsupportedRootsError)
NUMERIC_ERRORS = (SingularMatrixError, ConvergenceError, DivergenceError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


class Run:
    """Collects manifest fields for one command invocation."""

    def __init__(self, args, inputs, output: Path):
        self.args = args
        self.inputs = [str(p) for p in inputs]
        self.output = output
        self.outputs: list[str] = []
        self.tol = from_env()

    @property
    def manifest_path(self) -> Path:
        return self.output.with_name(self.output.name + ".manifest.json")

    def write_manifest(self, code: int, error: str | None):
        options = {k: v for k, v in sorted(vars(self.args).items()) if k not in ("func",)}
        manifest = {
            "format_version": FORMAT_VERSION,
            "tool": "hobserve",
            "version": __version__,
            "command": self.args.command,
            "inputs": self.inputs,
            "options": options,
            "outputs": self.outputs,
            "tolerances": self.tol.as_dict(),
            "exit_code": code,
            "error": error,
        }
        self.manifest_path.parent.mkdir(parents=True, exist_ok=True)
        self.manifest_path.write_text(dumps(manifest))

    def emit(self, path: Path, text: str):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        self.outputs.append(str(path))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_analyze(args, run: Run) -> int:
    sys_ = load_system(args.system)
    n = sys_.n
    O = observability_matrix(sys_)
    rank_O = rank(O)
    direct = right_spectrum(sys_.A)
    report = {
        "format_version": FORMAT_VERSION,
        "system": system_to_dict(sys_),
        "n": n,
        "observability_matrix": O.to_list(),
        "observability_rank": rank_O,
        "observable": rank_O == n,
        "controllable": is_controllable(sys_),
        "controllability_rank": rank(controllability_matrix(sys_)),
        "spectrum_direct": direct.to_list(),
        "stable": direct.is_stable,
    }
    print(f"n = {n}")
    print(f"rank O = {rank_O}  observable: {rank_O == n}  controllable: {report['controllable']}")
    print(f"right spectrum (complex adjoint): {direct}  stable: {direct.is_stable}")
    if rank_O < n:
        run.emit(run.output, dumps(report))
        raise NotObservableError(f"(A, C) is not observable: rank O = {rank_O} < {n}")

    cr = to_observable_companion(sys_)
    via = spectrum_via_companion(sys_)
    report.update(
        {
            "observability_inverse": cr.O_inv.to_list(),
            "T": cr.T.to_list(),
            "T_condition": cr.condition,
            "A_o": cr.A_o.to_list(),
            "C_o": cr.C_o.to_list(),
            "companion_coeffs": cr.a.to_list(),
            "annihilation_residual": annihilation_residual(cr),
            "original_matrix_residual": left_substitute_matrix(cr.a, sys_.A).frobenius(),
            "spectrum_companion": via.to_list(),
            "spectrum_route_deviation": via.max_deviation(direct),
        }
    )
    print("O^-1 =\n" + cr.O_inv.format())
    print("T =\n" + cr.T.format())
    print("A_o =\n" + cr.A_o.format())
    print("C_o =\n" + cr.C_o.format())
    print("companion polynomial coefficients (ascending):")
    for k, c in enumerate(cr.a.coeffs):
        print(f"  a_{k} = {c}")
    print(f"annihilation residual ||a(A_o)|| = {report['annihilation_residual']:.3e}")
    print(f"right spectrum (companion zeros): {via}")
    print(f"cond(T) ~ {cr.condition:.3e}")
    run.emit(run.output, dumps(report))
    return EXIT_OK


def _target(args, n: int) -> QPoly:
    if args.poles is not None:
        return target_from_poles(parse_quat_list(args.poles), n)
    coeffs = parse_quat_list(args.poly)
    if len(coeffs) == n:
        coeffs.append(Quat(1.0))
    if len(coeffs) != n + 1:
        raise DegreeError(f"--poly needs {n} or {n + 1} coefficients, got {len(coeffs)}")
    p = QPoly(tuple(coeffs))
    if not p.is_monic():
        raise DegreeError("--poly must describe a monic polynomial")
    return p


def cmd_design(args, run: Run) -> int:
    sys_ = load_system(args.system)
    target = _target(args, sys_.n)
    design = place(sys_, target, args.method, force=args.force)
    report = verify_design(sys_, design, tol=run.tol.spectral)
    out = design_to_dict(design, report)
    run.emit(run.output, dumps(out))
    print(f"method: {design.method}")
    print("L =\n" + design.L.format())
    print("L_o =\n" + design.L_o.format())
    print(f"achieved: {design.achieved}")
    print(f"expected: {report.expected}")
    print(f"matched: {report.matched}  stable: {report.stable}")
    return EXIT_OK


def cmd_simulate(args, run: Run) -> int:
    sys_ = load_system(args.system)
    L = load_gain(args.design)
    cfg = SimConfig(
        t_end=args.t_end,
        dt=args.dt,
        u=parse_quat(args.u) if args.u else None,
        x0=parse_quat_list(args.x0) if args.x0 else None,
        xhat0=parse_quat_list(args.xhat0) if args.xhat0 else None,
    )
    if args.emit_error_only:
        x0 = cfg.x0 or [Quat()] * sys_.n
        xh = cfg.xhat0 or [Quat()] * sys_.n
        if len(x0) != sys_.n or len(xh) != sys_.n:
            raise ValueError(f"initial states must have {sys_.n} entries")
        trace = simulate_error(sys_.A - L @ sys_.C, [a - b for a, b in zip(x0, xh)], cfg)
    else:
        trace = simulate_observer(sys_, L, cfg)
    run.output.parent.mkdir(parents=True, exist_ok=True)
    write_csv(trace, run.output, error_only=args.emit_error_only)
    run.outputs.append(str(run.output))
    e0, e1 = trace.err_norm[0], trace.err_norm[-1]
    print(f"steps: {cfg.steps}  err_norm(0) = {e0:.6e}  err_norm(end) = {e1:.6e}")
    return EXIT_OK


def cmd_verify(args, run: Run) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        checks = run_suite(args.suite, seed=args.seed, cases_per_check=args.cases, tol=run.tol)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    run.emit(
        run.output,
        dumps(
            {
                "format_version": FORMAT_VERSION,
                "suite": args.suite,
                "seed": args.seed,
                "checks": [
                    {"name": c.name, "value": c.value, "tol": c.tol, "passed": c.passed, "detail": c.detail}
                    for c in checks
                ],
                "passed": not failed,
            }
        ),
    )
    return EXIT_OK if not failed else EXIT_CHECKS


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hobserve", description="Observer design for quaternionic SISO systems.")
    p.add_argument("--version", action="version", version=f"hobserve {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="observability, companion form and right spectrum")
    a.add_argument("system", help="system JSON file")
    a.add_argument("-o", "--out", default="analysis.json")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("design", help="observer gain for a target polynomial or pole list")
    d.add_argument("system")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--poles", help='comma separated, e.g. "-1,-2" or "-1+1i" or "-1+1j,-2+1k"')
    g.add_argument("--poly", help="comma separated ascending coefficients d_0,...,d_{n-1}[,1]")
    d.add_argument("--method", choices=METHODS, default="companion")
    d.add_argument("--force", action="store_true", help="allow quaternionic targets with ackermann/dual")
    d.add_argument("-o", "--out", default="design.json")
    d.set_defaults(func=cmd_design)

    s = sub.add_parser("simulate", help="RK4 simulation of plant and observer, CSV trace")
    s.add_argument("system")
    s.add_argument("design", help="design JSON (uses its 'gain')")
    s.add_argument("--t-end", type=float, default=10.0)
    s.add_argument("--dt", type=float, default=1e-3)
    s.add_argument("--u", default=None, help="constant input literal, e.g. 1-1i+2j-2k")
    s.add_argument("--x0", default=None, help="comma separated initial state")
    s.add_argument("--xhat0", default=None, help="comma separated initial estimate")
    s.add_argument("--emit-error-only", action="store_true")
    s.add_argument("-o", "--out", default="trace.csv")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("verify", help="run the built-in check suites")
    v.add_argument("--suite", choices=("paper", "random"), default="paper")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--cases", type=int, default=50, help="random cases per check")
    v.add_argument("-o", "--out", default="verify.json")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = [getattr(args, k) for k in ("system", "design") if getattr(args, k, None)]
    code, error = EXIT_OK, None
    try:
        run = Run(args, inputs, Path(args.out))
    except ValueError as exc:  # malformed HOBSERVE_TOL
        print(f"hobserve: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        code = args.func(args, run)
    except (ParseError, OSError) as exc:
        code, error = EXIT_PARSE, f"{type(exc).__name__}: {exc}"
    except PRECONDITION_ERRORS as exc:
        code, error = EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}"
    except NUMERIC_ERRORS as exc:
        code, error = EXIT_NUMERIC, f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        code, error = EXIT_PRECONDITION, f"{type(exc).__name__}: {exc}"
    if error:
        print(f"hobserve {args.command}: {error}", file=sys.stderr)
    run.write_manifest(code, error)
    return code


if __name__ == "__main__":
    sys.exit(main())
