"""Command line: `python -m spikedosc <solve|table|matrix|oracle|converge|serve> ...`.

Exit status 0 on success, 1 on usage errors, 2 when parameters are outside
the valid domain, 3 when a computation did not converge.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence, TextIO

from . import settings
from .analysis import convergence_report
from .basis import make_context
from .errors import NotConvergedError, SpikedOscError
from .matrix import build_hamiltonian, matrix_to_json, matrix_to_text
from .models import FORMATS, TABLE_IDS, JobConfig, ModelSpec
from .oracle import default_config, shoot_eigenvalue
from .render import render_oracle, render_report, render_spectrum, render_table
from .solver import converge_to_digits, minimize_over_A, solve_spectrum
from .tables import build_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--N", type=int, default=1)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--A", dest="A", default=None, help="fixed A, or 'opt' to minimise over A")
    p.add_argument("--opt-A", dest="opt_A", action="store_true")
    p.add_argument("--dim", type=int, default=None, help="basis size; with --digits the largest one tried")
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spikedosc", description="Spiked harmonic oscillator eigenvalues in the GK basis")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="eigenvalues at fixed or optimised A")
    _model_flags(p)
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--digits", type=int, default=None, help="grow D until this many digits are stable")

    p = sub.add_parser("matrix", help="dump the truncated Hamiltonian")
    _model_flags(p)

    p = sub.add_parser("oracle", help="shooting value of one level")
    _model_flags(p)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--steps", type=int, default=None)

    p = sub.add_parser("converge", help="second-order convergence analysis (alpha=4)")
    _model_flags(p)

    p = sub.add_parser("table", help="reproduce a published table")
    p.add_argument("--table", dest="table_id", choices=TABLE_IDS, required=True)
    p.add_argument("--format", dest="fmt", choices=FORMATS, default="text")

    sub.add_parser("serve", help="run the HTTP API")
    return parser


def job_from_args(ns: argparse.Namespace) -> JobConfig:
    if ns.subcommand == "table":
        return JobConfig(subcommand="table", output_format=ns.fmt, table_id=ns.table_id)
    optimize_A = ns.opt_A
    fixed_A = None
    if ns.A is not None:
        if ns.A == "opt":
            optimize_A = True
        else:
            try:
                fixed_A = float(ns.A)
            except ValueError:
                raise UsageError(f"--A takes a number or 'opt', got {ns.A!r}")
    model = ModelSpec(alpha=ns.alpha, lam=ns.lam, B=ns.B, N=ns.N, l=ns.l)
    extra = {}
    if getattr(ns, "steps", None) is not None:
        extra["steps"] = ns.steps
    return JobConfig(
        subcommand=ns.subcommand,
        model=model,
        D=ns.dim if ns.dim is not None else (100 if getattr(ns, "digits", None) else 10),
        optimize_A=optimize_A,
        fixed_A=fixed_A,
        levels=getattr(ns, "levels", 1),
        level=getattr(ns, "level", 0),
        digits=getattr(ns, "digits", None),
        output_format=ns.fmt,
        extra=extra,
    )


# =========================
# Jobs
# =========================
def run_solve(cfg: JobConfig, out: TextIO) -> int:
    if cfg.digits is not None:
        result = converge_to_digits(cfg.model, cfg.digits, 0, cfg.D)
    else:
        result = solve_spectrum(cfg.model, cfg.D, cfg.optimize_A, cfg.fixed_A, cfg.levels)
    out.write(render_spectrum(cfg.model, result, cfg.output_format, cfg.digits))
    if not result.converged:
        raise NotConvergedError(f"not converged to {cfg.digits} digits by D={result.D_used}")
    return EXIT_OK


def _job_A(cfg: JobConfig) -> float:
    if cfg.optimize_A:
        return float(minimize_over_A(cfg.model, cfg.D, 0).optimal_A)
    return 0.0 if cfg.fixed_A is None else cfg.fixed_A


def run_matrix(cfg: JobConfig, out: TextIO) -> int:
    H = build_hamiltonian(cfg.model, make_context(cfg.model, _job_A(cfg), cfg.D))
    out.write(matrix_to_json(H) + "\n" if cfg.output_format == "json" else matrix_to_text(H))
    return EXIT_OK


def run_oracle(cfg: JobConfig, out: TextIO) -> int:
    config = default_config(cfg.model, cfg.level)
    if "steps" in cfg.extra:
        config = config.with_steps(cfg.extra["steps"])
    out.write(render_oracle(shoot_eigenvalue(cfg.model, cfg.level, config), cfg.output_format))
    return EXIT_OK


def run_converge(cfg: JobConfig, out: TextIO) -> int:
    # default A is the one-function optimum the analysis is built around
    A = cfg.fixed_A if cfg.fixed_A is not None else float(minimize_over_A(cfg.model, 1, 0).optimal_A)
    out.write(render_report(convergence_report(cfg.model, A, cfg.D), cfg.output_format))
    return EXIT_OK


def run_table(cfg: JobConfig, out: TextIO) -> int:
    rows = build_table(cfg.table_id)
    out.write(render_table(cfg.table_id, rows, cfg.output_format))
    if not all(r.converged for r in rows):
        raise NotConvergedError(f"table {cfg.table_id}: some cells did not converge")
    return EXIT_OK


RUNNERS = {
    "solve": run_solve,
    "matrix": run_matrix,
    "oracle": run_oracle,
    "converge": run_converge,
    "table": run_table,
}


def serve() -> int:
    import uvicorn

    uvicorn.run("spikedosc.main:app", host="0.0.0.0", port=settings.PORT, log_level=settings.LOG_LEVEL)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    ns = parser.parse_args(argv)
    settings.configure_logging(ns.log_level)
    if ns.subcommand == "serve":
        return serve()
    try:
        cfg = job_from_args(ns)
        return RUNNERS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        print(f"spikedosc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpikedOscError as exc:
        print(f"spikedosc: {type(exc).__name__}: {exc.detail}", file=sys.stderr)
        return exc.exit_code
