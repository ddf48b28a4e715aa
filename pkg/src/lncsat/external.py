"""Run a DIMACS-speaking SAT solver as a subprocess.

The solver is expected to follow the competition output conventions: an
``s SATISFIABLE`` / ``s UNSATISFIABLE`` status line, ``v`` lines listing the
model, and exit code 10 or 20.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from typing import Optional, Sequence

from .encoder import CnfFormula, write_dimacs
from .solver import SAT, UNKNOWN, UNSAT, SolveResult, SolverIntegrityError, evaluate

SOLVER_ENV = "LNCSAT_SOLVER"

_STATUS = {"SATISFIABLE": SAT, "UNSATISFIABLE": UNSAT, "UNKNOWN": UNKNOWN}
_EXIT = {10: SAT, 20: UNSAT}


class ExternalSolverError(RuntimeError):
    pass


def build_command(template: str | Sequence[str], cnf_path: str, proof_path: Optional[str] = None) -> list[str]:
    """Expand ``{cnf}`` and ``{proof}`` placeholders; without ``{cnf}`` the path is appended."""
    args = shlex.split(template) if isinstance(template, str) else list(template)
    if not args:
        raise ExternalSolverError("empty solver command")
    if any("{proof}" in arg for arg in args) and proof_path is None:
        raise ExternalSolverError("command has a {proof} placeholder but no proof path was given")
    out = []
    has_cnf = False
    for arg in args:
        if "{cnf}" in arg:
            has_cnf = True
            arg = arg.replace("{cnf}", cnf_path)
        if "{proof}" in arg:
            arg = arg.replace("{proof}", proof_path)
        out.append(arg)
    if not has_cnf:
        out.append(cnf_path)
    return out


def parse_solver_output(stdout: str, returncode: int) -> tuple[str, Optional[list[int]]]:
    """Verdict and raw model literals from competition-format output."""
    status = None
    model: list[int] = []
    for line in stdout.splitlines():
        if line.startswith("s "):
            word = line[2:].strip()
            if word not in _STATUS:
                raise ExternalSolverError(f"unrecognised status line {line!r}")
            if status is not None and _STATUS[word] != status:
                raise ExternalSolverError("conflicting status lines")
            status = _STATUS[word]
        elif line.startswith("v ") or line == "v":
            for tok in line[1:].split():
                try:
                    model.append(int(tok))
                except ValueError:
                    raise ExternalSolverError(f"bad value token {tok!r}") from None
    by_exit = _EXIT.get(returncode)
    if status is None:
        if by_exit is None:
            raise ExternalSolverError(f"no status line and exit code {returncode}")
        status = by_exit
    elif by_exit is not None and by_exit != status:
        raise ExternalSolverError(f"status {status} contradicts exit code {returncode}")
    elif by_exit is None and returncode != 0 and status != UNKNOWN:
        raise ExternalSolverError(f"solver exited with code {returncode}")
    if status == SAT:
        model = [lit for lit in model if lit != 0]
        if not model:
            raise ExternalSolverError("SAT reported without a model")
        return status, model
    return status, None


def external_solve(
    formula: CnfFormula,
    command: str | Sequence[str] | None = None,
    proof_path: Optional[str] = None,
    timeout: Optional[float] = None,
) -> SolveResult:
    """Hand ``formula`` to an external solver and check any model it returns.

    ``command`` defaults to the ``LNCSAT_SOLVER`` environment variable.  A
    ``{proof}`` placeholder in the command is replaced by ``proof_path``; the
    proof file itself is left untouched.
    """
    if command is None:
        command = os.environ.get(SOLVER_ENV)
        if not command:
            raise ExternalSolverError(f"no solver command given and ${SOLVER_ENV} is unset")
    fd, cnf_path = tempfile.mkstemp(suffix=".cnf", prefix="lncsat-")
    try:
        with os.fdopen(fd, "w") as fh:
            write_dimacs(formula, fh)
        args = build_command(command, cnf_path, proof_path)
        try:
            proc = subprocess.run(args, capture_output=True, text=True, timeout=timeout)
        except FileNotFoundError as exc:
            raise ExternalSolverError(f"cannot run solver: {exc}") from exc
        except subprocess.TimeoutExpired:
            return SolveResult(UNKNOWN, None, {"timeout": 1})
    finally:
        os.unlink(cnf_path)

    verdict, lits = parse_solver_output(proc.stdout, proc.returncode)
    if verdict != SAT:
        return SolveResult(verdict, None, {"returncode": proc.returncode})
    model = {v: False for v in range(1, formula.n_vars + 1)}
    for lit in lits:
        if abs(lit) > formula.n_vars:
            raise ExternalSolverError(f"model mentions variable {abs(lit)} beyond {formula.n_vars}")
        model[abs(lit)] = lit > 0
    if not evaluate(formula, model):
        raise SolverIntegrityError("external solver model violates the formula")
    return SolveResult(SAT, model, {"returncode": proc.returncode})
