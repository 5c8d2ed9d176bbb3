"""SAT backends: the bundled CDCL kernel and external DIMACS solvers.

The compiled kernel (``_csolver``) is used when it has been built; otherwise
the pure-Python twin is loaded. Setting ``VPAMIN_PURE_PYTHON=1`` forces the
fallback.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import BackendError, InputError
from . import _pysolver

if os.environ.get("VPAMIN_PURE_PYTHON"):
    _kernel = _pysolver
else:
    try:
        from . import _csolver as _kernel  # type: ignore[attr-defined, no-redef]
    except ImportError:  # extension not built
        _kernel = _pysolver

KERNEL = "compiled" if _kernel is not _pysolver else "python"


@dataclass
class SolveResult:
    satisfiable: bool
    model: list[bool] | None = None
    stats: dict = field(default_factory=dict)
    backend: str = "internal"

    def value(self, var: int) -> bool:
        assert self.model is not None
        return self.model[var - 1]


def solve_internal(num_vars: int, clauses: Sequence[Sequence[int]], kernel=None) -> SolveResult:
    kernel = kernel or _kernel
    model, stats = kernel.solve(num_vars, [list(c) for c in clauses])
    name = "internal-" + ("compiled" if kernel is not _pysolver else "python")
    return SolveResult(model is not None, model, dict(stats), name)


# --- DIMACS ----------------------------------------------------------------

def write_dimacs(num_vars: int, clauses: Sequence[Sequence[int]], comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {num_vars} {len(clauses)}")
    lines += [" ".join(map(str, c)) + " 0" for c in clauses]
    return "\n".join(lines) + "\n"


def read_dimacs(text: str) -> tuple[int, list[list[int]]]:
    num_vars = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InputError(f"bad DIMACS header: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise InputError("missing 'p cnf' header")
    if current:
        clauses.append(current)
    return num_vars, clauses


def parse_solver_output(text: str, num_vars: int) -> SolveResult:
    """Read ``s``/``v`` lines in the usual competition format."""
    status = None
    lits: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word in ("SATISFIABLE", "SAT"):
                status = True
            elif word in ("UNSATISFIABLE", "UNSAT"):
                status = False
            else:
                raise BackendError(f"solver reported {line!r}")
        elif line.startswith("v "):
            lits += [int(tok) for tok in line[2:].split()]
    if status is None:
        raise BackendError("no 's' line in solver output")
    if not status:
        return SolveResult(False)
    model = [False] * num_vars
    for lit in lits:
        if lit == 0:
            continue
        if abs(lit) > num_vars:
            raise BackendError(f"model literal {lit} out of range")
        model[abs(lit) - 1] = lit > 0
    return SolveResult(True, model)


def solve_external(path: str, num_vars: int, clauses: Sequence[Sequence[int]],
                   timeout: float | None = None) -> SolveResult:
    """Run an external solver executable on a temporary DIMACS file."""
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as fh:
        fh.write(write_dimacs(num_vars, clauses))
        cnf = fh.name
    try:
        proc = subprocess.run([path, cnf], capture_output=True, text=True, timeout=timeout)
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise BackendError(f"could not run {path}: {exc}") from exc
    finally:
        os.unlink(cnf)
    # exit codes 10/20 are the SAT-competition convention
    if proc.returncode not in (0, 10, 20):
        raise BackendError(f"{path} exited with {proc.returncode}: {proc.stderr.strip()}")
    result = parse_solver_output(proc.stdout, num_vars)
    result.backend = f"dimacs:{path}"
    return result


def solve(num_vars: int, clauses: Sequence[Sequence[int]], backend: str = "internal") -> SolveResult:
    """Dispatch on a backend name: ``internal``, ``internal-python`` or ``dimacs:PATH``."""
    if backend == "internal":
        return solve_internal(num_vars, clauses)
    if backend == "internal-python":
        return solve_internal(num_vars, clauses, _pysolver)
    if backend.startswith("dimacs:"):
        return solve_external(backend[len("dimacs:"):], num_vars, clauses)
    raise InputError(f"unknown backend {backend!r}")


def check_model(clauses: Sequence[Sequence[int]], model: Sequence[bool]) -> int | None:
    """Index of the first clause falsified by ``model``, or ``None``."""
    for i, clause in enumerate(clauses):
        if not any(model[abs(l) - 1] == (l > 0) for l in clause):
            return i
    return None
