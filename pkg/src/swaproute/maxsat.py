"""MaxSAT solving: a built-in branch-and-bound reference solver, WCNF
interchange, and external solver invocation.

The built-in solver is a deliberately small, auditable DPLL search with
two-watched-literal unit propagation and branch-and-bound over the
falsified soft weight.  It is exact and anytime: interrupting it at the
time budget yields the best incumbent found so far.  Scale beyond desk
size is the job of external solvers via the WCNF interface.
"""

from __future__ import annotations

import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .cnf import MaxSatInstance, Model
from .errors import SolverIntegrityError, SolverOutputError


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    SATISFIABLE_BOUND = "satisfiable_bound"
    HARD_UNSAT = "hard_unsat"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SolveOutcome:
    """Result of one solve call.

    ``falsified_weight`` is the total weight of falsified soft clauses
    under ``model`` (present whenever a model is).
    """

    status: SolveStatus
    model: Model | None
    falsified_weight: int | None
    elapsed: float

    def __post_init__(self):
        if self.status in (SolveStatus.OPTIMAL, SolveStatus.SATISFIABLE_BOUND) and self.model is None:
            raise ValueError(f"status {self.status} requires a model")


class _BudgetExpired(Exception):
    pass


def solve_builtin(instance: MaxSatInstance, budget: float | None = None) -> SolveOutcome:
    """Exact branch-and-bound DPLL over all variables.

    Branching is deterministic: variables in ascending id order, and a
    variable that occurs positively in some soft clause is tried true
    first, otherwise false first, so the first descent follows the soft
    preferences.  The lower bound is the weight of already-falsified
    soft clauses; a branch is pruned as soon as it cannot beat the
    incumbent.  Exhausting the search proves optimality (or hard
    unsatisfiability if no model was ever found); an expired budget
    returns the incumbent as a satisfiable bound, or unknown.
    """
    t0 = time.monotonic()
    deadline = None if budget is None else t0 + budget
    nv = instance.num_vars

    val = [0] * (nv + 1)  # 0 unassigned, 1 true, -1 false
    trail: list[int] = []
    qhead = 0
    lb = 0
    best = float("inf")
    best_model: list[int] | None = None

    # Hard clauses: unit clauses seed the trail, the rest get two watches.
    # watches[lit + nv] lists clauses in which literal -lit is watched,
    # i.e. the clauses to visit when lit becomes true.
    clauses: list[list[int]] = []
    watches: list[list[int]] = [[] for _ in range(2 * nv + 1)]
    root_units: list[int] = []
    for c in instance.hard:
        if len(c) == 1:
            root_units.append(c[0])
            continue
        cl = list(c)
        ci = len(clauses)
        clauses.append(cl)
        watches[nv - cl[0]].append(ci)
        watches[nv - cl[1]].append(ci)

    # Soft clauses: count non-false literals; at zero the clause is
    # falsified and its weight joins the lower bound.
    sfree = []
    sweight = []
    socc: list[list[int]] = [[] for _ in range(2 * nv + 1)]
    pref = [False] * (nv + 1)
    for si, (c, w) in enumerate(instance.soft):
        sfree.append(len(c))
        sweight.append(w)
        for lit in c:
            socc[lit + nv].append(si)
            if lit > 0:
                pref[lit] = True

    ops = 0

    def assign(lit: int):
        nonlocal lb
        val[abs(lit)] = 1 if lit > 0 else -1
        trail.append(lit)
        for si in socc[nv - lit]:
            sfree[si] -= 1
            if sfree[si] == 0:
                lb += sweight[si]

    def undo_to(mark: int):
        nonlocal lb, qhead
        while len(trail) > mark:
            lit = trail.pop()
            val[abs(lit)] = 0
            for si in socc[nv - lit]:
                if sfree[si] == 0:
                    lb -= sweight[si]
                sfree[si] += 1
        qhead = mark

    def propagate() -> bool:
        """Unit propagation; returns True on a hard conflict."""
        nonlocal qhead, ops
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            ops += 1
            if deadline is not None and ops % 2048 == 0 and time.monotonic() > deadline:
                raise _BudgetExpired
            wl = watches[lit + nv]
            i = j = 0
            end = len(wl)
            while i < end:
                ci = wl[i]
                i += 1
                cl = clauses[ci]
                if cl[0] == -lit:
                    cl[0], cl[1] = cl[1], cl[0]
                first = cl[0]
                if (val[first] if first > 0 else -val[-first]) == 1:
                    wl[j] = ci
                    j += 1
                    continue
                for t in range(2, len(cl)):
                    lt = cl[t]
                    if (val[lt] if lt > 0 else -val[-lt]) != -1:
                        cl[1], cl[t] = cl[t], cl[1]
                        watches[nv - cl[1]].append(ci)
                        break
                else:
                    wl[j] = ci
                    j += 1
                    if (val[first] if first > 0 else -val[-first]) == 0:
                        assign(first)
                    else:
                        while i < end:  # conflict: keep the rest of the list
                            wl[j] = wl[i]
                            j += 1
                            i += 1
                        del wl[j:]
                        return True
            del wl[j:]
        return False

    def finish(exhausted: bool) -> SolveOutcome:
        elapsed = time.monotonic() - t0
        if best_model is not None:
            model = Model(tuple(v == 1 for v in best_model))
            status = SolveStatus.OPTIMAL if exhausted else SolveStatus.SATISFIABLE_BOUND
            return SolveOutcome(status, model, int(best), elapsed)
        return SolveOutcome(SolveStatus.HARD_UNSAT if exhausted else SolveStatus.UNKNOWN, None, None, elapsed)

    for lit in root_units:
        state = val[lit] if lit > 0 else -val[-lit]
        if state == -1:
            return finish(exhausted=True)  # contradictory unit clauses
        if state == 0:
            assign(lit)

    frames: list[list] = []  # [var, trail mark, flipped?]
    try:
        while True:
            conflict = propagate()
            if not conflict and lb < best:
                scan = frames[-1][0] + 1 if frames else 1
                v = next((u for u in range(scan, nv + 1) if val[u] == 0), None)
                if v is not None:
                    frames.append([v, len(trail), False])
                    assign(v if pref[v] else -v)
                    continue
                best = lb  # leaf: every variable assigned
                best_model = val[:]
            while frames and frames[-1][2]:
                fr = frames.pop()
                undo_to(fr[1])
            if not frames:
                return finish(exhausted=True)
            fr = frames[-1]
            undo_to(fr[1])
            fr[2] = True
            assign(-fr[0] if pref[fr[0]] else fr[0])
    except _BudgetExpired:
        return finish(exhausted=False)


# ---------------------------------------------------------------------------
# WCNF interchange
# ---------------------------------------------------------------------------


def emit_wcnf(instance: MaxSatInstance) -> str:
    """Classic weighted DIMACS: hard clauses carry the top weight
    (1 + total soft weight), soft clauses their own weight."""
    top = 1 + instance.soft_weight_total
    n_clauses = len(instance.hard) + len(instance.soft)
    lines = [f"p wcnf {instance.num_vars} {n_clauses} {top}"]
    for c in instance.hard:
        lines.append(f"{top} {' '.join(map(str, c))} 0")
    for c, w in instance.soft:
        lines.append(f"{w} {' '.join(map(str, c))} 0")
    return "\n".join(lines) + "\n"


def parse_wcnf(text: str) -> MaxSatInstance:
    """Parse classic ``p wcnf`` files and the newer headerless format
    whose hard clauses start with ``h``."""
    hard = []
    soft = []
    top = None
    max_var = 0
    declared = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 5 or parts[1] != "wcnf":
                raise SolverOutputError(f"malformed header {line!r}")
            try:
                declared = int(parts[2])
                top = int(parts[4])
            except ValueError as exc:
                raise SolverOutputError(f"malformed header {line!r}") from exc
            continue
        parts = line.split()
        is_hard = False
        if parts[0] == "h":
            is_hard = True
            weight = 0
            parts = parts[1:]
        else:
            try:
                weight = int(parts[0])
            except ValueError as exc:
                raise SolverOutputError(f"malformed clause line {line!r}") from exc
            parts = parts[1:]
            if top is not None and weight == top:
                is_hard = True
        if not parts or parts[-1] != "0":
            raise SolverOutputError(f"clause line must end in 0: {line!r}")
        try:
            raw = [int(p) for p in parts[:-1]]
        except ValueError as exc:
            raise SolverOutputError(f"malformed clause line {line!r}") from exc
        if not raw or 0 in raw:
            raise SolverOutputError(f"empty clause line {line!r}")
        lits = tuple(dict.fromkeys(raw))
        max_var = max(max_var, *(abs(l) for l in lits))
        if any(-l in lits for l in lits):
            continue  # tautology: always satisfied, never falsified
        if is_hard:
            hard.append(lits)
        else:
            soft.append((lits, weight))
    return MaxSatInstance(max(declared, max_var), tuple(hard), tuple(soft), None)


# ---------------------------------------------------------------------------
# External solvers
# ---------------------------------------------------------------------------


def solve_external(instance: MaxSatInstance, solver_cmd: str, budget: float | None = None) -> SolveOutcome:
    """Run an external MaxSAT solver over a temporary WCNF file.

    ``solver_cmd`` is a shell-style command template containing the
    placeholder ``{wcnf}``.  Output is parsed per the MaxSAT-evaluation
    conventions: an ``s`` status line and ``v`` model lines in either
    signed-literal or 0/1-string form.  Any returned model is re-checked
    against the instance's hard clauses before being trusted, and the
    falsified weight is recomputed locally.
    """
    if "{wcnf}" not in solver_cmd:
        raise SolverOutputError("solver command must contain the placeholder {wcnf}")
    t0 = time.monotonic()
    with tempfile.TemporaryDirectory(prefix="swaproute-wcnf-") as tmp:
        path = Path(tmp) / "instance.wcnf"
        path.write_text(emit_wcnf(instance), encoding="utf-8")
        argv = [arg.replace("{wcnf}", str(path)) for arg in shlex.split(solver_cmd)]
        timed_out = False
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=budget)
            stdout = proc.stdout or ""
        except subprocess.TimeoutExpired as exc:
            timed_out = True
            raw = exc.stdout or b""
            stdout = raw.decode("utf-8", "replace") if isinstance(raw, bytes) else raw
        except OSError as exc:
            raise SolverOutputError(f"failed to run {argv[0]!r}: {exc}") from exc
    elapsed = time.monotonic() - t0

    status_line = None
    model_tokens: list[str] = []
    for line in stdout.splitlines():
        if line.startswith("s "):
            status_line = line[2:].strip()
        elif line.startswith("v ") or line == "v":
            model_tokens.extend(line[2:].split())

    model = _model_from_tokens(model_tokens, instance.num_vars) if model_tokens else None
    if model is not None and not instance.hard_satisfied(model):
        raise SolverIntegrityError("external solver returned a model violating the hard clauses")
    weight = instance.falsified_weight(model) if model is not None else None

    if status_line == "OPTIMUM FOUND":
        if model is None:
            raise SolverOutputError("OPTIMUM FOUND without a model line")
        return SolveOutcome(SolveStatus.OPTIMAL, model, weight, elapsed)
    if status_line == "SATISFIABLE":
        if model is None:
            raise SolverOutputError("SATISFIABLE without a model line")
        return SolveOutcome(SolveStatus.SATISFIABLE_BOUND, model, weight, elapsed)
    if status_line == "UNSATISFIABLE":
        return SolveOutcome(SolveStatus.HARD_UNSAT, None, None, elapsed)
    if status_line in (None, "UNKNOWN"):
        if model is not None:
            return SolveOutcome(SolveStatus.SATISFIABLE_BOUND, model, weight, elapsed)
        if timed_out or status_line == "UNKNOWN":
            return SolveOutcome(SolveStatus.UNKNOWN, None, None, elapsed)
        raise SolverOutputError(f"no status line in solver output:\n{stdout[:2000]}")
    raise SolverOutputError(f"unrecognized status line {status_line!r}")


def _model_from_tokens(tokens: list[str], num_vars: int) -> Model:
    values = [False] * (num_vars + 1)
    if len(tokens) == 1 and set(tokens[0]) <= {"0", "1"} and len(tokens[0]) > 1:
        bits = tokens[0]
        for i, ch in enumerate(bits[:num_vars], start=1):
            values[i] = ch == "1"
        return Model(tuple(values))
    try:
        lits = [int(t) for t in tokens]
    except ValueError as exc:
        raise SolverOutputError(f"unparseable model tokens {tokens[:8]!r}...") from exc
    for lit in lits:
        if lit == 0:
            continue
        if abs(lit) <= num_vars:
            values[abs(lit)] = lit > 0
    return Model(tuple(values))
