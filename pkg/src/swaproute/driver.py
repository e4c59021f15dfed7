"""Solving strategies: whole-circuit, sliced with backtracking, cyclic
stitching, and best-of-slice-sizes selection."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, replace

from .arch import ConnectivityGraph, NoiseModel, diameter
from .circuit import Circuit, slice_circuit
from .encoder import EncodeOptions, decode, encode, instance_stats
from .errors import SolveTimeoutError, UnroutableError
from .maxsat import SolveOutcome, SolveStatus, solve_builtin, solve_external
from .oracle import brute_force_oracle  # noqa: F401  (re-exported: the driver's test oracle)
from .solution import QubitMap, RoutingSolution, SliceStats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DriverConfig:
    """Strategy knobs for a routing run.

    ``slice_sizes`` drives :func:`solve_best`; ``n`` is the swap budget
    per slot (1 is almost always enough in practice and keeps the
    encoding small; the graph diameter guarantees feasibility).
    """

    strategy: str = "sliced"
    slice_sizes: tuple[int, ...] = (10, 25, 50, 100)
    n: int = 1
    budget: float | None = None
    backend: str = "builtin"  # "builtin" or "cmd:<template with {wcnf}>"
    max_backtracks_per_slice: int = 10
    weighted: NoiseModel | None = None
    weight_scale: int = 1000
    exactly_one: str = "pairwise"
    sequential_budget: bool = False  # best-of: run sizes in order with the full remaining budget
    block_full_model: bool = False  # backtrack by negating whole assignments, not final maps


class _Budget:
    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def remaining(self) -> float | None:
        if self.deadline is None:
            return None
        return max(self.deadline - time.monotonic(), 0.001)


def _encode_options(cfg: DriverConfig, **overrides) -> EncodeOptions:
    base = dict(
        n=cfg.n,
        weighted=cfg.weighted,
        weight_scale=cfg.weight_scale,
        exactly_one=cfg.exactly_one,
    )
    base.update(overrides)
    return EncodeOptions(**base)


def _run_solver(instance, cfg: DriverConfig, budget: float | None) -> SolveOutcome:
    if cfg.backend == "builtin":
        return solve_builtin(instance, budget)
    if cfg.backend.startswith("cmd:"):
        return solve_external(instance, cfg.backend[4:], budget)
    raise ValueError(f"unknown backend {cfg.backend!r}")


def _trivial_solution(circuit: Circuit, g: ConnectivityGraph) -> RoutingSolution:
    """Routing for a circuit without two-qubit gates: identity placement."""
    if circuit.num_logical > g.num_physical:
        raise UnroutableError(f"{circuit.num_logical} logical qubits but only {g.num_physical} physical qubits")
    return RoutingSolution(QubitMap.identity(circuit.num_logical), (), (), "optimal")


def solve_global(circuit: Circuit, g: ConnectivityGraph, cfg: DriverConfig = DriverConfig()) -> RoutingSolution:
    """Encode the whole circuit at once, solve, decode.

    The solution is flagged optimal exactly when the backend proved
    optimality; with ``n`` set to the graph diameter that optimum is
    the true minimum swap count.
    """
    if not circuit.slots:
        return _trivial_solution(circuit, g)
    opt = _encode_options(cfg)
    instance = encode(circuit, g, opt)
    outcome = _run_solver(instance, cfg, _Budget(cfg.budget).remaining())
    if outcome.status is SolveStatus.HARD_UNSAT:
        raise UnroutableError(f"no routing with n={cfg.n} swaps per slot (graph diameter is {diameter(g)})")
    if outcome.status is SolveStatus.UNKNOWN:
        raise SolveTimeoutError("budget expired before any solution was found")
    status = "optimal" if outcome.status is SolveStatus.OPTIMAL else "best_effort"
    solution = decode(outcome.model, instance, circuit, g, opt, status=status)
    st = instance_stats(instance)
    stats = SliceStats(0, outcome.elapsed * 1000.0, 0, outcome.status.value, st.num_vars, st.hard_count, st.soft_count)
    return replace(solution, per_slice_stats=(stats,))


def solve_sliced(circuit: Circuit, g: ConnectivityGraph, cfg: DriverConfig, slice_size: int) -> RoutingSolution:
    """Solve the circuit slice by slice, pinning each slice's starting
    placement to the previous slice's final one.

    An unsatisfiable slice triggers backtracking: the previous slice's
    final map is blocked by a hard clause and that slice is re-solved,
    recursively further back if needed, each slice's re-solves bounded
    by ``max_backtracks_per_slice``.  The result is locally optimal per
    slice but only best-effort overall.
    """
    if not circuit.slots:
        return _trivial_solution(circuit, g)
    budget = _Budget(cfg.budget)
    slices = slice_circuit(circuit, slice_size)
    count = len(slices)
    solutions: list[RoutingSolution | None] = [None] * count
    models: list[tuple[int, ...] | None] = [None] * count
    blocked_maps: list[list[QubitMap]] = [[] for _ in range(count)]
    blocked_models: list[list[tuple[int, ...]]] = [[] for _ in range(count)]
    backtracks = [0] * count
    solve_ms = [0.0] * count
    status_word = ["" for _ in range(count)]
    var_counts = [(0, 0, 0)] * count

    i = 0
    while i < count:
        pin = solutions[i - 1].final_map if i > 0 else None
        opt = _encode_options(
            cfg,
            pinned_initial=pin,
            blocked_final_maps=tuple(blocked_maps[i]),
            blocked_models=tuple(blocked_models[i]),
        )
        instance = encode(slices[i], g, opt)
        outcome = _run_solver(instance, cfg, budget.remaining())
        solve_ms[i] += outcome.elapsed * 1000.0
        st = instance_stats(instance)
        var_counts[i] = (st.num_vars, st.hard_count, st.soft_count)
        if outcome.status is SolveStatus.UNKNOWN:
            raise SolveTimeoutError(f"budget expired on slice {i} with no incumbent")
        if outcome.status is SolveStatus.HARD_UNSAT:
            if i == 0:
                raise UnroutableError(
                    f"slice 0 is unroutable with n={cfg.n} swaps per slot; "
                    f"raise n (graph diameter is {diameter(g)}) or the slice size"
                )
            backtracks[i - 1] += 1
            if backtracks[i - 1] > cfg.max_backtracks_per_slice:
                raise UnroutableError(
                    f"backtrack budget exhausted at slice {i - 1}; "
                    f"raise n (graph diameter is {diameter(g)}), the slice size, or max_backtracks_per_slice"
                )
            if cfg.block_full_model:
                blocked_models[i - 1].append(models[i - 1])
            else:
                blocked_maps[i - 1].append(solutions[i - 1].final_map)
            logger.info("slice %d unsatisfiable; backtracking to slice %d", i, i - 1)
            i -= 1
            continue
        status_word[i] = outcome.status.value
        solutions[i] = decode(outcome.model, instance, slices[i], g, opt)
        models[i] = tuple(v if outcome.model[v] else -v for v in range(1, instance.num_vars + 1))
        i += 1

    stats = tuple(
        SliceStats(k, solve_ms[k], backtracks[k], status_word[k], *var_counts[k]) for k in range(count)
    )
    return _concatenate(solutions, stats)


def _concatenate(solutions: list[RoutingSolution], stats) -> RoutingSolution:
    swaps = []
    maps = []
    objective = None
    for sol in solutions:
        swaps.extend(sol.swaps)
        maps.extend(sol.map_sequence)
        if sol.weighted_objective is not None:
            objective = (objective or 0) + sol.weighted_objective
    return RoutingSolution(
        solutions[0].initial_map,
        tuple(swaps),
        tuple(maps),
        "best_effort",  # local optimality never implies global optimality
        per_slice_stats=stats,
        weighted_objective=objective,
    )


def solve_cyclic(
    block: Circuit,
    cycles: int,
    g: ConnectivityGraph,
    cfg: DriverConfig = DriverConfig(),
    slice_size: int | None = None,
) -> RoutingSolution:
    """Route one repeated block under the constraint that its final map
    equals its initial map, then stitch ``cycles`` copies together.

    Because the boundary constraint makes every copy start exactly where
    the previous one ended, the block's swap schedule replays verbatim
    in every copy and the total cost is exactly ``cycles`` times the
    per-block cost.  With ``slice_size`` the block itself is solved
    sliced and only its last slice is re-solved against the boundary; if
    that fails the whole block is re-encoded cyclically.
    """
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    if not block.slots:
        return _trivial_solution(block, g)

    budget = _Budget(cfg.budget)
    base: RoutingSolution | None = None
    if slice_size is not None:
        base = _cyclic_via_slicing(block, g, replace(cfg, budget=budget.remaining()), slice_size)
    if base is None:
        opt = _encode_options(cfg, cyclic=True)
        instance = encode(block, g, opt)
        outcome = _run_solver(instance, cfg, budget.remaining())
        if outcome.status is SolveStatus.HARD_UNSAT:
            raise UnroutableError(f"no cyclic routing for the block with n={cfg.n} swaps per slot")
        if outcome.status is SolveStatus.UNKNOWN:
            raise SolveTimeoutError("budget expired before any cyclic solution was found")
        base = decode(outcome.model, instance, block, g, opt)
        st = instance_stats(instance)
        base = replace(
            base,
            per_slice_stats=(SliceStats(0, outcome.elapsed * 1000.0, 0, outcome.status.value, st.num_vars, st.hard_count, st.soft_count),),
        )

    if base.final_map != base.initial_map:
        raise UnroutableError("cyclic solve produced a non-returning block map; this is a bug")
    objective = None if base.weighted_objective is None else base.weighted_objective * cycles
    return RoutingSolution(
        base.initial_map,
        base.swaps * cycles,
        base.map_sequence * cycles,
        "best_effort",
        per_slice_stats=base.per_slice_stats,
        weighted_objective=objective,
    )


def _cyclic_via_slicing(block: Circuit, g: ConnectivityGraph, cfg: DriverConfig, slice_size: int) -> RoutingSolution | None:
    """Solve the block sliced, then re-solve its last slice pinned back
    to the observed initial map.  Returns None when the boundary cannot
    be patched this way (caller falls back to the whole-block encode)."""
    budget = _Budget(cfg.budget)
    try:
        base = solve_sliced(block, g, cfg, slice_size)
    except (UnroutableError, SolveTimeoutError):
        return None
    if base.final_map == base.initial_map:
        return base
    slices = slice_circuit(block, slice_size)
    if len(slices) < 2:
        return None
    last = slices[-1]
    lo = last.slot_range[0]
    pin = base.map_sequence[lo - 1]
    opt = _encode_options(cfg, pinned_initial=pin, pinned_final=base.initial_map)
    instance = encode(last, g, opt)
    outcome = _run_solver(instance, cfg, budget.remaining())
    if outcome.status not in (SolveStatus.OPTIMAL, SolveStatus.SATISFIABLE_BOUND):
        return None
    patched = decode(outcome.model, instance, last, g, opt)
    swaps = base.swaps[:lo] + patched.swaps
    maps = base.map_sequence[:lo] + patched.map_sequence
    candidate = RoutingSolution(base.initial_map, swaps, maps, "best_effort", per_slice_stats=base.per_slice_stats)
    if candidate.final_map != candidate.initial_map:
        return None  # an unencoded qubit drifted; only the full encode can pin it
    return candidate


@dataclass(frozen=True)
class SizeRun:
    """Outcome of one slice size within a best-of run."""

    slice_size: int
    status: str  # "ok", "unroutable", or "timeout"
    gates_added: int | None
    elapsed_ms: float
    error: str | None = None


@dataclass(frozen=True)
class BestOfOutcome:
    solution: RoutingSolution
    selected_size: int
    runs: tuple[SizeRun, ...]


def solve_best(circuit: Circuit, g: ConnectivityGraph, cfg: DriverConfig = DriverConfig()) -> BestOfOutcome:
    """Run the sliced strategy at every configured slice size and keep
    the cheapest verified outcome; ties go to the smaller size.

    The budget is split evenly across sizes unless ``sequential_budget``
    is set, in which case sizes run in order, each seeing the full
    remaining budget.
    """
    if not cfg.slice_sizes:
        raise ValueError("sliced strategy needs at least one slice size")
    sizes = sorted(set(cfg.slice_sizes))
    overall = _Budget(cfg.budget)
    runs: list[SizeRun] = []
    best: tuple[int, int] | None = None  # (gates_added, size)
    best_solution: RoutingSolution | None = None
    for size in sizes:
        if cfg.budget is None:
            sub_budget = None
        elif cfg.sequential_budget:
            sub_budget = overall.remaining()
        else:
            sub_budget = cfg.budget / len(sizes)
        sub_cfg = replace(cfg, budget=sub_budget)
        t0 = time.monotonic()
        try:
            sol = solve_sliced(circuit, g, sub_cfg, size)
        except UnroutableError as exc:
            runs.append(SizeRun(size, "unroutable", None, (time.monotonic() - t0) * 1000.0, str(exc)))
            continue
        except SolveTimeoutError as exc:
            runs.append(SizeRun(size, "timeout", None, (time.monotonic() - t0) * 1000.0, str(exc)))
            continue
        runs.append(SizeRun(size, "ok", sol.gates_added, (time.monotonic() - t0) * 1000.0))
        if best is None or (sol.gates_added, size) < best:
            best = (sol.gates_added, size)
            best_solution = sol
    if best_solution is None:
        reasons = "; ".join(f"size {r.slice_size}: {r.error}" for r in runs)
        if all(r.status == "timeout" for r in runs):
            raise SolveTimeoutError(f"every slice size timed out ({reasons})")
        raise UnroutableError(f"every slice size failed ({reasons})")
    return BestOfOutcome(best_solution, best[1], tuple(runs))


def as_cyclic_blocks(circuit: Circuit, block_slots: int) -> tuple[Circuit, int]:
    """Split a pre-unrolled cyclic circuit into (block, cycles).

    The circuit must consist of identical copies of a ``block_slots``
    two-qubit-gate pattern: same unordered operand pair at every slot of
    every copy.  Anything else is rejected rather than mis-stitched.
    """
    total = len(circuit.slots)
    if block_slots < 1 or total == 0 or total % block_slots:
        raise ValueError(f"{total} slots do not divide into blocks of {block_slots}")
    cycles = total // block_slots
    pattern = [frozenset(circuit.gates[s].operands) for s in circuit.slots]
    for t in range(block_slots):
        for j in range(1, cycles):
            if pattern[j * block_slots + t] != pattern[t]:
                raise ValueError(
                    f"slot {j * block_slots + t} does not repeat slot {t}'s qubit pair; "
                    "the circuit is not cyclic with this block length"
                )
    block = Circuit(circuit.num_logical, slice_circuit(circuit, block_slots)[0].gates)
    return block, cycles
