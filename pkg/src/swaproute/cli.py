"""Command-line front end: compile circuits, verify routings, emit WCNF."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from pathlib import Path

from .arch import load_arch, load_noise
from .circuit import Circuit, emit_qasm, generate_qaoa_maxcut, parse_qasm
from .driver import DriverConfig, as_cyclic_blocks, solve_best, solve_cyclic, solve_global
from .encoder import EncodeOptions, encode
from .errors import SolveTimeoutError, SwaprouteError, UnroutableError
from .maxsat import emit_wcnf
from .solution import apply_routing
from .verifier import verify, verify_solution

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_SOLUTION = 2  # budget expired without any incumbent
EXIT_UNROUTABLE = 3  # hard-unsat or backtracking exhausted

_MAP_COMMENT = "initial_map:"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise _UsageError(f"{self.prog}: {message}")


@dataclasses.dataclass
class StatsRecord:
    """Machine-readable summary of one ``map`` run."""

    input: str
    arch: str
    strategy: str
    slice_sizes: list[int] | None
    n: int
    backend: str
    swap_count: int
    gates_added: int
    status: str
    total_elapsed_ms: float
    backtracks: int
    num_vars: int
    hard_clauses: int
    soft_clauses: int
    initial_map: list[int]
    per_slice: list[dict]
    weighted_objective: int | None = None
    selected_slice_size: int | None = None
    size_runs: list[dict] | None = None


def _read_circuit(path: str) -> Circuit:
    return parse_qasm(Path(path).read_text(encoding="utf-8"))


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(part) for part in text.split(",") if part)
    except ValueError as exc:
        raise _UsageError(f"bad slice size list {text!r}") from exc
    if not sizes or any(s < 1 for s in sizes):
        raise _UsageError(f"slice sizes must be positive: {text!r}")
    return sizes


def _parse_map(text: str) -> tuple[int, ...]:
    # raw placement tuple: even a non-injective map should reach the
    # verifier and come back as a verdict, not a usage error
    try:
        return tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError as exc:
        raise _UsageError(f"bad initial map {text!r}: {exc}") from exc


def _write(path: str | None, content: str):
    if path is None or path == "-":
        sys.stdout.write(content)
    else:
        Path(path).write_text(content, encoding="utf-8")


def _cmd_map(args) -> int:
    t0 = time.monotonic()
    source = _read_circuit(args.input)
    g = load_arch(args.arch)
    noise = load_noise(args.noise, g) if args.noise else None
    backend = args.solver if args.solver.startswith("cmd:") else "builtin"
    if backend == "builtin" and args.solver != "builtin":
        raise _UsageError(f"--solver must be 'builtin' or 'cmd:<template>', got {args.solver!r}")
    sizes = _parse_sizes(args.slice_size) if args.slice_size else (10, 25, 50, 100)
    cfg = DriverConfig(
        strategy=args.strategy,
        slice_sizes=sizes,
        n=args.n,
        budget=args.budget,
        backend=backend,
        weighted=noise,
    )

    selected = None
    size_runs = None
    if args.strategy == "global":
        solution = solve_global(source, g, cfg)
    elif args.strategy == "sliced":
        outcome = solve_best(source, g, cfg)
        solution, selected = outcome.solution, outcome.selected_size
        size_runs = [dataclasses.asdict(run) for run in outcome.runs]
    elif args.strategy == "cyclic":
        if args.cyclic_block_slots is None:
            raise _UsageError("--strategy cyclic requires --cyclic-block-slots")
        block, cycles = as_cyclic_blocks(source, args.cyclic_block_slots)
        block_slice = max(sizes) if args.slice_size else None
        solution = solve_cyclic(block, cycles, g, cfg, slice_size=block_slice)
    else:
        raise _UsageError(f"unknown strategy {args.strategy!r}")

    structural = verify_solution(source, solution, g)
    if not structural:
        print(f"internal error: solution fails structural verification: {structural.violation}", file=sys.stderr)
        return EXIT_USAGE
    routed = apply_routing(source, solution, g.num_physical)
    replay = verify(source, routed, solution.initial_map, g)
    if not replay:
        print(f"internal error: routed circuit fails verification: {replay.violation}", file=sys.stderr)
        return EXIT_USAGE

    comment = f"{_MAP_COMMENT} " + " ".join(str(p) for p in solution.initial_map.placement)
    _write(args.output, emit_qasm(routed, decompose_swaps=args.decompose_swaps, comments=[comment]))

    record = StatsRecord(
        input=args.input,
        arch=args.arch,
        strategy=args.strategy,
        slice_sizes=list(sizes) if args.strategy != "global" else None,
        n=args.n,
        backend=args.solver,
        swap_count=solution.swap_count,
        gates_added=solution.gates_added,
        status=solution.status,
        total_elapsed_ms=(time.monotonic() - t0) * 1000.0,
        backtracks=sum(s.backtracks for s in solution.per_slice_stats),
        num_vars=sum(s.num_vars for s in solution.per_slice_stats),
        hard_clauses=sum(s.hard_clauses for s in solution.per_slice_stats),
        soft_clauses=sum(s.soft_clauses for s in solution.per_slice_stats),
        initial_map=list(solution.initial_map.placement),
        per_slice=[dataclasses.asdict(s) for s in solution.per_slice_stats],
        weighted_objective=solution.weighted_objective,
        selected_slice_size=selected,
        size_runs=size_runs,
    )
    if args.stats:
        Path(args.stats).write_text(json.dumps(dataclasses.asdict(record), indent=2) + "\n", encoding="utf-8")
    print(
        f"{args.input}: {solution.swap_count} swap(s), {solution.gates_added} gate(s) added, "
        f"status {solution.status}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_verify(args) -> int:
    source = _read_circuit(args.source)
    routed_text = Path(args.routed).read_text(encoding="utf-8")
    routed = parse_qasm(routed_text)
    g = load_arch(args.arch)
    if args.initial_map:
        initial = _parse_map(args.initial_map)
    else:
        initial = None
        for line in routed_text.splitlines():
            stripped = line.strip()
            if stripped.startswith("//") and _MAP_COMMENT in stripped:
                initial = _parse_map(stripped.split(_MAP_COMMENT, 1)[1])
                break
        if initial is None:
            raise _UsageError("no --initial-map given and the routed file carries no initial_map comment")
    verdict = verify(source, routed, initial, g)
    if verdict.ok:
        print("ok")
        return EXIT_OK
    v = verdict.violation
    print(f"violation [{v.kind}] at gate {v.index}: {v.message}")
    return EXIT_UNROUTABLE


def _cmd_emit_wcnf(args) -> int:
    source = _read_circuit(args.input)
    g = load_arch(args.arch)
    noise = load_noise(args.noise, g) if args.noise else None
    instance = encode(source, g, EncodeOptions(n=args.n, weighted=noise))
    _write(args.output, emit_wcnf(instance))
    return EXIT_OK


def _cmd_gen_qaoa(args) -> int:
    circuit = generate_qaoa_maxcut(args.qubits, args.cycles, args.seed)
    _write(args.output, emit_qasm(circuit))
    return EXIT_OK


def _cmd_arch(args) -> int:
    g = load_arch(args.name)
    lines = [f"n {g.num_physical}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swaproute", description="MaxSAT-based qubit mapping and routing")
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="compile a circuit onto an architecture")
    p.add_argument("--input", required=True, help="source OpenQASM 2.0 file")
    p.add_argument("--arch", required=True, help="architecture name or edge-list file")
    p.add_argument("--strategy", choices=["global", "sliced", "cyclic"], default="sliced")
    p.add_argument("--slice-size", default=None, help="comma-separated slice sizes (default 10,25,50,100)")
    p.add_argument("--n", type=int, default=1, help="swaps allowed before each two-qubit gate")
    p.add_argument("--budget", type=float, default=None, help="total time budget in seconds")
    p.add_argument("--solver", default="builtin", help="'builtin' or 'cmd:<template with {wcnf}>'")
    p.add_argument("--noise", default=None, help="JSON noise file enabling weighted (fidelity) mode")
    p.add_argument("--cyclic-block-slots", type=int, default=None, help="two-qubit gates per repeated block (cyclic strategy)")
    p.add_argument("--decompose-swaps", action="store_true", help="emit each swap as three CNOTs")
    p.add_argument("--output", default=None, help="routed QASM path (default stdout)")
    p.add_argument("--stats", default=None, help="write a JSON stats record here")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("verify", help="check a routed circuit against its source")
    p.add_argument("--source", required=True)
    p.add_argument("--routed", required=True)
    p.add_argument("--arch", required=True)
    p.add_argument("--initial-map", default=None, help="space/comma-separated physical position of each logical qubit")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("emit-wcnf", help="encode a routing problem and write the WCNF")
    p.add_argument("--input", required=True)
    p.add_argument("--arch", required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--noise", default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_emit_wcnf)

    p = sub.add_parser("gen-qaoa", help="generate a QAOA max-cut circuit over a random 3-regular graph")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--cycles", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_gen_qaoa)

    p = sub.add_parser("arch", help="print a built-in architecture as an edge-list file")
    p.add_argument("--name", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_arch)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SolveTimeoutError as exc:
        print(f"no solution within budget: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except UnroutableError as exc:
        print(f"unroutable: {exc}", file=sys.stderr)
        return EXIT_UNROUTABLE
    except (SwaprouteError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
