"""Reduction of qubit mapping and routing to weighted MaxSAT.

For a circuit with K two-qubit slots on a graph (P, E), the encoding
introduces map variables m(q, p, k) -- logical qubit q sits on physical
qubit p at slot k -- and swap variables s(u, v, k, i) -- the i-th swap
inserted before slot k acts on edge (u, v).  A synthetic pair (p0, p0)
stands for "no swap".  Slot 0 carries the initial placement, before any
swaps; the swaps of slot k transform the slot k-1 map into the slot k
map, under which slot k's gate must act on an edge.

Hard constraints: maps are total injections (A); every slot's gate
operands sit on an edge (B); each swap position picks exactly one pair
(C); chosen swaps permute the map accordingly (D).  Soft constraints
reward no-op swaps, so a minimum-weight solution inserts the fewest
swaps; in weighted mode the soft side instead charges the negative log
fidelity of every swap and of every gate placement, so minimizing
falsified weight maximizes the routed circuit's success probability.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace

from .arch import ConnectivityGraph, NoiseModel, cx_weight, diameter, swap_weight
from .circuit import Circuit, Slice
from .cnf import InstanceBuilder, MaxSatInstance, Model
from .errors import EncodingError
from .solution import Edge, QubitMap, RoutingSolution

logger = logging.getLogger(__name__)

NOOP: Edge = (0, 0)  # synthetic pair: swap p0 with itself


def swap_effect(swaps, p: int) -> int:
    """Where physical qubit ``p`` ends up after applying ``swaps`` in order."""
    for u, v in swaps:
        if p == u:
            p = v
        elif p == v:
            p = u
    return p


class VarTable:
    """Dense bijection between variable ids (from 1) and meaning tags.

    Tags are tuples: ``("map", q, p, k)``, ``("swap", u, v, k, i)``, and
    ``("aux", k, u, v)`` for the Tseitin selectors of gate-placement
    disjunctions.
    """

    def __init__(self):
        self._by_id: list[tuple | None] = [None]
        self._by_tag: dict[tuple, int] = {}

    def add(self, tag: tuple) -> int:
        if tag in self._by_tag:
            raise ValueError(f"duplicate tag {tag}")
        self._by_id.append(tag)
        vid = len(self._by_id) - 1
        self._by_tag[tag] = vid
        return vid

    def id_of(self, tag: tuple) -> int:
        return self._by_tag[tag]

    def tag_of(self, vid: int) -> tuple:
        tag = self._by_id[vid]
        if tag is None:
            raise KeyError(vid)
        return tag

    def __len__(self) -> int:
        return len(self._by_id) - 1

    def __contains__(self, tag: tuple) -> bool:
        return tag in self._by_tag


@dataclass(frozen=True)
class EncodeOptions:
    """Knobs for one encoding run.

    ``n`` is the number of swap positions before each slot; setting it
    to the graph diameter guarantees any placement can be repaired, and
    a solution that is optimal for the encoding is then optimal overall.
    """

    n: int = 1
    weighted: NoiseModel | None = None
    weight_scale: int = 1000
    pinned_initial: QubitMap | None = None
    pinned_final: QubitMap | None = None
    cyclic: bool = False
    blocked_final_maps: tuple[QubitMap, ...] = ()
    blocked_models: tuple[tuple[int, ...], ...] = ()  # whole assignments to exclude
    exactly_one: str = "pairwise"  # or "commander"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.cyclic and self.pinned_initial is not None:
            raise ValueError("cyclic mode leaves the initial map free; do not pin it")


@dataclass(frozen=True)
class InstanceStats:
    num_vars: int
    hard_count: int
    soft_count: int


def instance_stats(instance: MaxSatInstance) -> InstanceStats:
    return InstanceStats(instance.num_vars, len(instance.hard), len(instance.soft))


def active_qubits(circuit: Circuit | Slice, *, everything: bool = False) -> list[int]:
    """Logical qubits that take part in two-qubit gates (or all of them)."""
    if everything:
        return list(range(circuit.num_logical))
    return sorted({q for g in circuit.slot_gates for q in g.operands})


def encode(circuit: Circuit | Slice, g: ConnectivityGraph, opt: EncodeOptions = EncodeOptions()) -> MaxSatInstance:
    """Build the MaxSAT instance for routing ``circuit`` on ``g``."""
    slot_gates = circuit.slot_gates
    K = len(slot_gates)
    if K == 0:
        raise EncodingError("circuit has no two-qubit gates; nothing to route")

    # Qubits never touched by a two-qubit gate cannot affect the swap
    # count, so they are left out of the encoding and placed on free
    # physical qubits at decode time.  Cyclic mode encodes everything:
    # the boundary constraint must cover every qubit for copies to chain.
    active = active_qubits(circuit, everything=opt.cyclic)
    P = g.num_physical
    if len(active) > P:
        raise EncodingError(f"{len(active)} logical qubits but only {P} physical qubits")

    diam = max(diameter(g), 1)
    if opt.n > diam:
        raise EncodingError(f"n={opt.n} exceeds the graph diameter {diam}; larger values cannot help")
    if opt.n > 2:
        logger.warning("n=%d enumerates (|E|+1)^%d swap sequences per slot; expect a large encoding", opt.n, opt.n)

    if opt.pinned_initial is not None:
        _check_pin(opt.pinned_initial, circuit, g)
    if opt.pinned_final is not None:
        _check_pin(opt.pinned_final, circuit, g)
    if opt.weighted is not None and not opt.weighted.covers(g):
        raise EncodingError("noise model does not cover every edge of the graph")

    edges = g.sorted_edges()
    pairs = [NOOP] + edges
    builder = InstanceBuilder()
    table = VarTable()

    def new_tagged(tag):
        vid = builder.new_var()
        assert table.add(tag) == vid
        return vid

    mv: dict[tuple[int, int, int], int] = {}  # (q, p, k) -> var
    sv: dict[tuple[Edge, int, int], int] = {}  # (pair, k, i) -> var
    aux: dict[tuple[int, int, int], int] = {}  # (k, u, v) directed -> var

    # Interleave ids slot by slot so the solver's ascending-id branching
    # settles each slot's swaps and map before moving to the next.
    for q in active:
        for p in range(P):
            mv[q, p, 0] = new_tagged(("map", q, p, 0))
    for k in range(1, K + 1):
        for i in range(1, opt.n + 1):
            for pair in pairs:
                sv[pair, k, i] = new_tagged(("swap", pair[0], pair[1], k, i))
        for q in active:
            for p in range(P):
                mv[q, p, k] = new_tagged(("map", q, p, k))
        for u, v in edges:
            aux[k, u, v] = new_tagged(("aux", k, u, v))
            aux[k, v, u] = new_tagged(("aux", k, v, u))

    raw = builder.add_hard_raw

    # Hard A: each map is a total injective function.
    for k in range(K + 1):
        for q in active:
            builder.exactly_one([mv[q, p, k] for p in range(P)], mode=opt.exactly_one)
        for p in range(P):
            col = [mv[q, p, k] for q in active]
            for a in range(len(col)):
                for b in range(a + 1, len(col)):
                    raw((-col[a], -col[b]))

    # Hard B: slot k's gate operands must sit on some edge (both
    # orientations), via one selector per directed edge.
    for k, gate in enumerate(slot_gates, start=1):
        qa, qb = gate.operands
        selectors = []
        for u, v in edges:
            for du, dv in ((u, v), (v, u)):
                s = aux[k, du, dv]
                raw((-s, mv[qa, du, k]))
                raw((-s, mv[qb, dv, k]))
                selectors.append(s)
        builder.at_least_one(selectors)

    # Hard C: each swap position picks exactly one pair (possibly the no-op).
    for k in range(1, K + 1):
        for i in range(1, opt.n + 1):
            builder.exactly_one([sv[pair, k, i] for pair in pairs], mode=opt.exactly_one)

    # Hard D: the chosen swap sequence permutes the previous map into
    # this slot's map.
    for k in range(1, K + 1):
        for seq in itertools.product(pairs, repeat=opt.n):
            prem = tuple(-sv[seq[i - 1], k, i] for i in range(1, opt.n + 1))
            dest = [swap_effect(seq, p) for p in range(P)]
            for q in active:
                for p in range(P):
                    before, after = mv[q, p, k - 1], mv[q, dest[p], k]
                    raw(prem + (-before, after))
                    raw(prem + (before, -after))

    # Soft: reward no-ops (unweighted), or charge log-fidelities (weighted).
    if opt.weighted is None:
        for k in range(1, K + 1):
            for i in range(1, opt.n + 1):
                builder.add_soft([sv[NOOP, k, i]], 1)
    else:
        scale = opt.weight_scale
        for k in range(1, K + 1):
            for i in range(1, opt.n + 1):
                for e in edges:
                    builder.add_soft([-sv[e, k, i]], swap_weight(opt.weighted, e, scale))
        for k, gate in enumerate(slot_gates, start=1):
            qa, qb = gate.operands
            for u, v in edges:
                w = cx_weight(opt.weighted, (u, v), scale)
                builder.add_soft([-mv[qa, u, k], -mv[qb, v, k]], w)
                builder.add_soft([-mv[qa, v, k], -mv[qb, u, k]], w)

    if opt.pinned_initial is not None:
        for q in active:
            raw((mv[q, opt.pinned_initial[q], 0],))
    if opt.pinned_final is not None:
        for q in active:
            raw((mv[q, opt.pinned_final[q], K],))
    if opt.cyclic:
        for q in active:
            for p in range(P):
                raw((-mv[q, p, 0], mv[q, p, K]))
                raw((mv[q, p, 0], -mv[q, p, K]))
    for blocked in opt.blocked_final_maps:
        raw(tuple(-mv[q, blocked[q], K] for q in active))
    # Blocking a whole model excludes only that one assignment: the same
    # final map can come back with different internals, so the final-map
    # projection above is the default for backtracking.
    for lits in opt.blocked_models:
        raw(tuple(-lit for lit in lits))

    # the commander exactly-one mode mints helper variables during clause
    # emission; tag them so the table stays a dense bijection
    while len(table) < builder.num_vars:
        table.add(("card", len(table) + 1))

    return builder.build(table)


def _check_pin(pin: QubitMap, circuit: Circuit | Slice, g: ConnectivityGraph):
    if len(pin) != circuit.num_logical:
        raise EncodingError(f"pinned map covers {len(pin)} qubits, circuit has {circuit.num_logical}")
    for q in range(len(pin)):
        if not 0 <= pin[q] < g.num_physical:
            raise EncodingError(f"pinned map sends q{q} to nonexistent physical qubit {pin[q]}")


def decode(
    model: Model,
    instance: MaxSatInstance,
    circuit: Circuit | Slice,
    g: ConnectivityGraph,
    opt: EncodeOptions = EncodeOptions(),
    *,
    status: str = "best_effort",
) -> RoutingSolution:
    """Extract the routing described by a model of the hard constraints.

    Rebuilds the full map sequence (inactive qubits included), replays
    every slot's swaps, and cross-checks the result against the model,
    so a defective model or encoding fails loudly rather than decoding
    into a bogus routing.
    """
    if not instance.hard_satisfied(model):
        raise EncodingError("model does not satisfy the hard constraints")
    table: VarTable = instance.var_table
    if table is None:
        raise EncodingError("instance carries no variable table; cannot decode")

    slot_gates = circuit.slot_gates
    K = len(slot_gates)
    active = active_qubits(circuit, everything=opt.cyclic)
    P = g.num_physical
    pairs = [NOOP] + g.sorted_edges()

    def chosen_pair(k: int, i: int) -> Edge:
        hits = [pair for pair in pairs if model[table.id_of(("swap", pair[0], pair[1], k, i))]]
        if len(hits) != 1:
            raise EncodingError(f"slot {k} swap {i}: expected exactly one chosen pair, got {hits}")
        return hits[0]

    def active_map(k: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for q in active:
            spots = [p for p in range(P) if model[table.id_of(("map", q, p, k))]]
            if len(spots) != 1:
                raise EncodingError(f"q{q} occupies {len(spots)} places at slot {k}")
            out[q] = spots[0]
        if len(set(out.values())) != len(out):
            raise EncodingError(f"decoded map at slot {k} is not injective")
        return out

    swaps: list[tuple[Edge, ...]] = []
    for k in range(1, K + 1):
        swaps.append(tuple(pair for i in range(1, opt.n + 1) if (pair := chosen_pair(k, i)) != NOOP))

    decoded = [active_map(k) for k in range(K + 1)]

    if opt.pinned_initial is not None:
        for q in active:
            if opt.pinned_initial[q] != decoded[0][q]:
                raise EncodingError(f"decoded initial position of q{q} disagrees with the pin")
        initial = opt.pinned_initial
    else:
        placement = [-1] * circuit.num_logical
        for q, p in decoded[0].items():
            placement[q] = p
        free = iter(sorted(set(range(P)) - set(decoded[0].values())))
        for q in range(circuit.num_logical):
            if placement[q] < 0:
                placement[q] = next(free)
        initial = QubitMap(tuple(placement))

    maps: list[QubitMap] = []
    live = initial
    for k in range(1, K + 1):
        live = live.apply_swaps(swaps[k - 1])
        for q in active:
            if live[q] != decoded[k][q]:
                raise EncodingError(f"replayed position of q{q} at slot {k} disagrees with the model")
        maps.append(live)

    objective = instance.falsified_weight(model) if opt.weighted is not None else None
    return RoutingSolution(initial, tuple(swaps), tuple(maps), status, weighted_objective=objective)


def with_status(solution: RoutingSolution, status: str) -> RoutingSolution:
    return replace(solution, status=status)
