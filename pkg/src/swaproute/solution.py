"""Qubit maps and routing solutions shared by the encoder, driver, and verifier."""

from __future__ import annotations

from dataclasses import dataclass, field

from .circuit import Circuit, Gate

Edge = tuple[int, int]


@dataclass(frozen=True)
class QubitMap:
    """A total injective placement of logical qubits on physical qubits.

    ``placement[q]`` is the physical qubit holding logical qubit ``q``.
    """

    placement: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "placement", tuple(self.placement))
        if len(set(self.placement)) != len(self.placement):
            raise ValueError(f"map is not injective: {self.placement}")

    def __getitem__(self, logical: int) -> int:
        return self.placement[logical]

    def __len__(self) -> int:
        return len(self.placement)

    def logical_at(self, physical: int) -> int | None:
        try:
            return self.placement.index(physical)
        except ValueError:
            return None

    def apply_swap(self, u: int, v: int) -> "QubitMap":
        """The map after exchanging the contents of physical qubits u and v."""
        moved = tuple(v if p == u else u if p == v else p for p in self.placement)
        return QubitMap(moved)

    def apply_swaps(self, swaps: tuple[Edge, ...] | list[Edge]) -> "QubitMap":
        m = self
        for u, v in swaps:
            m = m.apply_swap(u, v)
        return m

    @classmethod
    def identity(cls, n: int) -> "QubitMap":
        return cls(tuple(range(n)))


@dataclass(frozen=True)
class SliceStats:
    """Per-slice solve accounting for one driver run."""

    index: int
    solve_ms: float
    backtracks: int
    status: str
    num_vars: int = 0
    hard_clauses: int = 0
    soft_clauses: int = 0


@dataclass(frozen=True)
class RoutingSolution:
    """A complete routing: where qubits start, which swaps happen before
    each two-qubit gate, and the map in force at every slot.

    ``map_sequence[k-1]`` is the map under which slot k's gate executes;
    it equals the previous map (or ``initial_map`` for slot 1) composed
    with that slot's transpositions.
    """

    initial_map: QubitMap
    swaps: tuple[tuple[Edge, ...], ...]
    map_sequence: tuple[QubitMap, ...]
    status: str  # "optimal" or "best_effort"
    per_slice_stats: tuple[SliceStats, ...] = ()
    weighted_objective: int | None = None
    swap_count: int = field(init=False)

    def __post_init__(self):
        if len(self.swaps) != len(self.map_sequence):
            raise ValueError("one swap group per slot is required")
        object.__setattr__(self, "swap_count", sum(len(s) for s in self.swaps))

    @property
    def gates_added(self) -> int:
        """Cost in CNOTs: every swap decomposes to three."""
        return 3 * self.swap_count

    @property
    def num_slots(self) -> int:
        return len(self.map_sequence)

    @property
    def final_map(self) -> QubitMap:
        return self.map_sequence[-1] if self.map_sequence else self.initial_map


def apply_routing(source: Circuit, solution: RoutingSolution, num_physical: int) -> Circuit:
    """Realize a routed physical circuit from a source circuit and a solution.

    Before each two-qubit gate the slot's swaps are emitted as ``swap``
    gates; every source gate is re-emitted on the physical qubits its
    logical operands occupy at that point.  One-qubit gates between two
    slots execute under the later slot's map, after its swaps.
    """
    if len(solution.map_sequence) != len(source.slots):
        raise ValueError(f"solution has {len(solution.map_sequence)} slots, circuit has {len(source.slots)}")
    out: list[Gate] = []
    live = solution.initial_map
    slot = 0
    pending: list[Gate] = []

    def flush(m: QubitMap):
        for g in pending:
            out.append(Gate(g.name, tuple(m[q] for q in g.operands), g.params))
        pending.clear()

    for g in source.gates:
        if not g.is_two_qubit:
            pending.append(g)
            continue
        for u, v in solution.swaps[slot]:
            out.append(Gate("swap", (u, v)))
            live = live.apply_swap(u, v)
        if live != solution.map_sequence[slot]:
            raise ValueError(f"map sequence out of step at slot {slot + 1}")
        flush(live)
        out.append(Gate(g.name, tuple(live[q] for q in g.operands), g.params))
        slot += 1
    flush(live)
    return Circuit(num_physical, tuple(out))
