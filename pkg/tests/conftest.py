"""Shared helpers: random instances and routed-circuit mutation for
fault-injection tests."""

from __future__ import annotations

import random

import pytest

from swaproute.arch import ConnectivityGraph
from swaproute.circuit import Circuit, Gate


def random_circuit(rng: random.Random, num_logical: int, num_slots: int, one_qubit: bool = True) -> Circuit:
    """A random circuit with the requested number of two-qubit slots and,
    optionally, interleaved one-qubit gates."""
    gates: list[Gate] = []
    for _ in range(num_slots):
        if one_qubit and rng.random() < 0.4:
            gates.append(Gate(rng.choice(["h", "t", "x"]), (rng.randrange(num_logical),)))
        a, b = rng.sample(range(num_logical), 2)
        gates.append(Gate(rng.choice(["cx", "cx", "cz"]), (a, b)))
    if one_qubit and rng.random() < 0.4:
        gates.append(Gate("h", (rng.randrange(num_logical),)))
    return Circuit(num_logical, tuple(gates))


ORACLE_ARCHES = ["line:3", "line:4", "cycle:4", "star:4"]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)


# -- routed-circuit mutations -------------------------------------------------
#
# Each mutator edits a routed circuit (or its initial map) to plant one
# fault of a known class, returning None when the circuit offers no spot
# where that fault manifests unambiguously.

def _non_edge_pair(g: ConnectivityGraph, rng: random.Random) -> tuple[int, int] | None:
    pairs = [
        (u, v)
        for u in range(g.num_physical)
        for v in range(g.num_physical)
        if u != v and not g.has_edge(u, v)
    ]
    return rng.choice(pairs) if pairs else None


def _key(gate: Gate):
    return (gate.name, gate.operands, gate.params)


def mutate_non_edge_swap(routed: Circuit, g, rng) -> Circuit | None:
    spots = [i for i, gt in enumerate(routed.gates) if gt.name == "swap"]
    pair = _non_edge_pair(g, rng)
    if not spots or pair is None:
        return None
    i = rng.choice(spots)
    gates = list(routed.gates)
    gates[i] = Gate("swap", pair)
    return Circuit(routed.num_logical, tuple(gates))


def mutate_non_edge_gate(routed: Circuit, g, rng) -> Circuit | None:
    spots = [i for i, gt in enumerate(routed.gates) if gt.is_two_qubit and gt.name != "swap"]
    pair = _non_edge_pair(g, rng)
    if not spots or pair is None:
        return None
    i = rng.choice(spots)
    gates = list(routed.gates)
    gates[i] = Gate(gates[i].name, pair, gates[i].params)
    return Circuit(routed.num_logical, tuple(gates))


def mutate_reorder(routed: Circuit, g, rng) -> Circuit | None:
    gates = list(routed.gates)
    spots = [
        i
        for i in range(len(gates) - 1)
        if gates[i].name != "swap" and gates[i + 1].name != "swap" and _key(gates[i]) != _key(gates[i + 1])
    ]
    if not spots:
        return None
    i = rng.choice(spots)
    gates[i], gates[i + 1] = gates[i + 1], gates[i]
    return Circuit(routed.num_logical, tuple(gates))


def mutate_drop(routed: Circuit, g, rng) -> Circuit | None:
    gates = list(routed.gates)
    spots = []
    for i, gt in enumerate(gates):
        if gt.name == "swap":
            continue
        if i == len(gates) - 1:
            spots.append(i)
            continue
        # the successor must not be a swap (its map change would blur the
        # divergence point) and must differ from both neighbours so the
        # single-edit cause stays unambiguous
        if gates[i + 1].name == "swap" or _key(gates[i + 1]) == _key(gt):
            continue
        if i + 2 < len(gates) and gates[i + 2].name != "swap" and _key(gates[i + 2]) == _key(gt):
            continue
        spots.append(i)
    if not spots:
        return None
    del gates[rng.choice(spots)]
    return Circuit(routed.num_logical, tuple(gates))


def mutate_insert(routed: Circuit, g, rng) -> Circuit | None:
    gates = list(routed.gates)
    spots = [i for i, gt in enumerate(gates) if gt.name != "swap"] + [len(gates)]
    i = rng.choice(spots)
    gates.insert(i, Gate("bogus_noise", (rng.randrange(g.num_physical),)))
    return Circuit(routed.num_logical, tuple(gates))


MUTATORS = {
    "swap-non-edge": mutate_non_edge_swap,
    "gate-non-edge": mutate_non_edge_gate,
    "reordered-gate": mutate_reorder,
    "dropped-gate": mutate_drop,
    "extra-gate": mutate_insert,
}
