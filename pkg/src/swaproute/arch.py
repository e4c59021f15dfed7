"""Device connectivity graphs, built-in architectures, and noise models."""

from __future__ import annotations

import json
import math
import os
import re
from collections import deque
from dataclasses import dataclass

from .errors import ArchError, NoiseModelError

Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ConnectivityGraph:
    """Undirected connectivity graph over physical qubits.

    Edges are stored canonically as (min, max); the graph must be
    connected, simple, and free of self-loops.
    """

    num_physical: int
    edges: frozenset[Edge]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(_canon(u, v) for u, v in self.edges))
        for u, v in self.edges:
            if u == v:
                raise ArchError(f"self-loop on qubit {u}")
            if not (0 <= u < self.num_physical and 0 <= v < self.num_physical):
                raise ArchError(f"edge ({u},{v}) out of range for {self.num_physical} qubits")
        if self.num_physical > 1 and not self._connected():
            raise ArchError("connectivity graph is disconnected")

    def _adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.num_physical)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def _connected(self) -> bool:
        if self.num_physical == 0:
            return True
        adj = self._adjacency()
        seen = {0}
        queue = deque([0])
        while queue:
            for w in adj[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.num_physical

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self.edges

    def neighbors(self, p: int) -> list[int]:
        return sorted(w for e in self.edges for u, w in (e, e[::-1]) if u == p)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)


def diameter(g: ConnectivityGraph) -> int:
    """Maximum shortest-path length between any two qubits (BFS all pairs)."""
    adj = g._adjacency()
    best = 0
    for src in range(g.num_physical):
        dist = [-1] * g.num_physical
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        best = max(best, max(dist))
    return best


# ---------------------------------------------------------------------------
# Built-in architectures
# ---------------------------------------------------------------------------


def _grid_edges(rows: int, cols: int) -> set[Edge]:
    edges: set[Edge] = set()
    for r in range(rows):
        for c in range(cols):
            p = r * cols + c
            if c + 1 < cols:
                edges.add(_canon(p, p + 1))
            if r + 1 < rows:
                edges.add(_canon(p, p + cols))
    return edges


def _tokyo_variant(density: str) -> ConnectivityGraph:
    """The 20-qubit IBM Q20 Tokyo family: a 4x5 grid with crossed
    diagonals in alternating unit squares ("standard"), in every square
    ("plus"), or in none ("minus")."""
    rows, cols = 4, 5
    edges = _grid_edges(rows, cols)
    for r in range(rows - 1):
        for c in range(cols - 1):
            crossed = density == "plus" or (density == "standard" and (r + c) % 2 == 1)
            if crossed:
                a = r * cols + c
                edges.add(_canon(a, a + cols + 1))
                edges.add(_canon(a + 1, a + cols))
    return ConnectivityGraph(rows * cols, frozenset(edges))


def _line(n: int) -> ConnectivityGraph:
    return ConnectivityGraph(n, frozenset((i, i + 1) for i in range(n - 1)))


def _cycle(n: int) -> ConnectivityGraph:
    if n < 3:
        raise ArchError("cycle needs at least 3 qubits")
    return ConnectivityGraph(n, frozenset(_canon(i, (i + 1) % n) for i in range(n)))


def _star(n: int) -> ConnectivityGraph:
    if n < 2:
        raise ArchError("star needs at least 2 qubits")
    return ConnectivityGraph(n, frozenset((0, i) for i in range(1, n)))


_PARAMETRIC = re.compile(r"^(line|cycle|star):(\d+)$|^grid:(\d+)x(\d+)$")


def load_arch(spec: str) -> ConnectivityGraph:
    """Load a connectivity graph from a built-in name or an edge-list file.

    Built-ins: ``tokyo``, ``tokyo_plus``, ``tokyo_minus``, ``line:<n>``,
    ``cycle:<n>``, ``grid:<r>x<c>``, ``star:<n>``.  Anything else is
    treated as a path to a file with a first line ``n <count>`` followed
    by one ``u v`` pair per line.
    """
    if spec == "tokyo":
        return _tokyo_variant("standard")
    if spec == "tokyo_plus":
        return _tokyo_variant("plus")
    if spec == "tokyo_minus":
        return _tokyo_variant("minus")
    m = _PARAMETRIC.match(spec)
    if m:
        if m.group(1):
            n = int(m.group(2))
            if n < 2:
                raise ArchError(f"{m.group(1)} needs at least 2 qubits")
            return {"line": _line, "cycle": _cycle, "star": _star}[m.group(1)](n)
        rows, cols = int(m.group(3)), int(m.group(4))
        if rows < 1 or cols < 1 or rows * cols < 2:
            raise ArchError(f"grid needs at least 1x2 qubits, got {rows}x{cols}")
        return ConnectivityGraph(rows * cols, frozenset(_grid_edges(rows, cols)))
    if os.path.exists(spec):
        return _load_arch_file(spec)
    raise ArchError(f"unknown architecture {spec!r} (not a built-in name or a readable file)")


def _load_arch_file(path: str) -> ConnectivityGraph:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("n "):
        raise ArchError(f"{path}: first line must be 'n <count>'")
    try:
        num = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ArchError(f"{path}: malformed count line {lines[0]!r}") from exc
    edges: set[Edge] = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ArchError(f"{path}: malformed edge line {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ArchError(f"{path}: malformed edge line {ln!r}") from exc
        e = _canon(u, v)
        if e in edges:
            raise ArchError(f"{path}: duplicate edge {u} {v}")
        edges.add(e)
    return ConnectivityGraph(num, frozenset(edges))


# ---------------------------------------------------------------------------
# Noise models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NoiseModel:
    """Per-edge two-qubit gate and swap fidelities, each in (0, 1].

    A missing swap fidelity defaults to the cube of the edge's cx
    fidelity, matching a swap's three-CNOT decomposition.
    """

    cx_fidelity: dict[Edge, float]
    swap_fidelity: dict[Edge, float]

    def __post_init__(self):
        object.__setattr__(self, "cx_fidelity", {_canon(*e): f for e, f in self.cx_fidelity.items()})
        swap = {_canon(*e): f for e, f in self.swap_fidelity.items()}
        for e, f in self.cx_fidelity.items():
            swap.setdefault(e, f**3)
        object.__setattr__(self, "swap_fidelity", swap)
        for table in (self.cx_fidelity, self.swap_fidelity):
            for e, f in table.items():
                if not 0.0 < f <= 1.0:
                    raise NoiseModelError(f"fidelity {f} for edge {e} outside (0, 1]")

    def covers(self, g: ConnectivityGraph) -> bool:
        return all(e in self.cx_fidelity for e in g.edges)

    @classmethod
    def uniform(cls, g: ConnectivityGraph, cx: float = 0.99, swap: float | None = None) -> "NoiseModel":
        swap_table = {} if swap is None else {e: swap for e in g.edges}
        return cls({e: cx for e in g.edges}, swap_table)


def load_noise(path: str, g: ConnectivityGraph) -> NoiseModel:
    """Load a JSON noise file and check it covers every edge of ``g``.

    The file is a JSON array of records ``{"edge": [u, v], "cx": f}``
    with an optional ``"swap": f`` field per record.
    """
    with open(path, encoding="utf-8") as fh:
        try:
            records = json.load(fh)
        except json.JSONDecodeError as exc:
            raise NoiseModelError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(records, list):
        raise NoiseModelError(f"{path}: expected a JSON array of records")
    cx: dict[Edge, float] = {}
    swap: dict[Edge, float] = {}
    for rec in records:
        try:
            u, v = rec["edge"]
            e = _canon(int(u), int(v))
            fid = float(rec["cx"])
        except (KeyError, TypeError, ValueError) as exc:
            raise NoiseModelError(f"{path}: malformed record {rec!r}") from exc
        if e not in g.edges:
            raise NoiseModelError(f"{path}: edge {e} is not in the connectivity graph")
        if e in cx:
            raise NoiseModelError(f"{path}: duplicate record for edge {e}")
        cx[e] = fid
        if "swap" in rec:
            swap[e] = float(rec["swap"])
    model = NoiseModel(cx, swap)
    missing = sorted(e for e in g.edges if e not in model.cx_fidelity)
    if missing:
        raise NoiseModelError(f"{path}: no fidelity given for edge(s) {missing}")
    return model


def swap_weight(model: NoiseModel, e: Edge, scale: int) -> int:
    """Integer soft-clause weight for performing a swap on ``e``."""
    return round(scale * -math.log(model.swap_fidelity[_canon(*e)]))


def cx_weight(model: NoiseModel, e: Edge, scale: int) -> int:
    """Integer soft-clause weight for executing a two-qubit gate on ``e``."""
    return round(scale * -math.log(model.cx_fidelity[_canon(*e)]))
