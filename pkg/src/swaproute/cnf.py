"""CNF plumbing: clauses, weighted instances, and a small builder.

Clauses are tuples of non-zero signed integers in the usual DIMACS
convention (positive literal = variable true).  A weighted instance
keeps hard clauses, weighted soft clauses, and optionally a variable
table describing what each variable means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Clause = tuple[int, ...]


def make_clause(lits: Iterable[int]) -> Clause:
    """Normalize literals into a clause: dedupe, forbid empties and tautologies."""
    seen: dict[int, None] = {}
    for lit in lits:
        if lit == 0:
            raise ValueError("0 is not a literal")
        if -lit in seen:
            raise ValueError(f"tautological clause: contains both {lit} and {-lit}")
        seen.setdefault(lit, None)
    if not seen:
        raise ValueError("empty clause")
    return tuple(seen)


@dataclass(frozen=True)
class Model:
    """A total assignment; ``values[v]`` is variable v's value (index 0 unused)."""

    values: tuple[bool, ...]

    def __getitem__(self, var: int) -> bool:
        return self.values[var]

    def holds(self, lit: int) -> bool:
        return self.values[lit] if lit > 0 else not self.values[-lit]

    @property
    def num_vars(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class MaxSatInstance:
    """Hard clauses plus weighted soft clauses over variables 1..num_vars."""

    num_vars: int
    hard: tuple[Clause, ...]
    soft: tuple[tuple[Clause, int], ...]
    var_table: "object | None" = None  # encoder.VarTable when built by the encoder

    def __post_init__(self):
        object.__setattr__(self, "hard", tuple(self.hard))
        object.__setattr__(self, "soft", tuple(self.soft))
        for clause in self.hard:
            self._check(clause)
        for clause, weight in self.soft:
            self._check(clause)
            if weight < 1:
                raise ValueError(f"soft weight must be >= 1, got {weight}")

    def _check(self, clause: Clause):
        for lit in clause:
            if not 1 <= abs(lit) <= self.num_vars:
                raise ValueError(f"literal {lit} out of range (num_vars={self.num_vars})")

    @property
    def soft_weight_total(self) -> int:
        return sum(w for _, w in self.soft)

    def hard_satisfied(self, model: Model) -> bool:
        return all(any(model.holds(lit) for lit in clause) for clause in self.hard)

    def falsified_weight(self, model: Model) -> int:
        return sum(w for clause, w in self.soft if not any(model.holds(lit) for lit in clause))


class InstanceBuilder:
    """Incrementally builds a :class:`MaxSatInstance`."""

    def __init__(self):
        self._num_vars = 0
        self._hard: list[Clause] = []
        self._soft: list[tuple[Clause, int]] = []

    @property
    def num_vars(self) -> int:
        return self._num_vars

    def new_var(self) -> int:
        self._num_vars += 1
        return self._num_vars

    def new_vars(self, count: int) -> list[int]:
        return [self.new_var() for _ in range(count)]

    def add_hard(self, lits: Iterable[int]):
        self._hard.append(make_clause(lits))

    def add_hard_raw(self, clause: Clause):
        """Append a pre-normalized clause; the caller guarantees it is a
        non-empty tuple with no duplicate or complementary literals."""
        self._hard.append(clause)

    def add_soft(self, lits: Iterable[int], weight: int):
        if weight == 0:
            return  # zero-weight clauses carry no objective and are dropped
        if weight < 0:
            raise ValueError("soft weights must be positive")
        self._soft.append((make_clause(lits), weight))

    def add_soft_formula(self, clauses: Sequence[Iterable[int]], weight: int) -> int:
        """Add a conjunction of clauses as one soft formula.

        A fresh selector variable s is constrained by hard clauses
        s -> clause for each clause, and {s} becomes the soft unit, so
        satisfying the soft unit is exactly satisfying the formula.
        Returns the selector.
        """
        s = self.new_var()
        for clause in clauses:
            self.add_hard([-s, *clause])
        self.add_soft([s], weight)
        return s

    # -- exactly-one encodings ------------------------------------------------

    def at_least_one(self, lits: Sequence[int]):
        self.add_hard(lits)

    def at_most_one_pairwise(self, lits: Sequence[int]):
        for i in range(len(lits)):
            for j in range(i + 1, len(lits)):
                self.add_hard([-lits[i], -lits[j]])

    def at_most_one_commander(self, lits: Sequence[int], group_size: int = 4):
        """Commander at-most-one: group literals, one commander each,
        recurse on the commanders."""
        if len(lits) <= group_size:
            self.at_most_one_pairwise(lits)
            return
        commanders = []
        for i in range(0, len(lits), group_size):
            group = list(lits[i : i + group_size])
            self.at_most_one_pairwise(group)
            c = self.new_var()
            for lit in group:
                self.add_hard([-lit, c])  # any group member forces its commander
            self.add_hard([-c, *group])  # a commander without a member is false
            commanders.append(c)
        self.at_most_one_commander(commanders, group_size)

    def exactly_one(self, lits: Sequence[int], mode: str = "pairwise"):
        if not lits:
            raise ValueError("exactly_one over an empty set")
        self.at_least_one(lits)
        if mode == "pairwise":
            self.at_most_one_pairwise(lits)
        elif mode == "commander":
            self.at_most_one_commander(lits)
        else:
            raise ValueError(f"unknown exactly-one mode {mode!r}")

    def build(self, var_table=None) -> MaxSatInstance:
        return MaxSatInstance(self._num_vars, tuple(self._hard), tuple(self._soft), var_table)
