"""Prenex CNF data model: prefixes, constraints, assignments.

Literals are plain non-zero ints in DIMACS convention: ``v`` is the
positive literal of variable ``v`` and ``-v`` its negation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class Quant(str, enum.Enum):
    EXISTS = "e"
    FORALL = "a"

    def flip(self) -> "Quant":
        return Quant.FORALL if self is Quant.EXISTS else Quant.EXISTS


class Kind(str, enum.Enum):
    CLAUSE = "clause"
    CUBE = "cube"


def var(lit: int) -> int:
    return lit if lit > 0 else -lit


@dataclass(frozen=True)
class QuantifierBlock:
    quant: Quant
    vars: tuple[int, ...]
    level: int

    def __post_init__(self) -> None:
        if not self.vars:
            raise ValueError("quantifier block must not be empty")
        if self.level < 1:
            raise ValueError("block levels are 1-based")


class Prefix:
    """An alternating sequence of quantifier blocks.

    ``level(v)`` is the 1-based block index of ``v``; literal ``l`` precedes
    ``k`` in the prefix order iff ``level(var(l)) <= level(var(k))``.
    """

    __slots__ = ("blocks", "_level", "_quant")

    def __init__(self, blocks: Iterable[QuantifierBlock] = ()) -> None:
        self.blocks: tuple[QuantifierBlock, ...] = tuple(blocks)
        self._level: dict[int, int] = {}
        self._quant: dict[int, Quant] = {}
        for i, b in enumerate(self.blocks, start=1):
            if b.level != i:
                raise ValueError(f"block levels must be consecutive, got {b.level} at {i}")
            if i > 1 and self.blocks[i - 2].quant is b.quant:
                raise ValueError("adjacent blocks must have different quantifiers")
            for v in b.vars:
                if v < 1:
                    raise ValueError(f"invalid variable {v}")
                if v in self._level:
                    raise ValueError(f"variable {v} quantified twice")
                self._level[v] = i
                self._quant[v] = b.quant

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Quant | str, Iterable[int]]]) -> "Prefix":
        """Build a prefix from ``(quant, vars)`` pairs, merging equal neighbours
        and skipping empty groups."""
        merged: list[tuple[Quant, list[int]]] = []
        for q, vs in pairs:
            q = Quant(q)
            vs = list(vs)
            if not vs:
                continue
            if merged and merged[-1][0] is q:
                merged[-1][1].extend(vs)
            else:
                merged.append((q, vs))
        return cls(
            QuantifierBlock(q, tuple(sorted(vs)), i) for i, (q, vs) in enumerate(merged, start=1)
        )

    def __contains__(self, v: int) -> bool:
        return v in self._level

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Prefix) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def __repr__(self) -> str:
        return "Prefix(" + " ".join(f"{b.quant.value}{list(b.vars)}" for b in self.blocks) + ")"

    def level(self, v: int) -> int:
        return self._level[v]

    def quant(self, v: int) -> Quant:
        return self._quant[v]

    def is_universal(self, v: int) -> bool:
        return self._quant[v] is Quant.FORALL

    def variables(self) -> Iterator[int]:
        for b in self.blocks:
            yield from b.vars

    @property
    def max_var(self) -> int:
        return max(self._level, default=0)

    def order_key(self, lit: int) -> tuple[int, int, int]:
        v = var(lit)
        return (self._level[v], v, 0 if lit < 0 else 1)

    def sort(self, lits: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(set(lits), key=self.order_key))


@dataclass(frozen=True)
class Constraint:
    """A clause or cube with canonically ordered literals.

    ``merged`` holds variables that occur in both polarities because of
    long-distance resolution; such variables appear in ``lits`` twice.
    """

    kind: Kind
    lits: tuple[int, ...]
    merged: frozenset[int] = field(default_factory=frozenset)

    @classmethod
    def build(cls, kind: Kind, lits: Iterable[int], prefix: Prefix,
              merged: Iterable[int] = ()) -> "Constraint":
        lits = prefix.sort(lits)
        both = {var(l) for l in lits if -l in lits}
        merged = frozenset(merged) | both
        return cls(Kind(kind), lits, frozenset(merged))

    @property
    def is_clause(self) -> bool:
        return self.kind is Kind.CLAUSE

    def __len__(self) -> int:
        return len(self.lits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.lits)

    def __contains__(self, lit: int) -> bool:
        return lit in self.lits

    def variables(self) -> set[int]:
        return {var(l) for l in self.lits}

    def is_tautological(self) -> bool:
        s = set(self.lits)
        return any(-l in s for l in s)


@dataclass(frozen=True)
class PCNF:
    prefix: Prefix
    clauses: tuple[Constraint, ...]
    num_vars: int = 0

    def __post_init__(self) -> None:
        for c in self.clauses:
            if c.kind is not Kind.CLAUSE:
                raise ValueError("matrix may only contain clauses")
            if c.is_tautological():
                raise ValueError(f"tautological clause {c.lits}")
            for l in c.lits:
                if var(l) not in self.prefix:
                    raise ValueError(f"variable {var(l)} not in prefix")
        nv = max(self.num_vars, self.prefix.max_var,
                 max((var(l) for c in self.clauses for l in c.lits), default=0))
        object.__setattr__(self, "num_vars", nv)

    @classmethod
    def from_lists(cls, prefix: Sequence[tuple[str, Sequence[int]]],
                   clauses: Iterable[Iterable[int]], num_vars: int = 0) -> "PCNF":
        """Convenience constructor used heavily in tests.

        Matrix variables missing from ``prefix`` are put into an outermost
        existential block; tautological clauses are dropped.
        """
        clauses = [list(c) for c in clauses]
        pairs = [(Quant(q), list(vs)) for q, vs in prefix]
        bound = {v for _, vs in pairs for v in vs}
        free = sorted({var(l) for c in clauses for l in c} - bound)
        if free:
            pairs.insert(0, (Quant.EXISTS, free))
        pre = Prefix.from_pairs(pairs)
        out = []
        for c in clauses:
            s = set(c)
            if any(-l in s for l in s):
                continue
            out.append(Constraint.build(Kind.CLAUSE, s, pre))
        return cls(pre, tuple(out), num_vars)

    @property
    def is_true(self) -> bool:
        return not self.clauses

    @property
    def is_false(self) -> bool:
        return any(not c.lits for c in self.clauses)


class Assignment:
    """Ordered, partial truth assignment; also viewed as a set of literals."""

    __slots__ = ("entries", "order")

    def __init__(self, lits: Iterable[int] = ()) -> None:
        self.entries: dict[int, bool] = {}
        self.order: list[int] = []
        for l in lits:
            self.assign(l)

    def assign(self, lit: int) -> None:
        v = var(lit)
        if lit == 0:
            raise ValueError("0 is not a literal")
        if v in self.entries:
            raise ValueError(f"variable {v} assigned twice")
        self.entries[v] = lit > 0
        self.order.append(v)

    def value(self, lit: int) -> bool | None:
        b = self.entries.get(var(lit))
        if b is None:
            return None
        return b if lit > 0 else not b

    def literals(self) -> list[int]:
        return [v if self.entries[v] else -v for v in self.order]

    def __contains__(self, lit: int) -> bool:
        return self.value(lit) is True

    def __len__(self) -> int:
        return len(self.order)

    def __repr__(self) -> str:
        return f"Assignment({self.literals()})"

    def union(self, other: "Assignment") -> "Assignment":
        return Assignment(self.literals() + other.literals())


def apply_assignment(psi: PCNF, a: Assignment) -> PCNF:
    """Return ``psi`` under ``a``.

    Satisfied clauses disappear, false literals are deleted and assigned
    variables leave the prefix. Blocks that become empty are dropped and
    equal neighbours merged so the result is again alternating.
    """
    for v in a.entries:
        if v not in psi.prefix:
            raise ValueError(f"assigned variable {v} not in prefix")
    pairs = [(b.quant, [v for v in b.vars if v not in a.entries]) for b in psi.prefix.blocks]
    prefix = Prefix.from_pairs(pairs)
    clauses = []
    for c in psi.clauses:
        kept = []
        sat = False
        for l in c.lits:
            val = a.value(l)
            if val is None:
                kept.append(l)
            elif val:
                sat = True
                break
        if not sat:
            clauses.append(Constraint(Kind.CLAUSE, tuple(kept)))
    return PCNF(prefix, tuple(clauses), psi.num_vars)


class Status(str, enum.Enum):
    SATISFIED = "satisfied"
    FALSIFIED = "falsified"
    UNIT = "unit"
    UNRESOLVED = "unresolved"


def constraint_status(c: Constraint, a: Assignment) -> tuple[Status, int | None]:
    """Status of ``c`` under ``a`` without any reduction.

    Returns ``(Status.UNIT, lit)`` when exactly one literal is unassigned and
    all others are false (clauses) or true (cubes).
    """
    free = []
    for l in c.lits:
        val = a.value(l)
        if val is None:
            free.append(l)
        elif val:
            if c.kind is Kind.CLAUSE:
                return Status.SATISFIED, None
        else:
            if c.kind is Kind.CUBE:
                return Status.FALSIFIED, None
    if not free:
        return (Status.FALSIFIED, None) if c.kind is Kind.CLAUSE else (Status.SATISFIED, None)
    if len(free) == 1:
        return Status.UNIT, free[0]
    return Status.UNRESOLVED, None


class Verdict(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"
