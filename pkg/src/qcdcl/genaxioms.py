"""Propositional abstraction checks behind the generalized axioms.

* trivial truth: drop every universal literal of psi[A]; if the remaining
  CNF is satisfiable, so is psi[A] (a constant existential strategy works).
* full-existential abstraction: read every variable as existential; if the
  resulting CNF is unsatisfiable, so is psi[A].

Each check reports ``Established`` only in its sound direction.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import PCNF, Assignment, Constraint, Kind, Prefix, var
from .satcore import SatSolver, SatStatus

DEFAULT_BUDGET = 1000


class Outcome(str, enum.Enum):
    ESTABLISHED = "established"
    NOT_ESTABLISHED = "not-established"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass
class AbstractionResult:
    outcome: Outcome
    witness: dict[int, bool] | None = None
    cost: int = 0

    @property
    def established(self) -> bool:
        return self.outcome is Outcome.ESTABLISHED


def _lits(a: Assignment | Sequence[int]) -> list[int]:
    return a.literals() if isinstance(a, Assignment) else list(a)


class TrivialTruthChecker:
    """Persistent solver over the existential variables of the matrix.

    Clause i is loaded as ``(s_i or E_i)`` with a fresh selector ``s_i`` and
    ``E_i`` its existential literals; a check assumes the existential trail
    literals and ``-s_i`` for every clause not satisfied by a true universal.
    """

    def __init__(self, psi: PCNF) -> None:
        pre = psi.prefix
        self.n = psi.num_vars
        self.univ = [False] * (self.n + 1)
        for v in pre.variables():
            self.univ[v] = pre.is_universal(v)
        self.clauses = [c.lits for c in psi.clauses]
        self.solver = SatSolver(self.n + len(self.clauses))
        for i, c in enumerate(self.clauses):
            sel = self.n + 1 + i
            self.solver.add_clause([sel] + [l for l in c if not self.univ[var(l)]])

    def check(self, trail: Iterable[int], budget: int = DEFAULT_BUDGET) -> AbstractionResult:
        if budget <= 0:
            return AbstractionResult(Outcome.BUDGET_EXHAUSTED)
        trail = list(trail)
        true_univ = {l for l in trail if self.univ[var(l)]}
        assumptions = [l for l in trail if not self.univ[var(l)]]
        for i, c in enumerate(self.clauses):
            if true_univ.isdisjoint(c):
                assumptions.append(-(self.n + 1 + i))
        r = self.solver.solve(assumptions, budget)
        if r.status is SatStatus.SAT:
            model = {v: b for v, b in r.model.items() if v <= self.n}
            return AbstractionResult(Outcome.ESTABLISHED, model, r.conflicts)
        if r.status is SatStatus.UNSAT:
            return AbstractionResult(Outcome.NOT_ESTABLISHED, None, r.conflicts)
        return AbstractionResult(Outcome.BUDGET_EXHAUSTED, None, r.conflicts)


class ExistentialAbstractionChecker:
    """Persistent solver reading every variable as existential.

    Clauses (input and learned) are loaded as they become available; clauses
    with merged literals are skipped. A check assumes the whole trail.
    """

    def __init__(self, num_vars: int, clauses: Iterable[Sequence[int]] = ()) -> None:
        self.solver = SatSolver(num_vars)
        self.loaded = 0
        for c in clauses:
            self.add_clause(c)

    def add_clause(self, lits: Sequence[int]) -> None:
        s = set(lits)
        if any(-l in s for l in s):
            return
        self.solver.add_clause(lits)
        self.loaded += 1

    def check(self, trail: Iterable[int], budget: int = DEFAULT_BUDGET) -> AbstractionResult:
        if budget <= 0:
            return AbstractionResult(Outcome.BUDGET_EXHAUSTED)
        r = self.solver.solve(list(trail), budget)
        if r.status is SatStatus.UNSAT:
            return AbstractionResult(Outcome.ESTABLISHED, None, r.conflicts)
        if r.status is SatStatus.SAT:
            return AbstractionResult(Outcome.NOT_ESTABLISHED, r.model, r.conflicts)
        return AbstractionResult(Outcome.BUDGET_EXHAUSTED, None, r.conflicts)


def check_sat_trivial_truth(psi: PCNF, a: Assignment | Sequence[int] = (),
                            budget: int = DEFAULT_BUDGET) -> AbstractionResult:
    return TrivialTruthChecker(psi).check(_lits(a), budget)


def check_unsat_existential_abstraction(psi: PCNF, a: Assignment | Sequence[int] = (),
                                        budget: int = DEFAULT_BUDGET,
                                        learned: Iterable[Sequence[int]] = ()) -> AbstractionResult:
    chk = ExistentialAbstractionChecker(psi.num_vars, (c.lits for c in psi.clauses))
    for c in learned:
        chk.add_clause(c)
    return chk.check(_lits(a), budget)


def derive_generalized_constraint(trail: Iterable[int], which: Kind | str,
                                  prefix: Prefix) -> Constraint:
    """Clause of negated trail literals or cube of trail literals."""
    which = Kind(which)
    lits = list(trail)
    if len({var(l) for l in lits}) != len(lits):
        raise ValueError("trail assigns a variable twice")
    if which is Kind.CLAUSE:
        return Constraint.build(Kind.CLAUSE, (-l for l in lits), prefix)
    return Constraint.build(Kind.CUBE, lits, prefix)
