"""Brute-force QBF evaluation by recursive expansion.

Used as ground truth in the differential tests; no attempt is made to be
fast beyond skipping variables that no longer occur.
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .formula import PCNF, Assignment, Quant, Verdict, apply_assignment, var

DEFAULT_BUDGET = 2_000_000


class OracleBudgetExceeded(RuntimeError):
    pass


class _Counter:
    __slots__ = ("left",)

    def __init__(self, n: int) -> None:
        self.left = n


def _expand(clauses: list[frozenset[int]], order: Sequence[tuple[int, bool]], start: int,
            budget: _Counter) -> bool:
    budget.left -= 1
    if budget.left < 0:
        raise OracleBudgetExceeded("oracle node budget exceeded")
    if not clauses:
        return True
    for c in clauses:
        if not c:
            return False
    present = set()
    for c in clauses:
        for l in c:
            present.add(l if l > 0 else -l)
    i = start
    while order[i][0] not in present:
        i += 1
    x, universal = order[i]
    for lit in (x, -x):
        sub = [c - {-lit} for c in clauses if lit not in c]
        val = _expand(sub, order, i + 1, budget)
        if universal and not val:
            return False
        if not universal and val:
            return True
    return universal


def eval(psi: PCNF, budget: int = DEFAULT_BUDGET) -> Verdict:  # noqa: A001
    order = [(v, b.quant is Quant.FORALL) for b in psi.prefix.blocks for v in b.vars]
    clauses = [frozenset(c.lits) for c in psi.clauses]
    ok = _expand(clauses, order, 0, _Counter(budget))
    return Verdict.SAT if ok else Verdict.UNSAT


def eval_under(psi: PCNF, a: Assignment | Sequence[int], budget: int = DEFAULT_BUDGET) -> Verdict:
    if not isinstance(a, Assignment):
        a = Assignment(a)
    return eval(apply_assignment(psi, a), budget)


def eval_game(psi: PCNF, max_vars: int = 12) -> Verdict:
    """Second, independent oracle: full game-tree minimax over every variable
    of the prefix, evaluating the matrix only at the leaves."""
    order = [(v, b.quant is Quant.FORALL) for b in psi.prefix.blocks for v in b.vars]
    if len(order) > max_vars:
        raise OracleBudgetExceeded(f"game oracle limited to {max_vars} variables")
    clauses = [c.lits for c in psi.clauses]
    n = len(order)
    pos = {v: i for i, (v, _) in enumerate(order)}

    def matrix_true(bits: Sequence[bool]) -> bool:
        return all(any(bits[pos[var(l)]] == (l > 0) for l in c) for c in clauses)

    # bottom-up over the full binary tree of assignments
    layer = [matrix_true(bits) for bits in itertools.product((False, True), repeat=n)]
    for i in range(n - 1, -1, -1):
        universal = order[i][1]
        nxt = []
        for j in range(0, len(layer), 2):
            lo, hi = layer[j], layer[j + 1]
            nxt.append((lo and hi) if universal else (lo or hi))
        layer = nxt
    return Verdict.SAT if layer[0] else Verdict.UNSAT
