"""Q-resolution inference: reduction, (long-distance) resolution, axioms and
the asserting test used to stop conflict/solution analysis.

Constraints are handled internally as ``(lits, merged)`` pairs of frozensets;
a merged variable appears in ``lits`` in both polarities.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .depsched import DependencyRelation
from .formula import PCNF, Constraint, Kind, Prefix, var


class ResolutionError(ValueError):
    pass


class TautologyViolation(ResolutionError):
    pass


class PivotTypeError(ResolutionError):
    pass


class PivotPolarityError(ResolutionError):
    pass


class AxiomError(ValueError):
    pass


Lits = frozenset


def reduce_lits(kind: Kind, lits: frozenset[int], merged: frozenset[int],
                deps: DependencyRelation) -> tuple[frozenset[int], frozenset[int]]:
    """Remove every literal admitted by dependency-aware reduction."""
    pre = deps.prefix
    red_univ = kind is Kind.CLAUSE
    opp = [var(l) for l in lits if pre.is_universal(var(l)) is not red_univ]
    removed = []
    dep = deps.depends
    for l in lits:
        v = var(l)
        if pre.is_universal(v) is red_univ and not any(dep(v, w) for w in opp):
            removed.append(l)
    if not removed:
        return lits, merged
    out = lits.difference(removed)
    if merged:
        merged = frozenset(v for v in merged if v in out or -v in out)
    return out, merged


def reduce(c: Constraint, deps: DependencyRelation) -> Constraint:
    lits, merged = reduce_lits(c.kind, frozenset(c.lits), c.merged, deps)
    return Constraint.build(c.kind, lits, deps.prefix, merged)


def resolve_lits(kind: Kind, l1: frozenset[int], m1: frozenset[int], l2: frozenset[int],
                 m2: frozenset[int], pivot: int, prefix: Prefix,
                 ldq: bool = False) -> tuple[frozenset[int], frozenset[int]]:
    want_univ = kind is Kind.CUBE
    if prefix.is_universal(pivot) is not want_univ:
        raise PivotTypeError(f"pivot {pivot} has the wrong quantifier for a {kind.value}")
    if pivot in m1 or pivot in m2:
        raise PivotPolarityError(f"pivot {pivot} is merged")
    if not ((pivot in l1 and -pivot in l2) or (-pivot in l1 and pivot in l2)):
        raise PivotPolarityError(f"pivot {pivot} does not clash")
    res = (l1 | l2) - {pivot, -pivot}
    both = frozenset(var(l) for l in res if l > 0 and -l in res)
    if both:
        if not ldq:
            raise TautologyViolation(f"resolvent contains {sorted(both)} in both polarities")
        pl = prefix.level(pivot)
        shared = {var(l) for l in l1} & {var(l) for l in l2}
        for x in both:
            if prefix.is_universal(x) is want_univ:
                raise TautologyViolation(f"variable {x} cannot be merged on pivot {pivot}")
            # a variable merged earlier and absent from the other side is carried over
            if x in shared and prefix.level(x) <= pl:
                raise TautologyViolation(f"variable {x} cannot be merged on pivot {pivot}")
    return res, both


def resolve(c1: Constraint, c2: Constraint, pivot: int, prefix: Prefix,
            ldq: bool = False) -> Constraint:
    if c1.kind is not c2.kind:
        raise ResolutionError("cannot resolve a clause with a cube")
    pivot = var(pivot)
    lits, merged = resolve_lits(c1.kind, frozenset(c1.lits), c1.merged, frozenset(c2.lits),
                                c2.merged, pivot, prefix, ldq)
    return Constraint.build(c1.kind, lits, prefix, merged)


def initial_clause(c: Constraint, psi: PCNF):
    """Axiom step for a matrix clause."""
    from .proof import StepKind, TraceStep

    if c.kind is not Kind.CLAUSE or frozenset(c.lits) not in {frozenset(d.lits) for d in psi.clauses}:
        raise AxiomError(f"{c.lits} is not a clause of the matrix")
    return TraceStep(0, StepKind.CL_AXIOM, c.lits)


def initial_cube(a: Iterable[int], psi: PCNF) -> Constraint:
    """Cube of all assignment literals, valid when every clause is satisfied."""
    lits = list(a)
    s = set(lits)
    for c in psi.clauses:
        if not any(l in s for l in c.lits):
            raise AxiomError(f"clause {c.lits} not satisfied by the assignment")
    return Constraint.build(Kind.CUBE, lits, psi.prefix)


@dataclass
class Asserting:
    ok: bool
    level: int = 0
    lit: int = 0


def asserting(kind: Kind, lits: frozenset[int], merged: frozenset[int],
              value: Callable[[int], int], level: Callable[[int], int],
              deps: DependencyRelation) -> Asserting:
    """Check whether a clause (cube) becomes unit after backtracking.

    ``value(l)`` is 1/-1/0 for true/false/unassigned literals and
    ``level(v)`` the decision level of an assigned variable. For clauses
    the asserted literal is existential; for cubes it is universal.
    """
    pre = deps.prefix
    clause = kind is Kind.CLAUSE
    good = -1 if clause else 1     # value of a literal that keeps the constraint "live"
    prim_univ = not clause
    prim = [l for l in lits if var(l) not in merged and pre.is_universal(var(l)) is prim_univ]
    if not prim:
        return Asserting(False)
    best = -1
    star = 0
    count = 0
    for l in prim:
        if value(l) != good:
            return Asserting(False)
        d = level(var(l))
        if d > best:
            best, star, count = d, l, 1
        elif d == best:
            count += 1
    if count != 1 or best == 0:
        return Asserting(False)
    b = 0
    for l in prim:
        if l != star:
            b = max(b, level(var(l)))
    vs = var(star)
    late = []
    for l in lits:
        v = var(l)
        if pre.is_universal(v) is prim_univ:
            continue
        blocks = deps.depends(v, vs)
        if v in merged:
            if blocks:
                return Asserting(False)
            continue
        val = value(l)
        if val == 0:
            if blocks:
                return Asserting(False)
        elif val == good:
            if blocks:
                lv = level(v)
                if lv >= best:
                    return Asserting(False)
                b = max(b, lv)
        else:
            if blocks:
                return Asserting(False)
            late.append(level(v))
    if b >= best:
        return Asserting(False)
    if any(lv <= b for lv in late):
        return Asserting(False)
    return Asserting(True, b, star)


@dataclass
class LearnOutcome:
    learned: Constraint
    backtrack_level: int
    asserted: int = 0
    derivation: list = field(default_factory=list)
