"""Dynamic blocked clause elimination for QBF.

A clause C of psi[A] is blocked on an unassigned existential literal l if
every other clause D of the current view containing the complement of l
has a literal whose complement is in C without l, on a variable that is
unassigned and not right of l in the prefix. Blocked clauses are removed
from the view one at a time; the result is the same whatever order is used.

The ordering test always uses the prefix of the input formula, which is
never weaker than the prefix of psi[A] after merging blocks.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .formula import PCNF, Assignment, Constraint, Prefix, var


def is_blocked(c: Constraint, l: int, view: PCNF, prefix: Prefix | None = None,
               removed: Iterable[int] = ()) -> bool:
    """Blocking test of ``c`` on ``l`` against the clauses of ``view``.

    ``view`` is a formula under an assignment (its clauses hold only
    unassigned literals); ``removed`` are indices of view clauses already
    eliminated. The order test uses ``prefix`` when given.
    """
    pre = prefix or view.prefix
    if l not in c.lits:
        raise ValueError(f"literal {l} not in clause")
    if pre.is_universal(var(l)):
        raise ValueError("blocking literal must be existential")
    lvl = pre.level(var(l))
    witnesses = {-k for k in c.lits if k != l and pre.level(var(k)) <= lvl}
    gone = set(removed)
    for i, d in enumerate(view.clauses):
        if i in gone or -l not in d.lits:
            continue
        if witnesses.isdisjoint(d.lits):
            return False
    return True


def qbce_fixpoint(psi: PCNF, a: Assignment | Sequence[int] = ()) -> set[int]:
    """Indices of matrix clauses of ``psi`` eliminated by QBCE on ``psi[a]``.

    Clauses satisfied by ``a`` are not reported.
    """
    if not isinstance(a, Assignment):
        a = Assignment(a)
    pre = psi.prefix
    view: dict[int, frozenset[int]] = {}
    for i, c in enumerate(psi.clauses):
        if any(a.value(l) for l in c.lits):
            continue
        view[i] = frozenset(l for l in c.lits if a.value(l) is None)
    occ: dict[int, list[int]] = {}
    for i, lits in view.items():
        for l in lits:
            occ.setdefault(l, []).append(i)
    removed: set[int] = set()
    changed = True
    while changed:
        changed = False
        for i in sorted(view):
            if i in removed:
                continue
            lits = view[i]
            for l in sorted(lits):
                if pre.is_universal(var(l)):
                    continue
                lvl = pre.level(var(l))
                wit = {-k for k in lits if k != l and pre.level(var(k)) <= lvl}
                if all(j in removed or not wit.isdisjoint(view[j]) for j in occ.get(-l, ())):
                    removed.add(i)
                    changed = True
                    break
    return removed


class QbceState:
    """Incrementally maintained blocked set over the input matrix.

    Every blocked clause carries a stamp; its blocking condition holds in
    the view without the clauses blocked with a smaller stamp. Each trail
    event rechecks the clauses whose justification may have changed,
    dropping them (and the later clauses that relied on them) when it no
    longer holds, then tries to block candidate clauses until no more can be.
    """

    def __init__(self, psi: PCNF) -> None:
        pre = psi.prefix
        self.clauses: list[tuple[int, ...]] = [c.lits for c in psi.clauses]
        self.sets: list[frozenset[int]] = [frozenset(c) for c in self.clauses]
        n = psi.num_vars
        self.n = n
        self.lvl = [0] * (n + 1)
        self.univ = [False] * (n + 1)
        for v in pre.variables():
            self.lvl[v] = pre.level(v)
            self.univ[v] = pre.is_universal(v)
        self.occ: list[list[int]] = [[] for _ in range(2 * n + 1)]
        for i, c in enumerate(self.clauses):
            for l in c:
                self.occ[l].append(i)
        self.val = [0] * (2 * n + 1)
        self.nsat = [0] * len(self.clauses)
        self.blk = [0] * len(self.clauses)
        self.stamp = [0] * len(self.clauses)
        self.next_stamp = 1
        self.num_blocked = 0
        self.num_sat = 0
        self.rechecks = 0
        self._process([], range(len(self.clauses)))

    # -- queries ---------------------------------------------------------
    def blocked_set(self) -> set[int]:
        return {i for i, b in enumerate(self.blk) if b}

    def all_satisfied_or_blocked(self) -> bool:
        return self.num_sat + self.num_blocked == len(self.clauses)

    def is_blocked_id(self, i: int) -> bool:
        return self.blk[i] != 0

    # -- trail events ------------------------------------------------------
    def assign(self, t: int) -> list[int]:
        """Record literal ``t`` as true; return clauses that lost blocked status
        and are still unsatisfied."""
        val, nsat, blk, occ = self.val, self.nsat, self.blk, self.occ
        val[t] = 1
        val[-t] = -1
        cands: list[int] = []
        for i in occ[t]:
            nsat[i] += 1
            if nsat[i] == 1:
                self.num_sat += 1
                if blk[i]:
                    blk[i] = 0
                    self.num_blocked -= 1
                for m in self.clauses[i]:
                    if val[m] == 0:
                        cands.extend(occ[-m])
        rechecks = [i for i in occ[-t] if blk[i]]
        return self._process(rechecks, cands)

    def unassign(self, t: int) -> list[int]:
        val, nsat, blk, occ = self.val, self.nsat, self.blk, self.occ
        val[t] = 0
        val[-t] = 0
        rejoined = []
        for i in occ[t]:
            nsat[i] -= 1
            if nsat[i] == 0:
                self.num_sat -= 1
                rejoined.append(i)
        rechecks = []
        for i in rejoined:
            for m in self.clauses[i]:
                if val[m] == 0:
                    for e in occ[-m]:
                        if blk[e] == -m:
                            rechecks.append(e)
        cands = rejoined + occ[-t]
        dropped = self._process(rechecks, cands)
        return dropped + [i for i in rejoined if not blk[i]]

    # -- internals ---------------------------------------------------------
    def _justified(self, i: int, l: int, before: int | None) -> bool:
        """Blocking test for clause ``i`` on ``l``; with ``before`` only clauses
        blocked with a smaller stamp count as removed."""
        val, lvl, nsat, blk, stamp = self.val, self.lvl, self.nsat, self.blk, self.stamp
        ll = lvl[var(l)]
        wit = [-k for k in self.clauses[i] if k != l and val[k] == 0 and lvl[var(k)] <= ll]
        for d in self.occ[-l]:
            if nsat[d]:
                continue
            if blk[d] and (before is None or stamp[d] < before):
                continue
            ds = self.sets[d]
            for w in wit:
                if w in ds:
                    break
            else:
                return False
        return True

    def _process(self, rechecks: Iterable[int], cands: Iterable[int]) -> list[int]:
        blk, stamp, nsat, val, occ = self.blk, self.stamp, self.nsat, self.val, self.occ
        dropped: list[int] = []
        heap = [(stamp[i], i) for i in set(rechecks) if blk[i]]
        heapq.heapify(heap)
        seen_stamp: set[tuple[int, int]] = set()
        while heap:
            s, e = heapq.heappop(heap)
            if (s, e) in seen_stamp or stamp[e] != s or not blk[e]:
                continue
            seen_stamp.add((s, e))
            self.rechecks += 1
            l = blk[e]
            if val[l] == 0 and self._justified(e, l, s):
                continue
            blk[e] = 0
            self.num_blocked -= 1
            dropped.append(e)
            # later clauses blocked on the complement of a literal of e
            for m in self.clauses[e]:
                if val[m] == 0:
                    for e2 in occ[-m]:
                        if blk[e2] == -m and stamp[e2] > s:
                            heapq.heappush(heap, (stamp[e2], e2))
        work = sorted(set(cands).union(dropped))
        queued = set(work)
        k = 0
        while k < len(work):
            x = work[k]
            k += 1
            queued.discard(x)
            if blk[x] or nsat[x]:
                continue
            for l in self.clauses[x]:
                if val[l] != 0 or self.univ[var(l)]:
                    continue
                if self._justified(x, l, None):
                    blk[x] = l
                    stamp[x] = self.next_stamp
                    self.next_stamp += 1
                    self.num_blocked += 1
                    for m in self.clauses[x]:
                        if val[m] == 0:
                            for y in occ[-m]:
                                if y not in queued and not blk[y] and not nsat[y]:
                                    queued.add(y)
                                    work.append(y)
                    break
        return [i for i in dropped if not blk[i] and not nsat[i]]
