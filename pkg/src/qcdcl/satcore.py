"""Small embedded CDCL SAT solver with a hard conflict budget.

Two watched literals, first-UIP learning, activity-based decisions with
phase saving and Luby restarts. Clauses may be added between calls to
``solve``; learned clauses are kept since the clause database only grows.
"""
from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class SatStatus(str, enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    BUDGET = "budget"


@dataclass
class SatResult:
    status: SatStatus
    model: dict[int, bool] = field(default_factory=dict)
    conflicts: int = 0


def luby(i: int) -> int:
    """The i-th element (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


def _enc(lit: int) -> int:
    return 2 * lit if lit > 0 else -2 * lit + 1


def _dec(p: int) -> int:
    return p >> 1 if not p & 1 else -(p >> 1)


class SatSolver:
    RESTART_BASE = 100
    DECAY = 0.95

    def __init__(self, num_vars: int = 0) -> None:
        self.n = 0
        self.ok = True
        self.clauses: list[list[int]] = []
        self.watches: list[list[list[int]]] = [[], []]
        self.val: list[int] = [0, 0]      # per encoded literal: 1 true, -1 false, 0 free
        self.level: list[int] = [0]
        self.reason: list[list[int] | None] = [None]
        self.act: list[float] = [0.0]
        self.phase: list[bool] = [False]
        self.trail: list[int] = []
        self.lim: list[int] = []
        self.qhead = 0
        self.var_inc = 1.0
        self.heap: list[tuple[float, int]] = []
        self.total_conflicts = 0
        self.ensure_vars(num_vars)

    # -- setup ---------------------------------------------------------
    def ensure_vars(self, n: int) -> None:
        while self.n < n:
            self.n += 1
            self.watches += [[], []]
            self.val += [0, 0]
            self.level.append(0)
            self.reason.append(None)
            self.act.append(0.0)
            self.phase.append(False)
            heapq.heappush(self.heap, (0.0, self.n))

    def add_clause(self, lits: Iterable[int]) -> bool:
        if not self.ok:
            return False
        assert not self.lim, "clauses are added at level 0"
        ps = sorted(set(lits), key=abs)
        if not ps:
            self.ok = False
            return False
        self.ensure_vars(max(abs(l) for l in ps))
        enc = []
        for l in ps:
            p = _enc(l)
            if self.val[p] == 1 or p ^ 1 in enc:
                return True
            if self.val[p] == 0:
                enc.append(p)
        if not enc:
            self.ok = False
            return False
        if len(enc) == 1:
            self._assign(enc[0], None)
            if self._propagate() is not None:
                self.ok = False
            return self.ok
        self._attach(enc)
        self.clauses.append(enc)
        return True

    def _attach(self, c: list[int]) -> None:
        self.watches[c[0] ^ 1].append(c)
        self.watches[c[1] ^ 1].append(c)

    # -- trail -----------------------------------------------------------
    def _assign(self, p: int, reason: list[int] | None) -> None:
        v = p >> 1
        self.val[p] = 1
        self.val[p ^ 1] = -1
        self.level[v] = len(self.lim)
        self.reason[v] = reason
        self.trail.append(p)

    def _cancel_until(self, lvl: int) -> None:
        if len(self.lim) <= lvl:
            return
        val, phase, act, heap, reason = self.val, self.phase, self.act, self.heap, self.reason
        start = self.lim[lvl]
        for p in self.trail[start:]:
            v = p >> 1
            val[p] = 0
            val[p ^ 1] = 0
            reason[v] = None
            phase[v] = not p & 1
            heapq.heappush(heap, (-act[v], v))
        del self.trail[start:]
        del self.lim[lvl:]
        self.qhead = start

    def _propagate(self) -> list[int] | None:
        val, watches, trail = self.val, self.watches, self.trail
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = p ^ 1
            ws = watches[p]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if val[first] == 1:
                    ws[j] = c
                    j += 1
                    continue
                for k in range(2, len(c)):
                    q = c[k]
                    if val[q] != -1:
                        c[1], c[k] = q, false_lit
                        watches[q ^ 1].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if val[first] == -1:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return c
                    self._assign(first, c)
            del ws[j:]
        return None

    # -- learning ------------------------------------------------------
    def _bump(self, v: int) -> None:
        act = self.act
        act[v] += self.var_inc
        if act[v] > 1e100:
            for i in range(1, self.n + 1):
                act[i] *= 1e-100
            self.var_inc *= 1e-100
            self.heap = [(-act[i], i) for i in range(1, self.n + 1) if self.val[2 * i] == 0]
            heapq.heapify(self.heap)
        elif self.val[2 * v] == 0:
            heapq.heappush(self.heap, (-act[v], v))

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        level, reason, trail = self.level, self.reason, self.trail
        cur = len(self.lim)
        seen = set()
        learnt = [0]
        counter = 0
        p = -1
        idx = len(trail) - 1
        c = confl
        while True:
            for q in (c if p == -1 else c[1:]):
                v = q >> 1
                if v not in seen and level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if level[v] >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while (trail[idx] >> 1) not in seen:
                idx -= 1
            p = trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            c = reason[p >> 1]
            seen.discard(p >> 1)
        learnt[0] = p ^ 1
        if len(learnt) == 1:
            return learnt, 0
        best = 1
        for k in range(2, len(learnt)):
            if level[learnt[k] >> 1] > level[learnt[best] >> 1]:
                best = k
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[learnt[1] >> 1]

    def _pick(self) -> int:
        heap, val, act = self.heap, self.val, self.act
        while heap:
            a, v = heapq.heappop(heap)
            if val[2 * v] == 0 and -a == act[v]:
                return v
        for v in range(1, self.n + 1):
            if val[2 * v] == 0:
                return v
        return 0

    # -- main loop -------------------------------------------------------
    def solve(self, assumptions: Sequence[int] = (), budget: int | None = None) -> SatResult:
        if not self.ok:
            return SatResult(SatStatus.UNSAT)
        if assumptions:
            self.ensure_vars(max(abs(l) for l in assumptions))
        assumps = [_enc(l) for l in assumptions]
        conflicts = 0
        restart_no = 1
        next_restart = luby(restart_no) * self.RESTART_BASE
        since_restart = 0
        try:
            while True:
                confl = self._propagate()
                if confl is not None:
                    conflicts += 1
                    since_restart += 1
                    self.total_conflicts += 1
                    if not self.lim:
                        self.ok = False
                        return SatResult(SatStatus.UNSAT, conflicts=conflicts)
                    learnt, bt = self._analyze(confl)
                    self._cancel_until(bt)
                    if len(learnt) == 1:
                        self._assign(learnt[0], None)
                    else:
                        self._attach(learnt)
                        self.clauses.append(learnt)
                        self._assign(learnt[0], learnt)
                    self.var_inc /= self.DECAY
                    if budget is not None and conflicts > budget:
                        return SatResult(SatStatus.BUDGET, conflicts=conflicts)
                    continue
                if since_restart >= next_restart:
                    restart_no += 1
                    next_restart = luby(restart_no) * self.RESTART_BASE
                    since_restart = 0
                    self._cancel_until(0)
                    continue
                nxt = 0
                while len(self.lim) < len(assumps):
                    p = assumps[len(self.lim)]
                    if self.val[p] == 1:
                        self.lim.append(len(self.trail))
                    elif self.val[p] == -1:
                        return SatResult(SatStatus.UNSAT, conflicts=conflicts)
                    else:
                        nxt = p
                        break
                if not nxt:
                    v = self._pick()
                    if v == 0:
                        model = {u: self.val[2 * u] == 1 for u in range(1, self.n + 1)}
                        return SatResult(SatStatus.SAT, model, conflicts)
                    nxt = 2 * v + (0 if self.phase[v] else 1)
                self.lim.append(len(self.trail))
                self._assign(nxt, None)
        finally:
            self._cancel_until(0)


def sat_solve(clauses: Iterable[Iterable[int]], assumptions: Sequence[int] = (),
              budget: int | None = None) -> SatResult:
    s = SatSolver()
    for c in clauses:
        if not s.add_clause(c):
            return SatResult(SatStatus.UNSAT)
    return s.solve(assumptions, budget)


def brute_force_sat(clauses: Sequence[Sequence[int]], num_vars: int) -> bool:
    for bits in range(1 << num_vars):
        if all(any(((bits >> (abs(l) - 1)) & 1) == (l > 0) for l in c) for c in clauses):
            return True
    return False
