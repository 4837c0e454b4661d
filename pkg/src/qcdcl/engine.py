"""QCDCL search: propagation with reduction-aware unit detection, conflict
and solution detection (including the generalized axioms), learning,
backtracking and restarts.
"""
from __future__ import annotations

import collections
import logging
import random
import time
from dataclasses import asdict, dataclass, field
from typing import IO, Callable

from .depsched import DepKind, DependencyRelation, make_deps
from .formula import PCNF, Assignment, Kind, Verdict, var
from .genaxioms import DEFAULT_BUDGET, ExistentialAbstractionChecker, Outcome, TrivialTruthChecker
from .learning import ResolutionError, asserting, reduce_lits, resolve_lits
from .proof import StepKind, TraceWriter
from .qbce import QbceState, qbce_fixpoint
from .satcore import luby

log = logging.getLogger(__name__)

DECISION = -1


class EngineError(RuntimeError):
    pass


class AnalysisError(EngineError):
    pass


@dataclass
class SolverConfig:
    use_gen_clause_axiom: bool = True
    use_gen_cube_axiom: bool = True
    use_qbce: bool = True
    dep_scheme: DepKind | str | None = None
    ldq: bool = False
    trace_output: IO[str] | None = None
    max_conflicts: int | None = None
    max_decisions: int | None = None
    max_seconds: float | None = None
    rng_seed: int = 0
    # axiom scheduling
    axiom_cadence: int = 64
    axiom_cadence_floor: int = 16
    axiom_cadence_cap: int = 4096
    axiom_window: int = 32
    axiom_disable: bool = True
    sat_budget: int = DEFAULT_BUDGET
    # search
    restart_base: int = 100
    reduce_interval: int = 4000
    decay: float = 0.95
    analysis_budget: int = 200_000
    # differential self-checks (slow; for tests)
    audit: bool = False
    on_abstraction: Callable | None = None

    def __post_init__(self) -> None:
        if self.dep_scheme is None:
            self.dep_scheme = DepKind.TRIVIAL if self.ldq else DepKind.STANDARD
        self.dep_scheme = DepKind(self.dep_scheme)
        if self.ldq and self.dep_scheme is not DepKind.TRIVIAL:
            raise ValueError("long-distance resolution requires trivial dependencies")


VARIANTS: dict[str, dict] = {
    "DQ": {},
    "DQ-ncl": {"use_gen_clause_axiom": False},
    "DQ-ncu": {"use_gen_cube_axiom": False, "use_qbce": False},
    "DQ-n": {"use_gen_clause_axiom": False, "use_gen_cube_axiom": False, "use_qbce": False},
    "DQ-nq": {"use_qbce": False},
    "DQ-lin": {"dep_scheme": "trivial"},
    "DQ-linldq": {"dep_scheme": "trivial", "ldq": True},
}


def variant(name: str, **overrides) -> SolverConfig:
    return SolverConfig(**{**VARIANTS[name], **overrides})


@dataclass
class Statistics:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    solutions: int = 0
    backtracks: int = 0
    restarts: int = 0
    learned_clauses: int = 0
    learned_cubes: int = 0
    deleted: int = 0
    cu_init: int = 0
    gen_cl_attempts: int = 0
    gen_cl_hits: int = 0
    gen_cu_attempts: int = 0
    gen_cu_hits: int = 0
    qbce_hits: int = 0
    qbce_rechecks: int = 0
    sat_conflicts: int = 0
    tautology_skips: int = 0
    analysis_nodes: int = 0

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


class AxiomPolicy:
    """Cadence and disabling rule for one generalized axiom.

    An attempt is admitted every ``cadence``-th detection call (the first
    call is always admitted); the cadence halves on success and doubles on
    failure within [floor, cap]. Once a full window of attempts has fewer
    than window/32 successes the axiom is switched off for good.
    """

    def __init__(self, enabled: bool = True, cadence: int = 64, floor: int = 16, cap: int = 4096,
                 window: int = 32, disable: bool = True) -> None:
        self.enabled = enabled
        self.cadence = cadence
        self.floor = floor
        self.cap = cap
        self.window: collections.deque[bool] = collections.deque(maxlen=window)
        self.disable = disable
        self.countdown = 0
        self.attempts = 0
        self.successes = 0

    def should_apply(self) -> bool:
        if not self.enabled:
            return False
        if self.countdown > 0:
            self.countdown -= 1
            return False
        self.attempts += 1
        return True

    def record(self, success: bool) -> None:
        self.window.append(success)
        if success:
            self.successes += 1
            self.cadence = max(self.floor, self.cadence // 2)
        else:
            self.cadence = min(self.cap, self.cadence * 2)
        self.countdown = self.cadence - 1
        w = self.window
        if self.disable and len(w) == w.maxlen and sum(w) * 32 < len(w):
            self.enabled = False


@dataclass
class AxiomPolicyState:
    clause: AxiomPolicy = field(default_factory=AxiomPolicy)
    cube: AxiomPolicy = field(default_factory=AxiomPolicy)


def should_apply_gen_axiom(policy: AxiomPolicyState | AxiomPolicy, which: Kind | str = Kind.CLAUSE) -> bool:
    if isinstance(policy, AxiomPolicyState):
        policy = policy.cube if Kind(which) is Kind.CUBE else policy.clause
    return policy.should_apply()


@dataclass
class SolveResult:
    verdict: Verdict
    stats: Statistics
    reason: str = ""

    def __iter__(self):
        return iter((self.verdict, self.stats))


class Solver:
    def __init__(self, psi: PCNF, cfg: SolverConfig | None = None) -> None:
        self.psi = psi
        self.cfg = cfg = cfg or SolverConfig()
        self.prefix = pre = psi.prefix
        n = self.n = psi.num_vars
        self.stats = Statistics()
        self.deps: DependencyRelation = make_deps(psi, cfg.dep_scheme)
        self.trivial = self.deps.kind is DepKind.TRIVIAL
        self.qlevel = [0] * (n + 1)
        self.univ = [False] * (n + 1)
        for v in pre.variables():
            self.qlevel[v] = pre.level(v)
            self.univ[v] = pre.is_universal(v)
        if self.trivial:
            ql = self.qlevel
            self.dep = lambda x, y: ql[x] < ql[y]
        else:
            self.dep = self.deps.depends
        # assignment
        self.val = [0] * (2 * n + 1)
        self.level = [0] * (n + 1)
        self.reason = [DECISION] * (n + 1)
        self.tpos = [0] * (n + 1)
        self.trail: list[int] = []
        self.lim: list[int] = []
        self.qhead = 0
        self.phase = [False] * (n + 1)
        rng = random.Random(cfg.rng_seed)
        self.act = [rng.random() * 1e-6 if cfg.rng_seed else 0.0 for _ in range(n + 1)]
        self.var_inc = 1.0
        # constraint database
        self.c_lits: list[list[int]] = []
        self.c_full: list[frozenset[int]] = []
        self.c_merged: list[frozenset[int]] = []
        self.c_cube: list[bool] = []
        self.c_alive: list[bool] = []
        self.c_act: list[float] = []
        self.c_sid: list[int] = []
        self.cla_inc = 1.0
        self.learned_ids: list[int] = []
        self.cocc: list[list[int]] = [[] for _ in range(2 * n + 1)]
        self.qocc: list[list[int]] = [[] for _ in range(2 * n + 1)]
        self.pending: list[int] = []
        # input clause satisfaction
        self.n_input = len(psi.clauses)
        self.oocc: list[list[int]] = [[] for _ in range(2 * n + 1)]
        for i, c in enumerate(psi.clauses):
            for l in c.lits:
                self.oocc[l].append(i)
        self.osat = [0] * self.n_input
        self.n_osat = 0
        active = {var(l) for c in psi.clauses for l in c.lits}
        self.active = [False] * (n + 1)
        for v in active:
            self.active[v] = True
        self.block_vars = [[v for v in b.vars if self.active[v]] for b in pre.blocks]
        self.free_at = [len(vs) for vs in self.block_vars]
        # components
        self.qbce = QbceState(psi) if cfg.use_qbce else None
        self.tt = TrivialTruthChecker(psi) if cfg.use_gen_cube_axiom else None
        self.ex: ExistentialAbstractionChecker | None = None
        self.ex_loaded = 0
        knobs = (cfg.axiom_cadence, cfg.axiom_cadence_floor, cfg.axiom_cadence_cap,
                 cfg.axiom_window, cfg.axiom_disable)
        self.policy = AxiomPolicyState(AxiomPolicy(cfg.use_gen_clause_axiom, *knobs),
                                       AxiomPolicy(cfg.use_gen_cube_axiom, *knobs))
        self.pol_cl, self.pol_cu = self.policy.clause, self.policy.cube
        self.tw = TraceWriter(cfg.trace_output, n, self.deps.kind, cfg.ldq) if cfg.trace_output else None
        self.verdict: Verdict | None = None
        self.events = 0

    # ------------------------------------------------------------------
    # constraint database
    def _add_constraint(self, cube: bool, lits: frozenset[int], merged: frozenset[int],
                        sid: int, learned: bool) -> int:
        cid = len(self.c_lits)
        plain = sorted((l for l in lits if var(l) not in merged), key=abs)
        self.c_lits.append(plain)
        self.c_full.append(lits)
        self.c_merged.append(merged)
        self.c_cube.append(cube)
        self.c_alive.append(True)
        self.c_act.append(0.0)
        self.c_sid.append(sid)
        occ = self.qocc if cube else self.cocc
        for l in plain:
            occ[l].append(cid)
        if learned:
            self.learned_ids.append(cid)
            if cube:
                self.stats.learned_cubes += 1
            else:
                self.stats.learned_clauses += 1
        return cid

    def _load_input(self) -> bool:
        tw = self.tw
        for c in self.psi.clauses:
            lits = frozenset(c.lits)
            sid = tw.add(StepKind.CL_AXIOM, c.lits) if tw else 0
            red, _ = self._reduce(False, lits, frozenset())
            if red != lits and tw:
                sid = tw.add(StepKind.REDUCE, self._sorted(red), (sid,))
            cid = self._add_constraint(False, red, frozenset(), sid, False)
            if not red:
                self._finish(Verdict.UNSAT)
                return False
            self.pending.append(cid)
        return True

    def _sorted(self, lits) -> list[int]:
        return list(self.prefix.sort(lits))

    # ------------------------------------------------------------------
    # assignment
    def _assign(self, l: int, reason: int) -> None:
        v = l if l > 0 else -l
        val = self.val
        val[l] = 1
        val[-l] = -1
        self.level[v] = len(self.lim)
        self.reason[v] = reason
        self.tpos[v] = len(self.trail)
        self.trail.append(l)
        if self.active[v]:
            self.free_at[self.qlevel[v] - 1] -= 1
        osat = self.osat
        for i in self.oocc[l]:
            osat[i] += 1
            if osat[i] == 1:
                self.n_osat += 1
        if reason != DECISION:
            self.stats.propagations += 1
        if self.qbce is not None:
            dropped = self.qbce.assign(l)
            if dropped:
                self.pending.extend(dropped)
            if self.cfg.audit:
                self._audit_qbce()

    def _backtrack(self, b: int) -> None:
        if len(self.lim) <= b:
            return
        start = self.lim[b]
        val, osat, oocc, qbce = self.val, self.osat, self.oocc, self.qbce
        trail = self.trail
        for i in range(len(trail) - 1, start - 1, -1):
            l = trail[i]
            v = l if l > 0 else -l
            val[l] = 0
            val[-l] = 0
            self.phase[v] = l > 0
            self.reason[v] = DECISION
            if self.active[v]:
                self.free_at[self.qlevel[v] - 1] += 1
            for j in oocc[l]:
                osat[j] -= 1
                if osat[j] == 0:
                    self.n_osat -= 1
            if qbce is not None:
                back = qbce.unassign(l)
                if back:
                    self.pending.extend(back)
                if self.cfg.audit:
                    del trail[i:]
                    self._audit_qbce()
        del trail[start:]
        del self.lim[b:]
        self.qhead = start

    def _audit_qbce(self) -> None:
        self.events += 1
        want = qbce_fixpoint(self.psi, Assignment(self.trail))
        got = self.qbce.blocked_set()
        if want != got:
            raise EngineError(f"QBCE divergence after {self.events} events: {sorted(got ^ want)}")

    # ------------------------------------------------------------------
    # unit / empty detection
    def _status(self, cid: int) -> tuple[int, int]:
        """(0, 0) nothing; (1, lit) unit with the literal to assign; (2, 0) empty."""
        val, univ, dep = self.val, self.univ, self.dep
        if self.c_cube[cid]:
            u_lit = 0
            free_e = []
            for l in self.c_lits[cid]:
                x = val[l]
                if x == -1:
                    return 0, 0
                if x == 0:
                    v = l if l > 0 else -l
                    if univ[v]:
                        if u_lit:
                            return 0, 0
                        u_lit = l
                    else:
                        free_e.append(v)
            if self.c_merged[cid]:
                free_e.extend(self.c_merged[cid])
            if not u_lit:
                return 2, 0
            uv = u_lit if u_lit > 0 else -u_lit
            for e in free_e:
                if dep(e, uv):
                    return 0, 0
            return 1, -u_lit
        e_lit = 0
        free_u = []
        for l in self.c_lits[cid]:
            x = val[l]
            if x == 1:
                return 0, 0
            if x == 0:
                v = l if l > 0 else -l
                if univ[v]:
                    free_u.append(v)
                else:
                    if e_lit:
                        return 0, 0
                    e_lit = l
        if self.c_merged[cid]:
            free_u.extend(self.c_merged[cid])
        if not e_lit:
            return 2, 0
        ev = e_lit if e_lit > 0 else -e_lit
        for u in free_u:
            if dep(u, ev):
                return 0, 0
        return 1, e_lit

    def _visible(self, cid: int) -> bool:
        if not self.c_alive[cid]:
            return False
        return not (cid < self.n_input and self.qbce is not None and self.qbce.blk[cid])

    def _scan(self, cid: int) -> tuple[str, int] | None:
        code, lit = self._status(cid)
        if code == 1:
            if self.val[lit] == 0:
                self._assign(lit, cid)
        elif code == 2:
            return ("cube" if self.c_cube[cid] else "clause"), cid
        return None

    def _propagate(self) -> tuple[str, int] | None:
        cocc, qocc, trail = self.cocc, self.qocc, self.trail
        while True:
            while self.pending:
                cid = self.pending.pop()
                if self._visible(cid):
                    hit = self._scan(cid)
                    if hit:
                        return hit
            if self.qhead >= len(trail):
                return None
            t = trail[self.qhead]
            self.qhead += 1
            qbce = self.qbce
            ninp = self.n_input
            for cid in cocc[-t]:
                if cid < ninp and qbce is not None and qbce.blk[cid]:
                    continue
                hit = self._scan(cid)
                if hit:
                    return hit
            for cid in qocc[t]:
                hit = self._scan(cid)
                if hit:
                    return hit

    # ------------------------------------------------------------------
    # reference check of the propagation fixpoint (slow path)
    def _reference_fixpoint_ok(self) -> bool:
        val = self.val
        for cid in range(len(self.c_lits)):
            if not self._visible(cid):
                continue
            cube = self.c_cube[cid]
            kind = Kind.CUBE if cube else Kind.CLAUSE
            merged = self.c_merged[cid]
            lits = []
            done = False
            for l in self.c_full[cid]:
                v = var(l)
                if v in merged:
                    lits.append(l)
                    continue
                x = val[l]
                if (x == 1 and not cube) or (x == -1 and cube):
                    done = True
                    break
                if x == 0:
                    lits.append(l)
            if done:
                continue
            red, _ = reduce_lits(kind, frozenset(lits), merged, self.deps)
            if len({var(l) for l in red}) <= 1:
                return False
        return True

    # ------------------------------------------------------------------
    # decisions
    def _decide(self) -> int:
        act, val = self.act, self.val
        best = 0
        besta = -1.0
        if self.trivial:
            free = self.free_at
            nb = len(free)
            i = 0
            while i < nb and free[i] == 0:
                i += 1
            if i == nb:
                return 0
            levels = [i]
            j = i + 1
            while j < nb:
                if free[j]:
                    if (j - i) % 2:
                        break
                    levels.append(j)
                j += 1
            for lv in levels:
                for v in self.block_vars[lv]:
                    if val[v] == 0 and (act[v] > besta or (act[v] == besta and v < best)):
                        best, besta = v, act[v]
        else:
            preds = self.deps.predecessors
            for b in self.block_vars:
                for v in b:
                    if val[v] != 0 or act[v] < besta or (act[v] == besta and v > best):
                        continue
                    if all(val[x] != 0 or not self.active[x] for x in preds(v)):
                        best, besta = v, act[v]
        if best and self.cfg.audit:
            for x in self.deps.predecessors(best):
                if self.active[x] and val[x] == 0:
                    raise EngineError(f"decision {best} before its predecessor {x}")
        return best

    # ------------------------------------------------------------------
    # learning
    def _reduce(self, cube: bool, lits: frozenset[int], merged: frozenset[int]):
        univ = self.univ
        # clauses drop universals, cubes drop existentials
        opp = [l if l > 0 else -l for l in lits if univ[l if l > 0 else -l] == cube]
        if self.trivial:
            ql = self.qlevel
            top = max((ql[w] for w in opp), default=0)
            rm = [l for l in lits if univ[l if l > 0 else -l] != cube and ql[l if l > 0 else -l] > top]
        else:
            dep = self.dep
            rm = [l for l in lits if univ[l if l > 0 else -l] != cube
                  and not any(dep(l if l > 0 else -l, w) for w in opp)]
        if not rm:
            return lits, merged
        out = lits.difference(rm)
        if merged:
            merged = frozenset(v for v in merged if v in out)
        return out, merged

    def _value(self, l: int) -> int:
        return self.val[l]

    def _lvl(self, v: int) -> int:
        return self.level[v]

    def _analyze(self, cube: bool, lits: frozenset[int], merged: frozenset[int], sid: int):
        """Derive an asserting (or empty) constraint from a falsified clause or
        satisfied cube. Pivots are tried in reverse trail order; when a choice
        leads to an illegal resolvent the next one is tried."""
        kind = Kind.CUBE if cube else Kind.CLAUSE
        univ, val, reason, tpos = self.univ, self.val, self.reason, self.tpos
        pre = self.prefix
        ldq = self.cfg.ldq
        good = 1 if cube else -1

        def candidates(L, M):
            cs = [l for l in L if univ[l if l > 0 else -l] == cube and val[l] == good
                  and reason[l if l > 0 else -l] != DECISION and (l if l > 0 else -l) not in M]
            cs.sort(key=lambda l: -tpos[l if l > 0 else -l])
            return cs

        def done(L, M):
            if not L:
                return True, 0, 0
            a = asserting(kind, L, M, self._value, self._lvl, self.deps)
            return a.ok, a.level, a.lit

        red, rm = self._reduce(cube, lits, merged)
        # frame: [lits, merged, candidates, next index, (pivot, reason cid, resolvent)]
        frames = [[red, rm, None, 0, (0, -1, lits)]]
        seen = {red}
        nodes = 0
        budget = self.cfg.analysis_budget
        while frames:
            fr = frames[-1]
            if fr[2] is None:
                ok, b, star = done(fr[0], fr[1])
                if ok:
                    return self._finish_analysis(cube, frames, sid, b, star)
                fr[2] = candidates(fr[0], fr[1])
            pushed = False
            while fr[3] < len(fr[2]):
                p = fr[2][fr[3]]
                fr[3] += 1
                pv = p if p > 0 else -p
                cid = reason[pv]
                nodes += 1
                if nodes > budget:
                    raise AnalysisError("analysis node budget exhausted")
                try:
                    res, resm = resolve_lits(kind, fr[0], fr[1], self.c_full[cid], self.c_merged[cid],
                                             pv, pre, ldq)
                except ResolutionError:
                    self.stats.tautology_skips += 1
                    continue
                r2, m2 = self._reduce(cube, res, resm)
                if r2 in seen:
                    continue
                seen.add(r2)
                frames.append([r2, m2, None, 0, (pv, cid, res)])
                pushed = True
                break
            if not pushed and frames[-1] is fr:
                frames.pop()
        raise AnalysisError("no asserting constraint derivable")

    def _finish_analysis(self, cube: bool, frames, sid: int, b: int, star: int):
        self.stats.analysis_nodes += len(frames)
        tw = self.tw
        bump = self._bump_var
        for fr in frames[1:]:
            cid = fr[4][1]
            self.c_act[cid] += self.cla_inc
            for l in self.c_full[cid]:
                bump(l if l > 0 else -l)
        final = frames[-1]
        for l in final[0]:
            bump(l if l > 0 else -l)
        if tw:
            start = frames[0][4][2]
            if frames[0][0] != start:
                sid = tw.add(StepKind.REDUCE, self._sorted(frames[0][0]), (sid,))
            for fr in frames[1:]:
                _, cid, res = fr[4]
                sid = tw.add(StepKind.RES, self._sorted(res), (sid, self.c_sid[cid]))
                if fr[0] != res:
                    sid = tw.add(StepKind.REDUCE, self._sorted(fr[0]), (sid,))
        return final[0], final[1], b, star, sid

    def _bump_var(self, v: int) -> None:
        act = self.act
        act[v] += self.var_inc
        if act[v] > 1e100:
            for i in range(len(act)):
                act[i] *= 1e-100
            self.var_inc *= 1e-100

    # ------------------------------------------------------------------
    # conflict / solution detection after the propagation fixpoint
    def _detect(self):
        trail = self.trail
        tw = self.tw
        if self.n_osat == self.n_input:
            self.stats.cu_init += 1
            sid = tw.add(StepKind.CU_AXIOM, self._sorted(trail), trail=trail) if tw else 0
            return True, frozenset(trail), sid
        if self.qbce is not None and self.qbce.all_satisfied_or_blocked():
            self.stats.qbce_hits += 1
            self.stats.gen_cu_hits += 1
            sid = tw.add(StepKind.GEN_CU_AXIOM, self._sorted(trail), trail=trail, check="qbce") if tw else 0
            return True, frozenset(trail), sid
        if self.tt is not None and self.pol_cu.should_apply():
            self.stats.gen_cu_attempts += 1
            r = self.tt.check(trail, self.cfg.sat_budget)
            self.stats.sat_conflicts += r.cost
            ok = r.outcome is Outcome.ESTABLISHED
            self.pol_cu.record(ok)
            if self.cfg.on_abstraction:
                self.cfg.on_abstraction("trivial-truth", list(trail), r)
            if ok:
                self.stats.gen_cu_hits += 1
                sid = tw.add(StepKind.GEN_CU_AXIOM, self._sorted(trail), trail=trail,
                             check="trivial-truth") if tw else 0
                return True, frozenset(trail), sid
        if self.cfg.use_gen_clause_axiom and self.pol_cl.should_apply():
            self.stats.gen_cl_attempts += 1
            self._load_abstraction_clauses()
            r = self.ex.check(trail, self.cfg.sat_budget)
            self.stats.sat_conflicts += r.cost
            ok = r.outcome is Outcome.ESTABLISHED
            self.pol_cl.record(ok)
            if self.cfg.on_abstraction:
                self.cfg.on_abstraction("full-existential", list(trail), r)
            if ok:
                self.stats.gen_cl_hits += 1
                neg = [-l for l in trail]
                sid = tw.add(StepKind.GEN_CL_AXIOM, self._sorted(neg), trail=trail,
                             check="full-existential") if tw else 0
                return False, frozenset(neg), sid
        return None

    def _load_abstraction_clauses(self) -> None:
        if self.ex is None:
            self.ex = ExistentialAbstractionChecker(self.n)
        ex = self.ex
        while self.ex_loaded < len(self.c_lits):
            cid = self.ex_loaded
            self.ex_loaded += 1
            if not self.c_cube[cid] and not self.c_merged[cid]:
                ex.add_clause(self.c_lits[cid])

    # ------------------------------------------------------------------
    def _finish(self, verdict: Verdict) -> None:
        self.verdict = verdict
        if self.tw:
            self.tw.finish(verdict)

    def _reduce_db(self) -> None:
        locked = {self.reason[var(l)] for l in self.trail}
        cands = [c for c in self.learned_ids if self.c_alive[c] and c not in locked]
        cands.sort(key=lambda c: (self.c_act[c], c))
        kill = set(cands[: len(cands) // 2])
        if not kill:
            return
        for c in kill:
            self.c_alive[c] = False
            occ = self.qocc if self.c_cube[c] else self.cocc
            for l in self.c_lits[c]:
                occ[l] = [x for x in occ[l] if x not in kill]
        self.learned_ids = [c for c in self.learned_ids if c not in kill]
        self.stats.deleted += len(kill)

    def solve(self) -> SolveResult:
        cfg = self.cfg
        st = self.stats
        t0 = time.monotonic()
        if not self._load_input():
            return SolveResult(self.verdict, st)
        restart_no = 1
        next_restart = luby(restart_no) * cfg.restart_base
        since_restart = 0
        next_reduce = cfg.reduce_interval
        learn_events = 0
        iters = 0
        while True:
            iters += 1
            if cfg.max_seconds is not None and iters % 64 == 0 and time.monotonic() - t0 > cfg.max_seconds:
                return SolveResult(Verdict.UNKNOWN, st, "time limit")
            hit = self._propagate()
            start = None
            if hit is not None:
                what, cid = hit
                start = (what == "cube", self.c_full[cid], self.c_merged[cid], self.c_sid[cid])
            else:
                if cfg.audit and not self._reference_fixpoint_ok():
                    raise EngineError("propagation stopped before the fixpoint")
                det = self._detect()
                if det is not None:
                    cube, lits, sid = det
                    start = (cube, lits, frozenset(), sid)
            if start is None:
                v = self._decide()
                if v == 0:
                    raise EngineError("no decision variable left without a verdict")
                st.decisions += 1
                if cfg.max_decisions is not None and st.decisions > cfg.max_decisions:
                    return SolveResult(Verdict.UNKNOWN, st, "decision limit")
                self.lim.append(len(self.trail))
                self._assign(v if self.phase[v] else -v, DECISION)
                continue
            cube, lits, merged, sid = start
            if cube:
                st.solutions += 1
            else:
                st.conflicts += 1
            learn_events += 1
            L, M, b, star, sid = self._analyze(cube, lits, merged, sid)
            if not L:
                self._finish(Verdict.SAT if cube else Verdict.UNSAT)
                return SolveResult(self.verdict, st)
            if cfg.max_conflicts is not None and learn_events >= cfg.max_conflicts:
                return SolveResult(Verdict.UNKNOWN, st, "conflict limit")
            self.var_inc /= cfg.decay
            self.cla_inc /= cfg.decay
            cid = self._add_constraint(cube, L, M, sid, True)
            self.c_act[cid] += self.cla_inc
            since_restart += 1
            st.backtracks += 1
            if since_restart >= next_restart:
                restart_no += 1
                next_restart = luby(restart_no) * cfg.restart_base
                since_restart = 0
                st.restarts += 1
                self._backtrack(0)
                self.pending.append(cid)
            else:
                self._backtrack(b)
                self._assign(-star if cube else star, cid)
            if learn_events >= next_reduce:
                next_reduce += cfg.reduce_interval
                self._reduce_db()


def solve(psi: PCNF, cfg: SolverConfig | None = None) -> SolveResult:
    return Solver(psi, cfg).solve()
