"""Resolution traces: emission, parsing and standalone checking.

Format, one step per line::

    p qrp-x <max-var>
    c dep std|trivial
    c ldq                         (only when long-distance steps may occur)
    c k <id> <check-kind>         (check kind of a generalized axiom step)
    <id> <lit>* 0 <antecedent>* 0 [<tag> <trail-lit>* 0]
    r sat|unsat

Axiom steps have no antecedents. Tags: ``g`` generalized clause axiom,
``s`` generalized cube axiom, ``a`` cube axiom; an axiom without a tag is a
clause axiom. Resolution steps have two antecedents, reduction steps one;
whether a derived step is a clause or a cube follows from its antecedents.
Merged literals are written in both polarities.
"""
from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from . import oracle
from .depsched import DepKind, make_deps, trivial_deps
from .formula import PCNF, Assignment, Kind, Verdict, var
from .learning import ResolutionError, resolve_lits


class StepKind(str, enum.Enum):
    CL_AXIOM = "ClAxiom"
    CU_AXIOM = "CuAxiom"
    GEN_CL_AXIOM = "GenClAxiom"
    GEN_CU_AXIOM = "GenCuAxiom"
    RES = "Res"
    REDUCE = "Reduce"


TAGS = {StepKind.GEN_CL_AXIOM: "g", StepKind.GEN_CU_AXIOM: "s", StepKind.CU_AXIOM: "a"}
_FROM_TAG = {v: k for k, v in TAGS.items()}


@dataclass(frozen=True)
class TraceStep:
    id: int
    kind: StepKind
    lits: tuple[int, ...]
    antecedents: tuple[int, ...] = ()
    trail: tuple[int, ...] | None = None
    check: str | None = None

    def line(self) -> str:
        parts = [str(self.id), *map(str, self.lits), "0", *map(str, self.antecedents), "0"]
        tag = TAGS.get(self.kind)
        if tag is not None:
            parts += [tag, *map(str, self.trail or ()), "0"]
        return " ".join(parts) + "\n"


@dataclass
class Trace:
    max_var: int = 0
    dep: DepKind = DepKind.TRIVIAL
    ldq: bool = False
    steps: list[TraceStep] = field(default_factory=list)
    result: Verdict | None = None


class TraceFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def emit(sink: IO[str], step: TraceStep) -> None:
    if step.check is not None:
        sink.write(f"c k {step.id} {step.check}\n")
    sink.write(step.line())


class TraceWriter:
    """Assigns step ids and writes lines to a text sink as steps are added."""

    def __init__(self, sink: IO[str], max_var: int, dep: DepKind, ldq: bool = False) -> None:
        self.sink = sink
        self.next_id = 1
        sink.write(f"p qrp-x {max_var}\n")
        sink.write(f"c dep {DepKind(dep).value}\n")
        if ldq:
            sink.write("c ldq\n")

    def add(self, kind: StepKind, lits: Iterable[int], antecedents: Sequence[int] = (),
            trail: Sequence[int] | None = None, check: str | None = None) -> int:
        sid = self.next_id
        self.next_id += 1
        emit(self.sink, TraceStep(sid, kind, tuple(lits), tuple(antecedents),
                                  None if trail is None else tuple(trail), check))
        return sid

    def finish(self, verdict: Verdict) -> None:
        self.sink.write("r sat\n" if verdict is Verdict.SAT else "r unsat\n")


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise TraceFormatError("malformed integer", lineno) from None


def parse_trace(text: str | bytes) -> Trace:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    tr = Trace()
    checks: dict[int, str] = {}
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok:
            continue
        if tok[0] == "p":
            if len(tok) != 3 or tok[1] != "qrp-x":
                raise TraceFormatError("expected 'p qrp-x <max-var>'", lineno)
            tr.max_var = _ints(tok[2:], lineno)[0]
            seen_header = True
            continue
        if tok[0] == "c":
            if len(tok) >= 3 and tok[1] == "dep":
                tr.dep = DepKind(tok[2])
            elif len(tok) == 2 and tok[1] == "ldq":
                tr.ldq = True
            elif len(tok) == 4 and tok[1] == "k":
                checks[_ints(tok[2:3], lineno)[0]] = tok[3]
            continue
        if tok[0] == "r":
            if len(tok) != 2 or tok[1] not in ("sat", "unsat"):
                raise TraceFormatError("expected 'r sat' or 'r unsat'", lineno)
            tr.result = Verdict.SAT if tok[1] == "sat" else Verdict.UNSAT
            continue
        if not seen_header:
            raise TraceFormatError("step before header", lineno)
        tag = None
        tail: list[int] | None = None
        # split off an optional "<tag> <lit>* 0" suffix
        for i, t in enumerate(tok):
            if t in _FROM_TAG:
                tag = t
                tail = _ints(tok[i + 1:], lineno)
                tok = tok[:i]
                break
        nums = _ints(tok, lineno)
        if len(nums) < 3:
            raise TraceFormatError("truncated step", lineno)
        sid = nums[0]
        try:
            z1 = nums.index(0, 1)
        except ValueError:
            raise TraceFormatError("missing 0 after literals", lineno) from None
        lits = tuple(nums[1:z1])
        rest = nums[z1 + 1:]
        if not rest or rest[-1] != 0 or 0 in rest[:-1]:
            raise TraceFormatError("malformed antecedent list", lineno)
        ants = tuple(rest[:-1])
        trail = None
        if tag is not None:
            if not tail or tail[-1] != 0 or 0 in tail[:-1]:
                raise TraceFormatError("malformed trail list", lineno)
            trail = tuple(tail[:-1])
            kind = _FROM_TAG[tag]
        elif not ants:
            kind = StepKind.CL_AXIOM
        elif len(ants) == 1:
            kind = StepKind.REDUCE
        elif len(ants) == 2:
            kind = StepKind.RES
        else:
            raise TraceFormatError("too many antecedents", lineno)
        tr.steps.append(TraceStep(sid, kind, lits, ants, trail, checks.get(sid)))
    if not seen_header:
        raise TraceFormatError("missing header")
    return tr


def write_trace(tr: Trace) -> str:
    buf = io.StringIO()
    w = TraceWriter(buf, tr.max_var, tr.dep, tr.ldq)
    for s in tr.steps:
        emit(buf, s)
    if tr.result is not None:
        w.finish(tr.result)
    return buf.getvalue()


@dataclass
class CheckResult:
    valid: bool
    verdict: Verdict | None = None
    step: int | None = None
    rule: str | None = None
    reason: str = ""
    dep_red_steps: list[int] = field(default_factory=list)
    gen_rechecked: int = 0

    def __bool__(self) -> bool:
        return self.valid


def check_proof(psi: PCNF, trace: Trace | str | bytes,
                recheck_gen_axioms_with_oracle: bool = False) -> CheckResult:
    tr = trace if isinstance(trace, Trace) else parse_trace(trace)
    pre = psi.prefix
    deps = make_deps(psi, tr.dep)
    triv = trivial_deps(psi)
    matrix = {frozenset(c.lits) for c in psi.clauses}
    known: dict[int, tuple[Kind, frozenset[int], frozenset[int]]] = {}
    dep_red: list[int] = []
    rechecked = 0
    last = 0

    def bad(step: TraceStep, reason: str) -> CheckResult:
        return CheckResult(False, None, step.id, step.kind.value, reason, dep_red, rechecked)

    for st in tr.steps:
        if st.id <= last:
            return bad(st, "step ids must be strictly increasing")
        last = st.id
        lits = frozenset(st.lits)
        if len(lits) != len(st.lits):
            return bad(st, "duplicate literal")
        for l in lits:
            if l == 0 or var(l) not in pre:
                return bad(st, f"literal {l} not over the prefix")
        for a in st.antecedents:
            if a not in known:
                return bad(st, f"dangling antecedent {a}")
        merged = frozenset(var(l) for l in lits if l > 0 and -l in lits)
        k = st.kind
        if k in (StepKind.CL_AXIOM, StepKind.CU_AXIOM, StepKind.GEN_CL_AXIOM, StepKind.GEN_CU_AXIOM):
            if st.antecedents:
                return bad(st, "axioms have no antecedents")
            if merged:
                return bad(st, "axiom contains complementary literals")
        if k is StepKind.CL_AXIOM:
            if lits not in matrix:
                return bad(st, "clause not in the matrix")
            known[st.id] = (Kind.CLAUSE, lits, merged)
        elif k in (StepKind.CU_AXIOM, StepKind.GEN_CU_AXIOM, StepKind.GEN_CL_AXIOM):
            trail = st.trail or ()
            ts = set(trail)
            if len(ts) != len(trail) or any(-l in ts for l in ts) or any(var(l) not in pre for l in ts):
                return bad(st, "recorded assignment is inconsistent")
            if k is StepKind.GEN_CL_AXIOM:
                if lits != frozenset(-l for l in trail):
                    return bad(st, "clause is not the negated assignment")
                kind = Kind.CLAUSE
            else:
                if lits != frozenset(trail):
                    return bad(st, "cube is not the assignment")
                kind = Kind.CUBE
            if k is StepKind.CU_AXIOM:
                for c in psi.clauses:
                    if not any(l in ts for l in c.lits):
                        return bad(st, f"clause {list(c.lits)} not satisfied by the assignment")
            elif recheck_gen_axioms_with_oracle:
                got = oracle.eval_under(psi, Assignment(trail))
                want = Verdict.UNSAT if k is StepKind.GEN_CL_AXIOM else Verdict.SAT
                rechecked += 1
                if got is not want:
                    return bad(st, f"oracle says {got.value} under the recorded assignment")
            known[st.id] = (kind, lits, merged)
        elif k is StepKind.RES:
            (k1, l1, m1), (k2, l2, m2) = (known[a] for a in st.antecedents)
            if k1 is not k2:
                return bad(st, "antecedents of different kinds")
            clash = [v for v in {var(l) for l in l1}
                     if v not in m1 and v not in m2 and ((v in l1 and -v in l2) or (-v in l1 and v in l2))]
            want_univ = k1 is Kind.CUBE
            pivots = [v for v in clash if pre.is_universal(v) is want_univ]
            if len(pivots) != 1:
                return bad(st, f"expected exactly one {'universal' if want_univ else 'existential'} pivot, found {len(pivots)}")
            try:
                res, rm = resolve_lits(k1, l1, m1, l2, m2, pivots[0], pre, tr.ldq)
            except ResolutionError as e:
                return bad(st, str(e))
            if res != lits:
                return bad(st, "resolvent does not match")
            known[st.id] = (k1, lits, rm)
        elif k is StepKind.REDUCE:
            kind, al, am = known[st.antecedents[0]]
            if not lits <= al:
                return bad(st, "reduction adds literals")
            gone = al - lits
            red_univ = kind is Kind.CLAUSE
            for l in gone:
                if pre.is_universal(var(l)) is not red_univ:
                    return bad(st, f"literal {l} has the wrong quantifier for reduction")
                if var(l) in am and -l not in gone:
                    return bad(st, f"merged variable {var(l)} only partly reduced")
            opp = [var(l) for l in al if pre.is_universal(var(l)) is not red_univ]
            needs_std = False
            for l in gone:
                v = var(l)
                if any(deps.depends(v, w) for w in opp):
                    return bad(st, f"literal {l} cannot be reduced")
                if any(triv.depends(v, w) for w in opp):
                    needs_std = True
            if needs_std:
                dep_red.append(st.id)
            known[st.id] = (kind, lits, frozenset(v for v in am if v in lits or -v in lits))
        else:
            return bad(st, "unknown step kind")
    if not tr.steps:
        return CheckResult(False, None, None, None, "empty trace")
    final = tr.steps[-1]
    kind, lits, _ = known[final.id]
    if lits:
        return CheckResult(False, None, final.id, final.kind.value,
                           "final step is not empty", dep_red, rechecked)
    verdict = Verdict.UNSAT if kind is Kind.CLAUSE else Verdict.SAT
    if tr.result is not None and tr.result is not verdict:
        return CheckResult(False, None, final.id, final.kind.value,
                           f"result line says {tr.result.value}", dep_red, rechecked)
    return CheckResult(True, verdict, None, None, "", dep_red, rechecked)
