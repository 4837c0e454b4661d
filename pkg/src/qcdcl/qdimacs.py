"""QDIMACS reader and writer."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .formula import PCNF, Constraint, Kind, Prefix, Quant, var

log = logging.getLogger(__name__)


class QdimacsError(ValueError):
    def __init__(self, msg: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class ParseDiagnostics:
    dropped_tautologies: int = 0
    free_vars_closed: int = 0
    line: int | None = None
    declared_vars: int = 0
    declared_clauses: int = 0
    warnings: list[str] = field(default_factory=list)


def _ints(tokens: list[str], lineno: int) -> list[int]:
    out = []
    for t in tokens:
        try:
            out.append(int(t, 10))
        except ValueError:
            raise QdimacsError(f"malformed token {t!r}", lineno) from None
    return out


def parse(text: bytes | str) -> tuple[PCNF, ParseDiagnostics]:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            raise QdimacsError(f"input is not valid UTF-8: {e}") from None
    diag = ParseDiagnostics()
    header: tuple[int, int] | None = None
    groups: list[tuple[Quant, list[int]]] = []
    bound: set[int] = set()
    clauses: list[list[int]] = []
    seen_clause = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        head = tokens[0]
        if head == "p":
            if header is not None:
                raise QdimacsError("duplicate header", lineno)
            if len(tokens) != 4 or tokens[1] != "cnf":
                raise QdimacsError("expected 'p cnf <vars> <clauses>'", lineno)
            nv, nc = _ints(tokens[2:], lineno)
            if nv < 0 or nc < 0:
                raise QdimacsError("negative header count", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise QdimacsError("missing 'p cnf' header", lineno)
        max_var = header[0]
        if head in ("a", "e"):
            if seen_clause:
                raise QdimacsError("quantifier line after clauses", lineno)
            vs = _ints(tokens[1:], lineno)
            if not vs or vs[-1] != 0:
                raise QdimacsError("missing terminating 0", lineno)
            vs = vs[:-1]
            for v in vs:
                if v <= 0:
                    raise QdimacsError(f"invalid variable {v} in quantifier line", lineno)
                if v > max_var:
                    raise QdimacsError(f"variable {v} exceeds declared maximum {max_var}", lineno)
                if v in bound:
                    raise QdimacsError(f"variable {v} quantified twice", lineno)
                bound.add(v)
            groups.append((Quant(head), vs))
            continue
        lits = _ints(tokens, lineno)
        if lits[-1] != 0:
            raise QdimacsError("missing terminating 0", lineno)
        seen_clause = True
        cur: list[int] = []
        for l in lits:
            if l == 0:
                clauses.append(cur)
                cur = []
                continue
            if var(l) > max_var:
                raise QdimacsError(f"variable {var(l)} exceeds declared maximum {max_var}", lineno)
            cur.append(l)

    if header is None:
        raise QdimacsError("empty input")
    diag.declared_vars, diag.declared_clauses = header

    free = sorted({var(l) for c in clauses for l in c} - bound)
    if free:
        diag.free_vars_closed = len(free)
        groups.insert(0, (Quant.EXISTS, free))
    prefix = Prefix.from_pairs(groups)

    matrix = []
    for c in clauses:
        s = set(c)
        if any(-l in s for l in s):
            diag.dropped_tautologies += 1
            continue
        matrix.append(Constraint.build(Kind.CLAUSE, s, prefix))
    if diag.dropped_tautologies:
        log.warning("dropped %d tautological clause(s)", diag.dropped_tautologies)
    if len(clauses) != header[1]:
        diag.warnings.append(f"header declares {header[1]} clauses, found {len(clauses)}")
    return PCNF(prefix, tuple(matrix), header[0]), diag


def write(psi: PCNF) -> bytes:
    out = [f"p cnf {psi.num_vars} {len(psi.clauses)}"]
    for b in psi.prefix.blocks:
        out.append(f"{b.quant.value} {' '.join(map(str, b.vars))} 0")
    for c in psi.clauses:
        out.append(" ".join([*map(str, c.lits), "0"]))
    return ("\n".join(out) + "\n").encode("ascii")


def read_file(path: str) -> tuple[PCNF, ParseDiagnostics]:
    with open(path, "rb") as fh:
        return parse(fh.read())
