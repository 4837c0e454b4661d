"""Dependency relations: trivial prefix order and the standard scheme."""
from __future__ import annotations

import enum
from collections import defaultdict

from .formula import PCNF, Constraint, Kind, Prefix, Quant, var


class DepKind(str, enum.Enum):
    TRIVIAL = "trivial"
    STANDARD = "std"


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                ra, rb = rb, ra
            self.parent[ra] = rb


class DependencyRelation:
    """Relation over ordered variable pairs ``(x, y)`` with ``x`` left of ``y``.

    ``depends(x, y)`` is true when ``y`` may depend on ``x``. Pairs with
    equal quantifiers or ``level(x) >= level(y)`` are never in the relation.
    """

    def __init__(self, kind: DepKind, prefix: Prefix,
                 components: dict[int, dict[int, frozenset[int]]] | None = None) -> None:
        self.kind = kind
        self.prefix = prefix
        # components[i][v] = union-find roots of clauses containing v, for the
        # graph connecting clauses through existentials strictly right of block i
        self._components = components
        self._preds: dict[int, tuple[int, ...]] = {}

    def depends(self, x: int, y: int) -> bool:
        pre = self.prefix
        lx, ly = pre.level(x), pre.level(y)
        if lx >= ly or pre.quant(x) is pre.quant(y):
            return False
        if self.kind is DepKind.TRIVIAL:
            return True
        comps = self._components[lx]
        cx = comps.get(x)
        cy = comps.get(y)
        if not cx or not cy:
            return False
        return not cx.isdisjoint(cy)

    __call__ = depends

    def predecessors(self, y: int) -> tuple[int, ...]:
        """All ``x`` with ``(x, y)`` in the relation, in prefix order."""
        got = self._preds.get(y)
        if got is None:
            pre = self.prefix
            ly = pre.level(y)
            got = tuple(x for b in pre.blocks[: ly - 1] for x in b.vars if self.depends(x, y))
            self._preds[y] = got
        return got

    def pairs(self) -> set[tuple[int, int]]:
        vs = list(self.prefix.variables())
        return {(x, y) for x in vs for y in vs if self.depends(x, y)}


def trivial_deps(psi: PCNF | Prefix) -> DependencyRelation:
    prefix = psi if isinstance(psi, Prefix) else psi.prefix
    return DependencyRelation(DepKind.TRIVIAL, prefix)


def standard_deps(psi: PCNF) -> DependencyRelation:
    prefix = psi.prefix
    clauses = psi.clauses
    occ: dict[int, list[int]] = defaultdict(list)
    for ci, c in enumerate(clauses):
        for l in c.lits:
            occ[var(l)].append(ci)
    ex_by_level = [(prefix.level(v), v) for v in occ if prefix.quant(v) is Quant.EXISTS]
    components: dict[int, dict[int, frozenset[int]]] = {}
    for b in prefix.blocks:
        i = b.level
        uf = _UnionFind(len(clauses))
        for lz, z in ex_by_level:
            if lz > i:
                cs = occ[z]
                for c2 in cs[1:]:
                    uf.union(cs[0], c2)
        comps: dict[int, frozenset[int]] = {}
        for v, cs in occ.items():
            if prefix.level(v) >= i:
                comps[v] = frozenset(uf.find(ci) for ci in cs)
        components[i] = comps
    return DependencyRelation(DepKind.STANDARD, prefix, components)


def make_deps(psi: PCNF, kind: DepKind | str) -> DependencyRelation:
    kind = DepKind(kind)
    return standard_deps(psi) if kind is DepKind.STANDARD else trivial_deps(psi)


def reducible_quant(kind: Kind) -> Quant:
    return Quant.FORALL if kind is Kind.CLAUSE else Quant.EXISTS


def may_reduce(d: DependencyRelation, c: Constraint, l: int) -> bool:
    """Side condition of dependency-aware reduction for literal ``l`` of ``c``."""
    if l not in c.lits:
        raise ValueError(f"literal {l} not in constraint")
    pre = d.prefix
    v = var(l)
    red = reducible_quant(c.kind)
    if pre.quant(v) is not red:
        raise ValueError(f"literal {l} has the wrong quantifier type for a {c.kind.value}")
    for k in c.lits:
        w = var(k)
        if pre.quant(w) is not red and d.depends(v, w):
            return False
    return True
