"""Seeded instance generators used by the tests and the benchmark harness."""
from __future__ import annotations

import random
from typing import Iterator

from .formula import PCNF


def random_pcnf(rng: random.Random, blocks: tuple[int, int] = (2, 4), nvars: tuple[int, int] = (6, 14),
                nclauses: tuple[int, int] = (10, 40), width: tuple[int, int] = (2, 4)) -> PCNF:
    """Random PCNF; each clause has distinct variables, tautologies never occur."""
    n = rng.randint(*nvars)
    k = min(rng.randint(*blocks), n)
    vs = list(range(1, n + 1))
    rng.shuffle(vs)
    cuts = sorted(rng.sample(range(1, n), k - 1))
    groups = [vs[a:b] for a, b in zip([0, *cuts], [*cuts, n])]
    q = rng.choice("ae")
    prefix = []
    for g in groups:
        prefix.append((q, sorted(g)))
        q = "e" if q == "a" else "a"
    clauses = []
    for _ in range(rng.randint(*nclauses)):
        w = min(rng.randint(*width), n)
        clauses.append([v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), w)])
    return PCNF.from_lists(prefix, clauses, n)


def random_suite(count: int, seed: int = 0, **kw) -> Iterator[PCNF]:
    rng = random.Random(seed)
    for _ in range(count):
        yield random_pcnf(rng, **kw)


def padded_true(n: int, rng: random.Random | None = None, extra: int = 0) -> PCNF:
    """``forall u1 exists x1 ... forall un exists xn exists y`` with every clause
    containing ``y``.

    Dropping universal literals leaves a CNF satisfied by ``y``, but ``y`` is
    innermost, so plain search cannot use it until every layer is assigned.
    With ``rng`` the polarities inside each layer are flipped at random and
    ``extra`` random width-3 clauses (each with ``y``) are added.
    """
    y = 2 * n + 1
    prefix = []
    clauses = []
    for i in range(1, n + 1):
        u, x = 2 * i - 1, 2 * i
        if rng is not None:
            u = u if rng.random() < 0.5 else -u
            x = x if rng.random() < 0.5 else -x
        prefix += [("a", [abs(u)]), ("e", [abs(x)])]
        clauses += [[u, x, y], [-u, -x, y]]
    prefix.append(("e", [y]))
    if rng is not None:
        for _ in range(extra):
            a, b = rng.sample(range(1, 2 * n + 1), 2)
            clauses.append([a if rng.random() < 0.5 else -a, b if rng.random() < 0.5 else -b, y])
    return PCNF.from_lists(prefix, clauses, y)


def padded_family(count: int = 50, seed: int = 0, layers: tuple[int, int] = (8, 16)) -> list[PCNF]:
    rng = random.Random(seed)
    return [padded_true(rng.randint(*layers), rng) for _ in range(count)]


def split_dependency(k: int = 2) -> PCNF:
    """``exists z1..zk w forall u1..uk exists y1..yk`` with ``yi <-> ui`` and
    ``(zi or w), (-zi or -w)``. No clause links a ``zi`` or ``w`` to any
    universal, so the standard scheme lets cube reduction drop them while
    the prefix order keeps them (they are left of every ``ui``)."""
    zs = list(range(1, k + 1))
    w = k + 1
    us = list(range(k + 2, 2 * k + 2))
    ys = list(range(2 * k + 2, 3 * k + 2))
    clauses = []
    for u, y in zip(us, ys):
        clauses += [[u, -y], [-u, y]]
    for z in zs:
        clauses += [[z, w], [-z, -w]]
    return PCNF.from_lists([("e", zs + [w]), ("a", us), ("e", ys)], clauses, 3 * k + 1)


def pigeonhole(pigeons: int, holes: int) -> list[list[int]]:
    """Propositional PHP clauses; variable ``p*holes+h+1`` puts pigeon p in hole h."""
    v = lambda p, h: p * holes + h + 1
    cls = [[v(p, h) for h in range(holes)] for p in range(pigeons)]
    for h in range(holes):
        for p in range(pigeons):
            for q in range(p + 1, pigeons):
                cls.append([-v(p, h), -v(q, h)])
    return cls
