"""End-to-end acceptance criteria.

Each test prints one ``PASS``/``FAIL`` line. Run directly with
``python3 tests/test_acceptance.py`` for the summary without pytest.
"""
import io
import os
import random
import subprocess
import sys
import time
from itertools import product

import pytest

from qcdcl import qdimacs
from qcdcl.depsched import standard_deps, trivial_deps
from qcdcl.engine import VARIANTS, Solver, solve, variant
from qcdcl.formula import Verdict
from qcdcl.generators import padded_family, random_pcnf, random_suite, split_dependency
from qcdcl.oracle import eval, eval_under
from qcdcl.proof import check_proof
from qcdcl.satcore import SatStatus, sat_solve

SUITE_SIZE = 5000
SUITE_SEED = 20240601
TIME_TARGET = 600.0


def report(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    capman = _CAP.get("capman")
    if capman is not None:
        with capman.global_and_fixture_disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line


_CAP: dict = {}


@pytest.fixture(autouse=True)
def _capman(request):
    _CAP["capman"] = request.config.pluginmanager.getplugin("capturemanager")
    yield
    _CAP.clear()


_suite_cache: list = []


def suite():
    if not _suite_cache:
        _suite_cache.extend(random_suite(SUITE_SIZE, SUITE_SEED))
    return _suite_cache


def test_criterion_1_random_differential():
    t0 = time.perf_counter()
    bad = []
    for i, psi in enumerate(suite()):
        want = eval(psi)
        for name in VARIANTS:
            got = solve(psi, variant(name)).verdict
            if got is not want:
                bad.append((i, name, got, want))
    dt = time.perf_counter() - t0
    report(1, not bad and dt < TIME_TARGET,
           f"{SUITE_SIZE} instances x {len(VARIANTS)} variants, {len(bad)} mismatches, {dt:.1f}s")


def test_criterion_2_traces_check():
    invalid = []
    rechecked = 0
    runs = 0
    for i, psi in enumerate(suite()):
        for name in VARIANTS:
            buf = io.StringIO()
            r = solve(psi, variant(name, trace_output=buf))
            cr = check_proof(psi, buf.getvalue(), recheck_gen_axioms_with_oracle=True)
            runs += 1
            rechecked += cr.gen_rechecked
            if not cr.valid or cr.verdict is not r.verdict:
                invalid.append((i, name, cr.step, cr.reason))
    report(2, not invalid, f"{runs} traces, {len(invalid)} invalid, {rechecked} generalized axioms rechecked")


def test_criterion_3_abstraction_soundness():
    target = 10_000
    pairs = 0
    wrong = []
    established = 0
    rng = random.Random(7)

    def hook(which, trail, res):
        nonlocal pairs, established
        pairs += 1
        if res.established:
            established += 1
            want = Verdict.SAT if which == "trivial-truth" else Verdict.UNSAT
            if eval_under(current[0], trail) is not want:
                wrong.append((which, trail))

    current = [None]
    while pairs < target:
        psi = random_pcnf(rng)
        current[0] = psi
        for name in ("DQ", "DQ-nq", "DQ-lin", "DQ-linldq"):
            cfg = variant(name, axiom_cadence=1, axiom_cadence_floor=1, axiom_disable=False,
                          on_abstraction=hook)
            solve(psi, cfg)
    report(3, not wrong and pairs >= target,
           f"{pairs} trail checks, {established} established, {len(wrong)} disagree with the oracle")


def test_criterion_4_qbce_incremental():
    n = 1000
    names = [k for k in VARIANTS if variant(k).use_qbce]
    events = 0
    diverged = []
    changed = []
    for i, psi in enumerate(suite()[:n]):
        want = eval(psi)
        for name in names:
            s = Solver(psi, variant(name, audit=True))
            try:
                v = s.solve().verdict
            except Exception as e:  # noqa: BLE001
                diverged.append((i, name, str(e)))
                continue
            events += s.events
            off = solve(psi, variant(name, use_qbce=False)).verdict
            if v is not off or v is not want:
                changed.append((i, name))
    report(4, not diverged and not changed and events > 0,
           f"{n} instances x {len(names)} variants, {events} trail events compared, "
           f"{len(diverged)} divergences, {len(changed)} verdict changes")


def test_criterion_5_standard_dependencies():
    not_subset = 0
    mismatch = 0
    for psi in suite()[:2000]:
        if not standard_deps(psi).pairs() <= trivial_deps(psi).pairs():
            not_subset += 1
        if solve(psi, variant("DQ-n", dep_scheme="std")).verdict is not eval(psi):
            mismatch += 1
    witnessed = 0
    for k in (1, 2, 3):
        psi = split_dependency(k)
        buf = io.StringIO()
        r = solve(psi, variant("DQ-n", dep_scheme="std", trace_output=buf))
        cr = check_proof(psi, buf.getvalue())
        if cr.valid and cr.verdict is r.verdict and cr.dep_red_steps:
            witnessed += 1
    report(5, not_subset == 0 and mismatch == 0 and witnessed == 3,
           f"subset violations {not_subset}, std mismatches {mismatch}, "
           f"dependency-only reductions witnessed on {witnessed}/3 crafted instances")


FACTOR = 5.0


def test_criterion_6_padded_backtracks():
    fam = padded_family(50, seed=0, layers=(8, 16))
    dq = [solve(p, variant("DQ")).stats.backtracks for p in fam]
    dqn = [solve(p, variant("DQ-n")).stats.backtracks for p in fam]
    m_dq = sum(dq) / len(dq)
    m_dqn = sum(dqn) / len(dqn)
    report(6, m_dqn > m_dq and m_dqn >= FACTOR * m_dq,
           f"mean backtracks DQ {m_dq:.2f} vs DQ-n {m_dqn:.2f} (required factor {FACTOR:g})")


def test_criterion_7_determinism(tmp_path):
    rng = random.Random(3)
    files = []
    for i in range(4):
        p = tmp_path / f"d{i}.qdimacs"
        p.write_bytes(qdimacs.write(random_pcnf(rng, nvars=(14, 14), nclauses=(40, 40))))
        files.append(p)
    p = tmp_path / "pad.qdimacs"
    p.write_bytes(qdimacs.write(padded_family(1, seed=5)[0]))
    files.append(p)
    differing = 0
    for f in files:
        for flags in ([], ["--no-gen"], ["--ldq", "--dep=trivial"]):
            outs = set()
            for run in range(3):
                trace = tmp_path / f"{f.stem}_{run}.trace"
                env = dict(os.environ, PYTHONHASHSEED=str(run * 17 + 1))
                r = subprocess.run([sys.executable, "-m", "qcdcl.cli", str(f), "--stats", "--trace", str(trace),
                                    *flags], capture_output=True, env=env)
                outs.add((r.returncode, r.stdout, trace.read_bytes()))
            differing += len(outs) != 1
    report(7, differing == 0, f"{len(files) * 3} configurations x 3 runs, {differing} differ")


def _cnf_cases(count: int, seed: int):
    """Every CNF over one variable with at most 3 clauses, then seeded random
    CNFs with at most 4 variables and 8 clauses."""
    one = [[], [1], [-1]]
    for k in range(4):
        for cls in product(one, repeat=k):
            yield 1, [list(c) for c in cls]
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 4)
        cls = []
        for _ in range(rng.randint(0, 8)):
            w = rng.randint(0, n) if rng.random() < 0.02 else rng.randint(1, n)
            cls.append([v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), w)])
        yield n, cls


def _truth_table(n: int, cls) -> bool:
    for bits in product((False, True), repeat=n):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in cls):
            return True
    return False


def test_criterion_8_sat_core():
    cases = 0
    bad = []
    for n, cls in _cnf_cases(50_000, seed=8):
        cases += 1
        want = _truth_table(n, cls)
        r = sat_solve(cls)
        got = r.status is SatStatus.SAT
        if got != want:
            bad.append(cls)
        elif got:
            m = r.model
            if not all(any(m.get(abs(l), False) == (l > 0) for l in c) for c in cls):
                bad.append(cls)
    report(8, cases >= 50_000 and not bad, f"{cases} CNFs, {len(bad)} disagree with the truth table")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
