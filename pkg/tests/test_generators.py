import io

from qcdcl.engine import solve, variant
from qcdcl.formula import Verdict
from qcdcl.generators import padded_family, padded_true, pigeonhole, random_suite, split_dependency
from qcdcl.oracle import eval
from qcdcl.proof import check_proof


def test_random_suite_ranges_and_seed():
    a = list(random_suite(50, seed=9))
    b = list(random_suite(50, seed=9))
    assert a == b
    for psi in a:
        assert 6 <= psi.num_vars <= 14
        assert 10 <= len(psi.clauses) <= 40
        assert all(2 <= len(c.lits) <= 4 for c in psi.clauses)
        assert 1 <= len(psi.prefix.blocks) <= 4


def test_padded_true_is_true():
    for n in (1, 2, 3, 4):
        assert eval(padded_true(n)) is Verdict.SAT
    for psi in padded_family(5, seed=1, layers=(2, 4)):
        assert eval(psi) is Verdict.SAT


def test_split_dependency_is_sat_and_needs_dep_red():
    for k in (1, 2, 3):
        psi = split_dependency(k)
        assert eval(psi) is Verdict.SAT
        buf = io.StringIO()
        r = solve(psi, variant("DQ-n", trace_output=buf))
        assert r.verdict is Verdict.SAT
        cr = check_proof(psi, buf.getvalue())
        assert cr.valid and len(cr.dep_red_steps) > 0


def test_pigeonhole_shape():
    cls = pigeonhole(3, 2)
    assert len(cls) == 3 + 2 * 3
    assert max(abs(l) for c in cls for l in c) == 6
