import pytest
from hypothesis import given, settings

from helpers import F, pcnfs
from qcdcl.formula import Assignment, Verdict, apply_assignment
from qcdcl.oracle import OracleBudgetExceeded, eval, eval_game, eval_under

S, U = Verdict.SAT, Verdict.UNSAT


@pytest.mark.parametrize("prefix, clauses, want", [
    ([("e", [1]), ("a", [2])], [[1, 2], [-1, 2]], U),
    ([("a", [1]), ("e", [2])], [[1, 2], [-1, -2]], S),
    ([("a", [1]), ("e", [2])], [[2, 1], [-2, -1]], S),
    ([("e", [1])], [], S),
    ([("e", [1])], [[]], U),
])
def test_examples(prefix, clauses, want):
    psi = F(prefix, clauses)
    assert eval(psi) is want
    assert eval_game(psi) is want


def test_eval_under_examples():
    psi = F([("e", [1])], [[1]])
    assert eval_under(psi, [1]) is S
    assert eval_under(psi, Assignment([-1])) is U


def test_budget_is_explicit():
    psi = F([("a", list(range(1, 13))), ("e", [13])], [[13], [-13, 1, 2]])
    with pytest.raises(OracleBudgetExceeded):
        eval(psi, budget=5)
    with pytest.raises(OracleBudgetExceeded):
        eval_game(F([("e", list(range(1, 15)))], [[1]]))


@settings(max_examples=300, deadline=None)
@given(pcnfs(max_vars=10))
def test_two_oracles_agree(psi):
    assert eval(psi) is eval_game(psi)
    assert eval_under(psi, []) is eval(psi)


@settings(max_examples=200, deadline=None)
@given(pcnfs(max_vars=9))
def test_branch_order_independent(psi):
    # splitting any variable of the leftmost block first gives the same verdict
    if not psi.prefix.blocks:
        return
    b = psi.prefix.blocks[0]
    want = eval(psi)
    for v in b.vars:
        vals = [eval(apply_assignment(psi, Assignment([l]))) for l in (v, -v)]
        got = (S in vals) if b.quant.value == "e" else all(x is S for x in vals)
        assert (S if got else U) is want
