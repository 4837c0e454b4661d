import pytest
from hypothesis import given, settings

from helpers import F, pcnf_and_trail
from qcdcl.formula import Kind, Verdict
from qcdcl.genaxioms import (ExistentialAbstractionChecker, Outcome, TrivialTruthChecker, check_sat_trivial_truth,
                             check_unsat_existential_abstraction, derive_generalized_constraint)
from qcdcl.generators import pigeonhole
from qcdcl.oracle import eval, eval_under


def test_trivial_truth_examples():
    psi = F([("a", [1]), ("e", [2])], [[2, 1], [2, -1]])
    r = check_sat_trivial_truth(psi)
    assert r.outcome is Outcome.ESTABLISHED and r.witness[2] is True
    psi = F([("a", [1]), ("e", [2])], [[1, 2], [-1, -2]])
    assert check_sat_trivial_truth(psi).outcome is Outcome.NOT_ESTABLISHED
    assert eval(psi) is Verdict.SAT
    assert check_sat_trivial_truth(psi, budget=0).outcome is Outcome.BUDGET_EXHAUSTED


def test_trivial_truth_under_trail():
    psi = F([("a", [1]), ("e", [2])], [[1, 2], [-1, -2]])
    # with u true only (-u or -e) remains
    assert check_sat_trivial_truth(psi, [1]).established
    assert not check_sat_trivial_truth(psi, [1, 2]).established


def test_existential_abstraction_examples():
    psi = F([("a", [1]), ("e", [2])], [[1, 2], [1, -2], [-1, 2], [-1, -2]])
    assert check_unsat_existential_abstraction(psi).outcome is Outcome.ESTABLISHED
    psi = F([("e", [1]), ("a", [2])], [[1, 2], [-1, 2]])
    assert check_unsat_existential_abstraction(psi).outcome is Outcome.NOT_ESTABLISHED
    assert eval(psi) is Verdict.UNSAT
    assert check_unsat_existential_abstraction(psi, budget=0).outcome is Outcome.BUDGET_EXHAUSTED


def test_learned_clauses_strengthen_the_view():
    psi = F([("e", [1, 2])], [[1, 2]])
    assert not check_unsat_existential_abstraction(psi, [-1]).established
    assert check_unsat_existential_abstraction(psi, [-1], learned=[[1]]).established


def test_checkers_are_reusable():
    psi = F([("a", [1]), ("e", [2, 3])], [[1, 2], [-1, 3], [-2, -3]])
    tt = TrivialTruthChecker(psi)
    assert not tt.check([]).established
    assert not tt.check([-1, -2, -3]).established
    assert tt.check([-1]).established
    ex = ExistentialAbstractionChecker(3, [c.lits for c in psi.clauses])
    assert not ex.check([]).established
    assert ex.check([2, 3]).established
    assert not ex.check([2]).established


def test_derive_generalized_constraint():
    psi = F([("e", [1]), ("a", [2])], [])
    c = derive_generalized_constraint([1, -2], Kind.CLAUSE, psi.prefix)
    assert c.kind is Kind.CLAUSE and c.lits == (-1, 2)
    c = derive_generalized_constraint([1, -2], "cube", psi.prefix)
    assert c.kind is Kind.CUBE and c.lits == (1, -2)
    assert derive_generalized_constraint([], Kind.CLAUSE, psi.prefix).lits == ()
    with pytest.raises(ValueError):
        derive_generalized_constraint([1, -1], Kind.CLAUSE, psi.prefix)


def test_budget_monotone_on_hard_instance():
    psi = F([("e", list(range(1, 21)))], pigeonhole(5, 4))
    outcomes = [check_unsat_existential_abstraction(psi, budget=b).outcome for b in (1, 10, 100, 10**5)]
    assert outcomes[0] is Outcome.BUDGET_EXHAUSTED
    assert outcomes[-1] is Outcome.ESTABLISHED
    first = outcomes.index(Outcome.ESTABLISHED)
    assert all(o is Outcome.ESTABLISHED for o in outcomes[first:])


@settings(max_examples=400, deadline=None)
@given(pcnf_and_trail(max_vars=9, max_clauses=16))
def test_soundness_against_oracle(pt):
    psi, trail = pt
    if check_sat_trivial_truth(psi, trail).established:
        assert eval_under(psi, trail) is Verdict.SAT
    if check_unsat_existential_abstraction(psi, trail).established:
        assert eval_under(psi, trail) is Verdict.UNSAT
