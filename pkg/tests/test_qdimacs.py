import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import F, pcnfs
from qcdcl.formula import Quant
from qcdcl.qdimacs import QdimacsError, parse, read_file, write


def _blocks(psi):
    return [(b.quant, b.vars) for b in psi.prefix.blocks]


def test_basic_reading():
    psi, diag = parse(b"p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n")
    assert _blocks(psi) == [(Quant.FORALL, (1,)), (Quant.EXISTS, (2,))]
    assert [c.lits for c in psi.clauses] == [(1, 2), (-1, -2)]
    assert diag.dropped_tautologies == 0 and not diag.warnings


def test_tautology_dropped():
    psi, diag = parse(b"p cnf 1 1\n1 -1 0\n")
    assert psi.clauses == ()
    assert diag.dropped_tautologies == 1


def test_no_trailing_newline():
    psi, _ = parse("p cnf 1 1\n1 0")
    assert [c.lits for c in psi.clauses] == [(1,)]


def test_comments_and_merging():
    psi, diag = parse("c hello\np cnf 4 1\ne 1 0\ne 2 0\na 3 0\n1 2 3 4 0\n")
    assert _blocks(psi) == [(Quant.EXISTS, (1, 2, 4)), (Quant.FORALL, (3,))]
    assert diag.free_vars_closed == 1


def test_clause_spanning_lines_and_multiple_per_line():
    psi, _ = parse("p cnf 3 2\n1 2 0 -3 0\n")
    assert [c.lits for c in psi.clauses] == [(1, 2), (-3,)]


def test_count_mismatch_is_a_warning():
    _, diag = parse("p cnf 2 5\n1 0\n")
    assert diag.warnings


@pytest.mark.parametrize("text, line", [
    ("p cnf 2 1\n1 x 0\n", 2),
    ("p cnf 2 1\n1 2\n", 2),
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf 2 1\ne 1 0\n1 0\na 2 0\n", 4),
    ("1 2 0\n", 1),
    ("p cnf 2 1\np cnf 2 1\n", 2),
    ("p cnf 2 1\ne 1 0\na 1 0\n", 3),
])
def test_syntax_errors_carry_line(text, line):
    with pytest.raises(QdimacsError) as ei:
        parse(text)
    assert ei.value.line == line


def test_empty_input():
    with pytest.raises(QdimacsError):
        parse(b"")
    with pytest.raises(QdimacsError):
        parse(b"c only a comment\n")


def test_write_examples():
    assert write(F([("e", [1])], [[1]])) == b"p cnf 1 1\ne 1 0\n1 0\n"
    assert write(F([], [])) == b"p cnf 0 0\n"


def test_read_file(tmp_path):
    p = tmp_path / "f.qdimacs"
    p.write_bytes(b"p cnf 1 1\ne 1 0\n-1 0\n")
    psi, _ = read_file(str(p))
    assert [c.lits for c in psi.clauses] == [(-1,)]


@settings(max_examples=200, deadline=None)
@given(pcnfs())
def test_round_trip(psi):
    once, _ = parse(write(psi))
    twice, _ = parse(write(once))
    assert _blocks(once) == _blocks(psi)
    assert once.clauses == psi.clauses
    assert write(once) == write(twice)


@settings(max_examples=500, deadline=None)
@given(st.binary(max_size=200))
def test_parser_never_crashes_on_bytes(data):
    try:
        parse(data)
    except QdimacsError:
        pass


@settings(max_examples=500, deadline=None)
@given(st.lists(st.sampled_from(["p", "cnf", "a", "e", "0", "1", "-1", "2", "-2", "3", "\n", " ", "c"]),
                max_size=40))
def test_parser_never_crashes_on_token_soup(tokens):
    try:
        parse(" ".join(tokens))
    except QdimacsError:
        pass
