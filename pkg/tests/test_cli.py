import csv
import io
import subprocess
import sys

import pytest

from qcdcl import qdimacs
from qcdcl.cli import main
from qcdcl.generators import split_dependency

UNSAT_TEXT = "p cnf 2 2\ne 1 0\na 2 0\n1 2 0\n-1 2 0\n"
SAT_TEXT = "p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n"


@pytest.fixture
def unsat_file(tmp_path):
    p = tmp_path / "u.qdimacs"
    p.write_text(UNSAT_TEXT)
    return p


@pytest.fixture
def sat_file(tmp_path):
    p = tmp_path / "s.qdimacs"
    p.write_text(SAT_TEXT)
    return p


def test_exit_codes(unsat_file, sat_file, capsys):
    assert main([str(unsat_file)]) == 20
    assert capsys.readouterr().out.strip().endswith("s cnf 0")
    assert main([str(sat_file)]) == 10
    assert capsys.readouterr().out.strip().endswith("s cnf 1")


def test_unknown_exit(tmp_path, capsys):
    from qcdcl.generators import pigeonhole

    php = pigeonhole(7, 6)
    p = tmp_path / "php.qdimacs"
    lines = ["p cnf 42 %d" % len(php), "e " + " ".join(map(str, range(1, 43))) + " 0"]
    lines += [" ".join(map(str, c)) + " 0" for c in php]
    p.write_text("\n".join(lines) + "\n")
    assert main([str(p), "--max-conflicts", "2", "--no-gen"]) == 0
    assert "s cnf -1" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["--ldq", "--dep=std"],
    ["--dep=bogus"],
    ["--max-conflicts", "x"],
])
def test_usage_errors(unsat_file, argv):
    with pytest.raises(SystemExit) as e:
        rc = main([str(unsat_file), *argv])
        raise SystemExit(rc)
    assert e.value.code == 1


def test_parse_error_and_missing_file(tmp_path, capsys):
    bad = tmp_path / "bad.qdimacs"
    bad.write_text("p cnf 2 1\ne 1 0\n1 x 0\n")
    assert main([str(bad)]) == 1
    assert main([str(tmp_path / "missing.qdimacs")]) == 1


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(UNSAT_TEXT.encode())))
    assert main(["-"]) == 20


def test_oracle_flag(unsat_file, sat_file):
    assert main([str(unsat_file), "--oracle"]) == 20
    assert main([str(sat_file), "--oracle"]) == 10


@pytest.mark.parametrize("flags", [[], ["--no-gen"], ["--ldq", "--dep=trivial"], ["--no-qbce"], ["--dep=trivial"]])
def test_trace_check(tmp_path, unsat_file, sat_file, flags, capsys):
    for f, rc in ((unsat_file, 20), (sat_file, 10)):
        trace = tmp_path / "t.trace"
        assert main([str(f), "--trace", str(trace), "--check", *flags]) == rc
        assert "c check valid" in capsys.readouterr().out
        assert trace.read_text()


def test_stats_deterministic(tmp_path, capsys):
    p = tmp_path / "split.qdimacs"
    p.write_bytes(qdimacs.write(split_dependency(3)))
    outs = set()
    for _ in range(3):
        assert main([str(p), "--stats", "--no-gen"]) == 10
        outs.add(capsys.readouterr().out)
    assert len(outs) == 1
    out = outs.pop()
    assert "c conflicts " in out and "c decisions " in out


def test_gen_and_bench(tmp_path, capsys):
    inst = tmp_path / "inst"
    assert main(["gen", "random", "--count", "4", "--seed", "3", "--out", str(inst)]) == 0
    assert len(list(inst.glob("*.qdimacs"))) == 4
    out = tmp_path / "res" / "bench.csv"
    assert main(["bench", str(inst), "--configs", "DQ,DQ-n", "--out", str(out)]) == 0
    with open(out) as fh:
        r = csv.reader(fh)
        header = next(r)
        rows = list(r)
    assert header == ["instance", "config", "verdict", "seconds", "conflicts", "decisions",
                      "gen_cl_hits", "gen_cu_hits"]
    assert len(rows) == 8
    for name in ("bench_summary.csv", "bench_cactus.png", "bench_conflicts.png", "bench_decisions.png"):
        assert (out.parent / name).stat().st_size > 0


def test_bench_rejects_unknown_config(tmp_path, unsat_file):
    assert main(["bench", str(unsat_file), "--configs", "DQ-x", "--out", str(tmp_path / "b.csv")]) == 1


@pytest.mark.parametrize("family", ["padded", "split"])
def test_gen_families(tmp_path, family):
    assert main(["gen", family, "--count", "2", "--out", str(tmp_path)]) == 0
    for p in tmp_path.glob("*.qdimacs"):
        qdimacs.read_file(p)


def test_console_script_module(unsat_file):
    r = subprocess.run([sys.executable, "-m", "qcdcl.cli", str(unsat_file)], capture_output=True, text=True)
    assert r.returncode == 20 and "s cnf 0" in r.stdout
