"""Command-line front end.

    qcdcl [options] [FILE]          solve a QDIMACS file (or standard input)
    qcdcl bench [options] PATH...   run instances against a config matrix
    qcdcl gen FAMILY --out DIR      write a generated instance family

Exit codes for solving: 10 SAT, 20 UNSAT, 0 UNKNOWN, 1 usage or parse
error, 3 proof check failure.
"""
from __future__ import annotations

import argparse
import io
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import oracle, qdimacs
from .engine import VARIANTS, SolverConfig, Statistics, solve, variant
from .formula import Verdict
from .proof import check_proof

EXIT = {Verdict.SAT: 10, Verdict.UNSAT: 20, Verdict.UNKNOWN: 0}
RESULT = {Verdict.SAT: "s cnf 1", Verdict.UNSAT: "s cnf 0", Verdict.UNKNOWN: "s cnf -1"}
EXIT_USAGE = 1
EXIT_CHECK = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; ours is 1
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-gen-cl", action="store_true", help="disable the generalized clause axiom")
    p.add_argument("--no-gen-cu", action="store_true",
                   help="disable the generalized cube axiom (trivial truth and QBCE)")
    p.add_argument("--no-gen", action="store_true", help="disable both generalized axioms")
    p.add_argument("--no-qbce", action="store_true", help="disable dynamic blocked clause elimination")
    p.add_argument("--dep", choices=["trivial", "std"], default=None, help="dependency scheme (default std)")
    p.add_argument("--ldq", action="store_true", help="long-distance resolution (needs --dep=trivial)")
    p.add_argument("--max-time", type=float, default=None, metavar="S")
    p.add_argument("--max-conflicts", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="N")


def config_from_args(args: argparse.Namespace, **extra) -> SolverConfig:
    if args.ldq and args.dep == "std":
        raise UsageError("--ldq cannot be combined with --dep=std")
    no_cu = args.no_gen_cu or args.no_gen
    try:
        return SolverConfig(
            use_gen_clause_axiom=not (args.no_gen_cl or args.no_gen),
            use_gen_cube_axiom=not no_cu,
            use_qbce=not (no_cu or args.no_qbce),
            dep_scheme=args.dep,
            ldq=args.ldq,
            max_conflicts=args.max_conflicts,
            max_seconds=args.max_time,
            rng_seed=args.seed,
            **extra,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None


def format_stats(stats: Statistics) -> str:
    return "".join(f"c {k} {v}\n" for k, v in stats.as_dict().items())


# ----------------------------------------------------------------------
# solve
def _solve_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcdcl", description="QCDCL solver for QDIMACS formulas.")
    p.add_argument("file", nargs="?", default="-", help="QDIMACS file, '-' for standard input")
    _add_solver_flags(p)
    p.add_argument("--trace", metavar="FILE", default=None, help="write a Q-resolution trace")
    p.add_argument("--check", action="store_true", help="check the trace after solving")
    p.add_argument("--stats", action="store_true", help="print search statistics")
    p.add_argument("--oracle", action="store_true", help="decide by brute-force expansion (small inputs)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _read_input(name: str) -> bytes:
    if name == "-":
        return sys.stdin.buffer.read()
    with open(name, "rb") as fh:
        return fh.read()


def run_solve(argv: Sequence[str]) -> int:
    args = _solve_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="c %(name)s: %(message)s", stream=sys.stderr)
    try:
        psi, diag = qdimacs.parse(_read_input(args.file))
    except OSError as e:
        print(f"qcdcl: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except qdimacs.QdimacsError as e:
        print(f"qcdcl: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    for w in diag.warnings:
        print(f"c warning: {w}", file=sys.stderr)

    if args.oracle:
        try:
            verdict = oracle.eval(psi)
        except oracle.OracleBudgetExceeded:
            print("c oracle budget exceeded")
            verdict = Verdict.UNKNOWN
        print(RESULT[verdict])
        return EXIT[verdict]

    sink = None
    if args.trace or args.check:
        sink = io.StringIO()
    try:
        cfg = config_from_args(args, trace_output=sink)
    except UsageError as e:
        print(f"qcdcl: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    res = solve(psi, cfg)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(sink.getvalue())
    if args.stats:
        sys.stdout.write(format_stats(res.stats))
    if res.reason:
        print(f"c stopped: {res.reason}")
    if args.check and res.verdict is not Verdict.UNKNOWN:
        cr = check_proof(psi, sink.getvalue())
        if not cr.valid or cr.verdict is not res.verdict:
            print(f"c check failed at step {cr.step} ({cr.rule}): {cr.reason}")
            print(RESULT[Verdict.UNKNOWN])
            return EXIT_CHECK
        print("c check valid")
    print(RESULT[res.verdict])
    return EXIT[res.verdict]


# ----------------------------------------------------------------------
# bench
def _bench_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcdcl bench", description="Run instances against a matrix of solver variants.")
    p.add_argument("paths", nargs="+", help="QDIMACS files or directories")
    p.add_argument("--configs", default=",".join(VARIANTS),
                   help="comma-separated variant names (default: all)")
    p.add_argument("--out", default="bench.csv", help="per-run CSV (summary and figures go next to it)")
    p.add_argument("--fig-dir", default=None)
    p.add_argument("--max-time", type=float, default=60.0, metavar="S")
    p.add_argument("--max-conflicts", type=int, default=None, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    return p


def _collect(paths: Sequence[str]) -> list[Path]:
    out: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            out += sorted(q for q in p.iterdir() if q.suffix in (".qdimacs", ".qdm", ".cnf"))
        else:
            out.append(p)
    return out


def bench_one(path: str, config: str, max_time: float | None, max_conflicts: int | None, seed: int) -> dict:
    psi, _ = qdimacs.read_file(path)
    cfg = variant(config, max_seconds=max_time, max_conflicts=max_conflicts, rng_seed=seed)
    t0 = time.perf_counter()
    res = solve(psi, cfg)
    dt = time.perf_counter() - t0
    st = res.stats
    return {"instance": Path(path).name, "config": config, "verdict": res.verdict.value,
            "seconds": f"{dt:.4f}", "conflicts": st.conflicts, "decisions": st.decisions,
            "gen_cl_hits": st.gen_cl_hits, "gen_cu_hits": st.gen_cu_hits}


def run_bench(argv: Sequence[str]) -> int:
    args = _bench_parser().parse_args(argv)
    configs = [c.strip() for c in args.configs.split(",") if c.strip()]
    unknown = [c for c in configs if c not in VARIANTS]
    if unknown:
        print(f"qcdcl bench: error: unknown config(s) {', '.join(unknown)}; "
              f"choose from {', '.join(VARIANTS)}", file=sys.stderr)
        return EXIT_USAGE
    files = _collect(args.paths)
    if not files:
        print("qcdcl bench: error: no instances found", file=sys.stderr)
        return EXIT_USAGE
    jobs = [(str(f), c, args.max_time, args.max_conflicts, args.seed) for f in files for c in configs]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                rows = list(ex.map(bench_one, *zip(*jobs)))
        else:
            rows = [bench_one(*j) for j in jobs]
    except (OSError, qdimacs.QdimacsError) as e:
        print(f"qcdcl bench: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    from .report import summarize, write_report

    written = write_report(rows, args.out, args.fig_dir)
    for s in summarize(rows):
        print(f"{s['config']:<10} solved {s['solved']:>4}  unsat {s['unsat']:>4}  sat {s['sat']:>4}  "
              f"time {s['seconds']}")
    for w in written:
        print(f"wrote {w}")
    return 0


# ----------------------------------------------------------------------
# gen
FAMILIES = ("random", "padded", "split")


def run_gen(argv: Sequence[str]) -> int:
    from . import generators

    p = _Parser(prog="qcdcl gen", description="Write a generated instance family as QDIMACS files.")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    args = p.parse_args(argv)
    if args.family == "random":
        insts = list(generators.random_suite(args.count, args.seed))
    elif args.family == "padded":
        insts = generators.padded_family(args.count, args.seed)
    else:
        insts = [generators.split_dependency(k) for k in range(1, args.count + 1)]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, psi in enumerate(insts):
        (out / f"{args.family}_{i:04d}.qdimacs").write_bytes(qdimacs.write(psi))
    print(f"wrote {len(insts)} instances to {out}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "bench":
        return run_bench(argv[1:])
    if argv and argv[0] == "gen":
        return run_gen(argv[1:])
    return run_solve(argv)


if __name__ == "__main__":
    sys.exit(main())
