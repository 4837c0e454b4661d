"""QCDCL solver for quantified Boolean formulas in prenex CNF."""
from .engine import VARIANTS, SolverConfig, SolveResult, Statistics, solve, variant
from .formula import PCNF, Assignment, Constraint, Kind, Prefix, Quant, Verdict
from .qdimacs import parse, read_file, write

__all__ = [
    "PCNF", "Assignment", "Constraint", "Kind", "Prefix", "Quant", "Verdict",
    "SolverConfig", "SolveResult", "Statistics", "VARIANTS", "solve", "variant",
    "parse", "read_file", "write",
]
__version__ = "0.1.0"
