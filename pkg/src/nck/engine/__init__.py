"""Rule engine for the coincidence invariants N, N#, MCC and MC."""

from .lattice import InputContradiction, InternalInconsistency
from .problem import Domain, Problem, ProblemError, Target, parse_problem
from .report import InvariantReport, covering_transfer
from .solver import check_report, solve

__all__ = [
    "Domain", "InputContradiction", "InternalInconsistency", "InvariantReport", "Problem",
    "ProblemError", "Target", "check_report", "covering_transfer", "parse_problem", "solve",
]
