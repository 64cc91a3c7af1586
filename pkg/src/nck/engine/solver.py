"""Run the rule base to a fixed point and package the result."""

from __future__ import annotations

from ..fpgroups import DEFAULT_MAX_COSETS
from ..spheres import SphereTable, default_table
from .lattice import INF, InternalInconsistency, State
from .problem import Problem, parse_problem
from .report import InvariantReport
from .rules import Context, rules_in_order

MAX_PASSES = 50


def solve(problem: Problem | dict, table: SphereTable | None = None,
          budget: int = DEFAULT_MAX_COSETS) -> InvariantReport:
    """Evaluate N, N#, MCC, MC and the Reidemeister count of a coincidence problem.

    Raises ``ProblemError`` for malformed input, ``InputContradiction`` when
    the supplied data and assertions cannot all hold, and
    ``InternalInconsistency`` when the result violates a structural law.
    """
    if isinstance(problem, dict):
        problem = parse_problem(problem)
    table = table or default_table()
    ctx = Context(problem, table, budget)
    st = State()
    rules = rules_in_order()
    for _ in range(MAX_PASSES):
        st.changed = False
        for r in rules:
            r.fn(ctx, st, r)
        if not st.changed:
            break
    else:
        raise InternalInconsistency("rule evaluation did not reach a fixed point")
    report = InvariantReport(
        N=st.result("N"), N_sharp=st.result("N_sharp"), MCC=st.result("MCC"), MC=st.result("MC"),
        reidemeister=st.result("R"),
        provenance=tuple((f.rule, f.ref) for f in st.firings),
        conditional_on=tuple(sorted(set().union(*[f.conditional_on for f in st.firings]))),
        table_version=table.version,
    )
    check_report(report, problem)
    return report


def check_report(report: InvariantReport, problem: Problem) -> None:
    """Structural laws every report must satisfy; a violation is a bug."""
    vals = [report.N, report.N_sharp, report.MCC, report.MC]
    known = [v for v in vals if not _unknown(v)]
    if any(v < 0 for v in known):
        raise InternalInconsistency(f"negative invariant in {vals}")
    for a, b in zip(vals, vals[1:]):
        if not _unknown(a) and not _unknown(b) and a > b:
            raise InternalInconsistency(f"chain N <= N# <= MCC <= MC violated: {vals}")
    for v in (report.N, report.N_sharp, report.MCC):
        if not _unknown(v) and v == INF:
            raise InternalInconsistency("a Nielsen number or MCC came out infinite")
    R = report.reidemeister
    if problem.n != 2 and not _unknown(R) and not _unknown(report.MCC) and report.MCC > R:
        raise InternalInconsistency(f"MCC = {report.MCC} exceeds the Reidemeister count {R}")
    if problem.pair in ("root", "self") and not _unknown(report.N_sharp):
        b = 1 if problem.pair == "self" else R
        if not _unknown(b) and report.N_sharp not in (0, b):
            raise InternalInconsistency(f"N# = {report.N_sharp} is neither 0 nor b = {b}")


def _unknown(v) -> bool:
    return not isinstance(v, (int, float))
