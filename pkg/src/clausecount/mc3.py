"""Exact model counting for 3-CNF.

Branches on the most frequent variable among the 3-clauses until none are
left, then hands the remaining 2-CNF to the MC2 recursion.
"""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING

from .formula import Formula, require_width, var_of
from .graph import build_graph, components, connected_vertex_sets
from . import mc2
from .mc2 import BranchDecision, BranchKind, branch_both, depth_limit

if TYPE_CHECKING:
    from .analysis import StatsSink


def frequency_table(f: Formula) -> Counter:
    """Number of clauses each variable occurs in, either polarity."""
    return Counter(var_of(lit) for c in f.clauses for lit in c)


def select_max_frequency_var(f: Formula) -> int:
    """Most frequent variable among those in some 3-clause; ties go to the lowest id.

    Frequency counts every clause of ``f``, not just the 3-clauses.
    """
    candidates = {var_of(lit) for c in f.clauses if len(c) == 3 for lit in c}
    if not candidates:
        raise ValueError("formula has no 3-clause")
    freq = frequency_table(f)
    return min(candidates, key=lambda v: (-freq[v], v))


def _count(f: Formula, run: mc2._Run, depth: int) -> int:
    if depth > run.limit:
        raise AssertionError(f"recursion depth {depth} exceeds the bound {run.limit}")
    if f.has_empty_clause:
        run.record(BranchDecision(BranchKind.EMPTY_CLAUSE), depth, f, 0)
        return 0
    if not f.clauses:
        run.record(BranchDecision(BranchKind.EMPTY_FORMULA), depth, f, 1)
        return 1
    g = build_graph(f)
    if len(connected_vertex_sets(g)) > 1:
        parts = components(f, g)
        value = 1
        for part, _ in parts:
            value *= _count(part, run, depth + 1)
        run.record(BranchDecision(BranchKind.COMPONENT_SPLIT), depth, f, value, len(parts))
        return value
    if f.width == 3:
        x = select_max_frequency_var(f)
        value, drops = branch_both(f, x, run, depth, _count)
        run.record(BranchDecision(BranchKind.FREQUENCY_BRANCH, x), depth, f, value, 2, drops)
        return value
    return mc2._count(f, run, depth)


def count_mc3(
    f: Formula,
    *,
    five_vertex: bool = True,
    sink: "StatsSink | None" = None,
    parallel: bool = False,
) -> int:
    """Number of models of a formula with clauses of width at most 3.

    Mixed widths are fine.  Options are passed through to the MC2 stage.
    """
    require_width(f, 3)
    run = mc2._Run(five_vertex=five_vertex, sink=sink, parallel=parallel, limit=depth_limit(f))
    return _count(f, run, 0) << (f.num_vars - len(f.variables))
