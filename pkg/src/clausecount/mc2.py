"""Exact model counting for 2-CNF by case-driven DPLL branching.

The recursion works on the variables that occur in the formula; the
declared universe only contributes a final power of two in
:func:`count_mc2`.  Every branch applies :func:`propagate` and multiplies
the child's count by two for each variable that disappeared unassigned.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, Optional

from .formula import Formula, require_width, var_of
from .graph import (
    ConstraintGraph,
    CycleShape,
    PathShape,
    build_graph,
    classify_component,
    components,
    connected_vertex_sets,
    formula_degree,
    l_value,
    split_vertex,
    u_of,
)
from .propagation import exhaustive_count, propagate

if TYPE_CHECKING:
    from .analysis import StatsSink

TINY_VARIABLES = 4
# branches deeper than this run sequentially even in parallel mode
PARALLEL_DEPTH = 4


class BranchKind(enum.Enum):
    EMPTY_CLAUSE = "EmptyClause"
    EMPTY_FORMULA = "EmptyFormula"
    TINY_EXHAUSTIVE = "TinyExhaustive"
    COMPONENT_SPLIT = "ComponentSplit"
    PATH_SPLIT = "PathSplit"
    CYCLE_SPLIT = "CycleSplit"
    U_BRANCH = "UBranch"
    FIVE_VERTEX = "FiveVertex"
    DIRECT_BRANCH = "DirectBranch"
    HIGH_DEGREE_BRANCH = "HighDegreeBranch"
    # MC3 only: branch on the most frequent variable of the 3-clauses
    FREQUENCY_BRANCH = "FrequencyBranch"

    def __str__(self) -> str:
        return self.value


TERMINAL_KINDS = frozenset(
    {BranchKind.EMPTY_CLAUSE, BranchKind.EMPTY_FORMULA, BranchKind.TINY_EXHAUSTIVE}
)
BRANCHING_KINDS = frozenset(
    {
        BranchKind.PATH_SPLIT,
        BranchKind.CYCLE_SPLIT,
        BranchKind.U_BRANCH,
        BranchKind.FIVE_VERTEX,
        BranchKind.DIRECT_BRANCH,
        BranchKind.HIGH_DEGREE_BRANCH,
        BranchKind.FREQUENCY_BRANCH,
    }
)
MC2_KINDS = frozenset(BranchKind) - {BranchKind.FREQUENCY_BRANCH}


@dataclass(frozen=True)
class BranchDecision:
    kind: BranchKind
    pivot: Optional[int] = None
    auxiliary: Optional[int] = None


def _sorted_neighbors(g: ConstraintGraph, x: int) -> list[int]:
    """Neighbours of x by descending degree, ties by ascending id (y, z, w, ...)."""
    return sorted(g.adjacency[x], key=lambda v: (-len(g.adjacency[v]), v))


def _five_vertex_guard(g: ConstraintGraph, x: int) -> bool:
    near = _sorted_neighbors(g, x)
    return (
        len(near) == 3
        and l_value(g, x) == 2
        and sum(len(g.adjacency[v]) for v in near) == 5
    )


def _decide(f: Formula, g: ConstraintGraph, five_vertex: bool) -> BranchDecision:
    if f.has_empty_clause:
        return BranchDecision(BranchKind.EMPTY_CLAUSE)
    if not f.clauses:
        return BranchDecision(BranchKind.EMPTY_FORMULA)
    if len(f.variables) <= TINY_VARIABLES:
        return BranchDecision(BranchKind.TINY_EXHAUSTIVE)
    if len(connected_vertex_sets(g)) > 1:
        return BranchDecision(BranchKind.COMPONENT_SPLIT)
    top = formula_degree(g)
    if top <= 2:
        shape = classify_component(g)
        if isinstance(shape, PathShape):
            return BranchDecision(BranchKind.PATH_SPLIT, split_vertex(shape))
        assert isinstance(shape, CycleShape)
        return BranchDecision(BranchKind.CYCLE_SPLIT, shape.order[0])
    if top == 3:
        candidates = [v for v in g.vertices if len(g.adjacency[v]) == 3]
        for x in candidates:
            if l_value(g, x) == 1:
                return BranchDecision(BranchKind.U_BRANCH, u_of(g, x), x)
        if five_vertex:
            for x in candidates:
                if _five_vertex_guard(g, x):
                    w = _sorted_neighbors(g, x)[-1]
                    return BranchDecision(BranchKind.FIVE_VERTEX, x, w)
        return BranchDecision(BranchKind.DIRECT_BRANCH, candidates[0])
    pivot = min(v for v in g.vertices if len(g.adjacency[v]) == top)
    return BranchDecision(BranchKind.HIGH_DEGREE_BRANCH, pivot)


def select_pivot_mc2(
    f: Formula, g: ConstraintGraph | None = None, *, five_vertex: bool = True
) -> BranchDecision:
    """Return the first MC2 case matching ``f``, with its pivot variable.

    For degree-3 formulas the candidates are scanned in ascending id: the
    first whose L value is 1 wins (branch on its U), then the first meeting
    the five-vertex guard, and otherwise the lowest-id degree-3 variable.
    For UBranch, ``auxiliary`` is the degree-3 variable that selected it;
    for FiveVertex it is the degree-1 neighbour ``w``.
    """
    return _decide(f, build_graph(f) if g is None else g, five_vertex)


def five_vertex_split(f: Formula, x: int, w: int, g: ConstraintGraph | None = None) -> tuple[Formula, Formula]:
    """Split off the clauses over {x, w}.

    Returns ``(F1, F2)`` where F1 holds every clause whose variables lie in
    {x, w} and F2 the rest.  The two parts share only ``x``.
    """
    if g is None:
        g = build_graph(f)
    if formula_degree(g) != 3 or len(g.adjacency.get(x, ())) != 3 or not _five_vertex_guard(g, x):
        raise ValueError(f"five-vertex guard does not hold at {x}")
    if g.adjacency.get(w) != frozenset({x}):
        raise ValueError(f"{w} is not a degree-1 neighbour of {x}")
    pair = {x, w}
    inner, outer = [], []
    for clause in f.clauses:
        (inner if {var_of(lit) for lit in clause} <= pair else outer).append(clause)
    return f.with_clauses(inner), f.with_clauses(outer)


def depth_limit(f: Formula) -> int:
    # each branch level removes a variable; a component level may sit above each
    return 2 * len(f.variables) + 2


class _Run:
    """Per-call configuration threaded through the recursion."""

    def __init__(self, *, five_vertex: bool, sink: "StatsSink | None", parallel: bool, limit: int):
        self.five_vertex = five_vertex
        self.sink = sink
        self.parallel = parallel
        self.limit = limit

    def record(self, decision, depth, f, value, children=0, drops=()):
        if self.sink is not None:
            self.sink.node(decision, depth, f, value, children, drops)

    def leaf(self, depth):
        if self.sink is not None:
            self.sink.leaf(depth)


Recurse = Callable[[Formula, _Run, int], int]


def _branch(f: Formula, lit: int, run: _Run, depth: int, recurse: Recurse) -> tuple[int, int]:
    """Count models of f with ``lit`` true.  Returns (count, clause drop)."""
    result = propagate(f, lit)
    if result.conflict:
        run.leaf(depth + 1)
        return 0, f.m
    return result.weight() * recurse(result.residual, run, depth + 1), f.m - result.residual.m


def branch_both(f: Formula, var: int, run: _Run, depth: int, recurse: Recurse) -> tuple[int, tuple[int, int]]:
    """Sum of the ``var`` and ``-var`` branches, positive first."""
    if run.parallel and depth < PARALLEL_DEPTH:
        with ThreadPoolExecutor(max_workers=1) as pool:
            pos = pool.submit(_branch, f, var, run, depth, recurse)
            neg = _branch(f, -var, run, depth, recurse)
            pos = pos.result()
    else:
        pos = _branch(f, var, run, depth, recurse)
        neg = _branch(f, -var, run, depth, recurse)
    return pos[0] + neg[0], (pos[1], neg[1])


def _five_vertex_side(f1: Formula, f2: Formula, lit: int, run: _Run, depth: int) -> tuple[int, int]:
    first = propagate(f1, lit)
    if first.conflict:
        run.leaf(depth + 1)
        return 0, f1.m + f2.m
    small = first.weight() * exhaustive_count(first.residual)
    second = propagate(f2, lit)
    if second.conflict:
        run.leaf(depth + 1)
        return 0, f1.m + f2.m
    big = second.weight() * _count(second.residual, run, depth + 1)
    return small * big, f1.m + f2.m - first.residual.m - second.residual.m


def _count(f: Formula, run: _Run, depth: int) -> int:
    if depth > run.limit:
        raise AssertionError(f"recursion depth {depth} exceeds the bound {run.limit}")
    g = build_graph(f)
    decision = _decide(f, g, run.five_vertex)
    kind = decision.kind
    children, drops = 0, ()
    if kind is BranchKind.EMPTY_CLAUSE:
        value = 0
    elif kind is BranchKind.EMPTY_FORMULA:
        value = 1
    elif kind is BranchKind.TINY_EXHAUSTIVE:
        value = exhaustive_count(f)
    elif kind is BranchKind.COMPONENT_SPLIT:
        parts = components(f, g)
        children = len(parts)
        value = 1
        for part, _ in parts:
            value *= _count(part, run, depth + 1)
    elif kind is BranchKind.FIVE_VERTEX:
        f1, f2 = five_vertex_split(f, decision.pivot, decision.auxiliary, g)
        pos = _five_vertex_side(f1, f2, decision.pivot, run, depth)
        neg = _five_vertex_side(f1, f2, -decision.pivot, run, depth)
        value, drops, children = pos[0] + neg[0], (pos[1], neg[1]), 2
    else:
        value, drops = branch_both(f, decision.pivot, run, depth, _count)
        children = 2
    run.record(decision, depth, f, value, children, drops)
    return value


def count_mc2(
    f: Formula,
    *,
    five_vertex: bool = True,
    sink: "StatsSink | None" = None,
    parallel: bool = False,
) -> int:
    """Number of models of a 2-CNF formula over its declared universe.

    ``five_vertex=False`` disables the five-vertex split, so those nodes
    fall through to plain branching on the degree-3 variable.  Raises
    :class:`~clausecount.formula.WidthError` for clauses longer than 2.
    """
    require_width(f, 2)
    run = _Run(five_vertex=five_vertex, sink=sink, parallel=parallel, limit=depth_limit(f))
    return _count(f, run, 0) << (f.num_vars - len(f.variables))
