"""Branching numbers and branching-tree statistics for the counters."""

from __future__ import annotations

import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .formula import Formula
from .mc2 import BRANCHING_KINDS, TERMINAL_KINDS, BranchDecision, count_mc2
from .mc3 import count_mc3

# bound bases claimed for the two algorithms
MC2_BASE = 1.1892
MC3_BASE = 1.4142
BASES = {"mc2": MC2_BASE, "mc3": MC3_BASE}

_TOLERANCE = 1e-12


def branching_number(drops: Sequence[float]) -> float:
    """The root x > 1 of ``sum(x ** -r for r in drops) == 1``.

    A single child gives 1.  Solved by bisection to 1e-12.
    """
    drops = [float(r) for r in drops]
    if not drops:
        raise ValueError("branching vector is empty")
    if any(not r > 0 for r in drops):
        raise ValueError(f"branching vector has a nonpositive drop: {drops}")
    if len(drops) == 1:
        return 1.0

    def excess(x: float) -> float:
        return math.fsum(x ** -r for r in drops) - 1.0

    lo, hi = 1.0 + 1e-15, 2.0
    while excess(hi) >= 0:
        hi *= 2
    while hi - lo > _TOLERANCE:
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class TraceRecord:
    """One completed node of a recorded branching tree."""

    decision: BranchDecision
    depth: int
    formula: Formula
    count: int
    drops: tuple[int, ...]


@dataclass
class TreeStats:
    branch_nodes: int = 0
    leaves: int = 0
    max_depth: int = 0
    case_histogram: Counter = field(default_factory=Counter)
    # sum of (children - 1) over internal nodes; leaves == this + 1 for any tree
    surplus_children: int = 0
    trace: list[TraceRecord] | None = None

    @property
    def per_node_vectors(self) -> list[tuple[int, ...]]:
        """Observed clause-count drops at each branching node (trace mode only).

        Drops are raw observations and may be zero, e.g. when a branch only
        shortens 3-clauses.
        """
        if self.trace is None:
            return []
        return [r.drops for r in self.trace if r.decision.kind in BRANCHING_KINDS]

    def is_consistent(self) -> bool:
        return self.leaves == self.surplus_children + 1


class StatsSink:
    """Collects :class:`TreeStats` from a counting run; safe to share across threads."""

    def __init__(self, trace: bool = False):
        self.stats = TreeStats(trace=[] if trace else None)
        self._lock = threading.Lock()

    def node(self, decision, depth, f, value, children=0, drops=()):
        kind = decision.kind
        with self._lock:
            s = self.stats
            s.case_histogram[kind.value] += 1
            s.max_depth = max(s.max_depth, depth)
            if kind in TERMINAL_KINDS:
                s.leaves += 1
            else:
                s.surplus_children += children - 1
            if kind in BRANCHING_KINDS:
                s.branch_nodes += 1
            if s.trace is not None:
                s.trace.append(TraceRecord(decision, depth, f, value, tuple(drops)))

    def leaf(self, depth):
        """A branch that ended in a conflict."""
        with self._lock:
            self.stats.leaves += 1
            self.stats.max_depth = max(self.stats.max_depth, depth)


def record_run(
    f: Formula,
    algorithm: str = "mc2",
    *,
    trace: bool = False,
    five_vertex: bool = True,
    parallel: bool = False,
) -> tuple[int, TreeStats]:
    """Count ``f`` with ``algorithm`` ("mc2" or "mc3") while recording the tree."""
    counters = {"mc2": count_mc2, "mc3": count_mc3}
    if algorithm not in counters:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    sink = StatsSink(trace=trace)
    count = counters[algorithm](f, five_vertex=five_vertex, sink=sink, parallel=parallel)
    return count, sink.stats


@dataclass(frozen=True)
class BoundReport:
    max_ratio: float
    passed: bool


def bound_ratio(branch_nodes: int, m: int, base: float) -> float:
    """branch_nodes / ((m + 1) * base ** m), computed in log space."""
    if branch_nodes == 0:
        return 0.0
    return math.exp(math.log(branch_nodes) - math.log(m + 1) - m * math.log(base))


def bound_check(stats: TreeStats | int, m: int, base: float) -> BoundReport:
    """Compare a tree's branch-node count to ``(m + 1) * base ** m``.

    The ``m + 1`` factor stands in for the polynomial the asymptotic bound
    hides.  Accepts a :class:`TreeStats` or a bare branch-node count.
    """
    if not base > 1:
        raise ValueError("base must exceed 1")
    nodes = stats.branch_nodes if isinstance(stats, TreeStats) else int(stats)
    ratio = bound_ratio(nodes, m, base)
    return BoundReport(ratio, ratio <= 1.0)


def stats_report(f: Formula, algorithm: str, count: int, stats: TreeStats, base: float | None = None) -> dict:
    """The JSON-ready statistics object for one run."""
    if base is None:
        base = BASES.get(algorithm, MC3_BASE)
    report = bound_check(stats, f.m, base)
    out = {
        "algorithm": algorithm,
        "n": f.num_vars,
        "m": f.m,
        "count": str(count),
        "branchNodes": stats.branch_nodes,
        "leaves": stats.leaves,
        "maxDepth": stats.max_depth,
        "caseHistogram": dict(sorted(stats.case_histogram.items())),
        "boundBase": base,
        "boundRatio": report.max_ratio,
        "pass": report.passed,
    }
    if stats.trace is not None:
        out["trace"] = [
            {
                "case": r.decision.kind.value,
                "pivot": r.decision.pivot,
                "depth": r.depth,
                "m": r.formula.m,
                "drops": list(r.drops),
            }
            for r in stats.trace
        ]
    return out
