"""Seeded instance families checked against the exhaustive oracle.

Every instance is reproducible from ``(seed_base, index)``: instance ``i``
draws its size and clauses from a generator seeded with ``seed_base + i``.
Reports are lists of per-instance dicts, serializable as JSON lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .analysis import BASES, bound_check, record_run
from .formula import Formula, serialize_dimacs
from .generate import make_rng, max_distinct_clauses, random_kcnf
from .propagation import oracle_count


@dataclass(frozen=True)
class InstanceFamily:
    """Random k-CNF instances with n in ``n_range`` and m in ``[lo*n, hi*n]``.

    ``m_factors`` are multiples of n; m is additionally capped by the number
    of distinct clauses that exist for the drawn n.  ``monotone`` families
    use positive literals only, which keeps them satisfiable and bushy.
    """

    k: int
    n_range: tuple[int, int]
    m_factors: tuple[int, int] = (1, 3)
    count: int = 500
    seed_base: int = 0
    monotone: bool = False


@dataclass(frozen=True)
class Instance:
    index: int
    seed: int
    formula: Formula


def instances(family: InstanceFamily) -> Iterator[Instance]:
    lo_n, hi_n = family.n_range
    lo_f, hi_f = family.m_factors
    for index in range(family.count):
        seed = family.seed_base + index
        rng = make_rng(seed)
        n = rng.randint(lo_n, hi_n)
        cap = max_distinct_clauses(family.k, n, family.monotone)
        m = min(rng.randint(lo_f * n, hi_f * n), cap)
        yield Instance(index, seed, random_kcnf(family.k, n, m, rng, family.monotone))


@dataclass
class SuiteReport:
    rows: list[dict] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    max_ratio: float = 0.0

    @property
    def passed(self) -> bool:
        return all(row["pass"] for row in self.rows)

    @property
    def flagged(self) -> list[int]:
        return [row["index"] for row in self.rows if not row["pass"]]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(row) + "\n" for row in self.rows)


def _persist(failures_dir: Path | None, name: str, f: Formula) -> str:
    text = serialize_dimacs(f)
    if failures_dir is not None:
        failures_dir.mkdir(parents=True, exist_ok=True)
        (failures_dir / name).write_text(text)
    return text


def run_equivalence_suite(
    family: InstanceFamily,
    algorithm: str = "mc2",
    *,
    failures_dir: str | Path | None = None,
    five_vertex: bool = True,
) -> SuiteReport:
    """Compare ``algorithm`` with the oracle on every member of ``family``.

    Mismatching instances are returned as DIMACS text and, when
    ``failures_dir`` is given, written there as ``<algorithm>-seed<seed>.cnf``.
    """
    failures = Path(failures_dir) if failures_dir is not None else None
    report = SuiteReport()
    for inst in instances(family):
        count, stats = record_run(inst.formula, algorithm, five_vertex=five_vertex)
        expected = oracle_count(inst.formula)
        row = {
            "index": inst.index,
            "seed": inst.seed,
            "n": inst.formula.n,
            "m": inst.formula.m,
            "count": str(count),
            "oracle": str(expected),
            "branchNodes": stats.branch_nodes,
            "pass": count == expected,
        }
        if not row["pass"]:
            report.counterexamples.append(
                _persist(failures, f"{algorithm}-seed{inst.seed}.cnf", inst.formula)
            )
        report.rows.append(row)
    return report


def run_bound_suite(
    family: InstanceFamily,
    algorithm: str = "mc2",
    base: float | None = None,
    *,
    failures_dir: str | Path | None = None,
) -> SuiteReport:
    """Check branch-node counts against ``(m + 1) * base ** m`` on every member."""
    if base is None:
        base = BASES[algorithm]
    failures = Path(failures_dir) if failures_dir is not None else None
    report = SuiteReport()
    for inst in instances(family):
        count, stats = record_run(inst.formula, algorithm)
        check = bound_check(stats, inst.formula.m, base)
        report.max_ratio = max(report.max_ratio, check.max_ratio)
        row = {
            "index": inst.index,
            "seed": inst.seed,
            "n": inst.formula.n,
            "m": inst.formula.m,
            "count": str(count),
            "branchNodes": stats.branch_nodes,
            "boundBase": base,
            "boundRatio": check.max_ratio,
            "pass": check.passed,
        }
        if not check.passed:
            report.counterexamples.append(
                _persist(failures, f"{algorithm}-bound-seed{inst.seed}.cnf", inst.formula)
            )
        report.rows.append(row)
    return report
