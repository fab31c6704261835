"""Unit-literal propagation and exhaustive model counting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .formula import Formula, var_of

DEFAULT_ORACLE_CAP = 25
_CHUNK_BITS = 16


class OracleCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class PropagationResult:
    """Outcome of assigning a literal and propagating unit clauses.

    ``forced`` holds the variables given a value (the branch literal and
    every unit-propagated one); ``freed`` holds variables that dropped out
    of every clause without a value.  Each freed variable doubles the
    count of this branch.
    """

    residual: Formula
    forced: frozenset[int]
    freed: frozenset[int]
    conflict: bool

    def weight(self) -> int:
        return 1 << len(self.freed)


def unit_set(f: Formula, lit: int) -> frozenset[int]:
    """Variables implied through binary clauses once ``lit`` is set true.

    Any clause ``-p | q`` with ``p`` already implied adds ``var(q)``; this
    repeats until nothing new is added.
    """
    implied = {lit}
    found: set[int] = set()
    binary = [c for c in f.clauses if len(c) == 2]
    grew = True
    while grew:
        grew = False
        for a, b in binary:
            for dead, live in ((a, b), (b, a)):
                if -dead in implied and live not in implied:
                    implied.add(live)
                    found.add(var_of(live))
                    grew = True
    return frozenset(found)


def _assign(clauses: list[tuple[int, ...]], lit: int) -> list[tuple[int, ...]]:
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = tuple(x for x in c if x != -lit)
        out.append(c)
    return out


def propagate(f: Formula, lit: int) -> PropagationResult:
    """Set ``lit`` true and run the unit literal rule to a fixpoint.

    Units are propagated lowest variable id first.  Propagation stops as
    soon as an empty clause appears; the residual then contains it.
    """
    v = var_of(lit)
    before = f.variables
    if f.clauses and v not in before:
        raise ValueError(f"variable {v} does not occur in the formula")
    clauses = list(f.clauses)
    forced = set()
    conflict = False
    pending: int | None = lit
    while pending is not None:
        forced.add(var_of(pending))
        clauses = _assign(clauses, pending)
        if any(not c for c in clauses):
            conflict = True
            break
        units = [c[0] for c in clauses if len(c) == 1]
        pending = min(units, key=lambda u: (var_of(u), u < 0)) if units else None
    residual = f.with_clauses(clauses)
    freed = before - forced - residual.variables
    return PropagationResult(residual, frozenset(forced), frozenset(freed), conflict)


def exhaustive_count(f: Formula, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Count models over the occurring variables by trying every assignment.

    Declared variables that occur in no clause are not counted.
    """
    order = sorted(f.variables)
    n = len(order)
    if n > cap:
        raise OracleCapExceeded(f"{n} occurring variables exceed the oracle cap of {cap}")
    if f.has_empty_clause:
        return 0
    bit = {v: i for i, v in enumerate(order)}
    # per clause: (mask of bits, required values)
    checks = []
    for c in f.clauses:
        mask = want = 0
        for lit in c:
            mask |= 1 << bit[var_of(lit)]
            if lit > 0:
                want |= 1 << bit[var_of(lit)]
        checks.append((mask, want))
    total = 0
    step = 1 << min(n, _CHUNK_BITS)
    for start in range(0, 1 << n, step):
        assignments = np.arange(start, start + step, dtype=np.int64)
        ok = np.ones(step, dtype=bool)
        for mask, want in checks:
            # a clause fails only when every literal is false
            ok &= ((assignments ^ want) & mask) != mask
        total += int(np.count_nonzero(ok))
    return total


def oracle_count(f: Formula, cap: int = DEFAULT_ORACLE_CAP) -> int:
    """Exhaustive count over the full declared universe."""
    return exhaustive_count(f, cap) << (f.num_vars - len(f.variables))
