"""CNF formulas over integer variables, plus DIMACS reading and writing.

Literals follow the DIMACS convention: a nonzero ``int`` whose absolute
value is the variable id and whose sign is the polarity.  A clause is a
tuple of literals in canonical order and a :class:`Formula` is an
immutable, deduplicated, canonically sorted tuple of clauses together with
the size of its declared variable universe.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Tuple

Clause = Tuple[int, ...]


class FormulaError(ValueError):
    """Raised when clauses violate the formula invariants."""


class DimacsError(FormulaError):
    """Raised for malformed DIMACS input."""


class DimacsWarning(UserWarning):
    pass


class WidthError(FormulaError):
    """A clause is wider than the counter accepts."""


def var_of(lit: int) -> int:
    return lit if lit > 0 else -lit


def negate(lit: int) -> int:
    return -lit


def literal_key(lit: int) -> tuple[int, bool]:
    # x before not-x, then by variable id
    return (var_of(lit), lit < 0)


def _clause_key(clause: Clause) -> list[tuple[int, bool]]:
    return [literal_key(lit) for lit in clause]


def canonical_clause(literals: Iterable[int]) -> Clause:
    """Sort and deduplicate ``literals``; reject 0 and complementary pairs."""
    lits = set(literals)
    if 0 in lits:
        raise FormulaError("0 is not a literal")
    for lit in lits:
        if -lit in lits:
            raise FormulaError(f"clause contains both {var_of(lit)} and -{var_of(lit)}")
    return tuple(sorted(lits, key=literal_key))


@dataclass(frozen=True)
class Formula:
    """An immutable CNF formula.

    Build instances with :meth:`Formula.of`, which canonicalizes the clause
    list.  Two formulas are equal iff they have the same clause set and the
    same declared universe size.
    """

    clauses: tuple[Clause, ...]
    num_vars: int

    @classmethod
    def of(cls, clauses: Iterable[Iterable[int]] = (), num_vars: int | None = None) -> "Formula":
        canon = set()
        for index, raw in enumerate(clauses, start=1):
            try:
                canon.add(canonical_clause(raw))
            except FormulaError as exc:
                raise FormulaError(f"clause {index}: {exc}") from None
        top = max((var_of(lit) for c in canon for lit in c), default=0)
        if num_vars is None:
            num_vars = top
        elif num_vars < 0:
            raise FormulaError("num_vars must be nonnegative")
        elif top > num_vars:
            raise FormulaError(f"variable {top} exceeds declared universe of {num_vars}")
        return cls(tuple(sorted(canon, key=_clause_key)), num_vars)

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def n(self) -> int:
        return self.num_vars

    @cached_property
    def variables(self) -> frozenset[int]:
        """Variables occurring in at least one clause."""
        return frozenset(var_of(lit) for c in self.clauses for lit in c)

    @property
    def width(self) -> int:
        return max((len(c) for c in self.clauses), default=0)

    @property
    def has_empty_clause(self) -> bool:
        # canonical order puts the empty clause first
        return bool(self.clauses) and not self.clauses[0]

    def with_clauses(self, clauses: Iterable[Iterable[int]]) -> "Formula":
        """A formula over the same declared universe with different clauses."""
        return Formula.of(clauses, self.num_vars)

    def __str__(self) -> str:
        body = " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)
        return body or "TRUE"


def validate_width(f: Formula, k: int) -> bool:
    """True iff no clause of ``f`` has more than ``k`` literals."""
    return all(len(c) <= k for c in f.clauses)


def require_width(f: Formula, k: int) -> None:
    for index, clause in enumerate(f.clauses, start=1):
        if len(clause) > k:
            raise WidthError(f"clause {index} has {len(clause)} literals; at most {k} allowed")


_HEADER = re.compile(r"^p\s+cnf\s+(\d+)\s+(\d+)\s*$")


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text.

    Duplicate literals and duplicate clauses are merged.  A header/body
    clause-count mismatch only warns; the body wins.  Tautological clauses
    and literals outside the declared universe raise :class:`DimacsError`.
    """
    num_vars = declared_clauses = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            match = _HEADER.match(line)
            if match is None:
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            num_vars, declared_clauses = int(match.group(1)), int(match.group(2))
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before 'p cnf' header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad token {token!r}") from None
            if lit == 0:
                clauses.append(pending)
                pending = []
                continue
            if var_of(lit) > num_vars:
                raise DimacsError(
                    f"line {lineno}: literal {lit} exceeds declared {num_vars} variables"
                )
            pending.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        # unterminated last clause
        clauses.append(pending)
    for index, clause in enumerate(clauses, start=1):
        lits = set(clause)
        if any(-lit in lits for lit in lits):
            raise DimacsError(f"clause {index} is tautological: {' '.join(map(str, clause))}")
    if declared_clauses != len(clauses):
        warnings.warn(
            f"header declares {declared_clauses} clauses but body has {len(clauses)}",
            DimacsWarning,
            stacklevel=2,
        )
    return Formula.of(clauses, num_vars)


def serialize_dimacs(f: Formula) -> str:
    lines = [f"p cnf {f.num_vars} {f.m}"]
    lines.extend(" ".join([*map(str, c), "0"]) for c in f.clauses)
    return "\n".join(lines) + "\n"
