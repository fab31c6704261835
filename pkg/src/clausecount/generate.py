"""Seeded random k-CNF instances.

Randomness comes from :class:`random.Random`, i.e. MT19937 seeded with the
integer seed, and only through ``getrandbits`` and ``randrange`` /
``sample``, whose outputs for a given seed are fixed across platforms.
"""

from __future__ import annotations

import random
from math import comb

from .formula import Formula, canonical_clause

MAX_SEED = 2**64 - 1


class GenerationError(ValueError):
    pass


def max_distinct_clauses(k: int, n: int, monotone: bool = False) -> int:
    """Number of distinct non-tautological clauses with exactly k of n variables."""
    return comb(n, k) * (1 if monotone else 2**k)


def make_rng(seed: int) -> random.Random:
    if not 0 <= seed <= MAX_SEED:
        raise GenerationError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return random.Random(seed)


def random_kcnf(k: int, n: int, m: int, seed: int | random.Random, monotone: bool = False) -> Formula:
    """``m`` distinct clauses, each over ``k`` distinct variables of ``1..n``.

    Variables are drawn uniformly without replacement and polarities by fair
    coin flips; duplicate clauses are redrawn.  With ``monotone`` every
    literal is positive and no coins are flipped.
    """
    if k < 1 or n < k or m < 1:
        raise GenerationError(f"need 1 <= k <= n and m >= 1 (k={k}, n={n}, m={m})")
    limit = max_distinct_clauses(k, n, monotone)
    if m > limit:
        raise GenerationError(f"only {limit} distinct {k}-clauses exist over {n} variables; asked for {m}")
    rng = seed if isinstance(seed, random.Random) else make_rng(seed)
    universe = range(1, n + 1)
    seen: set[tuple[int, ...]] = set()
    clauses = []
    while len(clauses) < m:
        picked = rng.sample(universe, k)
        clause = canonical_clause(v if monotone or rng.getrandbits(1) else -v for v in picked)
        if clause not in seen:
            seen.add(clause)
            clauses.append(clause)
    return Formula.of(clauses, n)
