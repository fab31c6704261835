import itertools
import random

import pytest
from hypothesis import strategies as st

from clausecount.formula import Formula, var_of


def brute_force(f: Formula) -> int:
    """Models over the occurring variables, by plain enumeration."""
    order = sorted(f.variables)
    total = 0
    for bits in itertools.product((False, True), repeat=len(order)):
        value = dict(zip(order, bits))
        if all(any(value[var_of(l)] == (l > 0) for l in c) for c in f.clauses):
            total += 1
    return total


def brute_force_universe(f: Formula) -> int:
    return brute_force(f) << (f.num_vars - len(f.variables))


def restrict(f: Formula, lit: int) -> Formula:
    """f with ``lit`` added as a unit clause."""
    return f.with_clauses(list(f.clauses) + [(lit,)])


@st.composite
def formulas(draw, max_vars=8, max_clauses=14, min_width=1, max_width=3):
    n = draw(st.integers(1, max_vars))
    m = draw(st.integers(0, max_clauses))
    clauses = []
    for _ in range(m):
        width = draw(st.integers(min_width, min(max_width, n)))
        vs = draw(st.lists(st.integers(1, n), min_size=width, max_size=width, unique=True))
        clauses.append([v if draw(st.booleans()) else -v for v in vs])
    extra = draw(st.integers(0, 2))
    return Formula.of(clauses, n + extra)


def five_vertex_instance(seed: int) -> Formula:
    """A 2-CNF containing the five-vertex pattern around variable 1.

    Core: 1 joined to w=2, y=3, z=4; y-a (a=5), z-b (b=6); a and b are the
    ends of a random path through extra variables, so 1 is the only
    degree-3 vertex of its component.  Some edges carry a second clause, and
    a disjoint random 2-CNF is sometimes added beside it.
    """
    rng = random.Random(seed)
    sign = lambda v: v if rng.getrandbits(1) else -v  # noqa: E731
    edges = [(1, 2), (1, 3), (1, 4), (3, 5), (4, 6)]
    inner = list(range(7, 7 + rng.randint(0, 6)))
    rng.shuffle(inner)
    chain = [5, *inner, 6]
    edges += list(zip(chain, chain[1:]))
    clauses = []
    for u, v in edges:
        first = (sign(u), sign(v))
        clauses.append(first)
        if rng.random() < 0.3:
            clauses.append((-first[0], first[1]))
    top = max(chain + [6])
    if rng.random() < 0.5:
        extra = rng.randint(3, 6)
        for _ in range(rng.randint(2, 2 * extra)):
            u, v = rng.sample(range(top + 1, top + extra + 1), 2)
            clauses.append((sign(u), sign(v)))
        top += extra
    return Formula.of(clauses, top)


@pytest.fixture
def five_vertex_core():
    # x=1, w=2, y=3, z=4, a=5, b=6
    return Formula.of([(1, 2), (1, 3), (1, 4), (3, 5), (4, 6)], 6)


@pytest.fixture
def single_exit():
    # x=1 with neighbours y=2, z=3 (joined to each other) and w=4 -> v=5
    return Formula.of([(1, 2), (1, 3), (1, 4), (2, 3), (4, 5)], 5)
