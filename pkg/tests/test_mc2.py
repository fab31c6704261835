import pytest
from hypothesis import given, settings

from clausecount.analysis import record_run
from clausecount.formula import Formula, WidthError
from clausecount.graph import build_graph, components
from clausecount.mc2 import (
    BranchKind,
    count_mc2,
    five_vertex_split,
    select_pivot_mc2,
)
from clausecount.propagation import exhaustive_count, propagate
from clausecount.suite import InstanceFamily, instances

from conftest import brute_force, brute_force_universe, five_vertex_instance, formulas


def test_examples():
    assert count_mc2(Formula.of([(1, 2)], 2)) == 3
    assert count_mc2(Formula.of([(1, 2), (2, 3)], 3)) == 5
    assert count_mc2(Formula.of([], 3)) == 8
    assert count_mc2(Formula.of([(), (1, 2)], 2)) == 0


def test_rejects_wide_clauses():
    with pytest.raises(WidthError):
        count_mc2(Formula.of([(1, 2, 3)]))


def test_five_vertex_core_count_and_split(five_vertex_core):
    assert brute_force(five_vertex_core) == 22
    assert count_mc2(five_vertex_core) == 22
    f1, f2 = five_vertex_split(five_vertex_core, 1, 2)
    assert f1.clauses == ((1, 2),)
    assert set(f2.clauses) == set(five_vertex_core.clauses) - {(1, 2)}
    assert f1.variables & f2.variables == {1}


def test_five_vertex_split_precondition(five_vertex_core, single_exit):
    with pytest.raises(ValueError):
        five_vertex_split(five_vertex_core, 1, 3)
    with pytest.raises(ValueError):
        five_vertex_split(single_exit, 1, 4)


def test_select_pivot_cases(single_exit, five_vertex_core):
    cycle = Formula.of([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)])
    assert select_pivot_mc2(cycle).kind is BranchKind.CYCLE_SPLIT
    assert select_pivot_mc2(cycle).pivot == 1
    path = Formula.of([(1, 2), (2, 3), (3, 4), (4, 5)])
    assert select_pivot_mc2(path) == select_pivot_mc2(path, build_graph(path))
    assert select_pivot_mc2(path).pivot == 3
    d = select_pivot_mc2(single_exit)
    assert (d.kind, d.pivot, d.auxiliary) == (BranchKind.U_BRANCH, 4, 1)
    d = select_pivot_mc2(five_vertex_core)
    assert (d.kind, d.pivot, d.auxiliary) == (BranchKind.FIVE_VERTEX, 1, 2)
    d = select_pivot_mc2(five_vertex_core, five_vertex=False)
    assert (d.kind, d.pivot) == (BranchKind.DIRECT_BRANCH, 1)


def test_select_pivot_small_cases():
    assert select_pivot_mc2(Formula.of([()])).kind is BranchKind.EMPTY_CLAUSE
    assert select_pivot_mc2(Formula.of([], 3)).kind is BranchKind.EMPTY_FORMULA
    assert select_pivot_mc2(Formula.of([(1, 2), (2, 3)])).kind is BranchKind.TINY_EXHAUSTIVE
    split = Formula.of([(1, 2), (2, 3), (4, 5), (5, 6)])
    assert select_pivot_mc2(split).kind is BranchKind.COMPONENT_SPLIT


def test_high_degree_pivot():
    star = Formula.of([(1, 9), (2, 9), (3, 9), (4, 9), (5, 9), (1, 2), (3, 4), (4, 5), (1, 5)])
    d = select_pivot_mc2(star)
    assert (d.kind, d.pivot) == (BranchKind.HIGH_DEGREE_BRANCH, 9)


def test_triangle_is_tiny_before_cycle():
    # first match wins: three variables never reach the cycle case
    tri = Formula.of([(2, 3), (3, 4), (2, 4)])
    assert select_pivot_mc2(tri).kind is BranchKind.TINY_EXHAUSTIVE


def test_direct_branch_when_neighbours_are_busy():
    # x=1 with three neighbours, each joined to its own outside vertex
    f = Formula.of([(1, 2), (1, 3), (1, 4), (2, 5), (3, 6), (4, 7)])
    d = select_pivot_mc2(f)
    assert (d.kind, d.pivot) == (BranchKind.DIRECT_BRANCH, 1)
    assert count_mc2(f) == brute_force(f)


def check_local_identities(stats):
    """Re-derive each recorded node's value from its children."""
    for rec in stats.trace:
        f, kind, pivot = rec.formula, rec.decision.kind, rec.decision.pivot
        assert rec.count == brute_force(f)
        if kind is BranchKind.COMPONENT_SPLIT:
            product = 1
            for part, _ in components(f):
                product *= brute_force(part)
            assert rec.count == product
        elif kind is BranchKind.FIVE_VERTEX:
            f1, f2 = five_vertex_split(f, pivot, rec.decision.auxiliary)
            total = 0
            for lit in (pivot, -pivot):
                a, b = propagate(f1, lit), propagate(f2, lit)
                if not (a.conflict or b.conflict):
                    total += a.weight() * exhaustive_count(a.residual) * b.weight() * brute_force(b.residual)
            assert rec.count == total
        elif pivot is not None:
            total = 0
            for lit in (pivot, -pivot):
                r = propagate(f, lit)
                if not r.conflict:
                    total += r.weight() * brute_force(r.residual)
            assert rec.count == total


@settings(max_examples=150, deadline=None)
@given(formulas(max_vars=11, max_clauses=22, max_width=2))
def test_matches_oracle(f):
    assert count_mc2(f) == brute_force_universe(f)


@settings(max_examples=60, deadline=None)
@given(formulas(max_vars=11, max_clauses=22, max_width=2))
def test_local_identities(f):
    count, stats = record_run(f, "mc2", trace=True)
    check_local_identities(stats)
    assert stats.is_consistent()


@pytest.mark.parametrize("seed", range(15))
def test_five_vertex_local_identities(seed):
    f = five_vertex_instance(seed)
    count, stats = record_run(f, "mc2", trace=True)
    assert stats.case_histogram["FiveVertex"] >= 1
    check_local_identities(stats)
    assert count == brute_force_universe(f)


def test_random_family_local_identities():
    for inst in instances(InstanceFamily(2, (5, 12), count=40, seed_base=900)):
        _, stats = record_run(inst.formula, "mc2", trace=True)
        check_local_identities(stats)
        assert stats.is_consistent()


@settings(max_examples=80, deadline=None)
@given(formulas(max_vars=11, max_clauses=22, max_width=2))
def test_five_vertex_toggle_and_bounds(f):
    on = count_mc2(f)
    assert on == count_mc2(f, five_vertex=False)
    assert 0 <= on <= 2**f.num_vars


def test_deterministic_trace():
    f = five_vertex_instance(3)
    runs = [record_run(f, "mc2", trace=True)[1] for _ in range(2)]
    assert [r.decision for r in runs[0].trace] == [r.decision for r in runs[1].trace]


def test_parallel_mode_agrees():
    for inst in instances(InstanceFamily(2, (8, 15), count=20, seed_base=77, monotone=True)):
        f = inst.formula
        plain, s1 = record_run(f, "mc2")
        par, s2 = record_run(f, "mc2", parallel=True)
        assert plain == par
        assert s1.branch_nodes == s2.branch_nodes
        assert s1.leaves == s2.leaves
        assert s1.case_histogram == s2.case_histogram
        assert s2.is_consistent()
