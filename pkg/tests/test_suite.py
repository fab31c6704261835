import json

from clausecount.formula import parse_dimacs, validate_width
from clausecount.generate import max_distinct_clauses
from clausecount.suite import InstanceFamily, instances, run_bound_suite, run_equivalence_suite
import clausecount.suite as suite


def test_family_is_reproducible():
    fam = InstanceFamily(3, (3, 10), count=20, seed_base=42)
    a = [i.formula for i in instances(fam)]
    b = [i.formula for i in instances(fam)]
    assert a == b
    for inst in instances(fam):
        assert 3 <= inst.formula.n <= 10
        assert validate_width(inst.formula, 3)
        assert inst.seed == 42 + inst.index


def test_m_range_and_cap():
    for inst in instances(InstanceFamily(3, (3, 5), count=40)):
        n, m = inst.formula.n, inst.formula.m
        # n = 3 admits only 8 distinct 3-clauses, below the 3n upper end
        assert min(n, max_distinct_clauses(3, n)) <= m <= min(3 * n, max_distinct_clauses(3, n))


def test_equivalence_suite_clean():
    report = run_equivalence_suite(InstanceFamily(2, (3, 10), count=30, seed_base=1), "mc2")
    assert report.passed
    assert report.counterexamples == []
    rows = [json.loads(line) for line in report.to_jsonl().splitlines()]
    assert [r["index"] for r in rows] == list(range(30))
    assert all(r["count"] == r["oracle"] for r in rows)


def test_counterexamples_are_persisted(tmp_path, monkeypatch):
    real = suite.record_run

    def broken(f, algorithm, **kw):
        count, stats = real(f, algorithm, **kw)
        return count + 1, stats

    monkeypatch.setattr(suite, "record_run", broken)
    fam = InstanceFamily(2, (3, 6), count=3, seed_base=10)
    report = run_equivalence_suite(fam, "mc2", failures_dir=tmp_path / "failures")
    assert not report.passed
    assert report.flagged == [0, 1, 2]
    files = sorted(p.name for p in (tmp_path / "failures").iterdir())
    assert files == ["mc2-seed10.cnf", "mc2-seed11.cnf", "mc2-seed12.cnf"]
    reproduced = parse_dimacs((tmp_path / "failures" / "mc2-seed10.cnf").read_text())
    assert reproduced == next(instances(fam)).formula


def test_bound_suite_passes_and_has_teeth():
    fam = InstanceFamily(2, (3, 15), count=100)
    ok = run_bound_suite(fam, "mc2")
    assert ok.passed and 0 < ok.max_ratio <= 1
    dense = InstanceFamily(2, (20, 40), count=30, monotone=True)
    assert run_bound_suite(dense, "mc2").passed
    assert run_bound_suite(dense, "mc2", 1.0001).flagged
