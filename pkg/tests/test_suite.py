"""Randomized verification suite: determinism, zero violations, bookkeeping."""

import pytest

from tscalc import InvalidParameterError, run_property_suite
from tscalc.suite import INEQUALITY_NAMES


def test_all_four_inequalities_hold_on_random_instances():
    summary = run_property_suite(60, seed=123)
    assert set(summary.counts) == set(INEQUALITY_NAMES)
    for name, counts in summary.counts.items():
        assert counts["violations"] == 0, f"{name}: {counts}"
        assert counts["skipped"] == 0, f"{name}: {counts}"
        assert counts["holds"] == 60
    assert summary.witnesses == []
    assert summary.total_violations == 0


def test_deterministic_for_fixed_seed():
    a = run_property_suite(25, seed=7).as_document()
    b = run_property_suite(25, seed=7).as_document()
    assert a == b


def test_different_seeds_draw_different_instances():
    # weak smoke check: the per-trial recipes differ between seeds
    from tscalc.suite import _run_trial
    from tscalc.calculus import CalcConfig

    cfg = CalcConfig(quad_abs_tol=1e-9, quad_rel_tol=1e-9)
    r1, _, _ = _run_trial("holder", 1, 0, cfg)
    r2, _, _ = _run_trial("holder", 2, 0, cfg)
    assert r1.params != r2.params or r1.lhs != r2.lhs


def test_trials_validated():
    with pytest.raises(InvalidParameterError):
        run_property_suite(0)
    with pytest.raises(InvalidParameterError):
        run_property_suite(-3)


def test_document_shape():
    doc = run_property_suite(5, seed=9).as_document()
    assert doc["trials"] == 5
    assert doc["seed"] == 9
    assert set(doc["inequalities"]) == set(INEQUALITY_NAMES)
    for counts in doc["inequalities"].values():
        assert set(counts) == {"holds", "violations", "skipped"}
        assert sum(counts.values()) == 5
    assert doc["total_violations"] == 0
    assert doc["witnesses"] == []
