import json
import math

import numpy as np
import pytest

from clspace import spaces, zoo
from clspace.modular import CLSpace, modular
from clspace.report import csv_text, dumps, key_value_rows, table
from clspace.suite import (CRITERIA, amemiya_oracle, axiom_pairs, axiom_suite, quasi_triangle_ratios,
                           random_vector, reverify_eps_witness, run_criterion)
from clspace.indices import Regime, check_delta_epsilon


def test_fourteen_criteria():
    assert [c[0] for c in CRITERIA] == list(range(1, 15))


def test_axiom_pairs_span_classes():
    pairs = axiom_pairs()
    assert len(pairs) == 6
    assert {cl.inclusion_class for cl in pairs} == {1, 2, 3}
    assert all(cl.certified for cl in pairs)


@pytest.mark.parametrize("idx", range(6))
def test_axiom_suite_small(idx):
    res = axiom_suite(axiom_pairs()[idx], trials=60, seed=idx)
    assert res["passed"], res["examples"]


def test_axiom_suite_catches_a_wrong_constant(monkeypatch):
    # shrinking K below the honest value must produce condition (v) failures
    import clspace.suite as suite
    real = suite.condition_v_constant

    def too_small(cl, eps, A):
        cv = real(cl, eps, A)
        cv.K *= 1e-3
        return cv

    monkeypatch.setattr(suite, "condition_v_constant", too_small)
    res = axiom_suite(CLSpace(spaces.Lp(1.0), zoo.power(2.0)), trials=40)
    assert res["failures"]["v"] > 0


def test_random_vector_fits_carrier():
    rng = np.random.default_rng(0)
    for E in (spaces.Lp(1.0, gamma=1.0), spaces.lp(2.0), spaces.orlicz_capped()):
        for _ in range(20):
            x = random_vector(E, rng)
            assert x.carrier.kind == E.carrier.kind
            assert math.isfinite(modular(CLSpace(E, zoo.power(2.0)), x))


def test_amemiya_oracle_branches():
    assert amemiya_oracle(0.25) == 1.25
    assert amemiya_oracle(4.0) == 4.0


def test_quasi_triangle_ratios_bounded():
    res = quasi_triangle_ratios(CLSpace(spaces.Lp(0.5), zoo.power(2.0)), pairs=50, seed=1)
    assert res["max_ratio"] <= res["C"]


def test_eps_witness_reverification_detects_tampering():
    phi = zoo.dyadic_growth()
    rows = check_delta_epsilon(phi, Regime.INFINITY, (0.5,)).witness
    assert reverify_eps_witness(phi, rows)
    bad = [dict(r) for r in rows]
    bad[0]["ratio"] *= 0.5
    assert not reverify_eps_witness(phi, bad)


def test_seed_is_threaded_through():
    a = run_criterion(12, seed=100)
    b = run_criterion(12, seed=100)
    assert a.detail == b.detail and a.passed


# --- report formatting -------------------------------------------------------------------


def test_dumps_is_sorted_and_has_no_nan():
    text = dumps({"b": math.inf, "a": [math.nan, -math.inf, np.float64(1.5)], "c": np.arange(2)})
    data = json.loads(text)
    assert list(data) == ["a", "b", "c"]
    assert data == {"a": ["NaN", "-INF", 1.5], "b": "INF", "c": [0, 1]}


def test_csv_and_table():
    rows = [{"k": "x", "v": 1 / 3}, {"k": "longer", "v": math.inf}]
    assert csv_text(rows) == "k,v\nx,0.333333333333\nlonger,INF\n"
    lines = table(rows).splitlines()
    assert lines[0].split() == ["k", "v"] and lines[1].startswith("------")
    assert len(lines) == 4


def test_key_value_rows_flatten():
    rows = key_value_rows({"a": {"b": 1, "c": [1, 2]}, "d": [{"x": 1}]})
    assert rows == [{"key": "a.b", "value": 1}, {"key": "a.c", "value": [1, 2]}]
