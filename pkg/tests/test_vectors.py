import numpy as np
import pytest
from hypothesis import given, strategies as st

from clspace.vectors import COUNTING, INTERVAL, Carrier, SimpleVector, VectorError


def test_canonical_form_merges_and_drops():
    x = SimpleVector.from_parts([(2, 3, 1.0), (0, 1, 0.0), (1, 2, 1.0)])
    assert x.parts() == [(1.0, 3.0, 1.0)]


def test_overlap_rejected():
    with pytest.raises(VectorError):
        SimpleVector.from_parts([(0, 2, 1.0), (1, 3, 1.0)])


def test_counting_needs_integer_indices():
    with pytest.raises(VectorError):
        SimpleVector.from_parts([(0.5, 2, 1.0)], COUNTING)
    with pytest.raises(VectorError):
        SimpleVector.from_parts([(0, 1, 1.0)], COUNTING)


def test_gamma_bounds_regions():
    with pytest.raises(VectorError):
        SimpleVector.indicator(0, 2, Carrier("interval", 1.0))


def test_signs_survive_abs_and_negation():
    x = SimpleVector.from_parts([(0, 1, -2.0), (1, 2, 3.0)])
    assert abs(x).parts() == [(0.0, 1.0, 2.0), (1.0, 2.0, 3.0)]
    assert (-x).parts() == [(0.0, 1.0, 2.0), (1.0, 2.0, -3.0)]


def test_json_round_trip():
    x = SimpleVector.from_parts([(0, 1.5, -2.0), (3, 4, 0.25)])
    assert SimpleVector.from_dict(x.to_dict()).parts() == x.parts()
    s = SimpleVector.from_dict({"carrier": {"counting": {}}, "parts": [{"index": 3, "value": 2}]})
    assert s.parts() == [(3.0, 4.0, 2.0)]


@st.composite
def vectors(draw):
    cuts = sorted(draw(st.lists(st.integers(0, 40), min_size=2, max_size=10, unique=True)))
    vals = draw(st.lists(st.floats(-5, 5), min_size=len(cuts) // 2, max_size=len(cuts) // 2))
    return SimpleVector.from_parts([(a, b, v) for a, b, v in zip(cuts[::2], cuts[1::2], vals)])


@given(vectors(), vectors())
def test_addition_is_pointwise(x, y):
    pts = np.linspace(0, 41, 500)
    assert np.allclose((x + y).evaluate_at(pts), x.evaluate_at(pts) + y.evaluate_at(pts), atol=1e-12)


@given(vectors(), st.floats(-10, 10))
def test_scaling_is_pointwise(x, c):
    pts = np.linspace(0, 41, 500)
    assert np.allclose(x.scale(c).evaluate_at(pts), c * x.evaluate_at(pts))


@given(vectors())
def test_canonical_invariants(x):
    assert np.all(x.values > 0)
    assert np.all(x.starts[1:] >= x.ends[:-1])
    merged = (x.starts[1:] == x.ends[:-1]) & (x.signed_values[1:] == x.signed_values[:-1])
    assert not np.any(merged)


@given(vectors(), vectors())
def test_domination_and_disjointness(x, y):
    assert abs(x).dominated_by(abs(x) + abs(y))
    assert x.restrict(0, 10).disjoint_from(y.restrict(10, 41))
