import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from clspace import spaces, zoo
from clspace.modular import (CLSpace, NotCertified, aoki_rolewicz_exponent, condition_v_constant, luxemburg_norm,
                             mazur_orlicz_f_norm, membership_report, minimized_quasi_triangle_constant, modular,
                             norm_null_equivalence_check, order_continuity_probe, quasi_triangle_constant,
                             sup_bound_check, unit_sphere_transfer_check)
from clspace.indices import PreconditionError
from clspace.orlicz import INF
from clspace.vectors import COUNTING, INTERVAL, Carrier, SimpleVector

L1 = spaces.Lp(1.0)


@st.composite
def steps(draw, span=10.0, carrier=INTERVAL, lo=0.01, hi=10.0):
    cuts = sorted(draw(st.lists(st.floats(0.0, span), min_size=2, max_size=8, unique=True)))
    parts = [(a, b, draw(st.floats(lo, hi))) for a, b in zip(cuts[::2], cuts[1::2]) if b - a > 1e-6]
    assume(parts)
    return SimpleVector.from_parts(parts, carrier)


def bisect(pred, lo, hi, iters=200):
    """Smallest lam in [lo, hi] with pred(lam), for a monotone predicate."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if pred(mid) else (mid, hi)
    return hi


# --- modular ---------------------------------------------------------------------


def test_modular_breaks_convexity():
    cl = CLSpace(spaces.Lp(0.25), zoo.power(2.0))
    x, y = SimpleVector.indicator(0, 1), SimpleVector.indicator(1, 2)
    assert modular(cl, 0.5 * x + 0.5 * y) == 4.0
    assert modular(cl, x) + modular(cl, y) == 2.0


def test_modular_of_zero():
    for cl in (CLSpace(L1, zoo.power(2.0)), CLSpace(spaces.cesaro(2.0), zoo.log1p())):
        assert modular(cl, SimpleVector.zero(cl.E.carrier)) == 0.0


def test_modular_infinite_past_jump():
    cl = CLSpace(L1, zoo.linear_then_inf(1.0))
    assert modular(cl, SimpleVector.indicator(0, 1, value=2.0)) == INF


@given(steps())
def test_modular_is_even(x):
    cl = CLSpace(L1, zoo.power(2.0))
    assert modular(cl, -x) == modular(cl, x)


# --- Luxemburg gauge -----------------------------------------------------------------


@given(steps(), st.sampled_from([0.5, 1.0, 2.0, 3.0]))
def test_power_gauge_is_lp_norm(x, p):
    expected = float(np.sum(x.measures * x.values ** p)) ** (1 / p)
    assert luxemburg_norm(CLSpace(L1, zoo.power(p)), x).norm == pytest.approx(expected, rel=1e-8)


def test_flat_step_gauge():
    cl = CLSpace(L1, zoo.flat_step())
    assert luxemburg_norm(cl, SimpleVector.indicator(0, 1)).norm == pytest.approx(0.5, rel=1e-8)


def _indicator_modular(E, phi, chi):
    """rho(chi / lam) computed without the library's composition."""
    if E.kind == "Lp":
        m = float(chi.measures.sum())
        return lambda lam: phi(1.0 / lam) * m ** (1.0 / E.p)
    # Cesaro: phi(1/lam) times the ces_p norm of chi from a dense sum plus the harmonic tail
    from scipy.special import zeta
    n = int(chi.ends.max())
    c = np.zeros(n)
    for s, e, _ in chi.parts():
        c[int(s) - 1:int(e) - 1] = 1.0
    avg = np.cumsum(c) / np.arange(1, n + 1)
    size = (float(np.sum(avg ** E.p)) + c.sum() ** E.p * zeta(E.p, n + 1)) ** (1 / E.p)
    return lambda lam: phi(1.0 / lam) * size


@pytest.mark.parametrize("E", [spaces.Lp(1.0), spaces.Lp(2.0), spaces.cesaro(2.0)], ids=lambda E: E.label())
@pytest.mark.parametrize("phi", [zoo.power(2.0), zoo.log1p(), zoo.flat_step()], ids=lambda f: f.name)
def test_indicator_gauge_against_bisection(E, phi):
    rng = np.random.default_rng(7)
    cl = CLSpace(E, phi)
    for _ in range(5):
        if E.carrier.kind == "counting":
            chi = SimpleVector.on_indices(rng.choice(np.arange(1, 60), size=int(rng.integers(1, 8)), replace=False))
        else:
            a = float(rng.uniform(0, 5))
            chi = SimpleVector.indicator(a, a + float(rng.uniform(0.01, 5)))
        rho = _indicator_modular(E, phi, chi)
        expected = bisect(lambda lam: rho(lam) <= 1.0, 1e-6, 1e6)
        assert luxemburg_norm(cl, chi).norm == pytest.approx(expected, rel=1e-8)


def test_gauge_reports_jump():
    cl = CLSpace(L1, zoo.square_then_inf())
    r = luxemburg_norm(cl, SimpleVector.indicator(0, 0.25))
    assert r.norm == pytest.approx(1.0, rel=1e-9)
    assert "JUMP" in r.flags and r.feasible


def test_gauge_of_bounded_function_can_vanish():
    cl = CLSpace(L1, zoo.square_min_one())
    r = luxemburg_norm(cl, SimpleVector.indicator(0, 0.5))
    assert r.norm == 0.0 and "DEGENERATE_PHI" in r.flags


def test_uncertified_space_is_flagged():
    # a bounded function has lower index zero at infinity
    cl = CLSpace(L1, zoo.square_min_one())
    assert not cl.certified
    assert "NOT_CERTIFIED_QUASINORM" in luxemburg_norm(cl, SimpleVector.indicator(0, 2)).flags
    with pytest.raises(NotCertified):
        condition_v_constant(cl, 0.1, 1.0)


@given(steps(), st.floats(1e-3, 1e3), st.sampled_from([zoo.power(2.0), zoo.flat_step(), zoo.expm1()]))
def test_gauge_homogeneity(x, a, phi):
    cl = CLSpace(L1, phi)
    tol = 1e-10
    n1 = luxemburg_norm(cl, x.scale(a), tol).norm
    n0 = luxemburg_norm(cl, x, tol).norm
    assert n1 == pytest.approx(a * n0, rel=2 * tol + 1e-12)


@given(steps(), st.sampled_from([zoo.power(2.0), zoo.flat_step(), zoo.square_then_inf(), zoo.zero_then_linear()]))
def test_gauge_is_feasible_and_tight(x, phi):
    cl = CLSpace(L1, phi)
    r = luxemburg_norm(cl, x)
    assume(0 < r.norm < INF)
    assert modular(cl, x / r.norm) <= 1.0
    assert not modular(cl, x / (r.norm * (1 - 1e-6))) < 1.0 - 1e-6 or "JUMP" in r.flags or phi.a_phi > 0


@given(steps(), st.sampled_from([zoo.power(2.0), zoo.flat_step(), zoo.log1p()]))
def test_small_norm_means_small_modular(x, phi):
    cl = CLSpace(L1, phi)
    if luxemburg_norm(cl, x).norm < 1:
        assert modular(cl, x) <= 1.0


# --- F-norm ---------------------------------------------------------------------


@given(steps(), st.sampled_from([0.5, 1.0, 2.0, 3.0]))
def test_f_norm_power(x, p):
    integral = float(np.sum(x.measures * x.values ** p))
    got = mazur_orlicz_f_norm(CLSpace(L1, zoo.power(p)), x).norm
    assert got == pytest.approx(integral ** (1 / (1 + p)), rel=1e-8)


def test_f_norm_zero():
    assert mazur_orlicz_f_norm(CLSpace(L1, zoo.power(2.0)), SimpleVector.zero()).norm == 0.0


def test_f_norm_linear():
    cl = CLSpace(L1, zoo.power(1.0))
    assert mazur_orlicz_f_norm(cl, SimpleVector.indicator(0, 1, value=4.0)).norm == pytest.approx(2.0, rel=1e-9)


# --- left continuity and membership ---------------------------------------------------------


@given(steps(span=3.0, hi=3.0), st.sampled_from([zoo.power(2.0), zoo.square_then_inf(), zoo.flat_step(),
                                                 zoo.linear_then_inf(), zoo.pole()]))
def test_left_continuity(x, phi):
    cl = CLSpace(L1, phi)
    target = modular(cl, x)
    lams = 1.0 - np.geomspace(1e-1, 1e-9, 30)
    vals = [modular(cl, float(lam) * x) for lam in lams]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    if math.isfinite(target):
        assert vals[-1] == pytest.approx(target, rel=1e-6, abs=1e-12)
    else:
        assert vals[-1] > 1e3 or math.isinf(vals[-1])


MEMBERSHIP_SPACES = [spaces.Lp(1.0), spaces.Lp(0.5, gamma=4.0), spaces.lorentz(0.5), spaces.l1_cap_linf(),
                     spaces.orlicz_capped()]


@given(steps(span=5.0), st.sampled_from(MEMBERSHIP_SPACES), st.sampled_from(zoo.core_zoo()))
def test_membership_tests_agree(x, E, phi):
    assume(x.ends[-1] <= E.gamma)
    rep = membership_report(CLSpace(E, phi), x)
    assert rep["some_finite"] == rep["vanishes"]


# --- condition (v) and constants --------------------------------------------------------


def test_condition_v_class_one_power():
    cv = condition_v_constant(CLSpace(spaces.Lp(0.5), zoo.power(2.0)), 0.1, 1.0)
    assert cv.p == pytest.approx(2.0, rel=1e-8)
    assert cv.K == pytest.approx(2.0)  # C_E of L_{1/2}


def _sampled_condition_v(cl, cv, carrier, rng, count=1000, support=1.0, integer=False):
    worst = -INF
    for _ in range(count):
        k = int(rng.integers(1, 6))
        if integer:
            idx = rng.choice(np.arange(1, 30), size=k, replace=False)
            x = SimpleVector.from_parts([(int(i), int(i) + 1, float(v)) for i, v in zip(idx, rng.uniform(0, 3, k))],
                                        carrier)
        else:
            cuts = np.sort(rng.uniform(0, support, 2 * k))
            x = SimpleVector.from_parts(list(zip(cuts[::2], cuts[1::2], rng.uniform(0, 3, k))), carrier)
        if not modular(cl, x) <= cv.A:
            continue
        a = float(rng.uniform(1e-4, 1.0))
        worst = max(worst, modular(cl, a * x) - (cv.K * a ** cv.p * modular(cl, x) + cv.eps))
    return worst


def test_condition_v_class_two():
    E = spaces.Lp(1.0, gamma=1.0)
    cl = CLSpace(E, zoo.power(2.0))
    cv = condition_v_constant(cl, 0.1, 1.0)
    assert cv.threshold == pytest.approx(math.sqrt(0.1), rel=1e-12)
    assert _sampled_condition_v(cl, cv, E.carrier, np.random.default_rng(0)) <= 1e-12


def test_condition_v_class_three():
    cl = CLSpace(spaces.lp(2.0), zoo.power(2.0))
    cv = condition_v_constant(cl, 0.1, 5.0)
    assert cv.threshold == pytest.approx(math.sqrt(5.0), rel=1e-12)
    assert _sampled_condition_v(cl, cv, COUNTING, np.random.default_rng(1), integer=True) <= 1e-12


def test_condition_v_positive_a_phi_uses_p_one():
    cl = CLSpace(spaces.lp(1.0), zoo.zero_then_linear(0.5))
    cv = condition_v_constant(cl, 0.1, 1.0)
    assert cv.p == 1.0
    assert _sampled_condition_v(cl, cv, COUNTING, np.random.default_rng(2), integer=True) <= 1e-12


def test_quasi_triangle_formula():
    assert quasi_triangle_constant(1.0, 1.0, 1.0, 0.25) == 4.0
    with pytest.raises(PreconditionError):
        quasi_triangle_constant(1.0, 1.0, 1.0, 0.5)


def test_minimized_constant_limit():
    res = minimized_quasi_triangle_constant(CLSpace(L1, zoo.power(2.0)))
    assert res["limit"] == pytest.approx(math.sqrt(2.0), rel=1e-8)
    assert math.sqrt(2.0) < res["C"] < 1.42


@pytest.mark.parametrize("C,p", [(1.0, 1.0), (2.0, 0.5), (4.0, 1 / 3)])
def test_aoki_rolewicz(C, p):
    assert aoki_rolewicz_exponent(C) == pytest.approx(p)


def test_aoki_rolewicz_rejects_small_constant():
    with pytest.raises(PreconditionError):
        aoki_rolewicz_exponent(0.5)


@given(steps(), steps())
def test_quasi_triangle_holds_for_certified_space(x, y):
    cl = CLSpace(spaces.Lp(0.5), zoo.power(2.0))
    C = minimized_quasi_triangle_constant(cl)["C"]
    n = lambda v: luxemburg_norm(cl, v).norm
    assert n(x + y) <= C * (n(x) + n(y)) * (1 + 1e-9)


# --- unit sphere and sup bounds ----------------------------------------------------------


def test_transfer_with_delta_eps():
    cl = CLSpace(L1, zoo.power(2.0))
    rep = unit_sphere_transfer_check(cl, SimpleVector.indicator(0, 1))
    assert rep["regime"] == "DELTA_EPS"
    assert rep["rho"] == 1.0 and rep["norm"] == pytest.approx(1.0, rel=1e-8)
    assert not rep["contradiction"]


def test_transfer_without_delta_eps():
    cl = CLSpace(L1, zoo.flat_step())
    rep = unit_sphere_transfer_check(cl, SimpleVector.indicator(0, 1))
    assert rep["rho"] == 1.0 and rep["norm"] == pytest.approx(0.5, rel=1e-8)
    assert rep["regime"] == "NO_DELTA_EPS" and not rep["contradiction"]


def test_sup_bound_examples():
    assert sup_bound_check(CLSpace(spaces.lp(1.0), zoo.power(2.0)), SimpleVector.unit(1))
    x = SimpleVector.from_parts([(1, 2, 0.5), (2, 3, 0.5)], COUNTING)
    assert sup_bound_check(CLSpace(spaces.lp(2.0), zoo.power(1.0)), x)
    assert sup_bound_check(CLSpace(spaces.lp(2.0), zoo.power(1.0)), SimpleVector.zero(COUNTING))


def test_sup_bound_needs_class_three():
    with pytest.raises(PreconditionError):
        sup_bound_check(CLSpace(L1, zoo.power(2.0)), SimpleVector.indicator(0, 1))


def test_norm_null_shrinking_supports():
    # norms are n^(-1/2) and modulars lam^2 / n; 400 terms bring both below a tenth of the first
    cl = CLSpace(L1, zoo.power(2.0))
    rep = norm_null_equivalence_check(cl, [SimpleVector.indicator(0, 1.0 / n) for n in range(1, 401)])
    assert rep["norm_to_zero"] and all(rep["modular_to_zero"].values()) and rep["consistent"]
    assert rep["norms"][-1] == pytest.approx(1 / 20, rel=1e-8)


def test_norm_null_translates():
    cl = CLSpace(spaces.l1_cap_linf(), zoo.power(1.0))
    rep = norm_null_equivalence_check(cl, [SimpleVector.indicator(n, n + 1) for n in range(1, 40)])
    assert not rep["norm_to_zero"] and not any(rep["modular_to_zero"].values()) and rep["consistent"]


def test_norm_null_zero_sequence():
    rep = norm_null_equivalence_check(CLSpace(L1, zoo.power(2.0)), [SimpleVector.zero()] * 5)
    assert rep["norm_to_zero"] and rep["consistent"]
    assert rep["norms"] == [0.0] * 5


@pytest.mark.parametrize("phi", [zoo.power(1.0), zoo.linear_then_inf(2.0)], ids=lambda f: f.name)
def test_order_continuity_probe(phi):
    rep = order_continuity_probe(CLSpace(spaces.l1_cap_linf(), phi))
    assert rep["applies"] and rep["ok"]
    if math.isfinite(phi.b_phi):
        assert rep["indicator_rows"]


def test_order_continuity_probe_skips_oc_space():
    assert not order_continuity_probe(CLSpace(L1, zoo.power(2.0)))["applies"]
