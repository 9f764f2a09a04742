import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clspace import zoo
from clspace.indices import (DegenerateRegime, GridSpec, PreconditionError, Regime, check_delta2, check_delta_2str,
                             check_delta_epsilon, estimate_lower_index, extend_constant)
from clspace.orlicz import INF


def brute_ratio_sup(phi, p, u_lo, u_hi, n=400):
    """sup phi(a u) / (a^p phi(u)) over a log grid of u and a in (0, 1]."""
    u = np.geomspace(u_lo, u_hi, n)[:, None]
    a = np.geomspace(1e-6, 1.0, n)[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        r = phi(a * u) / (a ** p * phi(u))
    return float(np.nanmax(r))


# --- lower index ------------------------------------------------------------------


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("regime", list(Regime))
def test_power_bracket(p, regime):
    est = estimate_lower_index(zoo.power(p), regime)
    assert est.lo <= p <= est.hi
    assert est.width <= 0.01
    assert est.K == pytest.approx(1.0)


def test_slow_growth_at_zero():
    assert estimate_lower_index(zoo.inv_log1p(), Regime.ZERO).hi <= 0.05


def test_slow_growth_at_infinity_needs_wider_grid():
    # the local elasticity of ln(1+u) is about 1/ln(u): 0.054 at 1e8, 0.043 at 1e10
    default = estimate_lower_index(zoo.log1p(), Regime.INFINITY).hi
    assert default == pytest.approx(1 / math.log(1e8), rel=0.01)
    wide = estimate_lower_index(zoo.log1p(), Regime.INFINITY, GridSpec(u_max=1e10)).hi
    assert wide <= 0.05


def test_positive_a_phi_gives_infinite_index_at_zero():
    est = estimate_lower_index(zoo.zero_then_linear(0.5), Regime.ZERO)
    assert est.lo == INF
    assert "INF" in est.flags


def test_degenerate_regime():
    with pytest.raises(DegenerateRegime):
        estimate_lower_index(zoo.power_then_inf(2.0, 1e-9), Regime.ZERO)


@given(st.floats(0.3, 4.0))
def test_power_index_property(p):
    est = estimate_lower_index(zoo.power(p), Regime.ALL)
    assert est.lo <= p <= est.hi


@given(st.integers(0, 2**32 - 1))
def test_certified_constant_holds_on_grid(seed):
    phi = zoo.random_piecewise_linear(np.random.default_rng(seed))
    try:
        est = estimate_lower_index(phi, Regime.ZERO)
    except DegenerateRegime:
        return
    if not (0 < est.lo < INF) or est.K is None:
        return
    assert brute_ratio_sup(phi, est.lo, 1e-8, est.u0) <= est.K * (1 + 1e-9)


# --- extension of constants ----------------------------------------------------------


def test_extend_zero_square():
    assert brute_ratio_sup(zoo.power(2.0), 2.0, 1e-6, 10.0) == pytest.approx(1.0)
    assert extend_constant(zoo.power(2.0), Regime.ZERO, 2.0, 1.0, 1.0, 10.0) == 100.0


@pytest.mark.parametrize("p", [0.5, 1.5, 3.0])
def test_extend_zero_with_positive_a_phi(p):
    assert extend_constant(zoo.zero_then_linear(0.5), Regime.ZERO, p, 1.0, 1.0) == pytest.approx(2.0 ** p)


def test_extend_infinity_square():
    assert extend_constant(zoo.power(2.0), Regime.INFINITY, 2.0, 1.0, 2.0, 1.0) == 4.0


def test_extend_rejects_uncertified_constant():
    with pytest.raises(PreconditionError):
        extend_constant(zoo.power(1.0), Regime.ZERO, 2.0, 1.0, 1.0, 10.0)


def test_extend_rejects_all_regime():
    with pytest.raises(PreconditionError):
        extend_constant(zoo.power(2.0), Regime.ALL, 2.0, 1.0, 1.0, 10.0)


@given(st.floats(1.5, 1e3))
def test_extended_zero_constant_is_valid(u1):
    phi = zoo.power(2.0)
    K = extend_constant(phi, Regime.ZERO, 2.0, 1.0, 1.0, u1)
    assert brute_ratio_sup(phi, 2.0, 1e-6, u1, 120) <= K * (1 + 1e-9)


# --- doubling ---------------------------------------------------------------------


def test_delta2_square():
    v = check_delta2(zoo.power(2.0), Regime.ALL)
    assert v.holds and v.constants["K"] == 4.0


def test_delta2_square_then_inf_at_zero():
    v = check_delta2(zoo.square_then_inf(), Regime.ZERO)
    assert v.holds
    assert v.constants["K"] == 4.0 and v.constants["u0"] == 0.5


def test_delta2_structural_failure():
    v = check_delta2(zoo.square_then_inf(), Regime.INFINITY)
    assert not v.holds and "b_phi" in v.reason


def test_delta2_dyadic_growth_holds():
    v = check_delta2(zoo.dyadic_growth(), Regime.INFINITY)
    assert v.holds
    assert v.constants["K"] <= 2.0 + 1e-9


def test_delta2_exponential_fails_with_witness():
    v = check_delta2(zoo.expm1(), Regime.INFINITY)
    assert not v.holds
    ratios = [w["ratio"] for w in v.witness]
    assert ratios == sorted(ratios) and ratios[-1] > 1e6
    phi = zoo.expm1()
    for w in v.witness:
        assert phi(2 * w["u"]) / phi(w["u"]) == pytest.approx(w["ratio"], rel=1e-12)


# --- delta epsilon -------------------------------------------------------------------


@pytest.mark.parametrize("p", [1.0, 2.0, 3.0])
def test_delta_eps_power(p):
    v = check_delta_epsilon(zoo.power(p), Regime.ALL, (0.5,))
    assert v.holds
    assert v.constants["per_eps"]["0.5"]["delta"] == pytest.approx(0.5 ** p, rel=1e-9)


def _check_node_witness(phi, rows, toward):
    assert len(rows) >= 3
    us = [r["u"] for r in rows]
    assert all(math.frexp(u)[0] == 0.5 for u in us)  # exact powers of two
    assert us == sorted(us, reverse=(toward == "zero"))
    ratios = [r["ratio"] for r in rows]
    assert ratios == sorted(ratios) and ratios[-1] > 0.9
    for r in rows:
        assert phi(r["epsilon"] * r["u"]) / phi(r["u"]) == pytest.approx(r["ratio"], rel=1e-12)


def test_delta_eps_fails_for_dyadic_growth():
    phi = zoo.dyadic_growth()
    v = check_delta_epsilon(phi, Regime.INFINITY, (0.5, 0.25))
    assert not v.holds
    _check_node_witness(phi, v.witness, "infinity")


def test_delta_eps_fails_for_dyadic_decay():
    phi = zoo.dyadic_decay()
    v = check_delta_epsilon(phi, Regime.ZERO, (0.5,))
    assert not v.holds
    _check_node_witness(phi, v.witness, "zero")


# --- strong doubling -------------------------------------------------------------------


@pytest.mark.parametrize("p,eps", [(1.0, 0.5), (2.0, 0.5), (3.0, 0.5), (2.0, 0.1)])
def test_delta_2str_power(p, eps):
    v = check_delta_2str(zoo.power(p), Regime.ALL, (eps,))
    assert v.holds
    assert v.constants["per_eps"][str(eps)]["delta"] == pytest.approx((1 + eps) ** (1 / p) - 1, rel=1e-6)


def test_delta_2str_holds_for_dyadic_growth():
    assert check_delta_2str(zoo.dyadic_growth(), Regime.INFINITY).holds


def test_delta_2str_fails_with_jump():
    assert not check_delta_2str(zoo.square_then_inf(), Regime.INFINITY).holds
