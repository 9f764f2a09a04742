"""Named Orlicz functions used by the CLI, the suite and the tests."""

from __future__ import annotations

import math

import numpy as np

from .orlicz import INF, OrliczError, OrliczFunction, Piece, nodes_function


def power(p: float = 2.0, coef: float = 1.0) -> OrliczFunction:
    return OrliczFunction([Piece("power", 0.0, INF, {"coef": coef, "exp": p})], name=f"u^{p:g}")


def log1p() -> OrliczFunction:
    """``ln(1 + u)``: lower index zero at infinity."""
    return OrliczFunction([Piece("log1p", 0.0, INF, {"coef": 1.0})], name="ln(1+u)")


def inv_log1p() -> OrliczFunction:
    """``1 / ln(1 + 1/u)``: lower index zero near the origin."""
    return OrliczFunction([Piece("inv_log1p", 0.0, INF, {})], name="1/ln(1+1/u)")


def flat_step() -> OrliczFunction:
    """``u`` on [0,1], constant 1 on [1,2], ``u - 1`` beyond."""
    return OrliczFunction([
        Piece("affine", 0.0, 1.0, {"slope": 1.0}),
        Piece("constant", 1.0, 2.0, {"value": 1.0}),
        Piece("affine", 2.0, INF, {"slope": 1.0, "intercept": -1.0}),
    ], name="flat_step")


def power_then_inf(p: float = 2.0, b: float = 1.0) -> OrliczFunction:
    """``(u/b)^p`` up to ``b``, INF beyond (``b_phi = b``, ``phi(b) = 1``)."""
    return OrliczFunction([
        Piece("power", 0.0, b, {"coef": b ** -p, "exp": p}),
        Piece("inf", b, INF),
    ], name=f"u^{p:g}|inf>{b:g}")


def square_then_inf() -> OrliczFunction:
    return power_then_inf(2.0, 1.0)


def linear_then_inf(b: float = 1.0) -> OrliczFunction:
    return power_then_inf(1.0, b)


def dyadic_growth() -> OrliczFunction:
    """Linear through the nodes ``(2^(n-1), n)``; ``u`` on [0, 1]."""
    return OrliczFunction([
        Piece("affine", 0.0, 1.0, {"slope": 1.0}),
        Piece("dyadic_growth", 1.0, INF, {}),
    ], name="dyadic_growth")


def dyadic_decay() -> OrliczFunction:
    """Linear through the nodes ``(2^(1-n), 1/n)``; ``u`` beyond 1/2."""
    return OrliczFunction([
        Piece("dyadic_decay", 0.0, 0.5, {}),
        Piece("affine", 0.5, INF, {"slope": 1.0}),
    ], name="dyadic_decay")


def square_min_one() -> OrliczFunction:
    """``min(u^2, 1)``: bounded, so it never tends to infinity."""
    return OrliczFunction([
        Piece("power", 0.0, 1.0, {"coef": 1.0, "exp": 2.0}),
        Piece("constant", 1.0, INF, {"value": 1.0}),
    ], name="min(u^2,1)")


def zero_then_linear(a: float = 1.0, slope: float = 1.0) -> OrliczFunction:
    """Vanishes on [0, a] and grows like ``slope * (u - a)`` afterwards."""
    return OrliczFunction([
        Piece("constant", 0.0, a, {"value": 0.0}),
        Piece("affine", a, INF, {"slope": slope, "anchor": a, "intercept": 0.0}),
    ], name=f"(u-{a:g})+")


def steep_threshold(a: float = 1.0, rise: float = 1e3, width: float = 1e-9) -> OrliczFunction:
    """Zero up to ``a``, jumps to ``rise`` over ``[a, a(1+width)]``, slope one after."""
    top = a * (1.0 + width)
    return OrliczFunction([
        Piece("constant", 0.0, a, {"value": 0.0}),
        Piece("nodes", a, top, {"nodes": ((a, 0.0), (top, rise))}),
        Piece("affine", top, INF, {"slope": 1.0, "anchor": top, "intercept": rise}),
    ], name=f"steep@{a:g}")


def expm1(rate: float = 1.0) -> OrliczFunction:
    return OrliczFunction([Piece("expm1", 0.0, INF, {"rate": rate})], name="e^u-1")


def exp_neg_inv(rate: float = 1.0) -> OrliczFunction:
    """``exp(-1/u)``: every power of ``u`` dominates it near zero."""
    return OrliczFunction([
        Piece("exp_neg_inv", 0.0, 1.0, {"rate": rate}),
        Piece("affine", 1.0, INF, {"slope": math.exp(-rate) * rate, "intercept": math.exp(-rate) * (1 - rate)}),
    ], name="exp(-1/u)")


def pole(b: float = 1.0) -> OrliczFunction:
    """``u / (b - u)`` on [0, b), INF from ``b`` on; ``phi(b) = INF``."""
    return OrliczFunction([
        Piece("pole", 0.0, b, {"coef": 1.0}),
        Piece("inf", b, INF),
    ], name=f"pole@{b:g}")


def staircase_zero(ramps: int = 28, gain_log2: int = 13, width: float = 1e-9) -> OrliczFunction:
    """Fails the doubling condition near zero.

    Sharp ramps sit at ``2^-k`` and multiply the value by ``2^(gain_log2 + k)``
    over a relative width ``width``; between ramps the value only doubles.
    Beyond 1 the function is ``u``.
    """
    nodes = [(1.0, 1.0)]
    below = 1.0  # value at the foot of the previous ramp
    for k in range(1, ramps + 1):
        r = 2.0 ** -k
        top = below / 2.0
        foot = top / 2.0 ** (gain_log2 + k)
        nodes.append((r * (1.0 + width), top))
        nodes.append((r, foot))
        below = foot
    nodes.append((0.0, 0.0))
    nodes.reverse()
    return nodes_function(nodes, tail="linear", tail_slope=1.0, name="staircase_zero")


def staircase_infinity(ramps: int = 30, gain_log2: int = 13, width: float = 1e-9) -> OrliczFunction:
    """Fails the doubling condition at infinity.

    ``u`` on [0, 1]; ramps at ``2^k`` multiply the value by
    ``2^(gain_log2 + k)``; between ramps the value doubles.
    """
    nodes = [(0.0, 0.0), (1.0, 1.0)]
    top = 1.0
    for k in range(1, ramps + 1):
        r = 2.0 ** k
        foot = 2.0 * top
        top = foot * 2.0 ** (gain_log2 + k)
        nodes.append((r, foot))
        nodes.append((r * (1.0 + width), top))
    last_x, last_y = nodes[-1]
    return nodes_function(nodes, tail="linear", tail_slope=last_y / last_x, name="staircase_infinity")


_REGISTRY = {
    "power": power,
    "log1p": log1p,
    "inv_log1p": inv_log1p,
    "flat_step": flat_step,
    "power_then_inf": power_then_inf,
    "square_then_inf": square_then_inf,
    "linear_then_inf": linear_then_inf,
    "dyadic_growth": dyadic_growth,
    "dyadic_decay": dyadic_decay,
    "square_min_one": square_min_one,
    "zero_then_linear": zero_then_linear,
    "steep_threshold": steep_threshold,
    "expm1": expm1,
    "exp_neg_inv": exp_neg_inv,
    "pole": pole,
    "staircase_zero": staircase_zero,
    "staircase_infinity": staircase_infinity,
}

NAMES = tuple(_REGISTRY)


def by_name(name: str, **kwargs) -> OrliczFunction:
    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise OrliczError(f"unknown zoo function {name!r}; known: {', '.join(NAMES)}") from None
    return factory(**kwargs)


def core_zoo() -> list[OrliczFunction]:
    """Eight functions covering the shapes the inverse identities care about."""
    return [
        power(2.0),
        power(0.5),
        log1p(),
        inv_log1p(),
        flat_step(),
        square_then_inf(),
        dyadic_growth(),
        dyadic_decay(),
    ]


def random_piecewise_linear(rng: np.random.Generator, nodes: int | None = None) -> OrliczFunction:
    """Random non-decreasing interpolant; may include flats, a zero stretch and a finite b."""
    k = int(nodes or rng.integers(2, 9))
    xs = np.cumsum(rng.uniform(0.1, 3.0, k))
    steps = rng.uniform(0.0, 4.0, k)
    steps[rng.random(k) < 0.25] = 0.0  # flats
    if rng.random() < 0.3:
        steps[0] = 0.0  # positive a_phi
    steps[-1] = max(steps[-1], 0.5)
    ys = np.cumsum(steps)
    tail = str(rng.choice(["inf", "linear"]))
    return nodes_function(list(zip(xs, ys)), tail=tail, tail_slope=float(rng.uniform(0.1, 5.0)) if tail == "linear" else None,
                          name="random_pl")
