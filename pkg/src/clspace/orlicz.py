"""Piecewise Orlicz functions with extended-real values.

An Orlicz function is stored as an ordered list of pieces covering
``[0, inf)``.  Each piece owns a half-open interval ``[start, end)``; the
piece ending at the finiteness threshold ``b`` also owns its right endpoint,
so that the function is left continuous there.  Values are plain floats and
``math.inf`` plays the role of the extended value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

INF = math.inf

MONOTONE_SAMPLES = 10_000
MONOTONE_TOL = 1e-12
JUNCTION_TOL = 1e-12


class OrliczError(ValueError):
    """Raised for invalid descriptors or violated preconditions."""


def _as_array(u):
    return np.asarray(u, dtype=float)


# --- piece kinds -----------------------------------------------------------
#
# Every kind supplies a vectorised evaluator and an inverse valid for values
# strictly between the piece's value at ``start`` and its supremum.


def _power_eval(p, u):
    shift = p.get("shift", 0.0)
    with np.errstate(over="ignore"):
        return p.get("base", 0.0) + p["coef"] * np.power(np.maximum(u - shift, 0.0), p["exp"])


def _power_inv(p, v):
    shift = p.get("shift", 0.0)
    return shift + np.power((v - p.get("base", 0.0)) / p["coef"], 1.0 / p["exp"])


def _affine_eval(p, u):
    # optional anchor: slope * (u - anchor) + intercept, exact at the anchor
    return p["slope"] * (u - p.get("anchor", 0.0)) + p.get("intercept", 0.0)


def _affine_inv(p, v):
    return (v - p.get("intercept", 0.0)) / p["slope"] + p.get("anchor", 0.0)


def _constant_eval(p, u):
    return np.full_like(u, p["value"], dtype=float)


def _log1p_eval(p, u):
    return p.get("base", 0.0) + p["coef"] * np.log1p(p.get("scale", 1.0) * u)


def _log1p_inv(p, v):
    with np.errstate(over="ignore"):
        return np.expm1((v - p.get("base", 0.0)) / p["coef"]) / p.get("scale", 1.0)


def _inv_log1p_eval(p, u):
    out = np.zeros_like(u, dtype=float)
    pos = u > 0
    with np.errstate(divide="ignore", over="ignore"):
        out[pos] = p.get("coef", 1.0) / np.log1p(p.get("scale", 1.0) / u[pos])
    return out


def _inv_log1p_inv(p, v):
    out = np.zeros_like(v, dtype=float)
    pos = v > 0
    with np.errstate(over="ignore"):
        out[pos] = p.get("scale", 1.0) / np.expm1(p.get("coef", 1.0) / v[pos])
    return out


def _expm1_eval(p, u):
    with np.errstate(over="ignore"):
        return p.get("base", 0.0) + p.get("coef", 1.0) * np.expm1(p.get("rate", 1.0) * u)


def _expm1_inv(p, v):
    return np.log1p((v - p.get("base", 0.0)) / p.get("coef", 1.0)) / p.get("rate", 1.0)


def _exp_neg_inv_eval(p, u):
    out = np.zeros_like(u, dtype=float)
    pos = u > 0
    out[pos] = p.get("coef", 1.0) * np.exp(-p.get("rate", 1.0) / u[pos])
    return out


def _exp_neg_inv_inv(p, v):
    out = np.zeros_like(v, dtype=float)
    pos = v > 0
    with np.errstate(divide="ignore"):
        out[pos] = p.get("rate", 1.0) / np.log(p.get("coef", 1.0) / v[pos])
    return out


def _pole_eval(p, u):
    s, e = p["_start"], p["_end"]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = p.get("base", 0.0) + p["coef"] * (u - s) / (e - u)
    return np.where(u >= e, INF, out)


def _pole_inv(p, v):
    s, e = p["_start"], p["_end"]
    w = v - p.get("base", 0.0)
    return (w * e + p["coef"] * s) / (w + p["coef"])


def _nodes_eval(p, u):
    xs, ys = p["_xs"], p["_ys"]
    return np.interp(u, xs, ys)


def _nodes_inv(p, v):
    xs, ys = p["_xs"], p["_ys"]
    j = np.searchsorted(ys, v, side="right")
    j = np.clip(j, 1, len(xs) - 1)
    x0, x1, y0, y1 = xs[j - 1], xs[j], ys[j - 1], ys[j]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(y1 > y0, (v - y0) / (y1 - y0), 1.0)
    return x0 + t * (x1 - x0)


def _dyadic_growth_eval(p, u):
    # nodes (2^(n-1), n); on [2^(e-1), 2^e) the value is (e - 1) + u / 2^(e-1)
    m, e = np.frexp(u)
    return (e - 1) + 2.0 * m


def _dyadic_growth_inv(p, v):
    n = np.minimum(np.floor(v), 4096.0)  # beyond this 2^(n-1) overflows anyway
    with np.errstate(over="ignore"):
        return np.ldexp(1.0 + np.minimum(v - n, 1.0), (n - 1).astype(np.int32))


def _dyadic_decay_eval(p, u):
    # nodes (2^(1-n), 1/n) for n >= 2, linear in between
    m, e = np.frexp(u)
    n = 1.0 - e
    lo_val = 1.0 / (n + 1.0)
    hi_val = 1.0 / n
    frac = 2.0 * m - 1.0
    return lo_val + frac * (hi_val - lo_val)


def _dyadic_decay_inv(p, v):
    with np.errstate(divide="ignore"):
        n = np.minimum(np.floor(1.0 / v), 1e6)  # 2^-n underflows long before
    n = np.where(1.0 / n < v, n - 1, n)
    n = np.where(1.0 / (n + 1.0) > v, n + 1, n)
    n = np.maximum(n, 2.0)
    lo_val = 1.0 / (n + 1.0)
    hi_val = 1.0 / n
    frac = (v - lo_val) / (hi_val - lo_val)
    return np.ldexp(1.0 + np.clip(frac, 0.0, 1.0), (-n).astype(np.int32))


_KINDS = {
    "power": (_power_eval, _power_inv, ("coef", "exp")),
    "affine": (_affine_eval, _affine_inv, ("slope",)),
    "constant": (_constant_eval, None, ("value",)),
    "log1p": (_log1p_eval, _log1p_inv, ("coef",)),
    "inv_log1p": (_inv_log1p_eval, _inv_log1p_inv, ()),
    "expm1": (_expm1_eval, _expm1_inv, ()),
    "exp_neg_inv": (_exp_neg_inv_eval, _exp_neg_inv_inv, ()),
    "pole": (_pole_eval, _pole_inv, ("coef",)),
    "nodes": (_nodes_eval, _nodes_inv, ("nodes",)),
    "dyadic_growth": (_dyadic_growth_eval, _dyadic_growth_inv, ()),
    "dyadic_decay": (_dyadic_decay_eval, _dyadic_decay_inv, ()),
    "inf": (None, None, ()),
}

PIECE_KINDS = tuple(_KINDS)


@dataclass(frozen=True)
class Piece:
    """One closed-form or node-defined segment of an Orlicz function."""

    kind: str
    start: float
    end: float
    params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise OrliczError(f"unknown piece kind {self.kind!r}")
        missing = [k for k in _KINDS[self.kind][2] if k not in self.params]
        if missing:
            raise OrliczError(f"piece {self.kind!r} missing {missing}")
        if not (0.0 <= self.start < self.end):
            raise OrliczError(f"bad piece interval [{self.start}, {self.end})")
        if self.kind == "pole" and not math.isfinite(self.end):
            raise OrliczError("pole piece needs a finite right end")
        if self.kind == "nodes":
            xs = np.array([n[0] for n in self.params["nodes"]], dtype=float)
            ys = np.array([n[1] for n in self.params["nodes"]], dtype=float)
            if len(xs) < 2 or np.any(np.diff(xs) <= 0):
                raise OrliczError("nodes need at least two strictly increasing abscissae")
            # one node past ``to`` is allowed so a truncated piece keeps its last segment
            if xs[0] != self.start or xs[-1] < self.end or (len(xs) > 2 and xs[-2] >= self.end):
                raise OrliczError("node list must start at 'from' and end at or just past 'to'")
            if np.any(np.diff(ys) < 0) or not np.all(np.isfinite(ys)):
                raise OrliczError("node values must be finite and non-decreasing")
        if self.kind == "dyadic_growth" and self.start < 1.0:
            raise OrliczError("dyadic_growth is defined on [1, inf)")
        if self.kind == "dyadic_decay" and (self.end > 0.5 or self.start != 0.0):
            raise OrliczError("dyadic_decay is defined on [0, 1/2]")

    @cached_property
    def _p(self) -> dict:
        p = dict(self.params)
        p["_start"], p["_end"] = self.start, self.end
        if self.kind == "nodes":
            p["_xs"] = np.array([n[0] for n in self.params["nodes"]], dtype=float)
            p["_ys"] = np.array([n[1] for n in self.params["nodes"]], dtype=float)
        return p

    def evaluate(self, u: np.ndarray) -> np.ndarray:
        if self.kind == "inf":
            return np.full_like(u, INF, dtype=float)
        if self.kind == "dyadic_decay":
            out = np.zeros_like(u, dtype=float)
            pos = u > 0
            out[pos] = _dyadic_decay_eval(None, u[pos])
            return out
        return _KINDS[self.kind][0](self._p, u)

    def invert(self, v: np.ndarray) -> np.ndarray:
        inv = _KINDS[self.kind][1]
        if inv is None:
            raise OrliczError(f"{self.kind} pieces have no inverse")
        if self.kind == "dyadic_decay":
            out = np.zeros_like(v, dtype=float)
            pos = v > 0
            out[pos] = _dyadic_decay_inv(None, v[pos])
            return out
        return inv(self._p, v)

    def left_limit_at_end(self) -> float:
        """Value approached as ``u`` increases to ``end``."""
        if self.kind == "pole":
            return INF
        if not math.isfinite(self.end):
            return self.sup_value()
        return float(self.evaluate(np.array([self.end]))[0])

    def sup_value(self) -> float:
        if self.kind == "inf":
            return INF
        if math.isfinite(self.end):
            return self.left_limit_at_end()
        if self.kind == "constant":
            return float(self.params["value"])
        if self.kind == "affine" and self.params["slope"] == 0:
            return float(self.params.get("intercept", 0.0))
        if self.kind == "power" and (self.params["coef"] == 0 or self.params["exp"] == 0):
            return float(self.evaluate(np.array([self.start + 1.0]))[0])
        return INF

    def to_dict(self) -> dict:
        d = {"from": self.start, "to": _ext_to_json(self.end), "kind": self.kind}
        for k, v in self.params.items():
            d[k] = [list(n) for n in v] if k == "nodes" else v
        return d


def _ext_to_json(x: float):
    return "inf" if x == INF else x


def _ext_from_json(x) -> float:
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "+inf"):
            return INF
        raise OrliczError(f"cannot read {x!r} as an extended real")
    return float(x)


class OrliczFunction:
    """Non-decreasing ``phi: [0, inf) -> [0, inf]`` built from pieces.

    Construction validates contiguity, ``phi(0) = 0``, interior continuity
    and monotonicity (on a dense sample per piece), then caches ``a_phi``,
    ``b_phi`` and ``phi(b_phi)``.
    """

    def __init__(self, pieces: Sequence[Piece], name: str | None = None, validate: bool = True):
        pieces = tuple(pieces)
        if not pieces:
            raise OrliczError("an Orlicz function needs at least one piece")
        self.pieces = pieces
        self.name = name
        self._check_layout()
        self.b_phi = self._find_b()
        self.phi_at_b = self._value_at_b()
        if validate:
            self._check_continuity()
            self._check_monotone()
        self.a_phi = float(self.inverse(0.0))
        if self.a_phi > self.b_phi:
            self.a_phi = self.b_phi
        self.degenerate = self.a_phi == self.b_phi
        self.tends_to_infinity = self._find_tends_to_infinity()

    # -- construction helpers ---------------------------------------------

    def _check_layout(self):
        ps = self.pieces
        if ps[0].start != 0.0:
            raise OrliczError("first piece must start at 0")
        for left, right in zip(ps, ps[1:]):
            if left.end != right.start:
                raise OrliczError(f"gap or overlap at {left.end} / {right.start}")
            if left.kind == "inf":
                raise OrliczError("an inf piece must be the last piece")
        if ps[-1].end != INF:
            raise OrliczError("last piece must extend to infinity")
        if ps[0].kind != "inf":
            v0 = float(ps[0].evaluate(np.array([0.0]))[0])
            if v0 != 0.0:
                raise OrliczError(f"phi(0) must be 0, got {v0}")

    def _find_b(self) -> float:
        if self.pieces[-1].kind == "inf":
            return self.pieces[-1].start
        return INF

    def _value_at_b(self) -> float:
        if not math.isfinite(self.b_phi):
            return INF
        if len(self.pieces) == 1:
            return 0.0
        return self.pieces[-2].left_limit_at_end()

    def _check_continuity(self):
        for left, right in zip(self.pieces, self.pieces[1:]):
            if right.kind == "inf":
                continue
            lv = left.left_limit_at_end()
            rv = float(right.evaluate(np.array([right.start]))[0])
            if not math.isfinite(lv) or abs(lv - rv) > JUNCTION_TOL * max(1.0, abs(lv)):
                raise OrliczError(
                    f"discontinuity at u={right.start}: left {lv}, right {rv}"
                )

    def _check_monotone(self):
        for piece in self.pieces:
            if piece.kind in ("inf", "constant"):
                continue
            lo = piece.start
            hi = piece.end if math.isfinite(piece.end) else max(1.0, lo) * 1e12
            if piece.kind == "pole":
                hi = piece.end - (piece.end - lo) * 1e-9
            half = MONOTONE_SAMPLES // 2
            lin = np.linspace(lo, hi, half)
            geo = np.geomspace(max(lo, hi * 1e-15, 1e-300), hi, half)
            u = np.unique(np.concatenate([lin, geo]))
            u = u[(u >= lo) & (u <= hi)]
            with np.errstate(over="ignore", invalid="ignore"):
                v = piece.evaluate(u)
            if np.any(np.isnan(v)) or np.any(v < 0):
                raise OrliczError(f"{piece.kind} piece produces negative or NaN values")
            with np.errstate(invalid="ignore"):
                d = np.diff(v)
            both_inf = np.isinf(v[1:]) & np.isinf(v[:-1])
            scale = np.maximum(1.0, np.abs(np.where(np.isfinite(v[:-1]), v[:-1], 0.0)))
            bad = (d < -MONOTONE_TOL * scale) & ~both_inf
            if np.any(bad):
                i = int(np.argmax(bad))
                raise OrliczError(
                    f"{piece.kind} piece decreases near u={u[i]}: {v[i]} -> {v[i + 1]}"
                )

    def _find_tends_to_infinity(self) -> bool:
        if self.pieces[-1].kind == "inf":
            return True
        return self.pieces[-1].sup_value() == INF

    # -- evaluation --------------------------------------------------------

    def __call__(self, u):
        arr = _as_array(u)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise OrliczError("Orlicz functions are defined on [0, inf)")
        out = np.empty_like(arr, dtype=float)
        n = len(self.pieces)
        for i, piece in enumerate(self.pieces):
            if piece.kind == "inf":
                mask = arr > piece.start
            elif i + 1 < n and self.pieces[i + 1].kind == "inf":
                mask = (arr >= piece.start) & (arr <= piece.end)
            else:
                mask = (arr >= piece.start) & (arr < piece.end)
            if np.any(mask):
                out[mask] = piece.evaluate(arr[mask])
        return float(out[0]) if scalar else out

    def inverse(self, v):
        """Generalised inverse ``inf{u >= 0 : phi(u) > v}``.

        ``inverse(INF)`` is the limit of ``inverse(w)`` as ``w`` grows, i.e.
        ``b_phi``.  Returns INF when ``phi`` never exceeds ``v``.
        """
        arr = _as_array(v)
        scalar = arr.ndim == 0
        arr = np.atleast_1d(arr)
        if np.any(arr < 0) or np.any(np.isnan(arr)):
            raise OrliczError("generalised inverse needs v >= 0")
        out = np.full_like(arr, INF, dtype=float)
        todo = np.ones(arr.shape, dtype=bool)
        is_inf = np.isinf(arr)
        if np.any(is_inf):
            out[is_inf] = self.b_phi
            todo &= ~is_inf
        for piece in self.pieces:
            if not np.any(todo):
                break
            if piece.kind == "inf":
                out[todo] = piece.start
                todo[:] = False
                break
            sup = piece.sup_value()
            hit = todo & (arr < sup)
            if not np.any(hit):
                continue
            start_val = float(piece.evaluate(np.array([piece.start]))[0])
            below = hit & (arr < start_val)
            out[below] = piece.start
            inside = hit & ~below
            if np.any(inside):
                res = piece.invert(arr[inside])
                out[inside] = np.clip(res, piece.start, piece.end)
            todo &= ~hit
        return float(out[0]) if scalar else out

    # -- derived views -----------------------------------------------------

    def breakpoints(self) -> np.ndarray:
        """Piece boundaries and interpolation nodes (finite, positive)."""
        pts = set()
        for piece in self.pieces:
            pts.add(piece.start)
            if math.isfinite(piece.end):
                pts.add(piece.end)
            if piece.kind == "nodes":
                pts.update(float(n[0]) for n in piece.params["nodes"] if n[0] <= piece.end)
            elif piece.kind == "dyadic_growth":
                pts.update(2.0 ** k for k in range(0, 1000) if piece.start <= 2.0 ** k <= piece.end)
            elif piece.kind == "dyadic_decay":
                pts.update(2.0 ** -k for k in range(1, 1000))
        arr = np.array(sorted(p for p in pts if p > 0), dtype=float)
        return arr

    def is_flat_right_of(self, u: float, rel: float = 1e-12) -> bool:
        """True when ``phi`` is constant on ``[u, u + delta)`` for some delta."""
        if u >= self.b_phi:
            return False
        for piece in self.pieces:
            if piece.start <= u < piece.end:
                if piece.kind == "constant":
                    return True
                if piece.kind == "affine":
                    return piece.params["slope"] == 0
                if piece.kind == "power":
                    return piece.params["coef"] == 0 or piece.params["exp"] == 0
                if piece.kind == "nodes":
                    xs, ys = piece._p["_xs"], piece._p["_ys"]
                    j = int(np.searchsorted(xs, u, side="right"))
                    return ys[j] == ys[j - 1]
                return False
        return False

    def to_dict(self) -> dict:
        d = {"pieces": [p.to_dict() for p in self.pieces]}
        if self.name:
            d["name"] = self.name
        return d

    def describe(self) -> dict:
        return {
            "name": self.name,
            "a_phi": self.a_phi,
            "b_phi": _ext_to_json(self.b_phi),
            "phi_at_b": _ext_to_json(self.phi_at_b),
            "degenerate": self.degenerate,
            "tends_to_infinity": self.tends_to_infinity,
        }

    def __repr__(self) -> str:
        label = self.name or "custom"
        return f"OrliczFunction({label}, a={self.a_phi}, b={self.b_phi})"


def evaluate(phi: OrliczFunction, u: float) -> float:
    if u < 0:
        raise OrliczError("u must be non-negative")
    return phi(u)


def generalized_inverse(phi: OrliczFunction, v: float) -> float:
    return phi.inverse(v)


def renormalize(phi: OrliczFunction, threshold: float) -> OrliczFunction:
    """Keep ``phi`` on ``[0, threshold]`` and continue with slope one.

    Beyond the threshold the result is ``u - (threshold - phi(threshold))``,
    which is continuous, strictly increasing and unbounded.
    """
    if not threshold > 0:
        raise OrliczError("threshold must be positive")
    value = phi(threshold)
    if not math.isfinite(value):
        raise OrliczError("phi(threshold) must be finite")
    kept = []
    for piece in phi.pieces:
        if piece.start >= threshold:
            break
        if piece.end <= threshold:
            kept.append(piece)
            continue
        if piece.kind == "nodes":
            xs, ys = piece._p["_xs"], piece._p["_ys"]
            # keep the segment containing the threshold intact so values agree bitwise
            j = int(np.searchsorted(xs, threshold, side="left"))
            inside = [(float(x), float(y)) for x, y in zip(xs[:j + 1], ys[:j + 1])]
            kept.append(Piece("nodes", piece.start, threshold, {"nodes": tuple(inside)}))
        else:
            kept.append(Piece(piece.kind, piece.start, threshold, piece.params))
        break
    tail = Piece("affine", threshold, INF, {"slope": 1.0, "anchor": threshold, "intercept": value})
    kept.append(tail)
    name = f"{phi.name or 'phi'}|renormalized@{threshold:g}"
    return OrliczFunction(kept, name=name)


# --- JSON -------------------------------------------------------------------


def piece_from_dict(d: Mapping[str, Any]) -> Piece:
    if "from" not in d or "to" not in d:
        raise OrliczError("each piece needs 'from' and 'to'")
    start = _ext_from_json(d["from"])
    end = _ext_from_json(d["to"])
    kind = d.get("kind")
    params = {k: v for k, v in d.items() if k not in ("from", "to", "kind")}
    if kind is None and "value" in params:
        kind = "constant"
    if kind == "constant" and _ext_from_json(params.get("value", 0)) == INF:
        kind, params = "inf", {}
    if kind is None:
        raise OrliczError("piece needs a 'kind'")
    if kind == "nodes":
        params["nodes"] = tuple((float(a), float(b)) for a, b in params.get("nodes", ()))
    else:
        for k, v in list(params.items()):
            if isinstance(v, (int, float)):
                params[k] = float(v)
    return Piece(kind, start, end, params)


def from_dict(d: Mapping[str, Any]) -> OrliczFunction:
    if "zoo" in d:
        from . import zoo

        return zoo.by_name(d["zoo"], **d.get("args", {}))
    if "pieces" not in d:
        raise OrliczError("function descriptor needs 'pieces' or 'zoo'")
    return OrliczFunction([piece_from_dict(p) for p in d["pieces"]], name=d.get("name"))


def nodes_function(nodes: Iterable[tuple[float, float]], tail: str = "inf", name: str | None = None,
                   tail_slope: float | None = None) -> OrliczFunction:
    """Linear interpolation through ``nodes`` starting at (0, 0).

    ``tail`` chooses the continuation after the last node: ``"inf"`` (jump to
    INF), ``"linear"`` (continue with ``tail_slope`` or the last slope) or
    ``"constant"``.
    """
    nodes = tuple((float(a), float(b)) for a, b in nodes)
    if nodes[0] != (0.0, 0.0):
        nodes = ((0.0, 0.0),) + nodes
    last_x, last_y = nodes[-1]
    pieces = [Piece("nodes", 0.0, last_x, {"nodes": nodes})]
    if tail == "inf":
        pieces.append(Piece("inf", last_x, INF))
    elif tail == "constant":
        pieces.append(Piece("constant", last_x, INF, {"value": last_y}))
    elif tail == "linear":
        if tail_slope is None:
            (x0, y0), (x1, y1) = nodes[-2], nodes[-1]
            tail_slope = (y1 - y0) / (x1 - x0)
        pieces.append(Piece("affine", last_x, INF,
                            {"slope": tail_slope, "intercept": last_y - tail_slope * last_x}))
    else:
        raise OrliczError(f"unknown tail {tail!r}")
    return OrliczFunction(pieces, name=name)


def _close(a: float, b: float, rel: float) -> bool:
    if math.isinf(a) or math.isinf(b):
        return a == b
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


# Relative spread used when asking whether phi attains v at a computed u.
# Steep pieces turn one rounding step in u into a large step in phi(u), so
# identities of the form phi(phi^-1(v)) = v are judged by bracketing.
_U_SPREAD = 4e-16
_V_SLACK = 1e-12
_TINY = float(np.finfo(float).tiny)


def _phi_bracket(phi: OrliczFunction, g: float) -> tuple[float, float]:
    lo = phi(g * (1 - _U_SPREAD)) if g > 0 else 0.0
    hi = phi(g * (1 + _U_SPREAD)) if g > 0 else phi(5e-324)
    return lo, hi


def inverse_clause_violations(phi: OrliczFunction, u=None, rel: float = 1e-9) -> list[dict]:
    """Check the composition identities between ``phi`` and its generalised inverse.

    Returns one record per failed (clause, u) pair; an empty list means every
    sampled point satisfied every applicable clause.  Points where ``phi(u)``
    over- or underflows are skipped.
    """
    if u is None:
        base = np.geomspace(1e-6, 1e6, 400)
        extra = [phi.a_phi, 0.0]
        bp = phi.breakpoints()
        bp = bp[bp < 1e300]
        if math.isfinite(phi.b_phi):
            b = phi.b_phi
            extra += [b, b * (1 + 1e-6), 2 * b, b * (1 - 1e-9)]
        u = np.concatenate([base, bp, bp * (1 + 1e-7), bp * (1 - 1e-7), extra])
    u = np.unique(np.asarray(u, dtype=float))
    u = u[u >= 0]
    a, b, fb = phi.a_phi, phi.b_phi, phi.phi_at_b
    finite_b = math.isfinite(b)
    full_range = not finite_b or math.isinf(fb)
    strict = _strictly_increasing(phi, a, b)
    out = []

    def bad(clause, x, **kw):
        out.append({"clause": clause, "u": float(x), **kw})

    for x in u:
        fx = phi(x)
        representable = not ((x > a and fx < _TINY) or (math.isinf(fx) and x < b))
        if representable:
            back = float(phi.inverse(fx))
            # (i): left inverse, exact unless phi is flat just right of x
            if x < b:
                if phi.is_flat_right_of(x):
                    if not back > x:
                        bad("i", x, inv_phi=back)
                elif not _close(back, x, rel):
                    bad("i", x, inv_phi=back)
            # (ii)
            if finite_b and x > b and not (_close(back, b, rel) and back < x):
                bad("ii", x, inv_phi=back)
            # (v)/(vi): exact left inverse on [a, b) or [a, b] when strictly increasing
            if strict and a <= x and (x < b or (x == b and math.isfinite(fb))):
                if not _close(back, x, rel):
                    bad("vi" if finite_b and math.isfinite(fb) else "v", x, inv_phi=back)
            # (vii), second half
            if math.isfinite(fx) and not x <= back * (1 + rel):
                bad("vii", x, inv_phi=back)
        if finite_b and x == b and math.isfinite(fb) and not _close(float(phi.inverse(fb)), b, rel):
            bad("ii", x, inv_phi=float(phi.inverse(fb)))

        # right-inverse clauses, reading x as a value of phi
        v = x
        g = float(phi.inverse(v))
        if not math.isfinite(g) or (0 <= g < _TINY and v > 0 and a == 0):
            continue  # phi never exceeds v, or phi^-1(v) is subnormal
        lo, hi = _phi_bracket(phi, g)
        attained = lo <= v * (1 + _V_SLACK) and hi >= v * (1 - _V_SLACK)
        if full_range and v < phi.pieces[-1].sup_value() and not attained:
            bad("iii", v, phi_inv=float(phi(g)))
        if not full_range:
            if v <= fb and not attained:
                bad("iv", v, phi_inv=float(phi(g)))
            if v > fb and not (_close(float(phi(g)), fb, rel) and phi(g) < v):
                bad("iv", v, phi_inv=float(phi(g)))
        # (vii), first half
        if not lo <= v * (1 + _V_SLACK):
            bad("vii", v, phi_inv=float(phi(g)))
    return out


def _strictly_increasing(phi: OrliczFunction, lo: float, hi: float, samples: int = 2000) -> bool:
    top = hi if math.isfinite(hi) else max(lo, 1.0) * 1e6
    if top <= lo:
        return False
    start = lo if lo > 0 else top * 1e-12
    u = np.concatenate([np.geomspace(start, top, samples), phi.breakpoints()])
    u = np.unique(u[(u >= lo) & (u <= top)])
    if lo == 0 and len(u):
        u = np.concatenate([[0.0], u])
    if not math.isfinite(hi) or not math.isfinite(phi.phi_at_b):
        u = u[u < hi]
    v = phi(u)
    return bool(np.all(np.diff(v) > 0))
