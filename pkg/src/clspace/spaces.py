"""Concrete quasi-Banach ideal spaces evaluated exactly on step functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np
from scipy import special

from .vectors import COUNTING, Carrier, SimpleVector, VectorError, _num

INF = math.inf

INTERVAL_KINDS = ("Lp", "L1_cap_Linf", "lorentz", "orlicz_capped")
COUNTING_KINDS = ("lp", "lp_weighted", "cesaro")
DIRECT_SUM_LIMIT = 200_000


class SpaceError(ValueError):
    pass


# --- weights ------------------------------------------------------------------


@dataclass(frozen=True)
class WeightRule:
    """Positive weight sequence ``w(i)``, ``i >= 1``."""

    rule: str
    a: float = 2.0
    q: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if self.rule not in ("geometric", "power", "alternating", "constant", "harmonic"):
            raise SpaceError(f"unknown weight rule {self.rule!r}")
        if self.rule == "geometric" and not self.a > 0:
            raise SpaceError("geometric weights need a > 0")
        if self.rule == "constant" and not self.c > 0:
            raise SpaceError("constant weight must be positive")

    @property
    def exponent(self) -> float:
        return 1.0 if self.rule == "harmonic" else self.q

    def __call__(self, i) -> np.ndarray:
        i = np.asarray(i, dtype=float)
        if self.rule == "geometric":
            return np.power(self.a, -i)
        if self.rule in ("power", "harmonic"):
            return np.power(i, -self.exponent)
        if self.rule == "constant":
            return np.full_like(i, self.c)
        half = np.ceil(i / 2.0)
        return np.where(i % 2 == 1, half, 1.0 / half)

    def range_sum(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """``sum_{lo <= i < hi} w(i)`` for integer arrays."""
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if self.rule == "geometric":
            a = self.a
            if a == 1.0:
                return hi - lo
            with np.errstate(over="ignore", under="ignore"):
                return np.power(a, -lo) * (1.0 - np.power(a, -(hi - lo))) / (1.0 - 1.0 / a)
        if self.rule == "constant":
            return self.c * (hi - lo)
        if self.rule == "alternating":
            # odd i = 2k-1 carries k, even i = 2k carries 1/k
            k_odd_lo, k_odd_hi = np.ceil((lo + 1) / 2.0), np.floor(hi / 2.0)
            odd = np.where(k_odd_hi >= k_odd_lo, (k_odd_lo + k_odd_hi) * (k_odd_hi - k_odd_lo + 1) / 2.0, 0.0)
            k_even_lo, k_even_hi = np.ceil(lo / 2.0), np.floor((hi - 1) / 2.0)
            even = np.where(k_even_hi >= k_even_lo, _harmonic(k_even_lo, np.maximum(k_even_hi, k_even_lo)), 0.0)
            return odd + even
        return np.array([_power_range(self.exponent, l, h) for l, h in zip(np.atleast_1d(lo), np.atleast_1d(hi))]
                        ).reshape(np.shape(lo))

    def log_range_sum(self, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
        """Logarithm of :meth:`range_sum`, without underflow for geometric weights."""
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if self.rule == "geometric" and self.a != 1.0:
            la = math.log(self.a)
            with np.errstate(over="ignore", under="ignore"):
                head = -lo * la
                frac = -np.expm1(-(hi - lo) * la) / -math.expm1(-la)
            return head + np.log(frac)
        with np.errstate(divide="ignore"):
            return np.log(self.range_sum(lo, hi))

    def to_dict(self) -> dict:
        d = {"rule": self.rule}
        if self.rule == "geometric":
            d["a"] = self.a
        elif self.rule == "power":
            d["q"] = self.q
        elif self.rule == "constant":
            d["c"] = self.c
        return d


def _harmonic(k0, k1):
    """``sum_{k0 <= k <= k1} 1/k``."""
    return special.digamma(k1 + 1.0) - special.digamma(k0)


def _power_range(q: float, lo: float, hi: float) -> float:
    if hi <= lo:
        return 0.0
    if q == 1.0:
        return float(_harmonic(lo, hi - 1))
    if q > 1.0:
        if hi - lo <= DIRECT_SUM_LIMIT:
            return float(np.sum(np.arange(lo, hi) ** -q))
        return float(special.zeta(q, lo) - (special.zeta(q, hi) if math.isfinite(hi) else 0.0))
    if not math.isfinite(hi):
        return INF
    mid = min(hi, lo + DIRECT_SUM_LIMIT)
    total = float(np.sum(np.arange(lo, mid) ** -q))
    if mid < hi:
        total += _euler_maclaurin(lambda t: t ** -q, lambda t: -q * t ** (-q - 1), mid, hi)
    return total


def _euler_maclaurin(f, df, lo: float, hi: float) -> float:
    """``sum_{lo <= n < hi} f(n)`` for smooth slowly varying ``f`` and large ``lo``."""
    from scipy.integrate import quad

    integral, _ = quad(f, lo, hi, limit=200)
    return integral + (f(lo) - f(hi)) / 2.0 + (df(hi) - df(lo)) / 12.0


# --- descriptor ---------------------------------------------------------------


@dataclass(frozen=True)
class SpaceDescriptor:
    kind: str
    p: float = 1.0
    gamma: float = INF
    weight: WeightRule | None = None
    alpha: float = 0.5
    flavor: str = "LUXEMBURG"
    name: str = field(default="", compare=False)

    def __post_init__(self):
        k = self.kind
        if k not in INTERVAL_KINDS + COUNTING_KINDS:
            raise SpaceError(f"unknown space kind {k!r}")
        if k in ("Lp", "lp", "lp_weighted") and not self.p > 0:
            raise SpaceError("need p > 0")
        if k == "cesaro" and not self.p > 1:
            raise SpaceError("Cesaro spaces need p > 1")
        if k == "lp_weighted" and self.weight is None:
            raise SpaceError("lp_weighted needs a weight rule")
        if k == "lorentz" and not 0 < self.alpha <= 1:
            raise SpaceError("Lorentz weight t^(alpha-1) needs 0 < alpha <= 1")
        if k in ("L1_cap_Linf", "orlicz_capped") and self.gamma != INF:
            raise SpaceError(f"{k} is defined over [0, inf)")
        if k == "orlicz_capped" and self.flavor not in ("LUXEMBURG", "AMEMIYA"):
            raise SpaceError("flavor must be LUXEMBURG or AMEMIYA")
        if not self.gamma > 0:
            raise SpaceError("gamma must be positive")

    # -- structure -------------------------------------------------------------

    @property
    def carrier(self) -> Carrier:
        if self.kind in COUNTING_KINDS:
            return COUNTING
        return Carrier("interval", self.gamma)

    @property
    def C_E(self) -> float:
        if self.kind in ("Lp", "lp", "lp_weighted") and self.p < 1:
            return 2.0 ** (1.0 / self.p - 1.0)
        return 1.0

    @property
    def p_normed(self) -> float:
        """Exponent ``r`` with ``||x+y||^r <= ||x||^r + ||y||^r``."""
        if self.kind in ("Lp", "lp", "lp_weighted"):
            return min(1.0, self.p)
        return 1.0

    @property
    def inclusion_class(self) -> int:
        """1: neither inclusion with L_inf; 2: L_inf inside E; 3: E inside L_inf."""
        k = self.kind
        if k in ("Lp", "lorentz"):
            return 2 if math.isfinite(self.gamma) else 1
        if k in ("lp", "L1_cap_Linf", "orlicz_capped"):
            return 3
        if k == "cesaro":
            return 1
        w = self.weight
        if w.rule == "geometric":
            return 2 if w.a > 1 else 3
        if w.rule == "constant":
            return 3
        if w.rule in ("power", "harmonic"):
            q = w.exponent
            if q > 1:
                return 2
            return 3 if q <= 0 else 1
        return 1  # alternating: unbounded and not summable

    @property
    def oc_flag(self) -> bool:
        return self.kind not in ("L1_cap_Linf", "orlicz_capped")

    def label(self) -> str:
        if self.name:
            return self.name
        k = self.kind
        g = "inf" if self.gamma == INF else f"{self.gamma:g}"
        if k == "Lp":
            return f"L{self.p:g}[0,{g})"
        if k == "lp":
            return f"l{self.p:g}"
        if k == "lp_weighted":
            return f"l{self.p:g}(w:{self.weight.rule})"
        if k == "cesaro":
            return f"ces{self.p:g}"
        if k == "lorentz":
            return f"Lambda(t^{self.alpha - 1:g})[0,{g})"
        if k == "orlicz_capped":
            return f"L_psi/{self.flavor.lower()}"
        return "L1 cap Linf"

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"kind": self.kind}
        if self.kind in ("Lp", "lp", "lp_weighted", "cesaro"):
            d["p"] = self.p
        if self.kind in ("Lp", "lorentz"):
            d["gamma"] = "inf" if self.gamma == INF else self.gamma
        if self.kind == "lp_weighted":
            d["weight"] = self.weight.to_dict()
        if self.kind == "lorentz":
            d["alpha"] = self.alpha
        if self.kind == "orlicz_capped":
            d["flavor"] = self.flavor
        return d

    def describe(self) -> dict:
        return {**self.to_dict(), "label": self.label(), "C_E": self.C_E,
                "inclusion_class": self.inclusion_class, "oc_flag": self.oc_flag}

    # -- norms -------------------------------------------------------------------

    def norm(self, x: SimpleVector) -> float:
        return norm_E(self, x)

    def unit_norms(self, indices) -> np.ndarray:
        """``||e(i)||`` for sequence spaces."""
        i = np.asarray(indices, dtype=float)
        if self.kind == "lp":
            return np.ones_like(i)
        if self.kind == "lp_weighted":
            if self.weight.rule == "geometric":
                return np.power(self.weight.a, -i / self.p)
            return np.power(self.weight(i), 1.0 / self.p)
        if self.kind == "cesaro":
            return np.power(special.zeta(self.p, i), 1.0 / self.p)
        raise SpaceError("unit vectors exist only on the counting carrier")

    def char_norm(self, measure: float) -> float:
        """Norm of the indicator of an interval of the given measure."""
        if self.carrier.kind != "interval":
            raise SpaceError("char_norm is for interval carriers")
        if measure == 0:
            return 0.0
        return norm_E(self, SimpleVector.indicator(0.0, measure, self.carrier))

    def measure_for_char_norm(self, target: float) -> float:
        """Measure ``m`` with ``||chi_[0,m)|| = target`` (exact inverse)."""
        if not target > 0:
            raise SpaceError("target must be positive")
        k = self.kind
        if k == "Lp":
            m = target ** self.p
        elif k == "lorentz":
            m = (self.alpha * target) ** (1.0 / self.alpha)
        elif k == "L1_cap_Linf":
            if target < 1:
                raise SpaceError("indicator norms in L1 cap Linf are at least 1")
            m = target
        elif k == "orlicz_capped":
            if self.flavor == "LUXEMBURG":
                if target < 1:
                    raise SpaceError("indicator norms are at least 1")
                m = target * target
            else:
                if target <= 1:
                    raise SpaceError("Amemiya indicator norms exceed 1")
                m = target - 1.0 if target <= 2 else target * target / 4.0
        else:
            raise SpaceError("measure_for_char_norm is for interval carriers")
        if m > self.gamma:
            raise SpaceError(f"needed measure {m:g} exceeds gamma={self.gamma:g}")
        return m


def norm_E(space: SpaceDescriptor, x: SimpleVector) -> float:
    """Exact quasi-norm of a step function or finitely supported sequence."""
    if x.carrier.kind != space.carrier.kind:
        raise SpaceError(f"{space.label()} needs a {space.carrier.kind} vector")
    if space.carrier.kind == "interval" and len(x) and x.ends.max() > space.gamma:
        raise SpaceError("vector lives outside [0, gamma)")
    if x.is_zero:
        return 0.0
    v, m = x.values, x.measures
    k = space.kind
    if k in ("Lp", "lp"):
        return _scaled_power_sum(v, m, space.p)
    if k == "lp_weighted":
        with np.errstate(over="ignore", under="ignore"):
            w = space.weight.range_sum(x.starts, x.ends)
        if np.all(np.isfinite(w)) and np.all(w > 1e-290):
            return _scaled_power_sum(v, w, space.p)
        # geometric weights underflow far out; stay in log space
        logw = space.weight.log_range_sum(x.starts, x.ends)
        if np.any(np.isposinf(logw)):
            return INF
        return float(np.exp(special.logsumexp(space.p * np.log(v) + logw) / space.p))
    if k == "cesaro":
        return _cesaro_norm(x, space.p)
    if k == "L1_cap_Linf":
        return max(float(np.sum(v * m)), float(v.max()))
    if k == "lorentz":
        order = np.argsort(-v, kind="stable")
        vs, ms = v[order], m[order]
        M = np.cumsum(ms)
        W = np.power(M, space.alpha) / space.alpha
        dW = np.diff(np.concatenate([[0.0], W]))
        return float(np.sum(vs * dW))
    # orlicz_capped
    vmax = float(v.max())
    S = float(np.sum(v * v * m))
    root = math.sqrt(S)
    if space.flavor == "LUXEMBURG":
        return max(vmax, root)
    return 2.0 * root if root >= vmax else vmax + S / vmax


def _scaled_power_sum(v: np.ndarray, w: np.ndarray, p: float) -> float:
    keep = w > 0
    v, w = v[keep], w[keep]
    if len(v) == 0:
        return 0.0
    if not np.all(np.isfinite(w)):
        return INF
    top = float(v.max())
    s = float(np.sum(np.power(v / top, p) * w))
    return top * s ** (1.0 / p)


def _cesaro_norm(x: SimpleVector, p: float) -> float:
    total = 0.0
    prefix = 0.0
    cursor = 1.0
    for l, r, val in zip(x.starts, x.ends, x.values):
        if l > cursor and prefix > 0:
            total += prefix ** p * _zeta_range(p, cursor, l)
        total += _run_sum(prefix, val, l, r, p)
        prefix += val * (r - l)
        cursor = r
    total += prefix ** p * float(special.zeta(p, cursor))
    return total ** (1.0 / p)


def _zeta_range(p: float, lo: float, hi: float) -> float:
    if hi - lo <= DIRECT_SUM_LIMIT:
        return float(np.sum(np.arange(lo, hi) ** -p))
    return float(special.zeta(p, lo) - special.zeta(p, hi))


def _run_sum(prefix: float, val: float, lo: float, hi: float, p: float) -> float:
    """``sum_{lo <= n < hi} ((prefix + val (n - lo + 1)) / n)^p``."""
    def f(n):
        return np.power((prefix + val * (n - lo + 1.0)) / n, p)

    if hi - lo <= DIRECT_SUM_LIMIT:
        return float(np.sum(f(np.arange(lo, hi))))
    mid = lo + DIRECT_SUM_LIMIT
    head = float(np.sum(f(np.arange(lo, mid))))
    h = 1e-3 * mid

    def df(t):
        return float((f(t + h) - f(t - h)) / (2 * h))

    return head + _euler_maclaurin(lambda t: float(f(t)), df, mid, hi)


# --- class-3 constant, sequences, probes ---------------------------------------


@dataclass
class AEResult:
    value: float
    exact: bool
    flags: list[str] = field(default_factory=list)
    horizon: int | None = None


def a_E(space: SpaceDescriptor, horizon: int = 100_000) -> AEResult:
    """``inf ||chi_A||`` over sets of positive measure (meaningful in class 3)."""
    cls = space.inclusion_class
    if cls != 3:
        flags = [f"CLASS_{cls}"]
        if space.kind in COUNTING_KINDS:
            norms = space.unit_norms(np.arange(1, horizon + 1))
            flags.append("NOT_BOUNDED_BELOW")
            return AEResult(float(norms.min()), False, flags, horizon)
        return AEResult(0.0, True, flags)
    k = space.kind
    if k == "lp":
        return AEResult(1.0, True)
    if k in ("L1_cap_Linf", "orlicz_capped"):
        return AEResult(1.0, True)
    w = space.weight
    if w.rule == "constant":
        return AEResult(w.c ** (1.0 / space.p), True)
    if w.rule == "geometric":  # a <= 1: non-decreasing weights, smallest at i = 1
        return AEResult(float(space.unit_norms([1])[0]), True)
    norms = space.unit_norms(np.arange(1, horizon + 1))
    return AEResult(float(norms.min()), False, [], horizon)


@dataclass
class UnitSequence:
    mode: str
    found: bool
    indices: np.ndarray
    d: float
    norms: np.ndarray
    certificate: dict
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        head = self.indices[:20].tolist()
        return {"mode": self.mode, "found": self.found, "d": self.d, "count": int(len(self.indices)),
                "first_indices": head, "certificate": self.certificate, "flags": self.flags}


def find_unit_vector_sequence(space: SpaceDescriptor, mode: str = "BOUNDED_d", horizon: int = 100_000,
                              threshold_factor: float = 5.0) -> UnitSequence:
    """Index sequences needed by the sequence-space witness builders.

    ``BOUNDED_d``: indices with ``||e(i)|| <= d`` whose partial sums leave
    every ball of radius ``threshold_factor * d`` within the horizon.
    ``VANISHING_RATIO_d``: successive record lows of ``||e(i)||``; they must
    fall below 1% of the first, and ``d`` is the smallest consecutive ratio.
    """
    if space.carrier.kind != "counting":
        raise SpaceError("unit vector sequences need a sequence space")
    idx = np.arange(1, horizon + 1)
    norms = space.unit_norms(idx)
    mode = mode.upper().replace("BOUNDED_D", "BOUNDED_d").replace("VANISHING_RATIO_D", "VANISHING_RATIO_d")
    if mode == "BOUNDED_d":
        tried = []
        for d in dict.fromkeys([float(norms[0]), float(np.quantile(norms, 0.5)),
                                float(np.quantile(norms, 0.9)), float(norms.max())]):
            chosen = idx[norms <= d * (1 + 1e-12)]
            total = norm_E(space, SimpleVector.on_indices(chosen))
            tried.append({"d": d, "count": int(len(chosen)), "partial_sum_norm": total})
            if total > threshold_factor * d:
                cert = {"horizon": horizon, "threshold": threshold_factor * d,
                        "partial_sum_norm": total, "tried": tried}
                return UnitSequence("BOUNDED_d", True, chosen, d, norms[chosen - 1], cert)
        return UnitSequence("BOUNDED_d", False, np.array([], dtype=int), INF, np.array([]),
                            {"horizon": horizon, "tried": tried}, ["NOT_FOUND"])
    if mode == "VANISHING_RATIO_d":
        positive = norms > 1e-250  # stay clear of subnormal rounding
        idx, norms = idx[positive], norms[positive]
        running = np.minimum.accumulate(norms)
        record = np.concatenate([[True], norms[1:] < running[:-1]])
        chosen, vals = idx[record], norms[record]
        if len(chosen) < 2 or vals[-1] > 1e-2 * vals[0]:
            return UnitSequence("VANISHING_RATIO_d", False, np.array([], dtype=int), 0.0, np.array([]),
                                {"horizon": horizon, "records": int(len(chosen))}, ["NOT_FOUND"])
        d = float(np.min(vals[1:] / vals[:-1]))
        cert = {"horizon": horizon, "first_norm": float(vals[0]), "last_norm": float(vals[-1])}
        return UnitSequence("VANISHING_RATIO_d", True, chosen, d, vals, cert)
    raise SpaceError(f"unknown mode {mode!r}")


def _probe_pair(space: SpaceDescriptor, rng: np.random.Generator, eps: float):
    """Random disjoint ``x`` (norm 1) and ``y`` (norm ``eps``)."""
    k = int(rng.integers(1, 5))
    vals_x = rng.uniform(0.2, 2.0, k)
    vals_y = rng.uniform(0.2, 2.0, int(rng.integers(1, 4)))
    if space.carrier.kind == "counting":
        start = int(rng.integers(1, 20))
        lens_x = rng.integers(1, 4, k)
        lens_y = rng.integers(1, 4, len(vals_y))
    else:
        start = float(rng.uniform(0.0, 1.0))
        lens_x = rng.uniform(0.05, 1.0, k)
        lens_y = rng.uniform(0.05, 1.0, len(vals_y))
    parts_x, parts_y = [], []
    pos = start
    for v, ln in zip(vals_x, lens_x):
        parts_x.append((pos, pos + ln, v))
        pos += ln
    for v, ln in zip(vals_y, lens_y):
        parts_y.append((pos, pos + ln, v))
        pos += ln
    gamma = space.gamma if space.carrier.kind == "interval" else INF
    if pos > gamma:
        scale = gamma / pos * 0.999
        parts_x = [(a * scale, b * scale, v) for a, b, v in parts_x]
        parts_y = [(a * scale, b * scale, v) for a, b, v in parts_y]
    x = SimpleVector.from_parts(parts_x, space.carrier)
    y = SimpleVector.from_parts(parts_y, space.carrier)
    x = x / norm_E(space, x)
    y = y * (eps / norm_E(space, y))
    return x, y


def monotonicity_probe(space: SpaceDescriptor, eps_grid: Sequence[float] = (0.1, 0.25, 0.5, 1.0),
                       samples: int = 200, seed: int = 0) -> dict:
    """Empirical uniform-monotonicity modulus on disjoint pairs.

    ``delta_hat(eps) = min (||x + y|| - 1)`` over sampled disjoint ``x, y``
    with ``||x|| = 1`` and ``||y|| = eps``.
    """
    if space.C_E != 1.0:
        raise SpaceError("the probe assumes a normed (C_E = 1) space")
    rng = np.random.default_rng(seed)
    table = {}
    for eps in eps_grid:
        best = INF
        for _ in range(samples):
            x, y = _probe_pair(space, rng, eps)
            best = min(best, norm_E(space, x + y) - 1.0)
        table[float(eps)] = best
    return {"space": space.label(), "samples": samples, "seed": seed, "delta_hat": table}


def rescaled_modulus(space: SpaceDescriptor, eps1: float, A: float, samples: int = 200, seed: int = 0) -> float:
    """``delta_1(eps1, A) = delta_hat(eps1 / A)``."""
    if not A > 0:
        raise SpaceError("A must be positive")
    return monotonicity_probe(space, [eps1 / A], samples, seed)["delta_hat"][float(eps1 / A)]


# --- JSON -------------------------------------------------------------------------


_ALIASES = {
    "L_p": "Lp", "l_p": "lp", "lpw": "lp_weighted", "ces": "cesaro", "ces_p": "cesaro",
    "lorentz_function": "lorentz", "L1capLinf": "L1_cap_Linf", "L1_cap_Linfinity": "L1_cap_Linf",
}


def space_from_dict(d: Mapping[str, Any]) -> SpaceDescriptor:
    if "kind" not in d:
        raise SpaceError("space descriptor needs a 'kind'")
    kind = _ALIASES.get(d["kind"], d["kind"])
    kw: dict[str, Any] = {"kind": kind}
    if "p" in d:
        kw["p"] = float(d["p"])
    if "gamma" in d:
        kw["gamma"] = _num(d["gamma"])
    if "alpha" in d:
        kw["alpha"] = float(d["alpha"])
    if "flavor" in d:
        kw["flavor"] = str(d["flavor"]).upper()
    if "weight" in d:
        w = dict(d["weight"])
        rule = w.pop("rule", None)
        if rule is None:
            raise SpaceError("weight needs a 'rule'")
        kw["weight"] = WeightRule(rule, **{k: float(v) for k, v in w.items()})
    if "name" in d:
        kw["name"] = str(d["name"])
    try:
        return SpaceDescriptor(**kw)
    except TypeError as exc:
        raise SpaceError(str(exc)) from None


def Lp(p: float, gamma: float = INF) -> SpaceDescriptor:
    return SpaceDescriptor("Lp", p=p, gamma=gamma)


def lp(p: float) -> SpaceDescriptor:
    return SpaceDescriptor("lp", p=p)


def lp_weighted(p: float, rule: str, **params) -> SpaceDescriptor:
    return SpaceDescriptor("lp_weighted", p=p, weight=WeightRule(rule, **params))


def cesaro(p: float) -> SpaceDescriptor:
    return SpaceDescriptor("cesaro", p=p)


def lorentz(alpha: float, gamma: float = INF) -> SpaceDescriptor:
    return SpaceDescriptor("lorentz", alpha=alpha, gamma=gamma)


def l1_cap_linf() -> SpaceDescriptor:
    return SpaceDescriptor("L1_cap_Linf")


def orlicz_capped(flavor: str = "LUXEMBURG") -> SpaceDescriptor:
    return SpaceDescriptor("orlicz_capped", flavor=flavor.upper())


__all__ = [
    "SpaceDescriptor", "WeightRule", "SpaceError", "norm_E", "a_E", "find_unit_vector_sequence",
    "monotonicity_probe", "rescaled_modulus", "space_from_dict", "Lp", "lp", "lp_weighted", "cesaro",
    "lorentz", "l1_cap_linf", "orlicz_capped", "VectorError",
]
