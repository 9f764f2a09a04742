"""The space ``E_phi``: its modular, the two gauges, and the quasi-modular constants."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .indices import (DEFAULT_GRID, DegenerateRegime, GridSpec, IndexEstimate, PreconditionError, Regime,
                      check_delta_2str, check_delta_epsilon, estimate_lower_index, extend_constant)
from .orlicz import INF, OrliczFunction
from .spaces import SpaceDescriptor, SpaceError, a_E, norm_E
from .vectors import SimpleVector

DEFAULT_TOL = 1e-10
MAX_DOUBLINGS = 1024
MAX_BISECTIONS = 200
TRANSFER_EPS = (0.1, 0.5)

CLASS_REGIME = {1: Regime.ALL, 2: Regime.INFINITY, 3: Regime.ZERO}


class NotCertified(PreconditionError):
    """The lower index was not certified positive, so condition (v) has no recipe."""


class NotInSpace(ValueError):
    pass


class CLSpace:
    """An ideal space ``E`` paired with an Orlicz function ``phi``.

    The regime of the index certificate follows the inclusion class of ``E``.
    """

    def __init__(self, E: SpaceDescriptor, phi: OrliczFunction, grid: GridSpec = DEFAULT_GRID):
        self.E = E
        self.phi = phi
        self.grid = grid
        self.regime = CLASS_REGIME[E.inclusion_class]
        self.flags: list[str] = []
        try:
            self.index_cert: IndexEstimate | None = estimate_lower_index(phi, self.regime, grid)
        except DegenerateRegime as exc:
            self.index_cert = None
            self.flags.append("DEGENERATE_REGIME")
            self.degenerate_reason = str(exc)
        if not self.certified:
            self.flags.append("NOT_CERTIFIED_QUASINORM")

    @property
    def inclusion_class(self) -> int:
        return self.E.inclusion_class

    @property
    def certified(self) -> bool:
        return self.index_cert is not None and self.index_cert.lo > 0

    @property
    def p(self) -> float:
        """Exponent used in condition (v)."""
        if not self.certified:
            raise NotCertified(f"lower index not certified positive for {self.label()}")
        lo = self.index_cert.lo
        return 1.0 if math.isinf(lo) else lo

    def label(self) -> str:
        return f"{self.E.label()} x {self.phi.name or 'phi'}"

    @cached_property
    def a_E(self) -> float:
        return a_E(self.E).value

    @cached_property
    def delta_eps(self) -> dict:
        return {r: check_delta_epsilon(self.phi, r, TRANSFER_EPS, self.grid).holds
                for r in (self.regime, Regime.ALL)}

    @cached_property
    def delta_2str(self) -> dict:
        return {r: check_delta_2str(self.phi, r, TRANSFER_EPS, self.grid).holds
                for r in (self.regime, Regime.ALL)}

    def describe(self) -> dict:
        return {
            "space": self.E.describe(),
            "phi": self.phi.describe(),
            "regime": self.regime.value,
            "index": None if self.index_cert is None else self.index_cert.to_dict(),
            "certified": self.certified,
            "flags": list(self.flags),
        }

    def __repr__(self) -> str:
        return f"CLSpace({self.label()}, regime={self.regime.value}, certified={self.certified})"


# --- modular and gauges ------------------------------------------------------


def _check_carrier(cl: CLSpace, x: SimpleVector):
    c = cl.E.carrier
    if x.carrier.kind != c.kind:
        raise SpaceError(f"vector lives on a {x.carrier.kind} carrier, space on {c.kind}")
    if c.kind == "interval" and len(x) and x.ends[-1] > c.gamma:
        raise SpaceError(f"vector support exceeds [0, {c.gamma:g})")


def modular(cl: CLSpace, x: SimpleVector) -> float:
    """``|| phi(|x|) ||_E``, INF when some part maps to INF."""
    _check_carrier(cl, x)
    if x.is_zero:
        return 0.0
    vals = np.atleast_1d(cl.phi(x.values))
    if np.any(np.isinf(vals)):
        return INF
    keep = vals > 0
    if not np.any(keep):
        return 0.0
    composed = SimpleVector(x.carrier, x.starts[keep], x.ends[keep], vals[keep], canonical=True)
    return float(norm_E(cl.E, composed))


@dataclass
class NormResult:
    norm: float
    modular_at_norm: float
    feasible: bool
    flags: list[str] = field(default_factory=list)
    iterations: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("norm", "modular_at_norm"):
            if math.isinf(d[k]):
                d[k] = "INF"
        return d

    def __float__(self) -> float:
        return self.norm


def _initial_scale(cl: CLSpace, x: SimpleVector) -> float | None:
    """``sup|x| / phi^-1(1 / ||chi_supp||_E)``: exact for indicators."""
    supp = SimpleVector(x.carrier, x.starts, x.ends, np.ones(len(x)), canonical=True)
    level = cl.phi.inverse(1.0 / norm_E(cl.E, supp))
    if math.isinf(level):
        return None
    if level <= 0:
        return x.sup_abs
    return x.sup_abs / level


def _gauge(pred: Callable[[float], bool], start: float, tol: float):
    """Smallest ``lam`` with ``pred(lam)`` for a predicate monotone in ``lam``."""
    flags: list[str] = []
    hi = start
    n = 0
    while not pred(hi):
        n += 1
        if n > MAX_DOUBLINGS:
            return INF, INF, ["NOT_IN_SPACE"], n
        hi *= 2.0
    lo = hi / 2.0
    m = 0
    while pred(lo):
        m += 1
        if m > MAX_DOUBLINGS or lo == 0.0:
            return 0.0, 0.0, ["ZERO_GAUGE"], n + m
        hi, lo = lo, lo / 2.0
    it = 0
    while hi - lo > tol * hi and it < MAX_BISECTIONS:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
        it += 1
    if it >= MAX_BISECTIONS:
        flags.append("MAX_ITERATIONS")
    return hi, lo, flags, n + m + it


def luxemburg_norm(cl: CLSpace, x: SimpleVector, tol: float = DEFAULT_TOL) -> NormResult:
    """``inf{lam > 0 : rho(x / lam) <= 1}`` by bracketing and bisection.

    The returned value is the feasible end of the final bracket.  ``JUMP``
    marks a modular that leaps over 1 at the infimum.
    """
    _check_carrier(cl, x)
    if x.is_zero:
        return NormResult(0.0, 0.0, True)
    flags = [] if cl.certified else ["NOT_CERTIFIED_QUASINORM"]
    start = _initial_scale(cl, x)
    if start is None:
        # phi never exceeds the level needed, so every dilation stays in the ball
        return NormResult(0.0, modular(cl, x), True, flags + ["DEGENERATE_PHI"])
    absx = abs(x)
    lam, lo, extra, its = _gauge(lambda lam: modular(cl, absx / lam) <= 1.0, start, tol)
    flags += extra
    if math.isinf(lam):
        return NormResult(INF, INF, False, flags, its)
    at = modular(cl, absx / lam) if lam > 0 else modular(cl, x)
    if lam > 0:
        below = modular(cl, absx / lo)
        if math.isinf(below) or below > 1.0 + 1e-6:
            flags.append("JUMP")
    return NormResult(lam, at, at <= 1.0, flags, its)


def mazur_orlicz_f_norm(cl: CLSpace, x: SimpleVector, tol: float = DEFAULT_TOL) -> NormResult:
    """``inf{lam > 0 : rho(x / lam) <= lam}``."""
    _check_carrier(cl, x)
    if x.is_zero:
        return NormResult(0.0, 0.0, True)
    flags = [] if cl.certified else ["NOT_CERTIFIED_QUASINORM"]
    absx = abs(x)
    lam, _, extra, its = _gauge(lambda lam: modular(cl, absx / lam) <= lam, 1.0, tol)
    flags += extra
    if math.isinf(lam):
        return NormResult(INF, INF, False, flags, its)
    at = modular(cl, absx / lam) if lam > 0 else modular(cl, x)
    return NormResult(lam, at, at <= lam, flags, its)


# --- condition (v) and the quasi-triangle constant ---------------------------------


@dataclass
class ConditionV:
    p: float
    K: float
    eps: float
    A: float
    inclusion_class: int
    threshold: float | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["threshold"] is not None and math.isinf(d["threshold"]):
            d["threshold"] = "INF"
        return d


def condition_v_constant(cl: CLSpace, eps: float, A: float) -> ConditionV:
    """``(p, K)`` with ``rho(ax) <= K a^p rho(x) + eps`` for ``0 < a <= 1``, ``rho(x) <= A``.

    Class 1 uses the index constant directly.  Class 2 drops the part of
    ``x`` below a level ``u1`` whose contribution is at most ``eps`` and
    extends the index constant down to ``u1``.  Class 3 bounds ``|x|`` by
    ``u2 = phi^-1(min(A / a_E, phi(b_phi)))`` and extends up to ``u2``.
    """
    if not (eps > 0 and A > 0):
        raise PreconditionError("eps and A must be positive")
    if not cl.certified:
        raise NotCertified(f"lower index not certified positive for {cl.label()}")
    phi, cert, C = cl.phi, cl.index_cert, cl.E.C_E
    cls = cl.inclusion_class
    p, K, u0 = cl.p, cert.K, cert.u0
    if cls == 1:
        return ConditionV(p, C * K, eps, A, 1, None, {"K_index": K})
    if cls == 2:
        chi_T = cl.E.char_norm(cl.E.gamma) if cl.E.carrier.kind == "interval" else _counting_total(cl.E)
        u1 = float(phi.inverse(eps / (C * chi_T)))
        details = {"K_index": K, "u0": u0, "chi_T_norm": chi_T}
        if math.isinf(u1) or u1 >= u0:
            return ConditionV(p, C * K, eps, A, 2, u1, details)
        K1 = extend_constant(phi, Regime.INFINITY, p, K, u0, u1, cl.grid)
        return ConditionV(p, C * K1, eps, A, 2, u1, {**details, "K_extended": K1})
    # class 3
    aE = cl.a_E
    u2 = float(phi.inverse(min(A / aE, phi.phi_at_b)))
    details = {"a_E": aE, "u0": u0}
    if math.isinf(u2):
        raise PreconditionError("phi stays below A / a_E; no bound on |x|")
    if phi.a_phi > 0:
        # zero near the origin: any p works, take p = 1
        target = u2 if u2 > phi.a_phi else u0
        K2 = extend_constant(phi, Regime.ZERO, 1.0, 1.0, u0, target, cl.grid)
        return ConditionV(1.0, max(1.0, K2), eps, A, 3, u2, {**details, "K_extended": K2})
    if u2 <= u0:
        return ConditionV(p, K, eps, A, 3, u2, {**details, "K_index": K})
    K2 = extend_constant(phi, Regime.ZERO, p, K, u0, u2, cl.grid)
    return ConditionV(p, K2, eps, A, 3, u2, {**details, "K_index": K, "K_extended": K2})


def _counting_total(E: SpaceDescriptor) -> float:
    # only summable weights put l_inf inside a sequence space
    w = E.weight
    if E.kind != "lp_weighted" or w is None:
        raise SpaceError("||chi_T|| is infinite")
    total = float(np.atleast_1d(w.range_sum(np.array([1.0]), np.array([INF])))[0])
    return total ** (1.0 / E.p)


def quasi_triangle_constant(M: float, p: float, K_rule, eps: float) -> float:
    """``(K / (1/(2M) - eps))^(1/p)`` with ``K = K_rule(eps, 1)``."""
    if M < 1 or not p > 0:
        raise PreconditionError("need M >= 1 and p > 0")
    if not 0 < eps < 1.0 / (2.0 * M):
        raise PreconditionError(f"eps must lie in (0, {1.0 / (2.0 * M):g})")
    K = K_rule(eps, 1.0) if callable(K_rule) else float(K_rule)
    return (K / (1.0 / (2.0 * M) - eps)) ** (1.0 / p)


def minimized_quasi_triangle_constant(cl: CLSpace, eps_grid: Sequence[float] | None = None) -> dict:
    """Smallest constant over a grid of ``eps``; reports the eps -> 0 limit when K is flat."""
    M = cl.E.C_E
    top = 1.0 / (2.0 * M)
    if eps_grid is None:
        eps_grid = top * np.geomspace(1e-4, 0.95, 40)
    rows = []
    for eps in eps_grid:
        cv = condition_v_constant(cl, float(eps), 1.0)
        rows.append((quasi_triangle_constant(M, cv.p, cv.K, float(eps)), float(eps), cv.p, cv.K))
    C, eps, p, K = min(rows)
    out = {"C": C, "eps": eps, "M": M, "p": p, "K": K, "grid_size": len(rows)}
    Ks = {r[3] for r in rows}
    if len(Ks) == 1:
        out["limit"] = (2.0 * M * K) ** (1.0 / p)
    return out


def aoki_rolewicz_exponent(C: float) -> float:
    """``p`` with ``C = 2^(1/p - 1)``."""
    if not C >= 1:
        raise PreconditionError("need C >= 1")
    return 1.0 / (1.0 + math.log2(C))


# --- unit-sphere transfer ------------------------------------------------------------------


def strictly_increasing_on(phi: OrliczFunction, lo: float, hi: float, samples: int = 2000) -> bool:
    """Sampled check including every breakpoint and the midpoints between them."""
    hi = min(hi, phi.b_phi)
    if not hi > lo:
        return True
    if phi.a_phi > lo:
        return False
    bp = phi.breakpoints()
    bp = bp[(bp > lo) & (bp < hi)]
    if lo > 0 and math.isfinite(hi):
        grid = np.geomspace(lo, hi, samples)
    else:
        grid = np.geomspace(max(lo, 1e-12), min(hi, 1e12), samples)
    pts = np.unique(np.concatenate([grid, bp]))
    pts = np.unique(np.concatenate([pts, 0.5 * (pts[1:] + pts[:-1])]))
    pts = pts[(pts > lo) & (pts < hi)]
    if lo > 0:
        pts = np.concatenate([[lo], pts])
    v = phi(pts)
    v = v[np.isfinite(v)]
    return bool(np.all(np.diff(v) > 0))


def _bounded_below_everywhere(cl: CLSpace, x: SimpleVector) -> bool:
    c = cl.E.carrier
    if c.kind != "interval" or math.isinf(c.gamma) or x.is_zero:
        return False
    covered = x.starts[0] == 0 and x.ends[-1] >= c.gamma and np.all(x.starts[1:] == x.ends[:-1])
    return bool(covered and x.values.min() > 0)


def rho_one_gives_norm_one(cl: CLSpace, x: SimpleVector | None = None) -> tuple[bool, str]:
    """``rho(x) = 1 => ||x|| = 1`` under a Delta_eps certificate."""
    phi, cls = cl.phi, cl.inclusion_class
    if not cl.delta_eps[cl.regime]:
        return False, f"Delta_eps not certified in the {cl.regime.value} regime"
    if cls == 2:
        if cl.delta_eps[Regime.ALL]:
            return True, "Delta_eps on all of R+"
        if x is not None and strictly_increasing_on(phi, phi.a_phi, INF) and _bounded_below_everywhere(cl, x):
            return True, "strictly increasing and x bounded away from 0"
        return False, "class 2 needs Delta_eps on R+ or a strictly increasing phi with x bounded below"
    if cls == 3:
        top = min(float(phi.inverse(1.0 / cl.a_E)), phi.b_phi)
        if strictly_increasing_on(phi, phi.a_phi, top):
            return True, "strictly increasing below phi^-1(1/a_E)"
        return False, "phi has a flat stretch below phi^-1(1/a_E)"
    return True, "Delta_eps in the matching regime"


def norm_one_gives_rho_one(cl: CLSpace) -> tuple[bool, str]:
    """``||x|| = 1 => rho(x) = 1`` under a Delta_2-strong certificate."""
    phi, cls = cl.phi, cl.inclusion_class
    if not cl.delta_2str[cl.regime]:
        return False, f"Delta_2str not certified in the {cl.regime.value} regime"
    if cls == 2:
        if cl.delta_2str[Regime.ALL]:
            return True, "Delta_2str on all of R+"
        if cl.E.C_E == 1.0 and strictly_increasing_on(phi, phi.a_phi, INF):
            return True, "Banach E with strictly increasing phi"
        return False, "class 2 needs Delta_2str on R+ or a Banach E with strictly increasing phi"
    if cls == 3:
        level = 1.0 / cl.a_E
        if level > phi.phi_at_b:
            return False, "1/a_E exceeds phi(b_phi)"
        if strictly_increasing_on(phi, 0.0, float(phi.inverse(level))):
            return True, "strictly increasing below phi^-1(1/a_E)"
        return False, "phi has a flat stretch below phi^-1(1/a_E)"
    return True, "Delta_2str in the matching regime"


def unit_sphere_transfer_check(cl: CLSpace, x: SimpleVector, tol: float = 1e-8) -> dict:
    """Evaluate ``rho(x)`` and ``||x||`` and test every implication that applies."""
    rho = modular(cl, x)
    nr = luxemburg_norm(cl, x)
    norm = nr.norm
    rows = []

    def near_one(v):
        return abs(v - 1.0) <= tol

    rows.append({"implication": "norm < 1 => rho <= 1", "applies": norm < 1 - tol,
                 "holds": rho <= 1 + tol, "basis": "always"})
    if near_one(norm) or near_one(rho):
        ok = True  # the equivalence is decided by rounding at the boundary
    else:
        ok = (norm <= 1) == (rho <= 1)
    rows.append({"implication": "norm <= 1 <=> rho <= 1", "applies": True, "holds": ok, "basis": "always"})
    applies, why = rho_one_gives_norm_one(cl, x)
    rows.append({"implication": "rho = 1 => norm = 1", "applies": applies and near_one(rho),
                 "holds": near_one(norm) if near_one(rho) else True, "basis": why})
    applies, why = norm_one_gives_rho_one(cl)
    rows.append({"implication": "norm = 1 => rho = 1", "applies": applies and near_one(norm),
                 "holds": near_one(rho) if near_one(norm) else True, "basis": why})
    contradiction = any(r["applies"] and not r["holds"] for r in rows)
    regime = "DELTA_EPS" if cl.delta_eps[cl.regime] else "NO_DELTA_EPS"
    flags = ["CONTRADICTION"] if contradiction else []
    return {"rho": rho, "norm": norm, "regime": regime, "implications": rows,
            "contradiction": contradiction, "flags": flags + nr.flags}


def sup_bound_check(cl: CLSpace, x: SimpleVector, tol: float = 1e-10) -> bool:
    """``sup|x| <= phi^-1(1/a_E)`` for ``rho(x) <= 1`` in a space inside L_inf."""
    if cl.inclusion_class != 3:
        raise PreconditionError("the sup bound needs E inside L_inf (class 3)")
    if x.is_zero:
        return True
    if not modular(cl, x) <= 1.0:
        raise PreconditionError("the sup bound needs rho(x) <= 1")
    return x.sup_abs <= float(cl.phi.inverse(1.0 / cl.a_E)) + tol


def sup_bound(cl: CLSpace) -> float:
    return float(cl.phi.inverse(1.0 / cl.a_E))


def tends_to_zero(seq: Sequence[float], factor: float = 0.1) -> bool:
    """Finite-prefix trend: the last term is at most ``factor`` times the largest finite one."""
    s = np.asarray(seq, dtype=float)
    if len(s) == 0 or np.all(s == 0) or s[-1] == 0:
        return True
    finite = s[np.isfinite(s)]
    if not np.isfinite(s[-1]) or len(finite) == 0:
        return False
    return bool(s[-1] <= factor * finite.max())


def norm_null_equivalence_check(cl: CLSpace, xs: Iterable[SimpleVector],
                                lambdas: Sequence[float] = (1.0, 10.0, 100.0)) -> dict:
    """Compare ``||x_n|| -> 0`` with ``rho(lam x_n) -> 0`` on a finite prefix."""
    xs = list(xs)
    norms = [luxemburg_norm(cl, x).norm for x in xs]
    mods = {float(lam): [modular(cl, lam * x) for x in xs] for lam in lambdas}
    norm_trend = tends_to_zero(norms)
    mod_trend = {lam: tends_to_zero(v) for lam, v in mods.items()}
    return {"norm_to_zero": norm_trend, "modular_to_zero": mod_trend,
            "consistent": norm_trend == all(mod_trend.values()),
            "norms": norms, "modulars": mods, "terms": len(xs)}


MEMBERSHIP_SCALES = tuple(2.0 ** -k for k in range(0, 1000, 8))


def membership_report(cl: CLSpace, x: SimpleVector, scales: Sequence[float] = MEMBERSHIP_SCALES) -> dict:
    """Two membership tests: some dilation has finite modular, and ``rho(lam x) -> 0``.

    The scales run down to about 2^-1000 because functions like
    ``1/ln(1 + 1/u)`` only fall off logarithmically.
    """
    vals = [modular(cl, s * x) for s in scales]
    some_finite = any(math.isfinite(v) for v in vals)
    return {"some_finite": some_finite, "vanishes": tends_to_zero(vals), "modulars": vals}


def order_continuity_probe(cl: CLSpace, samples: int = 10, tol: float = 1e-8) -> dict:
    """In a non order-continuous ``E``, lift its witness ``x_n`` to ``y_n = phi^-1(x_n)``.

    ``rho(y_n)`` reproduces ``||x_n||_E > 1``, so ``||y_n||`` stays near 1 or
    above.  With ``b_phi`` finite every indicator has norm at least ``1/b_phi``.
    """
    E, phi = cl.E, cl.phi
    out: dict = {"applies": not E.oc_flag, "rows": [], "indicator_rows": []}
    if E.oc_flag:
        return out
    level = 1.5
    height = float(phi.inverse(level))
    ok = True
    for n in range(1, samples + 1):
        xn = SimpleVector.indicator(n, n + 1, E.carrier, level)
        yn = SimpleVector.indicator(n, n + 1, E.carrier, height)
        nr = luxemburg_norm(cl, yn)
        row = {"n": n, "x_norm_E": norm_E(E, xn), "rho_y": modular(cl, yn), "y_norm": nr.norm,
               "ok": nr.norm > 1 - tol}
        ok &= row["ok"]
        out["rows"].append(row)
    if math.isfinite(phi.b_phi):
        for m in np.geomspace(1e-3, 1e3, samples):
            nr = luxemburg_norm(cl, SimpleVector.indicator(0.0, float(m), E.carrier))
            row = {"measure": float(m), "norm": nr.norm, "ok": nr.norm >= 1.0 / phi.b_phi - tol}
            ok &= row["ok"]
            out["indicator_rows"].append(row)
    out["ok"] = bool(ok)
    return out
