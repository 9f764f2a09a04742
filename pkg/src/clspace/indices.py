"""Lower Matuszewska-Orlicz indices and growth conditions, certified on grids.

Nothing here proves anything about a continuum.  Every verdict is labelled
with the grid it was certified on, and every negative verdict carries sample
points that can be re-evaluated independently.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .orlicz import INF, OrliczError, OrliczFunction


class Regime(str, Enum):
    ZERO = "ZERO"
    INFINITY = "INFINITY"
    ALL = "ALL"


class DegenerateRegime(OrliczError):
    pass


class PreconditionError(OrliczError):
    pass


@dataclass(frozen=True)
class GridSpec:
    u_min: float = 1e-8
    u_max: float = 1e8
    a_min: float = 1e-6
    n_u: int = 512
    n_a: int = 512
    u0: float = 1.0
    p_step: float = 0.01
    k_cap: float = 1e9

    def label(self) -> str:
        return (f"u in [{self.u_min:g}, {self.u_max:g}] x {self.n_u}, "
                f"a in [{self.a_min:g}, 1] x {self.n_a}")


DEFAULT_GRID = GridSpec()

# Growth checks: how far past the grid we may look for a decisive ratio, and
# what "decisive" means.
DIVERGENCE_LEVEL = 1e6
EXTENSION_DECADES = 60
DECADE_POINTS = 48
TAIL_DECADES = 6


@dataclass
class IndexEstimate:
    regime: str
    lo: float
    hi: float
    K: float | None
    u0: float
    grid: dict
    witness: dict | None = None
    flags: list[str] = field(default_factory=list)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        d = asdict(self)
        d["width"] = self.width
        d["certified_on"] = "grid"
        return d


@dataclass
class ConditionVerdict:
    condition: str
    regime: str
    holds: bool
    constants: dict
    witness: list[dict] | None = None
    reason: str = ""
    grid: dict | None = None
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["certified_on"] = "grid"
        return d


def _regime(r) -> Regime:
    return r if isinstance(r, Regime) else Regime(str(r).upper())


def _with_breakpoints(phi: OrliczFunction, u: np.ndarray, lo: float, hi: float) -> np.ndarray:
    bp = phi.breakpoints()
    bp = bp[(bp >= lo) & (bp <= hi)]
    return np.unique(np.concatenate([u, bp]))


def _finite_positive(phi: OrliczFunction, u: np.ndarray):
    v = phi(u)
    keep = (v > 0) & np.isfinite(v)
    return u[keep], v[keep]


# --- indices ----------------------------------------------------------------


def _index_domain(phi: OrliczFunction, regime: Regime, grid: GridSpec):
    lo, hi = grid.u_min, grid.u_max
    u0 = grid.u0
    if regime is Regime.ZERO:
        if not math.isfinite(phi.b_phi):
            hi = min(hi, u0)
        else:
            u0 = min(u0, phi.b_phi)
            hi = min(hi, u0)
    elif regime is Regime.INFINITY:
        if math.isfinite(phi.b_phi) and phi.b_phi <= u0:
            u0 = phi.b_phi / 2.0
        lo = max(lo, u0)
    hi = min(hi, phi.b_phi)
    if hi <= lo:
        raise DegenerateRegime(f"empty {regime.value} domain for {phi!r}")
    u = np.geomspace(lo, hi, grid.n_u)
    u = _with_breakpoints(phi, u, lo, hi)
    # just right of each kink, where the elasticity of a piecewise function is extreme
    bp = phi.breakpoints()
    bp = bp[(bp >= lo) & (bp < hi)]
    right = (bp[:, None] * (1.0 + np.geomspace(1e-5, 1e-2, 8))[None, :]).ravel()
    u = np.unique(np.concatenate([u, right[right <= hi]]))
    u, v = _finite_positive(phi, u)
    if len(u) < 2:
        raise DegenerateRegime(f"phi is identically 0 or INF on the {regime.value} domain")
    return u, v, u0


def _a_grid(grid: GridSpec) -> np.ndarray:
    # the local elasticity is the a -> 1 limit, so cluster extra points there
    near_one = 1.0 - np.geomspace(1e-5, 1e-2, 24)  # closer to 1 the exponent is rounding noise
    return np.unique(np.concatenate([np.geomspace(grid.a_min, 1.0, grid.n_a)[:-1], near_one]))


def _ratio_matrix(phi: OrliczFunction, u: np.ndarray, v: np.ndarray, a: np.ndarray) -> np.ndarray:
    au = np.outer(a, u)
    return phi(au.ravel()).reshape(au.shape) / v[None, :]


def estimate_lower_index(phi: OrliczFunction, regime=Regime.ALL, grid: GridSpec = DEFAULT_GRID) -> IndexEstimate:
    """Bracket a lower index on a log grid.

    ``hi`` is the smallest exponent ``log(phi(au)/phi(u)) / log(a)`` seen on
    the grid; ``lo`` is the first exponent on a descending ladder from ``hi``
    for which the grid supremum ``K`` of ``phi(au) / (a^p phi(u))`` stays
    under ``grid.k_cap``.  The bracket is widened by a relative 1e-9 to absorb
    rounding.
    """
    regime = _regime(regime)
    if regime is Regime.ZERO and 0 < phi.a_phi < phi.b_phi:
        return IndexEstimate(regime.value, INF, INF, None, grid.u0, asdict(grid),
                             flags=["INF", "STRUCTURAL_A_PHI_POSITIVE"])
    u, v, u0 = _index_domain(phi, regime, grid)
    a = _a_grid(grid)
    r = _ratio_matrix(phi, u, v, a)
    la = np.log(a)[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        expo = np.where(la < 0, np.log(r) / la, np.inf)
    expo = np.where(r == 0, np.inf, expo)
    j = int(np.argmin(expo))
    hi = float(expo.flat[j])
    ia, iu = np.unravel_index(j, expo.shape)
    witness = None
    if math.isfinite(hi):
        witness = {"u": float(u[iu]), "a": float(a[ia]), "ratio": float(r[ia, iu])}
    else:
        raise DegenerateRegime("no grid pair constrains the index (phi vanishes on the grid)")

    lo, K = 0.0, 1.0
    p = hi
    while p >= 0.0:
        with np.errstate(over="ignore", divide="ignore"):
            k = float(np.max(r / a[:, None] ** p))
        if k <= grid.k_cap:
            lo, K = p, max(k, 1.0)
            break
        p = round(p - grid.p_step, 12)
    pad = 1e-9 * max(1.0, abs(hi))
    return IndexEstimate(regime.value, max(0.0, lo - pad), hi + pad, K, u0, asdict(grid), witness)


def grid_constant(phi: OrliczFunction, p: float, u_lo: float, u_hi: float,
                  a_lo: float = 1e-6, a_hi: float = 1.0, n: int = 512) -> float:
    """``sup phi(au) / (a^p phi(u))`` over a log grid; pairs with phi(u) in {0, INF} skipped."""
    u = np.geomspace(u_lo, u_hi, n)
    u, v = _finite_positive(phi, u)
    if len(u) == 0:
        return 0.0
    a = np.geomspace(a_lo, a_hi, n)
    r = _ratio_matrix(phi, u, v, a)
    with np.errstate(over="ignore"):
        return float(np.max(r / a[:, None] ** p))


def extend_constant(phi: OrliczFunction, regime, p: float, K: float, u0: float, u1: float | None = None,
                    grid: GridSpec = DEFAULT_GRID) -> float:
    """Constant valid on a wider domain, following the three extension recipes.

    * ZERO with ``a_phi > 0``: ``(t / a_phi)^p`` where ``t`` is the new right
      end (``u1`` if given, else ``u0``); no certification needed.
    * ZERO with ``a_phi = 0``: ``max(K, (u1/u0)^p, K2)``, ``K2`` a grid sup
      over ``u0 < u <= u1`` and ``a < u0/u1``.
    * INFINITY: ``max(K, K phi(u0) / phi(u1))`` for ``a_phi < u1 < u0``.
    """
    regime = _regime(regime)
    if regime is Regime.ALL:
        raise PreconditionError("extension only applies to the ZERO and INFINITY regimes")
    if regime is Regime.ZERO and phi.a_phi > 0:
        target = u0 if u1 is None else u1
        if not target > phi.a_phi or not math.isfinite(phi(target)):
            raise PreconditionError("need a_phi < u with phi(u) finite")
        return (target / phi.a_phi) ** p
    if u1 is None:
        raise PreconditionError("u1 is required")
    if not p > 0 or K < 1:
        raise PreconditionError("need p > 0 and K >= 1")
    tol = 1 + 1e-9
    if regime is Regime.ZERO:
        if not (u1 > u0 and math.isfinite(phi(u1))):
            raise PreconditionError("ZERO extension needs u1 > u0 with phi(u1) finite")
        base = grid_constant(phi, p, max(grid.u_min, u0 * 1e-12), u0, grid.a_min, 1.0, 256)
        if base > K * tol:
            raise PreconditionError(f"(p={p}, K={K}) not certified on (0, u0]: grid sup {base:g}")
        k1 = (u1 / u0) ** p
        k2 = grid_constant(phi, p, u0 * (1 + 1e-12), u1, (u0 / u1) * 1e-6, (u0 / u1) * (1 - 1e-12), 256)
        return max(K, k1, k2)
    # INFINITY
    if not (phi.a_phi < u1 < u0):
        raise PreconditionError("INFINITY extension needs a_phi < u1 < u0")
    upper = min(phi.b_phi, u0 * 1e12)
    base = grid_constant(phi, p, u0, upper, grid.a_min, 1.0, 256)
    if base > K * tol:
        raise PreconditionError(f"(p={p}, K={K}) not certified on [u0, inf): grid sup {base:g}")
    return max(K, K * phi(u0) / phi(u1))


# --- growth conditions --------------------------------------------------------


def _structural(phi: OrliczFunction, regime: Regime) -> str | None:
    if regime in (Regime.INFINITY, Regime.ALL) and math.isfinite(phi.b_phi):
        return "b_phi < inf: phi jumps to INF, no doubling constant at infinity"
    if regime in (Regime.ZERO, Regime.ALL) and phi.a_phi > 0:
        return "a_phi > 0: phi(2u) > 0 = phi(u) just below a_phi"
    return None


def _growth_domain(phi: OrliczFunction, regime: Regime, grid: GridSpec, factor: float):
    """Log-grid of ``u`` where both ``phi(u)`` and ``phi(factor u)`` are finite, ``phi(u) > 0``."""
    if regime is Regime.ZERO:
        u0 = min(grid.u0, phi.b_phi / factor)
        lo, hi = grid.u_min, u0
    elif regime is Regime.INFINITY:
        u0 = max(grid.u0, 2.0 * phi.a_phi)
        lo, hi = u0, min(grid.u_max, phi.b_phi / factor)
    else:
        u0 = grid.u0
        lo, hi = grid.u_min, min(grid.u_max, phi.b_phi / factor)
    lo = max(lo, phi.a_phi * (1 + 1e-12)) if phi.a_phi > 0 else lo
    if hi <= lo:
        raise DegenerateRegime(f"empty {regime.value} domain")
    return lo, hi, u0


def _decades(lo: float, hi: float, toward: str, count: int | None = None):
    """Decade sub-intervals of [lo, hi], ordered toward ``toward`` ("zero" or "infinity")."""
    k0, k1 = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
    out = []
    for k in range(k0, k1):
        a, b = max(lo, 10.0 ** k), min(hi, 10.0 ** (k + 1))
        if b > a * (1 + 1e-12):
            out.append((a, b))
    if toward == "zero":
        out.reverse()
    return out if count is None else out[-count:]


def _decade_points(phi, a, b, prefer_nodes=False):
    """Sample points of a decade; with ``prefer_nodes`` the function's own nodes win."""
    if prefer_nodes:
        bp = phi.breakpoints()
        bp = bp[(bp >= a) & (bp < b)]
        if len(bp):
            return bp
    u = np.geomspace(a, b, DECADE_POINTS)
    return _with_breakpoints(phi, u, a, b)


def _tails(regime: Regime):
    if regime is Regime.ZERO:
        return ["zero"]
    if regime is Regime.INFINITY:
        return ["infinity"]
    return ["zero", "infinity"]


def _ratio_on(phi, u, factor):
    v = phi(u)
    with np.errstate(over="ignore"):
        w = phi(factor * u)
    keep = (v > 0) & np.isfinite(v)
    with np.errstate(divide="ignore", invalid="ignore"):
        return u[keep], w[keep] / v[keep]


def _extended_decades(lo, hi, toward):
    if toward == "zero":
        bottom = max(1e-300, lo * 10.0 ** -EXTENSION_DECADES)
        return _decades(bottom, lo, "zero")
    top = min(1e300, hi * 10.0 ** EXTENSION_DECADES)
    return _decades(hi, top, "infinity")


def check_delta2(phi: OrliczFunction, regime=Regime.ALL, grid: GridSpec = DEFAULT_GRID) -> ConditionVerdict:
    """Doubling condition ``phi(2u) <= K phi(u)`` in the given regime."""
    regime = _regime(regime)
    why = _structural(phi, regime)
    if why:
        return ConditionVerdict("DELTA2", regime.value, False, {}, None, why, asdict(grid), ["STRUCTURAL"])
    lo, hi, u0 = _growth_domain(phi, regime, grid, 2.0)
    u = _with_breakpoints(phi, np.geomspace(lo, hi, grid.n_u), lo, hi)
    uu, ratio = _ratio_on(phi, u, 2.0)
    K = float(np.max(ratio))
    for toward in _tails(regime):
        witness = _doubling_witness(phi, lo, hi, toward, 2.0)
        if witness:
            return ConditionVerdict("DELTA2", regime.value, False, {"K_grid": K}, witness,
                                    f"phi(2u)/phi(u) exceeds {DIVERGENCE_LEVEL:g} toward {toward}",
                                    asdict(grid))
    flags = []
    return ConditionVerdict("DELTA2", regime.value, True, {"K": K, "u0": u0}, None, "", asdict(grid), flags)


def _doubling_witness(phi, lo, hi, toward, factor):
    """Per-decade argmax of ``phi(factor u)/phi(u)`` when it grows past the divergence level."""
    rows = []
    for a, b in _decades(lo, hi, toward) + _extended_decades(lo, hi, toward):
        uu, rr = _ratio_on(phi, _decade_points(phi, a, b), factor)
        if len(uu) == 0:
            continue
        i = int(np.argmax(rr))
        rows.append({"u": float(uu[i]), "ratio": float(rr[i])})
        if rr[i] > DIVERGENCE_LEVEL:
            break
    if not rows or rows[-1]["ratio"] <= DIVERGENCE_LEVEL:
        return None
    # keep the running maxima so the witness ratios increase
    out, best = [], -1.0
    for row in rows:
        if row["ratio"] > best:
            out.append(row)
            best = row["ratio"]
    return out


def _eps_domain(phi: OrliczFunction, regime: Regime, grid: GridSpec):
    if regime is Regime.ZERO:
        if phi.a_phi > 0:
            return None
        u0 = min(grid.u0, phi.b_phi)
        return grid.u_min, u0, u0
    if regime is Regime.INFINITY:
        if math.isfinite(phi.b_phi):
            return phi.b_phi / 2.0, phi.b_phi, phi.b_phi / 2.0
        u0 = max(grid.u0, phi.a_phi * 2.0)
        return u0, grid.u_max, u0
    lo = max(grid.u_min, phi.a_phi * (1 + 1e-12)) if phi.a_phi > 0 else grid.u_min
    return lo, min(grid.u_max, phi.b_phi), grid.u0


def check_delta_epsilon(phi: OrliczFunction, regime=Regime.ALL, epsilon_list: Sequence[float] = (0.5,),
                        grid: GridSpec = DEFAULT_GRID) -> ConditionVerdict:
    """For each ``eps`` find ``delta < 1`` with ``phi(eps u) <= delta phi(u)``.

    Failure is declared when ``1 - sup phi(eps u)/phi(u)`` shrinks steadily
    over the last decades toward the asymptotic end, or when the ratio
    reaches 1 somewhere (phi not strictly increasing).
    """
    regime = _regime(regime)
    dom = _eps_domain(phi, regime, grid)
    if dom is None:
        table = {str(e): {"delta": 0.0, "u0": phi.a_phi} for e in epsilon_list}
        return ConditionVerdict("DELTA_EPS", regime.value, True, {"per_eps": table}, None,
                                "phi vanishes on [0, a_phi]", asdict(grid), ["TRIVIAL_BELOW_A_PHI"])
    lo, hi, u0 = dom
    table = {}
    for eps in epsilon_list:
        if not 0 < eps < 1:
            raise PreconditionError("epsilon must lie in (0, 1)")
        u = _with_breakpoints(phi, np.geomspace(lo, hi, grid.n_u), lo, hi)
        uu, f = _ratio_on(phi, u, eps)
        if len(uu) == 0:
            raise DegenerateRegime("phi is 0 or INF on the whole domain")
        i = int(np.argmax(f))
        if f[i] >= 1.0:
            w = [{"u": float(uu[i]), "epsilon": eps, "ratio": float(f[i])}]
            return ConditionVerdict("DELTA_EPS", regime.value, False, {"per_eps": table}, w,
                                    "phi(eps u) = phi(u): phi is not strictly increasing there",
                                    asdict(grid), ["FLAT"])
        for toward in _tails(regime):
            w = _eps_witness(phi, lo, hi, toward, eps)
            if w:
                return ConditionVerdict("DELTA_EPS", regime.value, False, {"per_eps": table}, w,
                                        f"sup phi(eps u)/phi(u) tends to 1 toward {toward}", asdict(grid))
        table[str(eps)] = {"delta": float(f[i]), "u0": u0, "argmax_u": float(uu[i])}
    return ConditionVerdict("DELTA_EPS", regime.value, True, {"per_eps": table}, None, "", asdict(grid))


def _eps_witness(phi, lo, hi, toward, eps):
    rows = []
    for a, b in _decades(lo, hi, toward, TAIL_DECADES):
        uu, f = _ratio_on(phi, _decade_points(phi, a, b, prefer_nodes=True), eps)
        if len(uu) == 0:
            continue
        i = int(np.argmax(f))
        rows.append({"u": float(uu[i]), "epsilon": eps, "ratio": float(f[i])})
    if len(rows) < 3:
        return None
    deficits = np.array([1.0 - r["ratio"] for r in rows])
    steady = np.all(np.diff(deficits) <= 1e-12 * deficits[:-1])
    if steady and deficits[-1] <= 0.6 * deficits[0]:
        return rows
    return None


def check_delta_2str(phi: OrliczFunction, regime=Regime.ALL, epsilon_list: Sequence[float] = (0.5,),
                     grid: GridSpec = DEFAULT_GRID) -> ConditionVerdict:
    """For each ``eps`` the largest ``delta`` with ``phi((1+delta)u) <= (1+eps) phi(u)``.

    Bisection per decade; the reported ``delta(eps)`` is the minimum over
    decades.  Failure is declared when the per-decade values collapse toward
    the asymptotic end.
    """
    regime = _regime(regime)
    why = _structural(phi, regime)
    if why:
        return ConditionVerdict("DELTA_2STR", regime.value, False, {}, None, why, asdict(grid), ["STRUCTURAL"])
    lo, hi, u0 = _growth_domain(phi, regime, grid, 2.0)
    table = {}
    for eps in epsilon_list:
        if not eps > 0:
            raise PreconditionError("epsilon must be positive")
        rows = []
        for a, b in _decades(lo, hi, "infinity"):
            u = _decade_points(phi, a, b)
            d = _largest_delta(phi, u, eps)
            if d is not None:
                rows.append((a, b, d))
        if not rows:
            raise DegenerateRegime("phi is 0 or INF on the whole domain")
        deltas = np.array([r[2] for r in rows])
        for toward in _tails(regime):
            seq = deltas if toward == "infinity" else deltas[::-1]
            ends = rows if toward == "infinity" else rows[::-1]
            tail = seq[-TAIL_DECADES:]
            collapsing = (len(tail) >= 3 and np.all(np.diff(tail) <= 0) and tail[-1] <= 0.5 * tail[0])
            if collapsing or tail[-1] <= 1e-12:
                d0 = float(tail[0])
                w = []
                for (a, b, dd) in ends[-len(tail):]:
                    uu = _decade_points(phi, a, b)
                    uu, rr = _ratio_on(phi, uu, 1.0 + d0)
                    j = int(np.argmax(rr))
                    w.append({"u": float(uu[j]), "epsilon": eps, "delta": d0, "ratio": float(rr[j]),
                              "decade_delta": float(dd)})
                return ConditionVerdict("DELTA_2STR", regime.value, False, {"per_eps": table}, w,
                                        f"admissible delta collapses toward {toward}", asdict(grid))
        table[str(eps)] = {"delta": float(deltas.min()), "u0": u0}
    return ConditionVerdict("DELTA_2STR", regime.value, True, {"per_eps": table}, None, "", asdict(grid))


def _largest_delta(phi, u, eps, iters: int = 200, cap: float = 1e6):
    v = phi(u)
    keep = (v > 0) & np.isfinite(v)
    u, v = u[keep], v[keep]
    if len(u) == 0:
        return None

    def ok(d):
        with np.errstate(over="ignore"):
            return bool(np.all(phi((1.0 + d) * u) <= (1.0 + eps) * v))

    lo, hi = 0.0, 1.0
    while ok(hi):
        lo, hi = hi, 2.0 * hi
        if hi > cap:
            return cap
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return lo
