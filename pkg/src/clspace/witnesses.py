"""Finite-depth witnesses for order isometric copies of l_inf inside ``E_phi``.

A bundle holds disjoint blocks ``x_n = u_n chi_{B_n}`` whose sum has
modular at most 1/2 while every dilation ``(1 + 1/n) x`` has modular above
1.  Each block is driven by a pair ``(u_n, eta_n)`` where ``phi`` gains the
needed factor between ``u_n`` and ``(1 + eta_n) u_n``.

Two schedules are offered.  ``proof`` uses ``eta_n = 1/n`` and strictly
monotone ``u_n``.  ``sharp`` takes the smallest ``eta_n`` available among
the breakpoints of ``phi`` and allows ``u_n`` to repeat; at finite depth
this is what pins every interleaved norm into ``[1 - tol, 1]``.  Everything
here is finite-truncation evidence, never a proof of isometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .indices import PreconditionError, Regime, check_delta2
from .modular import CLSpace, luxemburg_norm, modular
from .orlicz import INF, OrliczFunction
from .spaces import SpaceDescriptor, SpaceError, find_unit_vector_sequence, norm_E
from .vectors import SimpleVector

HORIZON = 1_000_000
SEARCH_GRID = np.geomspace(1e-12, 1e12, 4801)
DEFAULT_ETA = 1e-7
SAFETY = 1.0 + 1e-12  # solved measures overshoot their targets by this factor
VARIANTS = ("interval_infinity", "interval_zero", "seq_flat_zero", "seq_doubling_zero", "seq_jump",
            "seq_doubling_infinity")


class UnsupportedSpace(PreconditionError):
    pass


class HorizonError(LookupError):
    pass


# --- interleaving ---------------------------------------------------------------


def interleave(N: int, M: int | None = None) -> list[list[int]]:
    """Split ``1..N`` into ``M`` sets, each every second element of what is left.

    ``M`` defaults to the number of non-empty sets the rule produces.  Indices
    never reached stay in the remainder (see :func:`interleave_remainder`).
    """
    if N < 1:
        raise ValueError("N must be positive")
    rest = list(range(1, N + 1))
    sets: list[list[int]] = []
    limit = M if M is not None else N
    if M is not None and not 1 <= M <= N:
        raise ValueError(f"need 1 <= M <= N, got M={M}, N={N}")
    while len(sets) < limit:
        if M is None and not rest:
            break
        sets.append(rest[::2])
        rest = rest[1::2]
    return sets


def interleave_remainder(N: int, sets: Sequence[Sequence[int]]) -> list[int]:
    used = {i for s in sets for i in s}
    return [i for i in range(1, N + 1) if i not in used]


# --- inequality rows -------------------------------------------------------------


def _region_vector(row: dict, carrier) -> SimpleVector:
    if "indices" in row:
        return SimpleVector.on_indices(row["indices"])
    s, e = row["region"]
    return SimpleVector.indicator(s, e, carrier)


def evaluate_row(cl: CLSpace, row: dict) -> tuple[float, float]:
    """Recompute both sides of a logged inequality from its stored inputs."""
    phi, E = cl.phi, cl.E
    kind = row["ineq"]
    if kind == "gap_growth":
        return phi((1.0 + row["eta"]) * row["u"]), row["gap"] * phi(row["u"])
    if kind == "terminal":
        return phi((1.0 + row["eta"]) * row["u"]), INF
    if kind in ("block_lower", "block_upper"):
        return phi(row["u"]) * norm_E(E, _region_vector(row, E.carrier)), row["bound"]
    if kind == "value_bound":
        return phi(row["u"]), row["bound"]
    if kind in ("dilation_over", "dilation_under"):
        vec = _region_vector(row, E.carrier)
        size = norm_E(E, vec) if not vec.is_zero else 0.0
        return phi((1.0 + row["eta"]) * row["u"]) * size, 1.0
    raise ValueError(f"unknown inequality {kind!r}")


_RELATIONS = {
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "<": lambda a, b: a < b,
    "==": lambda a, b: a == b,
}


def _log(cl: CLSpace, log: list, n: int, ineq: str, relation: str, **inputs) -> bool:
    row = {"n": n, "ineq": ineq, "relation": relation, **inputs}
    lhs, rhs = evaluate_row(cl, row)
    row.update(lhs=lhs, rhs=rhs, ok=bool(_RELATIONS[relation](lhs, rhs)))
    log.append(row)
    return row["ok"]


def reverify(cl: CLSpace, bundle: "WitnessBundle") -> list[dict]:
    """Rows whose recomputed sides no longer satisfy the logged relation."""
    bad = []
    for row in bundle.inequality_log:
        lhs, rhs = evaluate_row(cl, row)
        if not _RELATIONS[row["relation"]](lhs, rhs):
            bad.append({**row, "recomputed": [lhs, rhs]})
    return bad


# --- bundle ------------------------------------------------------------------------


@dataclass
class WitnessBundle:
    variant: str
    schedule: str
    N: int
    xs: list[SimpleVector]
    u: list[float]
    eta: list[float]
    inequality_log: list[dict]
    index_sets: list[list[int]] = field(default_factory=list)
    ys: list[SimpleVector] = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def x_total(self) -> SimpleVector:
        total = self.xs[0]
        for x in self.xs[1:]:
            total = total + x
        return total

    def summary_rows(self) -> list[dict]:
        rows = []
        for r in self.inequality_log:
            size = r.get("region") or (len(r["indices"]) if "indices" in r else None)
            rows.append({"n": r["n"], "ineq": r["ineq"], "u_n": r["u"], "measure_n": size,
                         "lhs": r["lhs"], "rhs": r["rhs"], "ok": r["ok"]})
        return rows

    def to_dict(self) -> dict:
        return {
            "variant": self.variant, "schedule": self.schedule, "N": self.N,
            "u": self.u, "eta": self.eta,
            "blocks": [x.to_dict() for x in self.xs],
            "index_sets": self.index_sets,
            "inequality_log": [jsonable(r) for r in self.inequality_log],
            "checks": jsonable(self.checks), "flags": self.flags, "details": jsonable(self.details),
            "evidence": "finite-truncation evidence",
        }


def jsonable(obj):
    """Plain JSON types; infinities become the string "INF"."""
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return "NaN"
        return ("INF" if f > 0 else "-INF") if math.isinf(f) else f
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _finish(cl: CLSpace, bundle: WitnessBundle, M: int | None = None) -> WitnessBundle:
    bundle.index_sets = interleave(bundle.N, M)
    bundle.ys = []
    for s in bundle.index_sets:
        y = SimpleVector.zero(cl.E.carrier)
        for n in s:
            y = y + bundle.xs[n - 1]
        bundle.ys.append(y)
    x = bundle.x_total
    rho = modular(cl, x)
    blow = {n: modular(cl, (1.0 + 1.0 / n) * x) for n in range(1, bundle.N + 1)}
    bundle.checks = {
        "rho_x_total": rho,
        "rho_x_total_le_half": rho <= 0.5 + 1e-8,
        "rho_dilated": blow,
        "dilations_exceed_one": all(v > 1.0 for v in blow.values()),
        "rows_ok": all(r["ok"] for r in bundle.inequality_log),
    }
    return bundle


# --- choosing (u_n, eta_n) ----------------------------------------------------------------


def _quantize(eta: float) -> float:
    return float(f"{eta:.6g}")


def _pair_candidates(phi: OrliczFunction, schedule: str, eta_cap: float):
    """``(u, eta)`` pairs: consecutive breakpoints (sharp) plus a log grid at ``eta_cap``."""
    grid = np.unique(np.concatenate([SEARCH_GRID, phi.breakpoints()]))
    grid = grid[grid < phi.b_phi]
    us = [grid]
    etas = [np.full(len(grid), eta_cap)]
    if schedule == "sharp":
        bp = phi.breakpoints()
        if len(bp) > 1:
            eta = bp[1:] / bp[:-1] - 1.0
            keep = eta <= eta_cap
            us.append(bp[:-1][keep])
            etas.append(eta[keep])
    return np.concatenate(us), np.concatenate(etas)


def choose_pair(phi: OrliczFunction, gap: float, n: int, direction: str, schedule: str,
                prev: float | None = None, accept: Callable[[float], bool] | None = None,
                strict_gap: bool = True, eta_cap: float | None = None) -> tuple[float, float]:
    """Pick ``(u, eta)`` with ``phi((1 + eta) u) > gap * phi(u)`` (``>=`` if not strict).

    ``direction`` is ``up`` for constructions at infinity and ``down`` near zero.
    """
    cap = 1.0 / n if eta_cap is None else min(eta_cap, 1.0 / n)
    u, eta = _pair_candidates(phi, schedule, cap)
    base = phi(u)
    with np.errstate(over="ignore", invalid="ignore"):
        lifted = phi((1.0 + eta) * u)
        good = np.isfinite(base) & (base > 0)
        good &= (lifted > gap * base) if strict_gap else (lifted >= gap * base)
    if prev is not None:
        if direction == "up":
            good &= (u >= prev) if schedule == "sharp" else (u > prev)
        else:
            good &= (u <= prev) if schedule == "sharp" else (u < prev)
    idx = np.flatnonzero(good)
    if accept is not None:
        idx = np.array([i for i in idx if accept(float(u[i]))], dtype=int)
    if len(idx) == 0:
        raise HorizonError(f"no (u, eta) with the required gap {gap:g} at step {n}")
    sign = 1.0 if direction == "up" else -1.0
    if schedule == "sharp":
        key = sorted(idx, key=lambda i: (_quantize(eta[i]), sign * u[i]))
    else:
        key = sorted(idx, key=lambda i: sign * u[i])
    i = key[0]
    return float(u[i]), float(eta[i])


def _terminal_u(phi: OrliczFunction, n: int, schedule: str) -> tuple[float, float]:
    b = phi.b_phi
    if schedule == "proof" or not math.isfinite(phi.phi_at_b):
        u = (2 * n + 1) / (2 * n + 2) * b if schedule == "proof" else b * (1.0 - 1e-9)
        return u, 1.0 / n
    return b, 1e-12


# --- interval carrier -----------------------------------------------------------------


def _measure_for(E: SpaceDescriptor, target: float) -> float:
    try:
        return E.measure_for_char_norm(target)
    except SpaceError as exc:
        raise UnsupportedSpace(f"cannot solve a block measure in {E.label()}: {exc}") from None


def _needs_interval(cl: CLSpace):
    if cl.E.carrier.kind != "interval":
        raise UnsupportedSpace("this construction needs a nonatomic (interval) carrier")
    if not cl.E.oc_flag:
        raise UnsupportedSpace(f"{cl.E.label()} has no order continuous part to host the blocks")


def build_nonatomic_witness(cl: CLSpace, N: int = 10, schedule: str = "sharp",
                            M: int | None = None) -> WitnessBundle:
    """Blocks for a ``phi`` that fails the doubling condition at infinity, or has ``b_phi`` finite."""
    _needs_interval(cl)
    phi, E, C = cl.phi, cl.E, cl.E.C_E
    terminal = math.isfinite(phi.b_phi)
    if not terminal and check_delta2(phi, Regime.INFINITY, cl.grid).holds:
        raise PreconditionError("phi satisfies the doubling condition at infinity on the grid")
    xs, us, etas, log = [], [], [], []
    pos, prev = 0.0, None
    for n in range(1, N + 1):
        lower = 1.0 / (2.0 ** (n + 2) * C ** (n + 2))
        upper = 1.0 / (2.0 ** (n + 1) * C ** (n + 1))
        if terminal:
            u, eta = _terminal_u(phi, n, schedule)
            _log(cl, log, n, "terminal", "==", u=u, eta=eta)
        else:
            gap = 2.0 ** (n + 2) * C ** (n + 2)
            u, eta = choose_pair(phi, gap, n, "up", schedule, prev)
            _log(cl, log, n, "gap_growth", ">", u=u, eta=eta, gap=gap)
            if eta < 1.0 / n:
                _log(cl, log, n, "gap_growth", ">", u=u, eta=1.0 / n, gap=gap)
        m = _measure_for(E, lower * SAFETY / phi(u))
        region = (pos, pos + m)
        if region[1] > E.gamma:
            raise UnsupportedSpace("blocks do not fit inside the carrier")
        _log(cl, log, n, "block_lower", ">=", u=u, region=region, bound=lower)
        _log(cl, log, n, "block_upper", "<=", u=u, region=region, bound=upper)
        xs.append(SimpleVector.indicator(region[0], region[1], E.carrier, u))
        us.append(u)
        etas.append(eta)
        pos, prev = region[1], u
    b = WitnessBundle("interval_infinity", schedule, N, xs, us, etas, log,
                      details={"branch": "b_phi finite" if terminal else "doubling fails at infinity"})
    return _finish(cl, b, M)


def build_nonatomic_zero_witness(cl: CLSpace, N: int = 10, schedule: str = "sharp",
                                 M: int | None = None, eta: float | None = None) -> WitnessBundle:
    """Blocks for a ``phi`` that fails the doubling condition at zero, or has ``a_phi > 0``.

    Blocks sit in the dyadic exhaustion ``[0, 2^k)``; each row records the
    first ``k`` containing its block.
    """
    _needs_interval(cl)
    phi, E, C = cl.phi, cl.E, cl.E.C_E
    if cl.inclusion_class == 2:
        raise PreconditionError("L_inf sits inside E; use the construction at infinity")
    a = phi.a_phi
    xs, us, etas, log = [], [], [], []
    pos = 0.0
    if a > 0:
        step = _eta_above(phi, a, eta)
        for n in range(1, N + 1):
            e_n = min(step, 1.0 / n)
            if math.isfinite(phi.b_phi) and (1 + e_n) * a >= phi.b_phi:
                e_n = min(e_n, 0.5 * (phi.b_phi / a - 1.0))
            m = _measure_for(E, 2.0 / phi((1.0 + e_n) * a))
            region = (pos, pos + m)
            _log(cl, log, n, "dilation_over", ">", u=a, eta=e_n, region=region)
            xs.append(SimpleVector.indicator(region[0], region[1], E.carrier, a))
            us.append(a)
            etas.append(e_n)
            pos = region[1]
        b = WitnessBundle("interval_zero", schedule, N, xs, us, etas, log, details={"branch": "a_phi > 0"})
        return _finish(cl, b, M)
    if check_delta2(phi, Regime.ZERO, cl.grid).holds:
        raise PreconditionError("phi satisfies the doubling condition at zero on the grid")
    prev = None
    half_b = phi.b_phi / 2.0
    for n in range(1, N + 1):
        gap = 2.0 ** (n + 2) * C ** (n + 2)
        u, e_n = choose_pair(phi, gap, n, "down", schedule, prev, accept=lambda v: v < half_b)
        _log(cl, log, n, "gap_growth", ">", u=u, eta=e_n, gap=gap)
        if e_n < 1.0 / n:
            _log(cl, log, n, "gap_growth", ">", u=u, eta=1.0 / n, gap=gap)
        lower = 1.0 / (2.0 ** (n + 2) * C ** (n + 2))
        upper = 1.0 / (2.0 ** (n + 1) * C ** (n + 1))
        m = _measure_for(E, lower * SAFETY / phi(u))
        region = (pos, pos + m)
        if region[1] > E.gamma:
            raise UnsupportedSpace("blocks do not fit inside the carrier")
        _log(cl, log, n, "block_lower", ">=", u=u, region=region, bound=lower,
             exhaustion=int(math.ceil(math.log2(max(region[1], 1.0)))))
        _log(cl, log, n, "block_upper", "<=", u=u, region=region, bound=upper)
        xs.append(SimpleVector.indicator(region[0], region[1], E.carrier, u))
        us.append(u)
        etas.append(e_n)
        pos, prev = region[1], u
    b = WitnessBundle("interval_zero", schedule, N, xs, us, etas, log, details={"branch": "doubling fails at zero"})
    return _finish(cl, b, M)


def _eta_above(phi: OrliczFunction, a: float, eta: float | None) -> float:
    """Lift factor above ``a_phi``: the next breakpoint if it is close, else ``eta``."""
    if eta is not None:
        return eta
    bp = phi.breakpoints()
    above = bp[bp > a]
    if len(above):
        step = above[0] / a - 1.0
        if step <= DEFAULT_ETA:
            return step
    return DEFAULT_ETA


# --- counting carrier ------------------------------------------------------------------


def _smallest_count(size: Callable[[int], float], threshold: float, limit: int) -> int:
    """Smallest ``k >= 1`` with ``size(k) > threshold`` for a non-decreasing ``size``."""
    hi = 1
    while size(hi) <= threshold:
        if hi >= limit:
            raise HorizonError(f"greedy block search passed the horizon {limit}")
        hi = min(2 * hi, limit)
    lo = hi // 2  # size(lo) <= threshold, or lo == 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if size(mid) > threshold:
            hi = mid
        else:
            lo = mid
    return hi


def build_sequence_witness(cl: CLSpace, variant: str, N: int = 10, schedule: str = "sharp",
                           M: int | None = None, horizon: int = HORIZON, eta: float | None = None) -> WitnessBundle:
    if cl.E.carrier.kind != "counting":
        raise UnsupportedSpace("sequence witnesses need the counting carrier")
    builders = {"seq_flat_zero": _seq_flat_zero, "seq_doubling_zero": _seq_doubling_zero, "seq_jump": _seq_jump, "seq_doubling_infinity": _seq_doubling_infinity}
    if variant not in builders:
        raise ValueError(f"variant must be one of {', '.join(builders)}")
    bundle = builders[variant](cl, N, schedule, horizon, eta)
    return _finish(cl, bundle, M)


def _first_unit(E: SpaceDescriptor, scale: float, bound: float, indices: np.ndarray, norms: np.ndarray) -> int | None:
    """Position of the first index with ``scale * ||e(i)||_E <= bound``, confirmed through ``norm_E``."""
    for pos in np.flatnonzero(scale * norms <= bound * (1 + 1e-9)):
        if scale * norm_E(E, SimpleVector.unit(int(indices[pos]))) <= bound:
            return int(pos)
    return None


def _block_vector(indices, u) -> SimpleVector:
    return SimpleVector.on_indices(indices, u)


def _seq_flat_zero(cl, N, schedule, horizon, eta):
    phi, E = cl.phi, cl.E
    a = phi.a_phi
    if not a > 0:
        raise PreconditionError("this variant needs a_phi > 0")
    if E.inclusion_class == 2:
        raise PreconditionError("l_inf sits inside E")
    step = _eta_above(phi, a, eta)
    xs, us, etas, log = [], [], [], []
    k_prev = 0
    for n in range(1, N + 1):
        e_n = min(step, 1.0 / n)
        if math.isfinite(phi.b_phi) and (1 + e_n) * a >= phi.b_phi:
            e_n = min(e_n, 0.5 * (phi.b_phi / a - 1.0))
        level = phi((1.0 + e_n) * a)
        start = k_prev + 1

        def size(k, start=start):
            return level * norm_E(E, SimpleVector(E.carrier, [start], [start + k], [1.0], canonical=True))

        k = _smallest_count(size, 1.0, horizon - k_prev)
        idx = list(range(start, start + k))
        _log(cl, log, n, "dilation_over", ">", u=a, eta=e_n, indices=idx)
        xs.append(_block_vector(idx, a))
        us.append(a)
        etas.append(e_n)
        k_prev += k
    return WitnessBundle("seq_flat_zero", schedule, N, xs, us, etas, log, details={"branch": "a_phi > 0"})


def _seq_doubling_zero(cl, N, schedule, horizon, eta):
    phi, E, C = cl.phi, cl.E, cl.E.C_E
    if E.inclusion_class == 2:
        raise PreconditionError("l_inf sits inside E")
    if check_delta2(phi, Regime.ZERO, cl.grid).holds:
        raise PreconditionError("phi satisfies the doubling condition at zero on the grid")
    seq = find_unit_vector_sequence(E, "BOUNDED_d", horizon=min(horizon, 100_000))
    if not seq.found:
        raise HorizonError("no bounded unit-vector sequence with unbounded partial sums")
    d = seq.d
    order = seq.indices
    xs, us, etas, log = [], [], [], []
    used, prev = 0, None
    half_b = phi.b_phi / 2.0
    for n in range(1, N + 1):
        gap = C ** (n + 2) * 2.0 ** (n + 2)
        bound = 1.0 / (d * C ** (n + 2) * 2.0 ** (n + 2))
        u, e_n = choose_pair(phi, gap, n, "down", schedule, prev, strict_gap=False,
                             accept=lambda v, bound=bound: v < half_b and phi(v) <= bound)
        _log(cl, log, n, "value_bound", "<=", u=u, bound=bound)
        _log(cl, log, n, "gap_growth", ">=", u=u, eta=e_n, gap=gap)
        level = phi((1.0 + e_n) * u)
        avail = order[used:]

        def size(k, avail=avail):
            return level * norm_E(E, SimpleVector.on_indices(avail[:k]))

        k = _smallest_count(size, 1.0, len(avail))
        block = [int(i) for i in avail[:k]]
        _log(cl, log, n, "dilation_over", ">", u=u, eta=e_n, indices=block)
        _log(cl, log, n, "dilation_under", "<=", u=u, eta=e_n, indices=block[:-1])
        xs.append(_block_vector(block, u))
        us.append(u)
        etas.append(e_n)
        used += k
        prev = u
    return WitnessBundle("seq_doubling_zero", schedule, N, xs, us, etas, log,
                         details={"d": d, "sequence": seq.to_dict()})


def _seq_jump(cl, N, schedule, horizon, eta):
    phi, E, C = cl.phi, cl.E, cl.E.C_E
    if not math.isfinite(phi.b_phi):
        raise PreconditionError("this variant needs b_phi < inf")
    xs, us, etas, log = [], [], [], []
    i_prev = 0
    for n in range(1, N + 1):
        u, e_n = _terminal_u(phi, n, schedule)
        bound = 1.0 / (C ** (n + 1) * 2.0 ** (n + 1))
        lo = i_prev + 1
        cand = np.arange(lo, horizon + 1)
        hit = _first_unit(E, phi(u), bound, cand, E.unit_norms(cand))
        if hit is None:
            raise HorizonError("unit vectors never get small enough within the horizon")
        i = int(cand[hit])
        _log(cl, log, n, "block_upper", "<=", u=u, indices=[i], bound=bound)
        _log(cl, log, n, "terminal", "==", u=u, eta=e_n)
        xs.append(_block_vector([i], u))
        us.append(u)
        etas.append(e_n)
        i_prev = i
    return WitnessBundle("seq_jump", schedule, N, xs, us, etas, log, details={"branch": "b_phi finite"})


def _seq_doubling_infinity(cl, N, schedule, horizon, eta):
    phi, E, C = cl.phi, cl.E, cl.E.C_E
    if math.isfinite(phi.b_phi):
        raise PreconditionError("this variant needs b_phi = inf")
    if check_delta2(phi, Regime.INFINITY, cl.grid).holds:
        raise PreconditionError("phi satisfies the doubling condition at infinity on the grid")
    seq = find_unit_vector_sequence(E, "VANISHING_RATIO_d", horizon=min(horizon, 100_000))
    if not seq.found:
        raise HorizonError("no vanishing unit-vector sequence with bounded ratios")
    d, order, norms = seq.d, seq.indices, seq.norms
    xs, us, etas, log = [], [], [], []
    j_prev, prev = 0, None  # position in the sequence, 0-based
    for n in range(1, N + 1):
        gap = 2.0 ** (n + 1) * C ** (n + 1) / d
        floor = 1.0 / norms[j_prev]
        u, e_n = choose_pair(phi, gap, n, "up", schedule, prev, accept=lambda v, f=floor: phi(v) >= f)
        _log(cl, log, n, "gap_growth", ">", u=u, eta=e_n, gap=gap)
        upper = 1.0 / (2.0 ** (n + 1) * C ** (n + 1))
        hit = _first_unit(E, phi(u), upper, order[j_prev + 1:], norms[j_prev + 1:])
        if hit is None:
            raise HorizonError("the vanishing sequence ran out inside the horizon")
        j = j_prev + 1 + hit
        i = int(order[j])
        _log(cl, log, n, "block_upper", "<=", u=u, indices=[i], bound=upper)
        _log(cl, log, n, "block_lower", ">", u=u, indices=[i], bound=d * upper)
        xs.append(_block_vector([i], u))
        us.append(u)
        etas.append(e_n)
        j_prev, prev = j, u
    return WitnessBundle("seq_doubling_infinity", schedule, N, xs, us, etas, log, details={"d": d, "sequence": seq.to_dict()})


# --- verification ------------------------------------------------------------------------


def _disjoint(blocks: Sequence[SimpleVector]) -> bool:
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if not blocks[i].disjoint_from(blocks[j]):
                return False
    return True


def default_z_samples(M: int, count: int = 10, seed: int = 0) -> list[np.ndarray]:
    rng = np.random.default_rng(seed)
    zs = [np.ones(M), np.eye(M)[0], 0.5 ** np.arange(M)]
    while len(zs) < count:
        zs.append(rng.uniform(-2.0, 2.0, M))
    return zs[:count]


def verify_linf_copy(cl: CLSpace, bundle: WitnessBundle, z_samples: Sequence[Sequence[float]] | None = None,
                     tol: float = 1e-6) -> dict:
    """Check the truncated operator ``P(z) = sum z_m y_m`` against ``||z||_inf``."""
    M = len(bundle.ys)
    zs = default_z_samples(M) if z_samples is None else [np.asarray(z, float) for z in z_samples]
    slack = 1.0 + 1e-9  # the gauge returns the feasible end of its bracket
    y_norms = [luxemburg_norm(cl, y).norm for y in bundle.ys]
    total = SimpleVector.zero(cl.E.carrier)
    for y in bundle.ys:
        total = total + y
    total_norm = luxemburg_norm(cl, total).norm
    rows = []
    for z in zs:
        z = np.resize(z, M)
        pz = SimpleVector.zero(cl.E.carrier)
        for zm, y in zip(z, bundle.ys):
            if zm != 0:
                pz = pz + float(zm) * y
        zinf = float(np.max(np.abs(z)))
        nz = luxemburg_norm(cl, pz).norm
        rows.append({"z": z.tolist(), "z_sup": zinf, "norm_Pz": nz,
                     "ok": (1 - tol) * zinf <= nz <= zinf * slack})
    in_window = [(1 - tol) <= v <= slack for v in y_norms]
    report = {
        "disjoint": _disjoint(bundle.xs),
        "y_norms": y_norms,
        "y_norms_in_window": all(in_window),
        "sum_y_norm": total_norm,
        "sum_y_in_window": (1 - tol) <= total_norm <= slack,
        "z_rows": rows,
        "z_ok": all(r["ok"] for r in rows),
        "tol": tol,
        "evidence": "finite-truncation evidence",
    }
    report["passed"] = bool(report["disjoint"] and report["y_norms_in_window"]
                            and report["sum_y_in_window"] and report["z_ok"])
    return report


# --- blow-up of the quasi-triangle ratio ---------------------------------------------------


def blowup_search(E: SpaceDescriptor, phi: OrliczFunction, target_ratio: float = 10.0,
                  horizon: float = 1e6, points: int = 2001, keep_curve: bool = False) -> dict:
    """Largest ``||chi_A + chi_B|| / (||chi_A|| + ||chi_B||)`` over a log grid of ``mu(A)``.

    ``B`` is disjoint from ``A`` with ``||chi_B||_E = ||chi_A||_E / 2``; every
    indicator norm comes from ``1 / phi^-1(1 / ||chi||_E)``.
    """
    if E.carrier.kind != "interval":
        raise PreconditionError("blow-up search needs an interval carrier")
    if E.C_E != 1.0 or E.kind not in ("Lp", "lorentz"):
        raise PreconditionError("blow-up search needs a normed, uniformly monotone E")
    if phi.a_phi > 0 or math.isfinite(phi.b_phi) or not phi.tends_to_infinity:
        raise PreconditionError("phi must be finite valued and strictly increasing")

    def ind_norm(m):
        level = phi.inverse(1.0 / E.char_norm(m))
        return 1.0 / level if level > 0 else INF

    best = {"ratio": 0.0, "measure_A": None, "measure_B": None}
    count = 0
    curve = []
    for s in np.geomspace(1.0 / horizon, horizon, points):
        s = float(s)
        try:
            mb = E.measure_for_char_norm(0.5 * E.char_norm(s))
        except SpaceError:
            continue
        if s + mb > E.gamma:
            continue
        na, nb, nab = ind_norm(s), ind_norm(mb), ind_norm(s + mb)
        if not (math.isfinite(nab) and na + nb > 0):
            continue
        count += 1
        r = nab / (na + nb)
        if keep_curve:
            curve.append((s, r))
        if r > best["ratio"]:
            best = {"ratio": r, "measure_A": s, "measure_B": mb}
    return {**best, "target": target_ratio, "exceeded": best["ratio"] > target_ratio,
            "grid_points": count, "horizon": horizon,
            "outcome": "FOUND" if best["ratio"] > target_ratio else "NOT_FOUND",
            **({"curve": curve} if keep_curve else {})}
