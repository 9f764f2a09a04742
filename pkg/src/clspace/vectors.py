"""Step functions on [0, gamma) and finitely supported sequences.

Both carriers share one representation: sorted, pairwise disjoint half-open
regions ``[start, end)`` with a magnitude and a sign per region.  On the
counting carrier regions are integer index ranges (1-based), so a block of a
million unit vectors costs one region instead of a million.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

import numpy as np

INF = math.inf


class VectorError(ValueError):
    pass


@dataclass(frozen=True)
class Carrier:
    kind: str  # "interval" or "counting"
    gamma: float = INF

    def __post_init__(self):
        if self.kind not in ("interval", "counting"):
            raise VectorError(f"unknown carrier {self.kind!r}")
        if self.kind == "interval" and not self.gamma > 0:
            raise VectorError("interval carrier needs gamma > 0")

    def to_dict(self) -> dict:
        if self.kind == "counting":
            return {"counting": {}}
        return {"interval": {"gamma": "inf" if self.gamma == INF else self.gamma}}


INTERVAL = Carrier("interval")
COUNTING = Carrier("counting")


class SimpleVector:
    """Finite linear combination of indicators of disjoint regions."""

    __slots__ = ("carrier", "starts", "ends", "values", "signs")

    def __init__(self, carrier: Carrier, starts, ends, values, signs=None, canonical=False):
        starts = np.asarray(starts, dtype=float).ravel()
        ends = np.asarray(ends, dtype=float).ravel()
        values = np.asarray(values, dtype=float).ravel()
        signs = np.ones_like(values) if signs is None else np.asarray(signs, dtype=float).ravel()
        if not (len(starts) == len(ends) == len(values) == len(signs)):
            raise VectorError("parts arrays must have equal length")
        if not canonical:
            starts, ends, values, signs = _canonicalize(carrier, starts, ends, values, signs)
        self.carrier = carrier
        self.starts = starts
        self.ends = ends
        self.values = values
        self.signs = signs

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_parts(cls, parts: Iterable[tuple[float, float, float]], carrier: Carrier = INTERVAL):
        parts = list(parts)
        if not parts:
            return cls.zero(carrier)
        s, e, v = zip(*parts)
        v = np.asarray(v, dtype=float)
        return cls(carrier, s, e, np.abs(v), np.where(v < 0, -1.0, 1.0))

    @classmethod
    def zero(cls, carrier: Carrier = INTERVAL):
        return cls(carrier, [], [], [], [], canonical=True)

    @classmethod
    def indicator(cls, start: float, end: float, carrier: Carrier = INTERVAL, value: float = 1.0):
        return cls.from_parts([(start, end, value)], carrier)

    @classmethod
    def unit(cls, index: int, value: float = 1.0):
        return cls.from_parts([(index, index + 1, value)], COUNTING)

    @classmethod
    def on_indices(cls, indices, value: float = 1.0):
        idx = np.unique(np.asarray(indices, dtype=np.int64))
        if len(idx) == 0:
            return cls.zero(COUNTING)
        return cls(COUNTING, idx, idx + 1, np.full(len(idx), float(value)))

    # -- views ----------------------------------------------------------------

    @property
    def measures(self) -> np.ndarray:
        return self.ends - self.starts

    @property
    def is_zero(self) -> bool:
        return len(self.values) == 0

    @property
    def sup_abs(self) -> float:
        return float(self.values.max()) if len(self.values) else 0.0

    @property
    def signed_values(self) -> np.ndarray:
        return self.values * self.signs

    def support_measure(self) -> float:
        return float(self.measures.sum())

    def parts(self) -> list[tuple[float, float, float]]:
        return list(zip(self.starts.tolist(), self.ends.tolist(), self.signed_values.tolist()))

    def __len__(self) -> int:
        return len(self.values)

    def __repr__(self) -> str:
        head = ", ".join(f"[{s:g},{e:g})->{v:g}" for s, e, v in self.parts()[:4])
        more = "" if len(self) <= 4 else f", ... ({len(self)} parts)"
        return f"SimpleVector<{self.carrier.kind}>({head}{more})"

    # -- arithmetic ------------------------------------------------------------

    def __abs__(self) -> "SimpleVector":
        return SimpleVector(self.carrier, self.starts, self.ends, self.values, None, canonical=True)

    def __neg__(self) -> "SimpleVector":
        return SimpleVector(self.carrier, self.starts, self.ends, self.values, -self.signs, canonical=True)

    def scale(self, c: float) -> "SimpleVector":
        if c == 0:
            return SimpleVector.zero(self.carrier)
        sign = -1.0 if c < 0 else 1.0
        return SimpleVector(self.carrier, self.starts, self.ends, self.values * abs(c),
                            self.signs * sign, canonical=True)

    __mul__ = scale

    def __rmul__(self, c: float) -> "SimpleVector":
        return self.scale(c)

    def __truediv__(self, c: float) -> "SimpleVector":
        return self.scale(1.0 / c)

    def __add__(self, other: "SimpleVector") -> "SimpleVector":
        if self.carrier != other.carrier:
            raise VectorError("cannot add vectors on different carriers")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        cuts = np.unique(np.concatenate([self.starts, self.ends, other.starts, other.ends]))
        left, right = cuts[:-1], cuts[1:]
        total = self.evaluate_at(left) + other.evaluate_at(left)
        return SimpleVector(self.carrier, left, right, np.abs(total), np.where(total < 0, -1.0, 1.0))

    def __sub__(self, other: "SimpleVector") -> "SimpleVector":
        return self + (-other)

    def evaluate_at(self, points) -> np.ndarray:
        """Signed value at each point (regions are half-open)."""
        pts = np.asarray(points, dtype=float)
        if self.is_zero:
            return np.zeros_like(pts)
        j = np.searchsorted(self.starts, pts, side="right") - 1
        jj = np.clip(j, 0, len(self.starts) - 1)
        inside = (j >= 0) & (pts < self.ends[jj])
        return np.where(inside, self.signed_values[jj], 0.0)

    def restrict(self, start: float, end: float) -> "SimpleVector":
        s = np.maximum(self.starts, start)
        e = np.minimum(self.ends, end)
        keep = e > s
        return SimpleVector(self.carrier, s[keep], e[keep], self.values[keep], self.signs[keep])

    def dominated_by(self, other: "SimpleVector") -> bool:
        """Pointwise ``|self| <= |other|`` on every elementary region."""
        cuts = np.unique(np.concatenate([self.starts, self.ends, other.starts, other.ends]))
        if len(cuts) < 2:
            return True
        left = cuts[:-1]
        return bool(np.all(np.abs(self.evaluate_at(left)) <= np.abs(other.evaluate_at(left))))

    def disjoint_from(self, other: "SimpleVector") -> bool:
        if self.is_zero or other.is_zero:
            return True
        cuts = np.unique(np.concatenate([self.starts, self.ends, other.starts, other.ends]))
        left = cuts[:-1]
        both = (self.evaluate_at(left) != 0) & (other.evaluate_at(left) != 0)
        return not bool(np.any(both))

    # -- JSON ------------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "carrier": self.carrier.to_dict(),
            "parts": [{"from": s, "to": e, "value": v} for s, e, v in self.parts()],
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "SimpleVector":
        carrier = carrier_from_dict(d.get("carrier", {"interval": {"gamma": "inf"}}))
        parts = []
        for p in d.get("parts", []):
            if "index" in p:
                i = int(p["index"])
                parts.append((i, i + 1, float(p["value"])))
            else:
                parts.append((_num(p["from"]), _num(p["to"]), float(p["value"])))
        return cls.from_parts(parts, carrier)


def _num(x) -> float:
    if isinstance(x, str) and x.lower() in ("inf", "infinity"):
        return INF
    return float(x)


def carrier_from_dict(d: Mapping[str, Any]) -> Carrier:
    if "counting" in d:
        return COUNTING
    if "interval" in d:
        gamma = d["interval"].get("gamma", "inf") if isinstance(d["interval"], Mapping) else "inf"
        return Carrier("interval", _num(gamma))
    raise VectorError(f"unknown carrier descriptor {dict(d)!r}")


def _canonicalize(carrier, starts, ends, values, signs):
    if np.any(ends < starts):
        raise VectorError("region end before start")
    if not np.all(np.isfinite(values)):
        raise VectorError("vector values must be finite")
    if np.any(values < 0):
        raise VectorError("magnitudes must be non-negative; use signs")
    if carrier.kind == "counting":
        if np.any(starts != np.floor(starts)) or np.any(ends != np.floor(ends)):
            raise VectorError("counting regions must be integer index ranges")
        if len(starts) and starts.min() < 1:
            raise VectorError("sequence indices start at 1")
        if np.any(~np.isfinite(ends)):
            raise VectorError("sequence support must be finite")
    else:
        if len(starts) and starts.min() < 0:
            raise VectorError("interval regions must lie in [0, gamma)")
        if len(ends) and ends.max() > carrier.gamma:
            raise VectorError("interval regions must lie in [0, gamma)")
        if np.any(~np.isfinite(ends)):
            raise VectorError("regions must be bounded")
    keep = (values > 0) & (ends > starts)
    starts, ends, values, signs = starts[keep], ends[keep], values[keep], signs[keep]
    order = np.argsort(starts, kind="stable")
    starts, ends, values, signs = starts[order], ends[order], values[order], signs[order]
    if len(starts) > 1 and np.any(starts[1:] < ends[:-1]):
        raise VectorError("regions must be pairwise disjoint")
    if len(starts) > 1:
        same = (starts[1:] == ends[:-1]) & (values[1:] == values[:-1]) & (signs[1:] == signs[:-1])
        if np.any(same):
            first = np.concatenate([[True], ~same])
            last = np.concatenate([~same, [True]])
            starts, ends = starts[first], ends[last]
            values, signs = values[first], signs[first]
    return starts, ends, values, signs
