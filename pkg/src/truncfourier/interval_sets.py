"""Finite unions of bounded real intervals.

An :class:`IntervalSet` is a canonical, immutable union of disjoint intervals.
Boundaries carry no measure, so touching pieces are merged and endpoint
open/closedness is not tracked.  All set algebra is exact up to the floating
point arithmetic on endpoints; gaps narrower than :data:`MERGE_GAP` are closed
during normalization so that sums like ``p*sqrt(2*pi)`` do not leave slivers.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

MERGE_GAP = 1e-12

UNION_SYMBOLS = ("∪", "U")
EMPTY_SYMBOL = "∅"


@dataclass(frozen=True, order=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError(f"interval endpoints must be finite, got [{lo}, {hi}]")
        if not lo < hi:
            raise ValueError(f"interval needs lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, t) -> bool:
        return self.lo <= t <= self.hi


def _as_interval(item) -> Interval:
    if isinstance(item, Interval):
        return item
    lo, hi = item
    return Interval(lo, hi)


def _merge(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    ordered = sorted(intervals)
    merged: list[list[float]] = []
    for iv in ordered:
        if merged and iv.lo <= merged[-1][1] + MERGE_GAP:
            merged[-1][1] = max(merged[-1][1], iv.hi)
        else:
            merged.append([iv.lo, iv.hi])
    return tuple(Interval(lo, hi) for lo, hi in merged)


class IntervalSet:
    """Canonical finite union of disjoint intervals.

    Construct from any iterable of :class:`Interval` or ``(lo, hi)`` pairs;
    the constructor normalizes (sorts, merges overlapping or touching pieces)
    and rejects degenerate or non-finite intervals.

    >>> IntervalSet([(0, 1), (0.5, 2)])
    IntervalSet([[0.0, 2.0]])
    """

    __slots__ = ("_intervals",)

    def __init__(self, intervals: Iterable = ()):
        self._intervals = _merge(_as_interval(iv) for iv in intervals)

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._intervals

    def __iter__(self):
        return iter(self._intervals)

    def __len__(self):
        return len(self._intervals)

    def __bool__(self):
        return bool(self._intervals)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._intervals == other._intervals

    def __hash__(self):
        return hash(self._intervals)

    def __repr__(self):
        return f"IntervalSet({self.as_lists()!r})"

    def __str__(self):
        return format_set(self)

    def as_lists(self) -> list[list[float]]:
        return [[iv.lo, iv.hi] for iv in self._intervals]

    # set algebra as operators
    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersection(self, other)

    def __sub__(self, other):
        return difference(self, other)

    def __xor__(self, other):
        return symmetric_difference(self, other)

    def __neg__(self):
        return negate(self)

    @property
    def measure(self) -> float:
        return measure(self)

    @property
    def bounds(self) -> tuple[float, float]:
        """Bounding box ``(min, max)``; raises on the empty set."""
        if not self._intervals:
            raise ValueError("empty set has no bounding box")
        return self._intervals[0].lo, self._intervals[-1].hi

    @property
    def radius(self) -> float:
        """``max |t|`` over the set (0 for the empty set)."""
        if not self._intervals:
            return 0.0
        lo, hi = self.bounds
        return max(abs(lo), abs(hi))

    def contains(self, t) -> bool:
        return any(iv.contains(t) for iv in self._intervals)

    def indicator(self, t):
        """Vectorized indicator function (closed intervals)."""
        import numpy as np

        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=bool)
        for iv in self._intervals:
            out |= (t >= iv.lo) & (t <= iv.hi)
        return out


EMPTY = IntervalSet()


def normalize(raw: Iterable) -> IntervalSet:
    return IntervalSet(raw)


def measure(S: IntervalSet) -> float:
    return math.fsum(iv.length for iv in S)


def negate(S: IntervalSet) -> IntervalSet:
    return IntervalSet(Interval(-iv.hi, -iv.lo) for iv in S)


def translate(S: IntervalSet, h: float) -> IntervalSet:
    return IntervalSet(Interval(iv.lo + h, iv.hi + h) for iv in S)


def union(S1: IntervalSet, S2: IntervalSet) -> IntervalSet:
    return IntervalSet(S1.intervals + S2.intervals)


def intersection(S1: IntervalSet, S2: IntervalSet) -> IntervalSet:
    out = []
    i = j = 0
    A, B = S1.intervals, S2.intervals
    while i < len(A) and j < len(B):
        lo = max(A[i].lo, B[j].lo)
        hi = min(A[i].hi, B[j].hi)
        if hi - lo > MERGE_GAP:
            out.append(Interval(lo, hi))
        if A[i].hi < B[j].hi:
            i += 1
        else:
            j += 1
    return IntervalSet(out)


def difference(S1: IntervalSet, S2: IntervalSet) -> IntervalSet:
    out = []
    for iv in S1:
        pieces = [(iv.lo, iv.hi)]
        for cut in S2:
            if cut.hi <= iv.lo or cut.lo >= iv.hi:
                continue
            nxt = []
            for lo, hi in pieces:
                if cut.lo > lo:
                    nxt.append((lo, min(hi, cut.lo)))
                if cut.hi < hi:
                    nxt.append((max(lo, cut.hi), hi))
            pieces = nxt
        out.extend(Interval(lo, hi) for lo, hi in pieces if hi - lo > MERGE_GAP)
    return IntervalSet(out)


def symmetric_difference(S1: IntervalSet, S2: IntervalSet) -> IntervalSet:
    return union(difference(S1, S2), difference(S2, S1))


def is_symmetric(S: IntervalSet, tol: float = 0.0) -> bool:
    """True when ``mes(S xor -S) <= tol``."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return measure(symmetric_difference(S, negate(S))) <= tol


def asymmetric_parts(S: IntervalSet) -> tuple[IntervalSet, IntervalSet]:
    """Return ``(S \\ -S, -S \\ S)``."""
    R = negate(S)
    return difference(S, R), difference(R, S)


def unit_cells(S: IntervalSet) -> list[tuple[int, IntervalSet]]:
    """Split ``S`` into the pieces ``S ∩ [j-1/2, j+1/2]`` of positive measure."""
    cells = []
    for iv in S:
        jlo = math.floor(iv.lo + 0.5)
        jhi = math.floor(iv.hi + 0.5)
        for j in range(jlo, jhi + 1):
            lo = max(iv.lo, j - 0.5)
            hi = min(iv.hi, j + 0.5)
            if hi > lo:
                cells.append((j, Interval(lo, hi)))
    grouped: dict[int, list[Interval]] = {}
    for j, piece in cells:
        grouped.setdefault(j, []).append(piece)
    return [(j, IntervalSet(grouped[j])) for j in sorted(grouped)]


SQRT_HALF_PI = math.sqrt(math.pi / 2)
PERIOD = math.sqrt(2 * math.pi)


def periodic_set(a: float, P: int) -> IntervalSet:
    """Truncated periodic system ``⋃_{|p|<=P} ([-a, a] + p*sqrt(2π))``."""
    if not 0 < a < SQRT_HALF_PI:
        raise ValueError(f"half-width a must lie in (0, sqrt(pi/2)) = (0, {SQRT_HALF_PI:.6f}), got {a}")
    if P < 0:
        raise ValueError("truncation P must be >= 0")
    return IntervalSet(Interval(-a + p * PERIOD, a + p * PERIOD) for p in range(-P, P + 1))


def sparse_spikes(J: int) -> IntervalSet:
    """``⋃_{j=1..J} [j - j^-2, j + j^-2]``: finite measure, divergent cell sum."""
    return IntervalSet(Interval(j - j**-2, j + j**-2) for j in range(1, J + 1))


# -- text / JSON formats ---------------------------------------------------

def format_set(S: IntervalSet) -> str:
    if not S:
        return EMPTY_SYMBOL
    return "∪".join(f"[{iv.lo!r},{iv.hi!r}]" for iv in S)


def to_json(S: IntervalSet) -> str:
    return json.dumps({"intervals": S.as_lists()})


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?|[-+]?inf|nan"
_PIECE = re.compile(rf"\[\s*({_NUM})\s*,\s*({_NUM})\s*\]")


def parse_set(text: str) -> IntervalSet:
    """Parse ``[a,b]∪[c,d]`` (``U`` also accepted), ``∅``, or JSON.

    JSON may be ``{"intervals": [[a, b], ...]}`` or a bare list of pairs.
    Decimal literals round-trip exactly through :func:`format_set`.
    """
    text = text.strip()
    if text in ("", EMPTY_SYMBOL, "{}"):
        return EMPTY
    if text.startswith("{") or text.startswith("[["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad JSON set literal: {exc}") from None
        if isinstance(data, dict):
            if "intervals" not in data:
                raise ValueError("JSON set literal needs an 'intervals' key")
            data = data["intervals"]
        if not isinstance(data, list) or any(
            not isinstance(p, (list, tuple)) or len(p) != 2 for p in data
        ):
            raise ValueError("intervals must be a list of [lo, hi] pairs")
        return IntervalSet((float(lo), float(hi)) for lo, hi in data)

    pieces = []
    pos = 0
    while True:
        m = _PIECE.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse interval at position {pos}: {text[pos:]!r}")
        pieces.append(Interval(float(m.group(1)), float(m.group(2))))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        if text[pos] not in UNION_SYMBOLS:
            raise ValueError(f"expected union symbol at position {pos}: {text[pos:]!r}")
        pos += 1
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return IntervalSet(pieces)


def as_set(obj) -> IntervalSet:
    """Coerce a string literal, a sequence of pairs, or an IntervalSet."""
    if isinstance(obj, IntervalSet):
        return obj
    if isinstance(obj, str):
        return parse_set(obj)
    if isinstance(obj, Interval):
        return IntervalSet([obj])
    return IntervalSet(obj)


__all__: Sequence[str] = [
    "Interval",
    "IntervalSet",
    "EMPTY",
    "PERIOD",
    "SQRT_HALF_PI",
    "normalize",
    "measure",
    "negate",
    "translate",
    "union",
    "intersection",
    "difference",
    "symmetric_difference",
    "is_symmetric",
    "asymmetric_parts",
    "unit_cells",
    "periodic_set",
    "sparse_spikes",
    "format_set",
    "to_json",
    "parse_set",
    "as_set",
]
