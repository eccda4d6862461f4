"""Disjoint closed interval sets: covers of spectra and their arithmetic.

Shared by the trace-map cover construction and the separable 2D sumsets.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, pairwise disjoint closed intervals [a_i, b_i] with b_i < a_{i+1}."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.a, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if a.size != b.size:
            raise ValueError("endpoint arrays differ in length")
        if a.size and (np.any(b < a) or np.any(a[1:] <= b[:-1])):
            raise ValueError("intervals must be ordered and disjoint")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __len__(self):
        return self.a.size

    @property
    def empty(self) -> bool:
        return self.a.size == 0

    def hull(self):
        if self.empty:
            raise ValueError("empty interval set has no hull")
        return float(self.a[0]), float(self.b[-1])

    def contains(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.empty:
            return np.zeros(x.shape, dtype=bool)
        i = np.searchsorted(self.a, x, side="right") - 1
        ok = i >= 0
        return ok & (x <= self.b[np.clip(i, 0, len(self) - 1)])

    def distance(self, x) -> np.ndarray:
        """Distance from point(s) x to the set (inf when empty)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.empty:
            return np.full(x.shape, np.inf)
        d = np.full(x.shape, np.inf)
        for lo, hi in zip(self.a, self.b):
            d = np.minimum(d, np.maximum(np.maximum(lo - x, x - hi), 0.0))
        return d

    def is_subset_of(self, other: "IntervalSet") -> bool:
        for lo, hi in zip(self.a, self.b):
            i = np.searchsorted(other.a, lo, side="right") - 1
            if i < 0 or hi > other.b[i]:
                return False
        return True


def interval_set(pairs) -> IntervalSet:
    """Build an IntervalSet from (a, b) pairs, merging overlaps and touches."""
    pairs = [(float(a), float(b)) for a, b in pairs]
    if not pairs:
        return IntervalSet(np.empty(0), np.empty(0))
    for a, b in pairs:
        if b < a:
            raise ValueError("interval endpoints out of order")
    pairs.sort()
    out_a = [pairs[0][0]]
    out_b = [pairs[0][1]]
    for a, b in pairs[1:]:
        if a <= out_b[-1]:
            out_b[-1] = max(out_b[-1], b)
        else:
            out_a.append(a)
            out_b.append(b)
    return IntervalSet(np.asarray(out_a), np.asarray(out_b))


def lebesgue_length(s: IntervalSet) -> float:
    return float(np.sum(s.b - s.a)) if not s.empty else 0.0


def sumset(x: IntervalSet, y: IntervalSet) -> IntervalSet:
    """Minkowski sum of two interval sets, merged disjoint."""
    if x.empty or y.empty:
        raise ValueError("sumset of an empty interval set")
    a = np.add.outer(x.a, y.a).ravel()
    b = np.add.outer(x.b, y.b).ravel()
    order = np.argsort(a, kind="stable")
    a = a[order]
    b = b[order]
    # sweep-merge overlapping or touching intervals
    out_a = []
    out_b = []
    cur_a, cur_b = a[0], b[0]
    for i in range(1, a.size):
        if a[i] <= cur_b:
            if b[i] > cur_b:
                cur_b = b[i]
        else:
            out_a.append(cur_a)
            out_b.append(cur_b)
            cur_a, cur_b = a[i], b[i]
    out_a.append(cur_a)
    out_b.append(cur_b)
    return IntervalSet(np.asarray(out_a), np.asarray(out_b))


def gap_report(s: IntervalSet) -> list[tuple[float, float, float]]:
    """Maximal open gaps (start, end, width) inside the hull of s."""
    if len(s) < 2:
        return []
    starts = s.b[:-1]
    ends = s.a[1:]
    return [(float(g0), float(g1), float(g1 - g0)) for g0, g1 in zip(starts, ends)]


def box_dimension(s: IntervalSet, scales) -> tuple[float, float]:
    """Box-counting slope of log N(eps) vs log(1/eps) with its std error.

    N(eps) counts the eps-grid cells [k*eps, (k+1)*eps) that meet the set.
    """
    scales = np.asarray(scales, dtype=float)
    if scales.size < 3:
        raise ValueError("need at least 3 scales")
    if np.any(scales <= 0) or np.any(np.diff(scales) >= 0):
        raise ValueError("scales must be positive and strictly decreasing")
    if s.empty:
        raise ValueError("box dimension of the empty set")
    counts = np.array([_grid_cell_count(s, eps) for eps in scales], dtype=float)
    x = np.log(1.0 / scales)
    y = np.log(counts)
    n = x.size
    xm = x - x.mean()
    sxx = np.dot(xm, xm)
    slope = float(np.dot(xm, y) / sxx)
    resid = y - y.mean() - slope * xm
    stderr = float(np.sqrt(np.dot(resid, resid) / max(n - 2, 1) / sxx))
    return slope, stderr


def _grid_cell_count(s: IntervalSet, eps: float) -> int:
    lo = np.floor(s.a / eps).astype(np.int64)
    hi = np.floor(s.b / eps).astype(np.int64)
    # an interval that only touches the start of a cell does not occupy it
    touch = (hi * eps == s.b) & (hi > lo)
    hi = hi - touch
    total = 0
    prev = None
    for l, h in zip(lo, hi):
        if prev is not None and l <= prev:
            l = prev + 1
        if h >= l:
            total += h - l + 1
            prev = h
    return int(total)
