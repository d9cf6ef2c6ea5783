"""Deterministic families of interval sets for sweeps and regression runs."""
from __future__ import annotations

import numpy as np

from .interval_sets import IntervalSet, is_symmetric, measure, negate, translate, union


def random_union(rng: np.random.Generator, max_intervals: int = 4, max_measure: float = 4.0,
                 box: float = 4.0) -> IntervalSet:
    """Union of at most ``max_intervals`` intervals inside ``[-box, box]``."""
    while True:
        k = int(rng.integers(1, max_intervals + 1))
        total = rng.uniform(0.3, max_measure)
        lengths = rng.dirichlet(np.ones(k)) * total
        slack = 2 * box - total
        if slack <= 0:
            continue
        gaps = rng.dirichlet(np.ones(k + 1)) * slack
        pieces, pos = [], -box
        for g, L in zip(gaps[:-1], lengths):
            pos += g
            pieces.append((pos, pos + L))
            pos += L
        S = IntervalSet(pieces)
        if 0 < measure(S) <= max_measure:
            return S


def random_sets(n: int = 20, seed: int = 0, **kw) -> list[IntervalSet]:
    rng = np.random.default_rng(seed)
    return [random_union(rng, **kw) for _ in range(n)]


def symmetric_sets(n: int = 10, seed: int = 1) -> list[IntervalSet]:
    """Sets equal to their reflection: a random half mirrored, sometimes plus ``[-c, c]``."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        half = translate(random_union(rng, max_intervals=2, max_measure=1.6, box=1.0), 1.0)
        S = union(half, negate(half))
        if rng.random() < 0.5:
            c = rng.uniform(0.05, 0.4)
            S = union(S, IntervalSet([(-c, c)]))
        if is_symmetric(S) and measure(S) <= 4.0:
            out.append(S)
    return out


def asymmetric_sets(n: int = 10, seed: int = 2) -> list[IntervalSet]:
    """Non-symmetric bounded sets, starting with ``[0, 1]``."""
    out = [IntervalSet([(0.0, 1.0)])]
    rng = np.random.default_rng(seed)
    while len(out) < n:
        S = random_union(rng, max_intervals=3, max_measure=3.0, box=3.0)
        if measure(S ^ negate(S)) > 0.1:
            out.append(S)
    return out
