"""Explicit inequalities: trace-class criterion, trace-norm sandwich, block
estimates, Hilbert-Schmidt majorization and the Nazarov-type contraction.

The Nazarov constant ``A`` is never given a value here.  It is either a user
parameter or estimated from below by :func:`nazarov_empirical`.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .discretize import (
    ANALYST,
    DEFAULT_RESOLUTION,
    PAPER_RAW,
    SQRT_2PI,
    Convention,
    Quadrature,
    Resolution,
    discretize_block,
    discretize_F,
)
from .interval_sets import (
    Interval,
    IntervalSet,
    as_set,
    difference,
    format_set,
    intersection,
    measure,
    unit_cells,
)
from .spectral import svd

E_QUARTER = math.exp(0.25)


def criterion_sum(S) -> float:
    """``Σ_j sqrt(mes(S ∩ [j-1/2, j+1/2]))``."""
    return math.fsum(math.sqrt(measure(cell)) for _, cell in unit_cells(as_set(S)))


def trace_norm_upper(S) -> float:
    """``e^{1/4} (Σ_j sqrt(mes E_j))^2``, a bound on the paper-raw nuclear norm."""
    return E_QUARTER * criterion_sum(S) ** 2


def trace_norm_lower(S, conv=ANALYST) -> float:
    """``(mes E)^2`` (paper-raw) or ``(mes E)^2 / (2π)`` (analyst).

    The analyst value follows from ``Σ s_j >= Σ s_j^2 = ||F_E||_HS^2`` with
    ``s_j <= 1``.  The paper-raw value is the literal statement; it is only
    valid while raw singular values stay below one, see
    :func:`trace_norm_lower_consistent`.
    """
    conv = Convention.coerce(conv)
    m = measure(as_set(S))
    return m * m * conv.kernel_scale


def trace_norm_lower_consistent(S) -> float:
    """``(mes E)^2 / sqrt(2π)``: the analyst lower bound rescaled to paper-raw units."""
    m = measure(as_set(S))
    return m * m / SQRT_2PI


def trace_norm_bounds(S, conv=ANALYST) -> tuple[float, float]:
    """``(lower, upper)``; the upper value is always in paper-raw units.

    Since the analyst nuclear norm is the raw one divided by ``sqrt(2π)`` the
    upper value bounds both.
    """
    S = as_set(S)
    if not S:
        return 0.0, 0.0
    return trace_norm_lower(S, conv), trace_norm_upper(S)


def _check_contained(S: IntervalSet, R: float):
    if S and (S.bounds[0] < -R or S.bounds[1] > R):
        raise ValueError(f"set {format_set(S)} is not contained in [-{R}, {R}]")


def block_trace_bound(S1, S2, R: float) -> float:
    """``sqrt(mes S1) sqrt(mes S2) e^{R^2}`` for ``S1, S2 ⊆ [-R, R]``."""
    S1, S2 = as_set(S1), as_set(S2)
    if not R > 0:
        raise ValueError("R must be positive")
    _check_contained(S1, R)
    _check_contained(S2, R)
    return math.sqrt(measure(S1) * measure(S2)) * math.exp(R * R)


def unit_cell_block_bound(Ep, Eq) -> float:
    """``e^{1/4} sqrt(mes E_p) sqrt(mes E_q)`` for sets inside unit cells."""
    return E_QUARTER * math.sqrt(measure(as_set(Ep)) * measure(as_set(Eq)))


def block_nuclear_norm(S1, S2, resolution: Resolution = DEFAULT_RESOLUTION, conv=PAPER_RAW) -> float:
    """Nuclear norm of the discretized ``P_{S2} F P_{S1}``."""
    S1, S2 = as_set(S1), as_set(S2)
    if not (S1 and S2):
        return 0.0
    return float(np.sum(svd(discretize_block(S1, S2, conv=conv, resolution=resolution))[1]))


def nuclear_norm(S, resolution: Resolution = DEFAULT_RESOLUTION, conv=PAPER_RAW) -> float:
    S = as_set(S)
    if not S:
        return 0.0
    return float(np.sum(svd(discretize_F(S, resolution.quadrature(S), conv))[1]))


def converged_nuclear_norm(S, resolution: Resolution = DEFAULT_RESOLUTION, conv=PAPER_RAW,
                           rtol: float = 1e-9, max_refinements: int = 5) -> float:
    from .spectral import analyze

    return analyze(S, resolution, conv, rtol=rtol, max_refinements=max_refinements).nuclear_norm


def hs_majorization_bound(S, conv=ANALYST) -> float:
    """``mes E`` (paper-raw) or ``mes E / sqrt(2π)`` (analyst) bounds ``||F_E||``."""
    conv = Convention.coerce(conv)
    return measure(as_set(S)) * conv.fourier_scale


# -- Nazarov-type bounds ------------------------------------------------------

def nazarov_contraction_bound(S_or_measure, A: float) -> float:
    """``1 - A^{-1} e^{-A (mes E)^2}``, bound on ``||F_E x||^2 / ||x||^2``."""
    if A < 1:
        raise ValueError("the constant A must satisfy A >= 1")
    m = S_or_measure if isinstance(S_or_measure, (int, float)) else measure(as_set(S_or_measure))
    return 1.0 - math.exp(-A * m * m) / A


def implied_constant(ratio: float, mes_E: float, mes_F: float) -> float:
    """Solve ``A e^{A mes_E mes_F} = ratio`` for ``A > 0``."""
    if not ratio > 0:
        raise ValueError("ratio must be positive")
    p = mes_E * mes_F
    target = math.log(ratio)

    def g(logA):
        return logA + math.exp(logA) * p - target

    lo, hi = -60.0, max(5.0, target + 5.0)
    return math.exp(brentq(g, lo, hi, xtol=1e-14, rtol=1e-14))


@dataclass(frozen=True)
class ProbeFunction:
    """A test function ``x(ξ)`` with compact support ``support``."""

    func: Callable[[np.ndarray], np.ndarray]
    support: Interval
    scale: float  # smallest feature width, drives panel density
    label: str = ""

    def __call__(self, xi):
        return self.func(xi)


def _smooth_step(s):
    # C-infinity transition from 0 (s<=0) to 1 (s>=1)
    s = np.clip(s, 0.0, 1.0)
    a = np.where(s > 0, np.exp(-1.0 / np.where(s > 0, s, 1.0)), 0.0)
    b = np.where(s < 1, np.exp(-1.0 / np.where(s < 1, 1.0 - s, 1.0)), 0.0)
    return a / (a + b)


def _gaussian(c, sigma, omega):
    def f(xi):
        z = (xi - c) / sigma
        return np.exp(-0.5 * z * z + 1j * omega * xi)
    return f


def _mollified_indicator(lo, hi, eps, omega):
    def f(xi):
        up = _smooth_step((xi - lo) / eps)
        down = _smooth_step((hi - xi) / eps)
        return up * down * np.exp(1j * omega * xi)
    return f


def probe_family(box: Interval, n: int = 50, seed: int = 0) -> list[ProbeFunction]:
    """Translated/modulated Gaussians and mollified indicators around ``box``.

    Deterministic in ``seed``.  Gaussians are truncated at 8 standard
    deviations, so every member is compactly supported.
    """
    rng = np.random.default_rng(seed)
    width = box.hi - box.lo
    out = []
    for k in range(n):
        omega = rng.uniform(-4.0, 4.0)
        if k % 2 == 0:
            c = rng.uniform(box.lo, box.hi)
            sigma = width * rng.uniform(0.05, 0.4)
            out.append(ProbeFunction(_gaussian(c, sigma, omega), Interval(c - 8 * sigma, c + 8 * sigma),
                                    min(sigma, 1.0), f"gauss(c={c:.3f},s={sigma:.3f},w={omega:.3f})"))
        else:
            a, b = np.sort(rng.uniform(box.lo, box.hi, 2))
            if b - a < 0.05 * width:
                b = a + 0.05 * width
            eps = (b - a) * rng.uniform(0.1, 0.5)
            out.append(ProbeFunction(_mollified_indicator(a, b, eps, omega), Interval(a, b),
                                    min(eps, 1.0), f"mollified([{a:.3f},{b:.3f}],e={eps:.3f},w={omega:.3f})"))
    return out


def _probe_quadrature(fn: ProbeFunction, pieces: IntervalSet, freq: float, resolution: Resolution) -> Quadrature:
    ppu = max(resolution.effective_ppu(freq), 2.0 / fn.scale)
    return Resolution(resolution.order, ppu, adaptive=False).quadrature(pieces)


def concentration_ratio(E, F, fn: ProbeFunction, resolution: Resolution = DEFAULT_RESOLUTION) -> float:
    """``∫|y|^2 / (∫_{R\\E}|y|^2 + ∫_{R\\F}|x|^2)`` with ``y = F x`` (analyst).

    ``∫|y|^2`` is taken as ``∫|x|^2`` (Parseval) and ``∫_{R\\E}|y|^2`` as
    ``∫|x|^2 - ∫_E|y|^2``, so ``y`` is only needed on ``E``.
    """
    E, F = as_set(E), as_set(F)
    supp = IntervalSet([fn.support])
    inside, outside = intersection(supp, F), difference(supp, F)
    freq = max(E.radius, supp.radius)
    norm2 = 0.0
    out_F = 0.0
    nodes, wx = [], []
    for piece, off_F in ((inside, False), (outside, True)):
        if not piece:
            continue
        q = _probe_quadrature(fn, piece, freq, resolution)
        vals = fn(q.nodes)
        e = float(np.sum(q.weights * np.abs(vals) ** 2))
        norm2 += e
        if off_F:
            out_F = e
        nodes.append(q.nodes)
        wx.append(q.weights * vals)
    xi = np.concatenate(nodes)
    wxv = np.concatenate(wx)
    qE = resolution.quadrature(E, freq)
    y = (np.exp(1j * np.outer(qE.nodes, xi)) @ wxv) / SQRT_2PI
    in_E = float(np.sum(qE.weights * np.abs(y) ** 2))
    return norm2 / ((norm2 - in_E) + out_F)


@dataclass
class NazarovEstimate:
    max_ratio: float
    a_star: float
    a_lower: float
    family_max_ratio: float
    family_a_star: float
    extremal_ratio: float | None
    mes_E: float
    mes_F: float
    ratios: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def nazarov_empirical(E, F=None, family: Sequence[ProbeFunction] | None = None,
                      seed: int = 0, n: int = 50, include_extremal: bool = True,
                      resolution: Resolution = DEFAULT_RESOLUTION) -> NazarovEstimate:
    """Largest concentration ratio over a test family and the implied constant.

    Any admissible ``A`` satisfies ``A e^{A mesE mesF} >= max ratio``; the root
    of that equation is ``a_star`` and ``a_lower = max(1, a_star)``.  With
    ``include_extremal`` the top right singular vector of the discretized
    ``P_E F P_F`` joins the family, making ``max_ratio`` the discrete supremum
    over ``L2(F)``.
    """
    E = as_set(E)
    F = E if F is None else as_set(F)
    if family is None:
        lo = min(E.bounds[0], F.bounds[0])
        hi = max(E.bounds[1], F.bounds[1])
        family = probe_family(Interval(lo, hi), n, seed)
    if not family:
        raise ValueError("test family must be nonempty")
    ratios = [concentration_ratio(E, F, fn, resolution) for fn in family]
    fam_max = max(ratios)
    mE, mF = measure(E), measure(F)
    ext = None
    best = fam_max
    if include_extremal:
        s0 = svd(discretize_block(F, E, conv=ANALYST, resolution=resolution))[1][0]
        ext = 1.0 / (1.0 - s0 * s0)
        best = max(best, ext)
    a_star = implied_constant(best, mE, mF)
    return NazarovEstimate(
        max_ratio=best,
        a_star=a_star,
        a_lower=max(1.0, a_star),
        family_max_ratio=fam_max,
        family_a_star=implied_constant(fam_max, mE, mF),
        extremal_ratio=ext,
        mes_E=mE,
        mes_F=mF,
        ratios=[float(r) for r in ratios],
    )


def heldout_vectors(E, n: int = 50, seed: int = 1, resolution: Resolution = DEFAULT_RESOLUTION):
    """``n`` compactly supported smooth test vectors in ``L2(E)``.

    Returns ``(q, X)`` with ``X`` of shape ``(n, len(q))`` holding samples.
    Members are modulated bumps with random centers and widths, restricted
    to ``E``.
    """
    E = as_set(E)
    q = resolution.quadrature(E)
    rng = np.random.default_rng(seed)
    lo, hi = E.bounds
    X = np.empty((n, len(q)), dtype=complex)
    for k in range(n):
        c = rng.uniform(lo, hi)
        r = rng.uniform(0.05, 0.6) * (hi - lo)
        omega = rng.uniform(-6.0, 6.0)
        s = (q.nodes - c) / r
        vals = np.where(np.abs(s) < 1, np.exp(-1.0 / np.where(np.abs(s) < 1, 1 - s * s, 1.0)), 0.0)
        if not np.any(vals):
            vals = np.ones(len(q))
        X[k] = vals * np.exp(1j * omega * q.nodes)
    return q, X


def bfu_violations(E, A: float, q: Quadrature, X, rtol: float = 1e-12) -> list[int]:
    """Indices of sample vectors violating ``||F_E x||^2 <= bound(A) ||x||^2``."""
    E = as_set(E)
    bound = nazarov_contraction_bound(E, A)
    M = discretize_F(E, q).matrix
    bad = []
    for k, x in enumerate(np.atleast_2d(X)):
        c = q.coefficients(x)
        lhs = float(np.linalg.norm(M @ c) ** 2)
        rhs = bound * float(np.linalg.norm(c) ** 2)
        if lhs > rhs * (1 + rtol):
            bad.append(k)
    return bad


def bound_crossover(A: float = 1.0, grid=None):
    """Measures where the squared HS majorization (analyst) overtakes the Nazarov bound.

    Returns ``(grid, diff, sign_changes)`` with ``diff = (mes^2/2π) - bound(A)``.
    """
    grid = np.linspace(0.05, 6.0, 120) if grid is None else np.asarray(grid, dtype=float)
    diff = np.array([m * m / (2 * math.pi) - nazarov_contraction_bound(float(m), A) for m in grid])
    changes = [float(0.5 * (grid[i] + grid[i + 1])) for i in range(len(grid) - 1)
               if np.sign(diff[i]) != np.sign(diff[i + 1])]
    return grid, diff, changes


# -- report -------------------------------------------------------------------

@dataclass
class BoundsReport:
    set_literal: str
    measure: float
    criterion_sum: float
    trace_upper: float
    trace_lower: dict
    nuclear_norm: dict
    hs_majorization: dict
    nazarov_bound: dict
    block_bounds: list
    resolution: dict

    def to_dict(self):
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def table(self) -> list[tuple[str, float | None, float | None, str]]:
        """Rows ``(quantity, paper-raw, analyst, reference)``."""
        nn_raw = self.nuclear_norm.get("paper-raw")
        nn_an = self.nuclear_norm.get("analyst")
        return [
            ("measure", self.measure, self.measure, "mes E"),
            ("criterion_sum", self.criterion_sum, self.criterion_sum, "sum_j sqrt(mes E_j)"),
            ("trace_upper", self.trace_upper, self.trace_upper / SQRT_2PI, "e^(1/4) criterion_sum^2"),
            ("trace_lower", self.trace_lower["paper-raw"], self.trace_lower["analyst"], "(mes E)^2 [raw], (mes E)^2/2pi [analyst]"),
            ("nuclear_norm", nn_raw, nn_an, "computed sum of singular values"),
            ("hs_majorization", self.hs_majorization["paper-raw"], self.hs_majorization["analyst"], "||F_E|| <= ||F_E||_HS"),
        ] + [(f"nazarov_bound(A={a})", None, v, "1 - e^(-A mes^2)/A") for a, v in sorted(self.nazarov_bound.items())]


def bounds_report(S, A_values=(1.0,), resolution: Resolution = DEFAULT_RESOLUTION,
                  with_nuclear: bool = True, with_blocks: bool = True) -> BoundsReport:
    S = as_set(S)
    nn = {"paper-raw": None, "analyst": None}
    if with_nuclear and S:
        raw = converged_nuclear_norm(S, resolution, PAPER_RAW)
        nn = {"paper-raw": raw, "analyst": raw / SQRT_2PI}
    blocks = []
    if with_blocks:
        cells = unit_cells(S)
        for p, Ep in cells:
            for q_, Eq in cells:
                blocks.append([p, q_, unit_cell_block_bound(Ep, Eq)])
    return BoundsReport(
        set_literal=format_set(S),
        measure=measure(S),
        criterion_sum=criterion_sum(S),
        trace_upper=trace_norm_upper(S) if S else 0.0,
        trace_lower={"paper-raw": trace_norm_lower(S, PAPER_RAW),
                     "analyst": trace_norm_lower(S, ANALYST),
                     "paper-raw-consistent": trace_norm_lower_consistent(S)},
        nuclear_norm=nn,
        hs_majorization={"paper-raw": hs_majorization_bound(S, PAPER_RAW),
                         "analyst": hs_majorization_bound(S, ANALYST)},
        nazarov_bound={str(float(a)): nazarov_contraction_bound(S, a) for a in A_values},
        block_bounds=blocks,
        resolution=resolution.params(),
    )


__all__ = [
    "criterion_sum", "trace_norm_upper", "trace_norm_lower", "trace_norm_lower_consistent",
    "trace_norm_bounds", "block_trace_bound", "unit_cell_block_bound", "block_nuclear_norm",
    "nuclear_norm", "converged_nuclear_norm", "hs_majorization_bound",
    "nazarov_contraction_bound", "implied_constant", "ProbeFunction", "probe_family",
    "concentration_ratio", "NazarovEstimate", "nazarov_empirical", "heldout_vectors",
    "bfu_violations", "bound_crossover", "BoundsReport", "bounds_report",
]
