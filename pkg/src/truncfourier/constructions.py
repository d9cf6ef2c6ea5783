"""Isometric and null vectors of ``F_E`` on the periodic set.

On ``E = ⋃_p ([-a, a] + p sqrt(2π))`` take a bump ``u`` supported in
``[-a, a]``, its spectral density ``v`` (``u(t) = ∫ e^{itξ} v(ξ) dξ``) and the
``sqrt(2π)``-periodic bump train ``φ``.  Then ``x = sqrt(2π) v φ`` is supported
in ``E`` and so is ``y = F x = Σ_p c_p u(· + p sqrt(2π))``; ``F_E`` acts on ``x``
isometrically.  Modulating by ``e^{-ihξ}`` shifts ``y`` by ``h`` into the gaps
of ``E`` and gives a vector annihilated by ``F_E``.

Everything infinite is truncated to ``|p| <= P``; the certification ratios
measure how far the truncated objects are from exact.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .discretize import ANALYST, Quadrature, Resolution, SQRT_2PI, build_quadrature, discretize_F
from .interval_sets import (
    PERIOD,
    SQRT_HALF_PI,
    Interval,
    IntervalSet,
    format_set,
    intersection,
    measure,
    periodic_set,
    translate,
)

NULL_A_LIMIT = 0.5 * SQRT_HALF_PI
DEFAULT_SHIFT = PERIOD / 2


class Bump:
    """``u(t) = exp(-a^2 / (a^2 - t^2))`` on ``|t| < a``, zero elsewhere."""

    kinds = ("exp",)

    def __init__(self, a: float, kind: str = "exp"):
        if not a > 0:
            raise ValueError("bump half-width must be positive")
        if kind not in self.kinds:
            raise ValueError(f"unknown bump kind {kind!r}")
        self.a = float(a)
        self.kind = kind

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape)
        inside = np.abs(t) < self.a
        a2 = self.a * self.a
        out[inside] = np.exp(-a2 / (a2 - t[inside] ** 2))
        return out[()] if out.ndim == 0 else out

    def __repr__(self):
        return f"Bump(a={self.a!r}, kind={self.kind!r})"


def bump_u(a: float, kind: str = "exp") -> Bump:
    return Bump(a, kind)


def _support_quadrature(u: Bump, panels: int = 64, order: int = 16) -> Quadrature:
    return build_quadrature(IntervalSet([(-u.a, u.a)]), order, panels / (2 * u.a))


def spectral_density_v(u: Bump, xi, panels: int = 64, order: int = 16):
    """``v(ξ) = (1/2π) ∫ u(t) e^{-itξ} dt`` by composite Gauss over ``supp u``."""
    q = _support_quadrature(u, panels, order)
    xi = np.asarray(xi, dtype=float)
    flat = xi.ravel()
    wu = q.weights * u(q.nodes)
    out = np.empty(flat.shape, dtype=complex)
    for i in range(0, flat.size, 2048):
        out[i:i + 2048] = np.exp(-1j * np.outer(flat[i:i + 2048], q.nodes)) @ wu
    out = (out / (2 * math.pi)).reshape(xi.shape)
    return out[()] if out.ndim == 0 else out


def periodized_phi(a: float, xi, kind: str = "exp"):
    """``φ(ξ) = Σ_p u(ξ - p sqrt(2π))``; one bump per period."""
    if not 0 < a < SQRT_HALF_PI:
        raise ValueError(f"a must lie in (0, sqrt(pi/2)), got {a}")
    xi = np.asarray(xi, dtype=float)
    return bump_u(a, kind)(xi - np.round(xi / PERIOD) * PERIOD)


def phi_coefficients_direct(a: float, ps, kind: str = "exp", panels: int = 128, order: int = 16):
    """``c_p = (1/sqrt(2π)) ∫_{period} φ(ξ) e^{-ipξ sqrt(2π)} dξ`` over a full period."""
    q = build_quadrature(IntervalSet([(-PERIOD / 2, PERIOD / 2)]), order, panels / PERIOD)
    wphi = q.weights * periodized_phi(a, q.nodes, kind)
    ps = np.asarray(ps, dtype=float)
    return (np.exp(-1j * np.outer(ps, q.nodes) * PERIOD) @ wphi) / SQRT_2PI


def phi_coefficients_spectral(a: float, ps, kind: str = "exp"):
    """``c_p = sqrt(2π) v(p sqrt(2π))``, the same coefficients through ``v``."""
    return SQRT_2PI * spectral_density_v(bump_u(a, kind), np.asarray(ps, dtype=float) * PERIOD)


@dataclass(frozen=True)
class BumpSpec:
    a: float = 0.5
    kind: str = "exp"
    P: int = 6
    order: int = 16
    panels_per_interval: int = 8
    width: float | None = None  # bump half-width, <= a; defaults to a
    series_P: int = 50

    def __post_init__(self):
        if not 0 < self.a < SQRT_HALF_PI:
            raise ValueError(f"a must lie in (0, sqrt(pi/2)) = (0, {SQRT_HALF_PI:.6f}), got {self.a}")
        if self.width is not None and not 0 < self.width <= self.a:
            raise ValueError("bump width must lie in (0, a]")
        if self.P < 0:
            raise ValueError("P must be >= 0")

    @property
    def bump_width(self) -> float:
        return self.a if self.width is None else self.width

    def periodic_set(self, P: int | None = None) -> IntervalSet:
        return periodic_set(self.a, self.P if P is None else P)

    def quadrature(self, P: int | None = None) -> Quadrature:
        return build_quadrature(self.periodic_set(P), self.order, self.panels_per_interval / (2 * self.a))


@dataclass
class ConstructedVector:
    spec: BumpSpec
    mode: str
    E: IntervalSet
    quad: Quadrature
    samples: np.ndarray
    ratio: float
    shift: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def norm(self) -> float:
        return self.quad.norm(self.samples)

    def certification(self) -> dict:
        return {
            "mode": self.mode,
            "ratio": float(self.ratio),
            "norm": self.norm,
            "a": self.spec.a,
            "bump_width": self.spec.bump_width,
            "kind": self.spec.kind,
            "P": self.spec.P,
            "shift": float(self.shift),
            "set": format_set(self.E),
            "measure": measure(self.E),
            "quadrature": self.quad.params(),
            **{k: float(v) for k, v in self.extras.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.certification(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["node", "re_x", "im_x"])
        for t, x in zip(self.quad.nodes, self.samples):
            w.writerow([repr(float(t)), repr(float(x.real)), repr(float(x.imag))])
        return buf.getvalue()


def isometric_samples(spec: BumpSpec, nodes) -> np.ndarray:
    """``x(ξ) = sqrt(2π) v(ξ) φ(ξ)`` at ``nodes``."""
    w = spec.bump_width
    u = bump_u(w, spec.kind)
    phi = periodized_phi(w, nodes, spec.kind)
    out = np.zeros(np.shape(nodes), dtype=complex)
    nz = phi != 0
    out[nz] = SQRT_2PI * spectral_density_v(u, np.asarray(nodes)[nz]) * phi[nz]
    return out


def apply_fourier(q: Quadrature, samples, targets, chunk: int = 2048) -> np.ndarray:
    """``(1/sqrt(2π)) ∫ e^{itξ} x(ξ) dξ`` at ``targets`` from samples on ``q``."""
    wx = q.weights * np.asarray(samples)
    targets = np.asarray(targets, dtype=float)
    out = np.zeros(targets.shape, dtype=complex)
    for i in range(0, q.nodes.size, chunk):
        out += np.exp(1j * np.outer(targets, q.nodes[i:i + chunk])) @ wx[i:i + chunk]
    return out / SQRT_2PI


def _ratio(E: IntervalSet, q: Quadrature, samples) -> float:
    M = discretize_F(E, q, ANALYST).matrix
    c = q.coefficients(samples)
    return float(np.linalg.norm(M @ c) / np.linalg.norm(c))


def series_y(spec: BumpSpec, t) -> np.ndarray:
    """``y(t) = Σ_p c_p u(t + p sqrt(2π))`` with ``c_p = sqrt(2π) v(p sqrt(2π))``."""
    w = spec.bump_width
    u = bump_u(w, spec.kind)
    t = np.asarray(t, dtype=float)
    k = np.round(t / PERIOD)
    # only p = -k can put t + p sqrt(2π) inside [-w, w]
    c = phi_coefficients_spectral(w, -k, spec.kind)
    return c * u(t - k * PERIOD)


def dual_representation_error(spec: BumpSpec, q: Quadrature | None = None) -> float:
    """Max |series y - integral y| on the nodes of ``E_P``.

    The integral form ``∫ e^{itξ} v φ dξ`` is evaluated over ``|p| <= series_P``
    periods, independent of the certification truncation ``P``.
    """
    q = spec.quadrature() if q is None else q
    big = build_quadrature(periodic_set(spec.a, spec.series_P), spec.order, 4 / (2 * spec.a))
    y_int = apply_fourier(big, isometric_samples(spec, big.nodes), q.nodes)
    return float(np.max(np.abs(y_int - series_y(spec, q.nodes))))


def parseval_defect(vec: ConstructedVector, window: float = 60.0, ppu: float = 16.0) -> float:
    """``| ||F x||_{[-W, W]} - ||x|| | / ||x||`` for a constructed vector."""
    R = float(np.max(np.abs(vec.quad.nodes)))
    ppu = max(ppu, 2 * R / 8)
    qw = build_quadrature(IntervalSet([(-window, window)]), 8, ppu)
    y = apply_fourier(vec.quad, vec.samples, qw.nodes)
    return abs(qw.norm(y) - vec.norm) / vec.norm


def build_isometric_vector(spec: BumpSpec = BumpSpec(), dual_check: bool = False) -> ConstructedVector:
    """``x = sqrt(2π) v φ`` sampled on the truncated periodic set ``E_P``.

    The certification ratio ``||F_{E_P} x|| / ||x||`` tends to 1 as ``P`` grows.
    """
    E = spec.periodic_set()
    q = spec.quadrature()
    x = isometric_samples(spec, q.nodes)
    extras = {}
    if dual_check:
        extras["dual_representation_error"] = dual_representation_error(spec, q)
    return ConstructedVector(spec, "isometric", E, q, x, _ratio(E, q, x), 0.0, extras)


def check_shift(spec: BumpSpec, h: float) -> None:
    """Reject ``(a, h)`` for which ``E_P + h`` meets ``E_P``."""
    E = spec.periodic_set(max(spec.P, 1))
    if measure(intersection(translate(E, h), E)) > 0:
        raise ValueError(f"translate of the periodic set by h={h} overlaps it (a={spec.a})")
    if not spec.a < NULL_A_LIMIT:
        raise ValueError(f"null vectors need a < sqrt(pi/2)/2 = {NULL_A_LIMIT:.6f}, got {spec.a}")


def build_null_vector(spec: BumpSpec = BumpSpec(a=0.5), h: float = DEFAULT_SHIFT) -> ConstructedVector:
    """``x_1 = x e^{-ihξ}``: ``F x_1 = y(· - h)`` lands in the gaps of ``E``."""
    check_shift(spec, h)
    E = spec.periodic_set()
    q = spec.quadrature()
    x1 = isometric_samples(spec, q.nodes) * np.exp(-1j * h * q.nodes)
    return ConstructedVector(spec, "null", E, q, x1, _ratio(E, q, x1), h)


def shift_identity_error(spec: BumpSpec, h: float = DEFAULT_SHIFT) -> float:
    """Max ``| |(F x_1)(t)| - |(F x)(t - h)| |`` on the nodes of ``E_P``."""
    q = spec.quadrature()
    x = isometric_samples(spec, q.nodes)
    y1 = apply_fourier(q, x * np.exp(-1j * h * q.nodes), q.nodes)
    y_shift = apply_fourier(q, x, q.nodes - h)
    return float(np.max(np.abs(np.abs(y1) - np.abs(y_shift))))


def certification_sweep(Ps, a: float = 0.5, mode: str = "isometric", h: float = DEFAULT_SHIFT) -> list[dict]:
    rows = []
    for P in Ps:
        spec = BumpSpec(a=a, P=int(P))
        vec = build_isometric_vector(spec) if mode == "isometric" else build_null_vector(spec, h)
        rows.append({"P": int(P), "ratio": vec.ratio, "nodes": len(vec.quad)})
    return rows


def independence_gram(widths, a: float = 0.5, P: int = 6) -> np.ndarray:
    """Gram matrix of normalized isometric vectors with different bump widths.

    All vectors live on the same ``E_P`` (half-width ``a``); a positive
    determinant certifies linear independence.
    """
    base = BumpSpec(a=a, P=P)
    q = base.quadrature()
    cols = []
    for w in widths:
        x = isometric_samples(BumpSpec(a=a, P=P, width=w), q.nodes)
        c = q.coefficients(x)
        cols.append(c / np.linalg.norm(c))
    V = np.array(cols)
    return V.conj() @ V.T


__all__ = [
    "Bump", "bump_u", "spectral_density_v", "periodized_phi", "phi_coefficients_direct",
    "phi_coefficients_spectral", "BumpSpec", "ConstructedVector", "isometric_samples",
    "apply_fourier", "series_y", "dual_representation_error", "parseval_defect",
    "build_isometric_vector", "check_shift", "build_null_vector", "shift_identity_error",
    "certification_sweep", "independence_gram", "NULL_A_LIMIT", "DEFAULT_SHIFT",
]
