"""Quadratures on interval sets and dense discretizations of the operators.

Every matrix uses symmetric square-root weighting,
``M[m, n] = sqrt(w_m) * k(t_m, s_n) * sqrt(w_n)``, so that Euclidean norms of
coefficient vectors ``sqrt(w) * x(nodes)`` equal discrete L2 norms and the
singular values of ``M`` approximate those of the integral operator directly.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from .interval_sets import Interval, IntervalSet, as_set, difference, measure

SQRT_2PI = math.sqrt(2 * math.pi)


class Convention(str, enum.Enum):
    """Normalization of the Fourier kernel.

    ``ANALYST`` keeps the unitary ``1/sqrt(2π)`` in the transform, hence a
    ``1/(2π)`` in the kernel of ``F_E^* F_E``.  ``PAPER_RAW`` drops both
    factors, which is the normalization under which ``trace F_E^* F_E =
    (mes E)^2`` and ``||F_E||_HS = mes E`` hold literally.
    """

    ANALYST = "analyst"
    PAPER_RAW = "paper-raw"

    @property
    def normalized(self) -> bool:
        return self is Convention.ANALYST

    @property
    def fourier_scale(self) -> float:
        return 1 / SQRT_2PI if self.normalized else 1.0

    @property
    def kernel_scale(self) -> float:
        return 1 / (2 * math.pi) if self.normalized else 1.0

    @classmethod
    def coerce(cls, value) -> "Convention":
        if isinstance(value, cls):
            return value
        return cls(str(value))


ANALYST = Convention.ANALYST
PAPER_RAW = Convention.PAPER_RAW


# -- quadrature -------------------------------------------------------------

@dataclass(frozen=True)
class Quadrature:
    nodes: np.ndarray
    weights: np.ndarray
    order: int = 0
    panels_per_unit: float = 0.0

    def __post_init__(self):
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        weights = np.ascontiguousarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-D arrays of equal length")
        if np.any(weights <= 0):
            raise ValueError("quadrature weights must be positive")
        nodes.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    @property
    def sqrt_weights(self) -> np.ndarray:
        return np.sqrt(self.weights)

    def integrate(self, f) -> complex | float:
        vals = f(self.nodes) if callable(f) else np.asarray(f)
        return np.sum(self.weights * vals)

    def coefficients(self, samples) -> np.ndarray:
        """Map function samples at the nodes to Euclidean coefficients."""
        return self.sqrt_weights * np.asarray(samples)

    def samples(self, coefficients) -> np.ndarray:
        return np.asarray(coefficients) / self.sqrt_weights

    def norm(self, samples) -> float:
        return float(np.sqrt(np.sum(self.weights * np.abs(samples) ** 2)))

    def concat(self, other: "Quadrature") -> "Quadrature":
        return Quadrature(
            np.concatenate([self.nodes, other.nodes]),
            np.concatenate([self.weights, other.weights]),
            self.order,
            self.panels_per_unit,
        )

    def params(self) -> dict:
        return {"nodes": int(len(self)), "order": int(self.order),
                "panels_per_unit": float(self.panels_per_unit)}


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    if order not in _GL_CACHE:
        _GL_CACHE[order] = leggauss(order)
    return _GL_CACHE[order]


def build_quadrature(S, order: int = 8, panels_per_unit: float = 4.0) -> Quadrature:
    """Composite Gauss-Legendre rule on each interval of ``S``.

    Each interval is cut into ``ceil(length * panels_per_unit)`` equal panels
    carrying ``order`` nodes each.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    if not panels_per_unit > 0:
        raise ValueError("panels_per_unit must be positive")
    S = as_set(S)
    x, w = gauss_legendre(order)
    nodes, weights = [], []
    for iv in S:
        n = max(1, math.ceil(iv.length * panels_per_unit - 1e-9))
        edges = np.linspace(iv.lo, iv.hi, n + 1)
        edges[-1] = iv.hi
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        nodes.append((mid[:, None] + half[:, None] * x).ravel())
        weights.append((half[:, None] * w).ravel())
    if not nodes:
        return Quadrature(np.empty(0), np.empty(0), order, panels_per_unit)
    return Quadrature(np.concatenate(nodes), np.concatenate(weights), order, panels_per_unit)


@dataclass(frozen=True)
class Resolution:
    """Quadrature parameters plus the oscillation-aware panel rule.

    With ``adaptive`` on, the panel density is raised to at least
    ``2 * frequency / order`` where ``frequency`` bounds the kernel's
    oscillation rate (``max |t|`` over the set for ``e^{itξ}``), keeping
    ``ω h / 2 <= order / 4`` on every panel.
    """

    order: int = 8
    panels_per_unit: float = 4.0
    adaptive: bool = True

    def effective_ppu(self, frequency: float) -> float:
        if not self.adaptive:
            return self.panels_per_unit
        return max(self.panels_per_unit, 2.0 * frequency / self.order)

    def quadrature(self, S, frequency: float | None = None) -> Quadrature:
        S = as_set(S)
        if frequency is None:
            frequency = S.radius
        return build_quadrature(S, self.order, self.effective_ppu(frequency))

    def refined(self, factor: float = 2.0) -> "Resolution":
        return Resolution(self.order, self.panels_per_unit * factor, self.adaptive)

    def params(self) -> dict:
        return {"order": self.order, "panels_per_unit": self.panels_per_unit,
                "adaptive": self.adaptive}


DEFAULT_RESOLUTION = Resolution()


# -- closed-form kernels ------------------------------------------------------

def _interval_exp_integral(lo: float, hi: float, u):
    """``∫_lo^hi e^{iξu} dξ`` in the cancellation-free sinc form."""
    length = hi - lo
    mid = 0.5 * (lo + hi)
    return length * np.sinc(length * u / (2 * np.pi)) * np.exp(1j * mid * u)


def kernel_K(S, u, conv=ANALYST):
    """``∫_S e^{iξu} dξ``, times ``1/(2π)`` in the analyst convention.

    Vectorized in ``u``.  Hermitian: ``K(-u) = conj(K(u))``.
    """
    S = as_set(S)
    conv = Convention.coerce(conv)
    u = np.asarray(u, dtype=float)
    out = np.zeros(u.shape, dtype=complex)
    for iv in S:
        out += _interval_exp_integral(iv.lo, iv.hi, u)
    out *= conv.kernel_scale
    return out[()] if out.ndim == 0 else out


def convolution_kernel_h(S, t):
    """``h_E(t) = (1/2π) ∫_E e^{-iξt} dξ``."""
    return kernel_K(S, -np.asarray(t, dtype=float), ANALYST)


# -- discrete operators ---------------------------------------------------------

@dataclass(frozen=True)
class DiscreteOperator:
    matrix: np.ndarray
    quad_row: Quadrature
    quad_col: Quadrature
    convention: Convention = ANALYST
    label: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        M = np.asarray(self.matrix)
        if M.shape != (len(self.quad_row), len(self.quad_col)):
            raise ValueError(
                f"matrix shape {M.shape} does not match quadratures "
                f"({len(self.quad_row)}, {len(self.quad_col)})"
            )
        if not np.all(np.isfinite(M)):
            raise ValueError("operator matrix has non-finite entries")
        object.__setattr__(self, "convention", Convention.coerce(self.convention))

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def H(self) -> "DiscreteOperator":
        return DiscreteOperator(self.matrix.conj().T, self.quad_col, self.quad_row,
                                self.convention, self.label + "^*", self.meta)

    def apply(self, samples):
        """Apply to function samples on the column nodes; return row samples."""
        coef = self.quad_col.coefficients(samples)
        return self.quad_row.samples(self.matrix @ coef)

    def singular_values(self) -> np.ndarray:
        if self.matrix.size == 0:
            return np.empty(0)
        return np.linalg.svd(self.matrix, compute_uv=False)

    # serialization: row-major, interleaved (re, im)
    def to_bytes(self) -> bytes:
        return np.ascontiguousarray(self.matrix, dtype="<c16").tobytes()

    @staticmethod
    def matrix_from_bytes(buf: bytes, shape) -> np.ndarray:
        return np.frombuffer(buf, dtype="<c16").reshape(shape).copy()

    def to_dict(self) -> dict:
        M = np.ascontiguousarray(self.matrix, dtype=complex)
        return {
            "label": self.label,
            "convention": self.convention.value,
            "shape": list(M.shape),
            "data": M.view(float).ravel().tolist(),
            "row_nodes": self.quad_row.nodes.tolist(),
            "row_weights": self.quad_row.weights.tolist(),
            "col_nodes": self.quad_col.nodes.tolist(),
            "col_weights": self.quad_col.weights.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "DiscreteOperator":
        shape = tuple(d["shape"])
        arr = np.asarray(d["data"], dtype=float)
        M = (arr[0::2] + 1j * arr[1::2]).reshape(shape)
        return cls(
            M,
            Quadrature(np.asarray(d["row_nodes"]), np.asarray(d["row_weights"])),
            Quadrature(np.asarray(d["col_nodes"]), np.asarray(d["col_weights"])),
            Convention(d["convention"]),
            d.get("label", ""),
        )

    @classmethod
    def from_json(cls, text: str) -> "DiscreteOperator":
        return cls.from_dict(json.loads(text))


def _check_nodes_in(S: IntervalSet, q: Quadrature):
    if len(q) and not np.all(S.indicator(q.nodes)):
        raise ValueError("quadrature nodes fall outside the set")


def _fourier_block(rows: Quadrature, cols: Quadrature, conv: Convention) -> np.ndarray:
    # weights enter as one outer product so that transposition commutes
    # with rounding: M is exactly complex symmetric when rows == cols
    phase = np.outer(rows.nodes, cols.nodes)
    K = np.exp(1j * phase) * conv.fourier_scale
    return np.outer(rows.sqrt_weights, cols.sqrt_weights) * K


def discretize_F(S, q: Quadrature | None = None, conv=ANALYST) -> DiscreteOperator:
    """Nyström matrix of ``(F_E x)(t) = c ∫_E e^{itξ} x(ξ) dξ``, ``t ∈ E``."""
    S = as_set(S)
    conv = Convention.coerce(conv)
    if q is None:
        q = DEFAULT_RESOLUTION.quadrature(S)
    _check_nodes_in(S, q)
    return DiscreteOperator(_fourier_block(q, q, conv), q, q, conv, "F_E")


def discretize_F_adjoint(S, q: Quadrature | None = None, conv=ANALYST) -> DiscreteOperator:
    """Nyström matrix of ``(F_E^* x)(t) = c ∫_E e^{-itξ} x(ξ) dξ``."""
    S = as_set(S)
    conv = Convention.coerce(conv)
    if q is None:
        q = DEFAULT_RESOLUTION.quadrature(S)
    _check_nodes_in(S, q)
    # conj(e^{itξ}) rather than e^{-itξ}: the identity with the conjugate
    # transpose of discretize_F then holds bit for bit
    return DiscreteOperator(_fourier_block(q, q, conv).conj(), q, q, conv, "F_E^*")


def discretize_block(S1, S2, q1: Quadrature | None = None, q2: Quadrature | None = None,
                     conv=PAPER_RAW, resolution: Resolution = DEFAULT_RESOLUTION) -> DiscreteOperator:
    """``P_{S2} F P_{S1}`` from ``L2(S1)`` to ``L2(S2)``."""
    S1, S2 = as_set(S1), as_set(S2)
    conv = Convention.coerce(conv)
    freq = max(S1.radius, S2.radius)
    q1 = q1 if q1 is not None else resolution.quadrature(S1, freq)
    q2 = q2 if q2 is not None else resolution.quadrature(S2, freq)
    return DiscreteOperator(_fourier_block(q2, q1, conv), q2, q1, conv, "P_S2 F P_S1")


def gram_via_kernel(S, q: Quadrature | None = None, conv=ANALYST,
                    product: str = "F*F") -> DiscreteOperator:
    """``F_E^* F_E`` (or ``F_E F_E^*``) assembled from the closed-form kernel.

    ``(F_E^* F_E x)(t) = ∫_E K(s - t) x(s) ds`` and
    ``(F_E F_E^* x)(t) = ∫_E K(t - s) x(s) ds`` with
    ``K(u) = c ∫_E e^{iξu} dξ``.  The two coincide when ``E`` is symmetric.
    """
    S = as_set(S)
    conv = Convention.coerce(conv)
    if q is None:
        q = DEFAULT_RESOLUTION.quadrature(S)
    _check_nodes_in(S, q)
    diff = q.nodes[:, None] - q.nodes[None, :]
    if product == "F*F":
        K = kernel_K(S, -diff, conv)
    elif product == "FF*":
        K = kernel_K(S, diff, conv)
    else:
        raise ValueError("product must be 'F*F' or 'FF*'")
    sw = q.sqrt_weights
    G = sw[:, None] * np.atleast_2d(K) * sw[None, :] if len(q) else np.zeros((0, 0), complex)
    G = 0.5 * (G + G.conj().T)
    return DiscreteOperator(G, q, q, conv, product)


def sinc_gram(l: float, q: Quadrature) -> np.ndarray:
    """Weighted matrix of ``(1/π) sin(l(t-τ))/(t-τ)`` on ``[-l, l]`` nodes."""
    d = q.nodes[:, None] - q.nodes[None, :]
    K = (l / np.pi) * np.sinc(l * d / np.pi)
    sw = q.sqrt_weights
    return sw[:, None] * K * sw[None, :]


def default_window(S, pad: float = 8.0) -> Interval:
    lo, hi = as_set(S).bounds
    return Interval(lo - pad, hi + pad)


def discretize_C(S, window: Interval | None = None, q: Quadrature | None = None,
                 resolution: Resolution = DEFAULT_RESOLUTION) -> DiscreteOperator:
    """Windowed ``C_E = F^{-1} P_E F P_E`` with kernel ``h_E(t-ξ) χ_E(ξ)``.

    The default quadrature is the union of a rule on ``E`` and a rule on
    ``window \\ E``, so ``χ_E`` is resolved exactly and the columns belonging
    to nodes outside ``E`` vanish.
    """
    S = as_set(S)
    if window is None:
        window = default_window(S)
    elif not isinstance(window, Interval):
        window = Interval(*window)
    if S:
        lo, hi = S.bounds
        if lo < window.lo or hi > window.hi:
            raise ValueError(f"window [{window.lo}, {window.hi}] does not contain the set's bounding box [{lo}, {hi}]")
    if q is None:
        freq = S.radius
        q = resolution.quadrature(S, freq).concat(
            resolution.quadrature(difference(IntervalSet([window]), S), freq))
    chi = S.indicator(q.nodes).astype(float)
    H = convolution_kernel_h(S, q.nodes[:, None] - q.nodes[None, :])
    sw = q.sqrt_weights
    C = sw[:, None] * np.atleast_2d(H) * (chi * sw)[None, :]
    return DiscreteOperator(C, q, q, ANALYST, "C_E", {"window": [window.lo, window.hi]})


__all__ = [
    "Convention", "ANALYST", "PAPER_RAW", "Quadrature", "Resolution", "DEFAULT_RESOLUTION",
    "build_quadrature", "gauss_legendre", "kernel_K", "convolution_kernel_h",
    "DiscreteOperator", "discretize_F", "discretize_F_adjoint", "discretize_block",
    "gram_via_kernel", "sinc_gram", "discretize_C", "default_window", "measure",
]
