import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from truncfourier.discretize import (
    ANALYST,
    PAPER_RAW,
    Convention,
    DiscreteOperator,
    Quadrature,
    Resolution,
    build_quadrature,
    convolution_kernel_h,
    default_window,
    discretize_C,
    discretize_F,
    discretize_F_adjoint,
    gram_via_kernel,
    kernel_K,
    sinc_gram,
)
from truncfourier.interval_sets import EMPTY, Interval, IntervalSet, measure
from truncfourier.spectral import sinc_quadrature

TWO_PI = 2 * math.pi


def S(*pairs):
    return IntervalSet(pairs)


# -- quadrature -------------------------------------------------------------------

def test_quadrature_basic():
    q = build_quadrature(S((0, 1)), 4, 1)
    assert len(q) == 4
    assert q.weights.sum() == pytest.approx(1.0, abs=1e-15)
    assert abs(build_quadrature(S((-1, 1))).integrate(lambda t: t)) < 1e-15
    assert abs(build_quadrature(S((0, TWO_PI))).integrate(lambda t: np.exp(1j * t))) < 1e-10


def test_quadrature_empty_and_errors():
    assert len(build_quadrature(EMPTY)) == 0
    with pytest.raises(ValueError):
        build_quadrature(S((0, 1)), order=1)
    with pytest.raises(ValueError):
        build_quadrature(S((0, 1)), panels_per_unit=0)
    with pytest.raises(ValueError):
        Quadrature(np.array([0.0]), np.array([-1.0]))


def test_panel_count():
    q = build_quadrature(S((0, 1.3), (2, 2.5)), 8, 4.0)
    # ceil(5.2) + ceil(2) panels
    assert len(q) == 8 * (6 + 2)


@pytest.mark.parametrize("order", [2, 5, 8, 12])
def test_monomials_exact(order):
    s = S((-0.7, 0.2), (1.1, 2.9))
    q = build_quadrature(s, order, 1.0)
    for k in range(2 * order):
        exact = sum((iv.hi ** (k + 1) - iv.lo ** (k + 1)) / (k + 1) for iv in s)
        assert q.integrate(lambda t: t**k) == pytest.approx(exact, rel=1e-12, abs=1e-12)


def test_resolution_adaptive():
    r = Resolution(8, 4.0)
    assert r.effective_ppu(4.0) == 4.0
    assert r.effective_ppu(40.0) == 10.0
    assert Resolution(8, 4.0, adaptive=False).effective_ppu(40.0) == 4.0
    assert r.refined(2).panels_per_unit == 8.0


sets_strategy = st.lists(
    st.tuples(st.floats(-4, 4), st.floats(0.01, 2.0)), min_size=1, max_size=4
).map(lambda pairs: IntervalSet((lo, lo + L) for lo, L in pairs))


@settings(max_examples=40, deadline=None)
@given(sets_strategy, st.sampled_from([8, 10, 12]), st.sampled_from([2.0, 4.0, 6.0]))
def test_quadrature_contract(s, order, ppu):
    """Σw = mes; e^{iωt} integrates to the closed form inside the resolved band."""
    q = build_quadrature(s, order, ppu)
    assert q.weights.sum() == pytest.approx(measure(s), rel=1e-12)
    assert np.all(s.indicator(q.nodes))
    for omega in np.linspace(-order * ppu / 2, order * ppu / 2, 7):
        got = q.integrate(lambda t: np.exp(1j * omega * t))
        assert abs(got - kernel_K(s, omega, PAPER_RAW)) <= 1e-10 * max(1.0, measure(s))


# -- kernels ------------------------------------------------------------------------

def test_kernel_examples():
    l = 1.7
    u = np.linspace(-5, 5, 41)
    u = u[u != 0]
    assert np.allclose(kernel_K(S((-l, l)), u, ANALYST), np.sin(l * u) / (math.pi * u), atol=1e-15)
    assert kernel_K(S((0, 1), (2, 4)), 0.0, PAPER_RAW) == pytest.approx(3.0)
    assert abs(kernel_K(S((-1, 1)), math.pi, PAPER_RAW)) < 1e-15


@settings(max_examples=30)
@given(sets_strategy, st.floats(-30, 30))
def test_kernel_hermitian_and_bridge(s, u):
    k = kernel_K(s, u, ANALYST)
    assert kernel_K(s, -u, ANALYST) == pytest.approx(np.conj(k), abs=1e-14)
    assert kernel_K(s, u, PAPER_RAW) == pytest.approx(TWO_PI * k, rel=1e-14, abs=1e-14)


@pytest.mark.parametrize("u", [0.0, 1e-12, 1e-7, 1e-3, 0.5, 7.0])
def test_kernel_against_adaptive_quadrature(u):
    s = S((-0.3, 1.1), (2.0, 2.5))
    re = sum(integrate.quad(lambda x: math.cos(x * u), iv.lo, iv.hi, epsabs=1e-14)[0] for iv in s)
    im = sum(integrate.quad(lambda x: math.sin(x * u), iv.lo, iv.hi, epsabs=1e-14)[0] for iv in s)
    assert kernel_K(s, u, PAPER_RAW) == pytest.approx(re + 1j * im, abs=1e-12)


def test_small_u_no_cancellation():
    s = S((1e3, 1e3 + 1))
    # naive (e^{ibu}-e^{iau})/(iu) loses ~all digits here
    u = 1e-9
    exact = np.exp(1j * (1e3 + 0.5) * u) * 1.0 * (1 - (u**2) / 24)
    assert kernel_K(s, u, PAPER_RAW) == pytest.approx(exact, abs=1e-14)


def test_convolution_kernel_h():
    assert convolution_kernel_h(S((0, 1)), 0.0) == pytest.approx(1 / TWO_PI)
    t = np.array([0.3, 1.0, 4.0])
    l = 2.0
    assert np.allclose(convolution_kernel_h(S((-l, l)), t), np.sin(l * t) / (math.pi * t))
    h = convolution_kernel_h(S((0.2, 1.3)), t)
    assert np.allclose(convolution_kernel_h(S((0.2, 1.3)), -t), np.conj(h))
    big = np.abs(convolution_kernel_h(S((0, 1)), np.array([1e3, 1e4])))
    assert np.all(big * np.array([1e3, 1e4]) <= 2 / TWO_PI + 1e-12)


# -- operators ---------------------------------------------------------------------

def test_empty_operator():
    op = discretize_F(EMPTY, build_quadrature(EMPTY))
    assert op.shape == (0, 0)
    assert discretize_F_adjoint(EMPTY, build_quadrature(EMPTY)).shape == (0, 0)


def test_F_complex_symmetric_and_adjoint():
    s = S((-1, 1))
    op = discretize_F(s)
    assert np.array_equal(op.matrix, op.matrix.T)
    adj = discretize_F_adjoint(s, op.quad_col)
    assert np.abs(adj.matrix - op.matrix.conj().T).max() == 0.0
    x = np.cos(op.quad_col.nodes)  # real and even
    assert np.allclose(op.apply(x), adj.apply(x), atol=1e-14)


@settings(max_examples=20, deadline=None)
@given(sets_strategy)
def test_adjoint_identity(s):
    q = build_quadrature(s, 8, 4.0)
    op = discretize_F(s, q, PAPER_RAW)
    assert np.abs(discretize_F_adjoint(s, q, PAPER_RAW).matrix - op.matrix.conj().T).max() == 0.0


@pytest.mark.parametrize("pairs", [[(0, 1)], [(-1, 1)], [(-2, -1.5), (0.2, 1.9)], [(0, 3.5)]])
def test_frobenius_oracle(pairs):
    s = IntervalSet(pairs)
    m = measure(s)
    fro = np.linalg.norm(discretize_F(s).matrix)
    assert fro == pytest.approx(m / math.sqrt(TWO_PI), rel=1e-12)
    fro_raw = np.linalg.norm(discretize_F(s, conv=PAPER_RAW).matrix)
    assert fro_raw == pytest.approx(m, rel=1e-12)


def test_gram_path_equivalence_example():
    s = S((0, 1))
    q = build_quadrature(s, 8, 4)
    M = discretize_F(s, q).matrix
    G = gram_via_kernel(s, q).matrix
    assert np.abs(G - M.conj().T @ M).max() <= 1e-8
    assert np.trace(G).real == pytest.approx(1 / TWO_PI, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(sets_strategy, st.sampled_from(list(Convention)))
def test_gram_paths_agree(s, conv):
    q = Resolution().quadrature(s)
    M = discretize_F(s, q, conv).matrix
    G = gram_via_kernel(s, q, conv).matrix
    assert np.array_equal(G, G.conj().T)
    assert np.abs(G - M.conj().T @ M).max() <= 1e-8 * conv.kernel_scale * TWO_PI
    GG = gram_via_kernel(s, q, conv, product="FF*").matrix
    assert np.abs(GG - M @ M.conj().T).max() <= 1e-8 * conv.kernel_scale * TWO_PI
    assert np.linalg.eigvalsh(G).min() >= -1e-10


def test_gram_matches_sinc_kernel():
    l = 2.5
    q = sinc_quadrature(l, 80)
    G = gram_via_kernel(S((-l, l)), q).matrix
    assert np.abs(G - sinc_gram(l, q)).max() < 1e-14
    with pytest.raises(ValueError):
        gram_via_kernel(S((-l, l)), q, product="F F")


# -- C_E ---------------------------------------------------------------------------

def test_C_structure():
    s = S((-1, 1))
    C = discretize_C(s, Interval(-1, 1))
    M = C.matrix / (C.quad_row.sqrt_weights[:, None] * C.quad_col.sqrt_weights[None, :])
    assert np.allclose(M, np.sinc((C.quad_row.nodes[:, None] - C.quad_col.nodes[None, :]) / math.pi) / math.pi)
    C2 = discretize_C(S((0, 1)), Interval(-2, 3))
    outside = ~S((0, 1)).indicator(C2.quad_col.nodes)
    assert outside.any()
    assert np.all(C2.matrix[:, outside] == 0)
    assert default_window(S((0, 1))) == Interval(-8, 9)


def test_C_window_rejected():
    with pytest.raises(ValueError):
        discretize_C(S((0, 2)), Interval(0.5, 3))


def _nuclear(M):
    return np.linalg.svd(M, compute_uv=False).sum()


def test_C_nuclear_matches_F_with_window():
    s = S((-1, 1))
    nF = _nuclear(discretize_F(s).matrix)
    nC = _nuclear(discretize_C(s, default_window(s, 16)).matrix)
    assert nC == pytest.approx(nF, rel=0.02)


@pytest.mark.parametrize("pairs", [[(0, 1)], [(0, 0.5), (1.2, 1.9)]])
def test_C_window_tail_is_one_over_pad(pairs):
    """The windowed nuclear norm falls short by O(1/pad); doubling pad halves the gap."""
    s = IntervalSet(pairs)
    nF = _nuclear(discretize_F(s).matrix)
    n8 = _nuclear(discretize_C(s, default_window(s, 8)).matrix)
    n16 = _nuclear(discretize_C(s, default_window(s, 16)).matrix)
    assert n8 < n16 < nF
    assert (nF - n8) / (nF - n16) == pytest.approx(2.0, rel=0.25)
    assert 2 * n16 - n8 == pytest.approx(nF, rel=0.02)


# -- serialization -----------------------------------------------------------------

def test_bytes_and_json_round_trip():
    s = S((-0.4, 0.9), (1.5, 2.0))
    op = discretize_F(s, build_quadrature(s, 4, 2))
    buf = op.to_bytes()
    assert len(buf) == op.matrix.size * 16
    assert np.array_equal(DiscreteOperator.matrix_from_bytes(buf, op.shape), op.matrix)
    interleaved = np.frombuffer(buf, dtype="<f8")
    assert interleaved[0] == op.matrix[0, 0].real and interleaved[1] == op.matrix[0, 0].imag
    assert interleaved[2] == op.matrix[0, 1].real
    back = DiscreteOperator.from_json(op.to_json())
    assert np.array_equal(back.matrix, op.matrix)
    assert np.array_equal(back.quad_row.nodes, op.quad_row.nodes)
    assert back.convention is op.convention


def test_operator_validation():
    q = build_quadrature(S((0, 1)), 2, 1)
    with pytest.raises(ValueError):
        DiscreteOperator(np.zeros((3, 2)), q, q)
    with pytest.raises(ValueError):
        DiscreteOperator(np.full((2, 2), np.nan), q, q)
    with pytest.raises(ValueError):
        discretize_F(S((0, 1)), build_quadrature(S((0, 2)), 2, 1))
