"""Numerical laboratory for the truncated Fourier operator ``F_E = P_E F P_E``
on finite unions of intervals."""
from .interval_sets import (
    Interval,
    IntervalSet,
    format_set,
    is_symmetric,
    measure,
    negate,
    parse_set,
    periodic_set,
    sparse_spikes,
    unit_cells,
)
from .discretize import (
    ANALYST,
    PAPER_RAW,
    Convention,
    DiscreteOperator,
    Quadrature,
    Resolution,
    build_quadrature,
    discretize_C,
    discretize_F,
    discretize_F_adjoint,
    gram_via_kernel,
    kernel_K,
)
from .spectral import (
    ConvergenceError,
    SpectralReport,
    analyze,
    commutator_defect,
    fuchs_prediction,
    sinc_lambda0,
)
from .bounds import criterion_sum, nazarov_contraction_bound, nazarov_empirical, trace_norm_bounds
from .constructions import BumpSpec, build_isometric_vector, build_null_vector

__version__ = "0.1.0"
