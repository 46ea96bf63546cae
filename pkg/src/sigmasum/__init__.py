"""Generalized summation of trigonometric series by convergence factors."""

from .factors import Identity, Lanczos, PoissonAbel, SigmaRAlpha, factor, factor_table, sinc
from .splines import BSpline, bspline_eval, bspline_eval_periodic, bspline_fourier_coefficient, raise_order
from .kernels import DeKernel, PoissonKernel, de_kernel_closed, de_kernel_spectral, poisson_kernel
from .engine import (
    GridFunction,
    Sawtooth,
    SeriesDefined,
    SquareWave,
    TrigSeries,
    apply_factors,
    convolve_with_kernel,
    fourier_coefficients,
    sum_series,
    summed_function,
)

__version__ = "0.1.0"
