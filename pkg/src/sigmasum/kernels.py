"""Summation kernels: Poisson and the B-spline ("De") kernels.

Both kernels are normalized to unit mass over a period, so the summed
function is ``integral f(t + u) K(u) du``:

    poisson:  K(u) = (1/pi) * P(r, u),  P(r, u) = 1/2 (1 - r^2) / (1 - 2 r cos u + r^2)
    De:       K(t) = (1/pi) (1/2 + sum_k sinc(k alpha/2)^r cos kt) = (1/alpha) B_{r-1}(alpha, t)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import zeta

from .factors import PoissonAbel, SigmaRAlpha, factor_table
from .splines import BSpline, bspline_eval_periodic


@dataclass(frozen=True)
class PoissonKernel:
    r: float

    def __post_init__(self):
        PoissonAbel(self.r)  # same range check

    @property
    def family(self) -> PoissonAbel:
        return PoissonAbel(self.r)


@dataclass(frozen=True)
class DeKernel:
    """Kernel of order ``r`` on step ``alpha``; support ``|t| <= r*alpha/2``."""

    r: int
    alpha: float

    def __post_init__(self):
        SigmaRAlpha(self.r, self.alpha)

    @property
    def family(self) -> SigmaRAlpha:
        return SigmaRAlpha(self.r, self.alpha)

    @property
    def spline(self) -> BSpline:
        return BSpline(self.r - 1, self.alpha)

    @property
    def half_width(self) -> float:
        return 0.5 * self.r * self.alpha


KernelSpec = Union[PoissonKernel, DeKernel]


def _out(arr, t):
    if np.ndim(t) == 0:
        return float(arr)
    return arr


def poisson_kernel(r: float, u):
    """Closed-form ``P(r, u)``; positive, even and ``2*pi``-periodic in ``u``."""
    PoissonAbel(r)
    uu = np.asarray(u, dtype=float)
    # 1 - 2r cos u + r^2 written as (1-r)^2 + 4r sin^2(u/2) to keep it accurate near u = 0
    s = np.sin(0.5 * uu)
    denom = (1.0 - r) ** 2 + 4.0 * r * s * s
    return _out(0.5 * (1.0 - r) * (1.0 + r) / denom, u)


def poisson_kernel_spectral(r: float, u, N: int):
    """Truncated series ``1/2 + sum_{k=1}^N r^k cos(k u)``."""
    PoissonAbel(r)
    return _cosine_series(factor_table(PoissonAbel(r), N), u)


def poisson_tail_bound(r: float, N: int) -> float:
    """Bound on ``|poisson_kernel_spectral(r, u, N) - poisson_kernel(r, u)|``."""
    return r ** (N + 1) / (1.0 - r)


def _cosine_series(mu: np.ndarray, t):
    """``1/2 + sum_{k>=1} mu_k cos(k t)`` at each point, compensated per point."""
    ks = np.arange(1, len(mu))
    w = mu[1:]
    tt = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(tt.shape)
    for i, tv in enumerate(tt.flat):
        out.flat[i] = math.fsum(np.concatenate(([0.5], w * np.cos(ks * tv))))
    return _out(out.reshape(tt.shape) if np.ndim(t) else out[0], t)


def de_kernel_spectral(spec: DeKernel, t, N: int):
    """``(1/pi) * (1/2 + sum_{k=1}^N sigma_k(r, alpha) cos(k t))``."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    val = _cosine_series(factor_table(spec.family, N), t)
    return val / math.pi


def de_tail_bound(spec: DeKernel, N: int) -> float:
    """``(1/pi) * sum_{k>N} (2/(k alpha))^r``; infinite for ``r = 1``."""
    if spec.r == 1:
        return math.inf
    return float((2.0 / spec.alpha) ** spec.r * zeta(spec.r, N + 1)) / math.pi


def de_kernel_closed(spec: DeKernel, t):
    """``(1/alpha) * B_{r-1}(alpha, t)``, periodized; the production path."""
    return bspline_eval_periodic(spec.spline, t) / spec.alpha


def kernel_eval(spec: KernelSpec, t):
    """Normalized kernel value: unit mass over ``[-pi, pi]``."""
    if isinstance(spec, PoissonKernel):
        return poisson_kernel(spec.r, t) / math.pi
    if isinstance(spec, DeKernel):
        return de_kernel_closed(spec, t)
    raise TypeError(f"unknown kernel {spec!r}")
