"""Trigonometric series, factor application and the two summation routes.

Route one is spectral: Fourier coefficients -> factors -> partial sum.
Route two is the convolution of ``f`` with the normalized kernel. For
square-integrable ``f`` both give the same function, which is what the
analysis module checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.special import zeta

from .factors import FactorFamily, Identity, Lanczos, PoissonAbel, SigmaRAlpha, factor_table
from .kernels import DeKernel, KernelSpec, PoissonKernel, poisson_kernel
from .quadrature import integrate_panels, panel_points
from .splines import TWO_PI, bspline_eval, reduce_angle


def _as_coeffs(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if not np.all(np.isfinite(arr)):
        raise ValueError("series coefficients must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class TrigSeries:
    """``a0/2 + sum_{k=1}^N (a_k cos kt + b_k sin kt)``.

    ``a`` and ``b`` hold harmonics 1..N; a shorter one is padded with zeros.
    """

    a0: float
    a: np.ndarray = field(default_factory=lambda: np.zeros(0))
    b: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        if not math.isfinite(self.a0):
            raise ValueError("a0 must be finite")
        a, b = _as_coeffs(self.a), _as_coeffs(self.b)
        n = max(len(a), len(b))
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "a", np.pad(a, (0, n - len(a))))
        object.__setattr__(self, "b", np.pad(b, (0, n - len(b))))

    @property
    def N(self) -> int:
        return len(self.a)

    @property
    def bound(self) -> float:
        """The constant ``C`` with ``|a_k|, |b_k| <= C``."""
        if self.N == 0:
            return 0.0
        return float(max(np.max(np.abs(self.a)), np.max(np.abs(self.b))))

    def truncate(self, N: int) -> "TrigSeries":
        return TrigSeries(self.a0, self.a[:N], self.b[:N])

    def __repr__(self) -> str:
        return f"TrigSeries(a0={self.a0!r}, N={self.N})"


@dataclass(frozen=True)
class Jump:
    location: float
    left: float
    right: float

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.left + self.right)


def grid_points(M: int) -> np.ndarray:
    """Left-closed uniform grid ``-pi + 2*pi*j/M``, ``j = 0..M-1``."""
    if M < 2:
        raise ValueError(f"grid size M must be >= 2, got {M}")
    return -math.pi + TWO_PI * np.arange(M) / M


@dataclass(frozen=True, eq=False)
class GridFunction:
    samples: np.ndarray
    jumps: tuple = ()

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float).ravel()
        if len(s) < 2:
            raise ValueError("GridFunction needs at least 2 samples")
        if not np.all(np.isfinite(s)):
            raise ValueError("GridFunction samples must be finite")
        for j in self.jumps:
            if not -math.pi <= j.location < math.pi:
                raise ValueError(f"jump location {j.location!r} outside [-pi, pi)")
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "jumps", tuple(self.jumps))

    @property
    def M(self) -> int:
        return len(self.samples)

    @property
    def t(self) -> np.ndarray:
        return grid_points(self.M)


# ---------------------------------------------------------------------------
# function specs


def _rotate(series: TrigSeries, shift: float) -> TrigSeries:
    """Coefficients of ``f(t - shift)`` from those of ``f``."""
    ks = np.arange(1, series.N + 1)
    c, s = np.cos(ks * shift), np.sin(ks * shift)
    return TrigSeries(series.a0, series.a * c - series.b * s, series.a * s + series.b * c)


@dataclass(frozen=True)
class SquareWave:
    """-1 on (-pi, 0), +1 on (0, pi), 0 at the jumps."""

    def value(self, t):
        return np.sign(reduce_angle(t)) * (np.asarray(reduce_angle(t)) != -math.pi)

    def jumps(self) -> tuple:
        return (Jump(-math.pi, 1.0, -1.0), Jump(0.0, -1.0, 1.0))

    def coefficients(self, N: int) -> TrigSeries:
        ks = np.arange(1, N + 1)
        b = np.where(ks % 2 == 1, 4.0 / (math.pi * ks), 0.0)
        return TrigSeries(0.0, np.zeros(N), b)

    decay = 4.0 / math.pi
    bandwidth = None
    sup = 1.0


@dataclass(frozen=True)
class Sawtooth:
    """``f(t) = t`` on (-pi, pi), 0 at the jump."""

    def value(self, t):
        r = np.asarray(reduce_angle(t), dtype=float)
        return np.where(r == -math.pi, 0.0, r) + 0.0

    def jumps(self) -> tuple:
        return (Jump(-math.pi, math.pi, -math.pi),)

    def coefficients(self, N: int) -> TrigSeries:
        ks = np.arange(1, N + 1)
        b = 2.0 * np.where(ks % 2 == 1, 1.0, -1.0) / ks
        return TrigSeries(0.0, np.zeros(N), b)

    decay = 2.0
    bandwidth = None
    sup = math.pi


@dataclass(frozen=True, eq=False)
class SeriesDefined:
    """A function given by its (finite) trigonometric series."""

    series: TrigSeries

    def value(self, t):
        return sum_series(self.series, t)

    def jumps(self) -> tuple:
        return ()

    def coefficients(self, N: int) -> TrigSeries:
        s = self.series
        if N <= s.N:
            return s.truncate(N)
        return TrigSeries(s.a0, np.pad(s.a, (0, N - s.N)), np.pad(s.b, (0, N - s.N)))

    decay = None

    @property
    def bandwidth(self) -> int:
        return self.series.N

    @property
    def sup(self) -> float:
        return float(np.max(sum_series(self.series, grid_points(max(64, 8 * self.series.N)))))


@dataclass(frozen=True, eq=False)
class Samples:
    """Uniform samples; evaluated between grid points by trigonometric interpolation."""

    grid: GridFunction

    @property
    def max_harmonic(self) -> int:
        return (self.grid.M - 1) // 2

    def coefficients(self, N: int) -> TrigSeries:
        M = self.grid.M
        if N >= M / 2:
            raise ValueError(f"N={N} aliases on a grid of M={M} samples (need N < M/2)")
        t = self.grid.t
        f = self.grid.samples
        a = np.empty(N)
        b = np.empty(N)
        for k in range(1, N + 1):
            a[k - 1] = 2.0 / M * math.fsum(f * np.cos(k * t))
            b[k - 1] = 2.0 / M * math.fsum(f * np.sin(k * t))
        return TrigSeries(2.0 / M * math.fsum(f), a, b)

    @cached_property
    def interpolant(self) -> TrigSeries:
        return self.coefficients(self.max_harmonic)

    def value(self, t):
        return sum_series(self.interpolant, t)

    def jumps(self) -> tuple:
        return self.grid.jumps

    decay = None

    @property
    def bandwidth(self) -> int:
        return self.max_harmonic

    @property
    def sup(self) -> float:
        return float(np.max(self.grid.samples))


@dataclass(frozen=True)
class Shifted:
    """``base(t - shift)``."""

    base: "FunctionSpec"
    shift: float

    def value(self, t):
        return self.base.value(np.asarray(t, dtype=float) - self.shift)

    def jumps(self) -> tuple:
        return tuple(
            Jump(float(reduce_angle(j.location + self.shift)), j.left, j.right)
            for j in self.base.jumps()
        )

    def coefficients(self, N: int) -> TrigSeries:
        return _rotate(self.base.coefficients(N), self.shift)

    @property
    def decay(self):
        # rotation preserves a_k^2 + b_k^2, so |a'|+|b'| <= sqrt(2) (|a|+|b|)
        return None if self.base.decay is None else math.sqrt(2.0) * self.base.decay

    @property
    def bandwidth(self):
        return self.base.bandwidth

    @property
    def sup(self) -> float:
        return self.base.sup


@dataclass(frozen=True)
class Combination:
    """Linear combination ``sum_i w_i f_i``."""

    terms: tuple  # of (weight, FunctionSpec)

    def value(self, t):
        return sum(w * np.asarray(f.value(t), dtype=float) for w, f in self.terms)

    def jumps(self) -> tuple:
        locs = sorted({j.location for _, f in self.terms for j in f.jumps()})
        out = []
        for x in locs:
            left = right = 0.0
            for w, f in self.terms:
                hit = [j for j in f.jumps() if j.location == x]
                if hit:
                    left += w * hit[0].left
                    right += w * hit[0].right
                else:
                    v = float(f.value(x))
                    left += w * v
                    right += w * v
            out.append(Jump(x, left, right))
        return tuple(out)

    def coefficients(self, N: int) -> TrigSeries:
        a0 = 0.0
        a = np.zeros(N)
        b = np.zeros(N)
        for w, f in self.terms:
            s = f.coefficients(N)
            a0 += w * s.a0
            a = a + w * s.a
            b = b + w * s.b
        return TrigSeries(a0, a, b)

    @property
    def decay(self):
        ds = [f.decay for _, f in self.terms]
        if any(d is None for d in ds):
            return None
        return sum(abs(w) * d for (w, _), d in zip(self.terms, ds))

    @property
    def bandwidth(self):
        bws = [f.bandwidth for _, f in self.terms if f.bandwidth is not None]
        return max(bws) if bws else None

    @property
    def sup(self) -> float:
        return float(np.max(self.value(grid_points(8192))))


FunctionSpec = Union[SquareWave, Sawtooth, SeriesDefined, Samples, Shifted, Combination]


def evaluate(fn: FunctionSpec, t):
    """Pointwise value of ``fn``; jump points take the midpoint value."""
    out = np.asarray(fn.value(t), dtype=float)
    if np.ndim(t) == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# spectral route


def apply_factors(series: TrigSeries, family: FactorFamily) -> TrigSeries:
    mu = factor_table(family, series.N)[1:]
    return TrigSeries(series.a0, series.a * mu, series.b * mu)


def _sum_at(series: TrigSeries, tv: float, ks: np.ndarray) -> float:
    kt = ks * tv
    return math.fsum(np.concatenate(([0.5 * series.a0], series.a * np.cos(kt), series.b * np.sin(kt))))


def sum_series(series: TrigSeries, t):
    """Partial sum at ``t`` (float or array), each point summed with ``math.fsum``."""
    ks = np.arange(1, series.N + 1, dtype=float)
    tt = np.asarray(t, dtype=float)
    if tt.ndim == 0:
        return _sum_at(series, float(tt), ks)
    out = np.array([_sum_at(series, float(tv), ks) for tv in tt.ravel()])
    return out.reshape(tt.shape)


def fourier_coefficients(fn: FunctionSpec, N: int) -> TrigSeries:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return fn.coefficients(N)


def summed_function(fn: FunctionSpec, family: FactorFamily, N: int, M: int) -> GridFunction:
    """Factor-summed Fourier series of ``fn`` sampled on the ``M``-point grid."""
    series = apply_factors(fourier_coefficients(fn, N), family)
    return GridFunction(sum_series(series, grid_points(M)))


def series_tail_bound(fn: FunctionSpec, family: FactorFamily, N: int) -> float:
    """Bound on the harmonics ``k > N`` dropped from the factored series of ``fn``.

    Uses ``|a_k| + |b_k| <= decay/k``. Band-limited specs drop nothing once
    ``N`` reaches their bandwidth.
    """
    if fn.decay is None:
        bw = fn.bandwidth
        return 0.0 if bw is not None and N >= bw else math.inf
    c = fn.decay
    if isinstance(family, Identity):
        return math.inf
    if isinstance(family, SigmaRAlpha):
        return float(c * (2.0 / family.alpha) ** family.r * zeta(family.r + 1, N + 1))
    if isinstance(family, PoissonAbel):
        return c * family.r ** (N + 1) / ((N + 1) * (1.0 - family.r))
    if isinstance(family, Lanczos):
        if N >= family.n:
            return 0.0
        mu = factor_table(family, family.n)
        ks = np.arange(N + 1, family.n + 1)
        return math.fsum(c * np.abs(mu[ks]) / ks)
    raise TypeError(f"unknown factor family {family!r}")


# ---------------------------------------------------------------------------
# convolution route

# one Gauss-Legendre panel resolves about this many radians of oscillation
_RADIANS_PER_PANEL = 40.0


def _jump_offsets(fn: FunctionSpec, t: float, h: float) -> list[float]:
    """``u`` in (0, h) where ``t + u`` or ``t - u`` sits on a jump of ``fn``."""
    out = []
    for j in fn.jumps():
        for base in (j.location - t, t - j.location):
            lo = math.ceil((0.0 - base) / TWO_PI)
            hi = math.floor((h - base) / TWO_PI)
            for n in range(lo, hi + 1):
                u = base + n * TWO_PI
                if 0.0 < u < h:
                    out.append(u)
    return out


def _refine(edges: np.ndarray, bandwidth) -> np.ndarray:
    if not bandwidth:
        return edges
    out = [edges[0]]
    for a, b in zip(edges[:-1], edges[1:]):
        pieces = max(1, math.ceil(bandwidth * (b - a) / _RADIANS_PER_PANEL))
        out.extend(a + (b - a) * np.arange(1, pieces + 1) / pieces)
    out[-1] = edges[-1]
    return np.array(out)


def convolve_with_kernel(fn: FunctionSpec, spec: KernelSpec, t, M_q: int = 16):
    """``integral f(t + u) K(u) du`` with the unit-mass kernel ``K``.

    The even kernel lets the integral fold onto ``u >= 0`` as
    ``(f(t+u) + f(t-u)) K(u)``; panels break at spline knots and at every
    jump of ``f(t +- u)`` so each panel integrand is smooth. Poisson panels
    are also graded geometrically toward the kernel peak.
    """
    if M_q < 16:
        raise ValueError(f"M_q must be >= 16, got {M_q}")
    tt = np.asarray(t, dtype=float)
    if tt.ndim:
        return np.array([convolve_with_kernel(fn, spec, float(tv), M_q) for tv in tt.ravel()]).reshape(tt.shape)
    tv = float(tt)

    if isinstance(spec, DeKernel):
        spline = spec.spline
        h = spline.half_width
        kernel_cuts = [k for k in spline.knots() if k > 0.0]

        def K(u):
            return bspline_eval(spline, u) / spec.alpha

        n_nodes = max(M_q, spec.r // 2 + 2)
    elif isinstance(spec, PoissonKernel):
        h = math.pi
        kernel_cuts = []
        x = 1.0 - spec.r
        while x < h:
            kernel_cuts.append(x)
            x *= 2.0

        def K(u):
            return poisson_kernel(spec.r, u) / math.pi

        n_nodes = M_q
    else:
        raise TypeError(f"unknown kernel {spec!r}")

    edges = panel_points(0.0, h, kernel_cuts + _jump_offsets(fn, tv, h))
    edges = _refine(edges, fn.bandwidth)

    def integrand(u):
        return (fn.value(tv + u) + fn.value(tv - u)) * K(u)

    return integrate_panels(integrand, edges, n_nodes)
