"""Centered, normalized uniform B-splines ``B_m(alpha, t)``.

``B_m`` has degree ``m``, knot spacing ``alpha``, support
``[-(m+1)*alpha/2, (m+1)*alpha/2]`` and is symmetric about 0. The integer
shifts ``B_m(alpha, t - j*alpha)`` sum to one.

Values come from the truncated-power form

    B_m(alpha, t) = 1/(m! alpha^m) * sum_j (-1)^j C(m+1, j) (t + (m+1)alpha/2 - j alpha)_+^m

which equals the Cox-de Boor recursion on a uniform knot vector. It is
evaluated on the left half of the support (``t -> -|t|``) so only the
terms that switch on early contribute and cancellation stays small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .factors import SigmaRAlpha, factor
from .quadrature import integrate_panels, panel_points

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BSpline:
    """Degree ``m`` (``order_index``) spline on step ``alpha``, centered at 0."""

    order_index: int
    alpha: float

    def __post_init__(self):
        m = self.order_index
        if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 0:
            raise ValueError(f"order_index must be a non-negative integer, got {m!r}")
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= math.pi):
            raise ValueError(f"alpha must lie in (0, pi], got {self.alpha!r}")

    @property
    def half_width(self) -> float:
        return 0.5 * (self.order_index + 1) * self.alpha

    @property
    def fits_period(self) -> bool:
        return (self.order_index + 1) * self.alpha < TWO_PI

    def knots(self) -> np.ndarray:
        """The ``m + 2`` knots ``-h, -h + alpha, ..., h``."""
        m = self.order_index
        return np.array([(j - 0.5 * (m + 1)) * self.alpha for j in range(m + 2)])


def _require_period(spline: BSpline, what: str = "spline"):
    if not spline.fits_period:
        raise ValueError(
            f"{what} support (m+1)*alpha = {(spline.order_index + 1) * spline.alpha!r} "
            "must be < 2*pi"
        )


def _scalar_or_array(out: np.ndarray, t):
    if np.ndim(t) == 0:
        return float(out)
    return out


def bspline_eval(spline: BSpline, t):
    """Non-periodic value of ``B_m(alpha, t)``; float or array in [0, 1].

    For ``m = 0`` the box takes the value 1/2 on its two edges.
    """
    tt = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(tt)):
        raise ValueError("bspline_eval: t must be finite")
    m = spline.order_index
    a = np.abs(tt)
    if m == 0:
        edge = 0.5 * spline.alpha
        out = np.where(a < edge, 1.0, np.where(a == edge, 0.5, 0.0))
        return _scalar_or_array(out, t)
    # distance from the left end of the support, in units of alpha
    y = (spline.half_width - a) / spline.alpha
    out = np.zeros_like(y)
    for j in range(m + 1):
        d = y - j
        coef = (-1) ** j * math.comb(m + 1, j)
        out = out + np.where(d > 0.0, coef * np.where(d > 0.0, d, 0.0) ** m, 0.0)
    out = np.clip(out / math.factorial(m), 0.0, 1.0)
    return _scalar_or_array(out, t)


def reduce_angle(t):
    """Map ``t`` into ``[-pi, pi)``."""
    tt = np.asarray(t, dtype=float)
    r = np.mod(tt + math.pi, TWO_PI) - math.pi
    # np.mod may round up to exactly 2*pi
    r = np.where(r >= math.pi, r - TWO_PI, r)
    # leave in-range arguments untouched rather than re-rounding them
    r = np.where((tt >= -math.pi) & (tt < math.pi), tt, r)
    return _scalar_or_array(r, t)


def bspline_eval_periodic(spline: BSpline, t):
    """``sum_j B_m(alpha, t - 2*pi*j)``.

    When the support is shorter than a period this is ``bspline_eval`` at the
    reduced angle; otherwise the overlapping copies are added, which keeps
    the Fourier coefficients equal to ``sinc(k*alpha/2)**(m+1)`` scaled.
    """
    tr = np.asarray(reduce_angle(t), dtype=float)
    out = bspline_eval(spline, tr)
    if not spline.fits_period:
        out = np.asarray(out, dtype=float)
        reach = int(math.ceil((spline.half_width + math.pi) / TWO_PI))
        for j in range(1, reach + 1):
            out = out + bspline_eval(spline, tr - TWO_PI * j) + bspline_eval(spline, tr + TWO_PI * j)
    return _scalar_or_array(out, t)


def raise_order(spline: BSpline) -> BSpline:
    """The next-degree spline, i.e. ``(1/alpha) * (B_m * B_0)``."""
    nxt = BSpline(spline.order_index + 1, spline.alpha)
    _require_period(nxt, "raised spline")
    return nxt


def box_convolution(spline: BSpline, t, n_nodes: int = 16):
    """Numerically evaluate ``(1/alpha) * integral B_m(alpha, t - u) B_0(alpha, u) du``.

    Gauss-Legendre on panels split at every knot of the shifted spline, so
    each panel integrates a polynomial of degree ``m`` exactly.
    """
    half = 0.5 * spline.alpha
    knots = spline.knots()

    def one(tv: float) -> float:
        cuts = tv - knots
        edges = panel_points(-half, half, cuts)
        return integrate_panels(lambda u: bspline_eval(spline, tv - u), edges, n_nodes) / spline.alpha

    out = np.array([one(float(tv)) for tv in np.atleast_1d(np.asarray(t, dtype=float))])
    if np.ndim(t) == 0:
        return float(out[0])
    return out


def bspline_fourier_coefficient(spline: BSpline, k: int) -> float:
    """Cosine coefficient of ``(1/alpha) B_m`` over one period.

    ``1/pi`` at ``k = 0`` and ``sinc(k*alpha/2)**(m+1) / pi`` otherwise.
    """
    return factor(SigmaRAlpha(spline.order_index + 1, spline.alpha), k) / math.pi


@dataclass(frozen=True)
class Piece:
    """One polynomial piece of a spline, in powers of ``t - center``."""

    left: float
    right: float
    center: float
    coeffs: np.ndarray  # ascending powers

    def __call__(self, t):
        return np.polynomial.polynomial.polyval(np.asarray(t) - self.center, self.coeffs)


def bspline_pieces(spline: BSpline) -> list[Piece]:
    """Polynomial pieces of ``B_m`` between consecutive knots."""
    m = spline.order_index
    alpha = spline.alpha
    knots = spline.knots()
    pieces = []
    norm = 1.0 / (math.factorial(m) * alpha**m)
    for i in range(m + 1):
        left, right = knots[i], knots[i + 1]
        center = 0.5 * (left + right)
        coeffs = np.zeros(m + 1)
        for j in range(i + 1):
            shift = center - knots[j]
            sign = (-1) ** j * math.comb(m + 1, j)
            # (s + shift)^m expanded in s
            for p in range(m + 1):
                coeffs[p] += sign * math.comb(m, p) * shift ** (m - p)
        pieces.append(Piece(float(left), float(right), float(center), coeffs * norm))
    return pieces
