"""Numerical checks of the summation identities and limit theorems.

Every check returns ``VerificationReport`` objects whose ``observed`` value
is compared to a fixed ``bound``. Suites are plain functions collected in
``SUITES`` and are what ``sigmasum verify`` runs.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .engine import (
    FunctionSpec,
    Sawtooth,
    SquareWave,
    convolve_with_kernel,
    series_tail_bound,
    summed_function,
)
from .factors import FactorFamily, Identity, SigmaRAlpha, factor_table
from .kernels import (
    DeKernel,
    KernelSpec,
    PoissonKernel,
    de_kernel_closed,
    de_kernel_spectral,
    de_tail_bound,
    kernel_eval,
    poisson_kernel,
    poisson_kernel_spectral,
    poisson_tail_bound,
)
from .quadrature import integrate_panels, panel_points
from .splines import TWO_PI, BSpline, box_convolution, bspline_eval, bspline_pieces, raise_order, reduce_angle


@dataclass
class VerificationReport:
    name: str
    parameters: dict
    observed: float
    bound: float
    runtime_ms: float = 0.0
    passed: bool = field(init=False)

    def __post_init__(self):
        self.observed = float(self.observed)
        self.bound = float(self.bound)
        self.passed = bool(self.observed <= self.bound)

    def to_dict(self, timings: bool = True) -> dict:
        d = {
            "name": self.name,
            "parameters": self.parameters,
            "observed": self.observed,
            "bound": self.bound,
            "passed": self.passed,
        }
        if timings:
            d["runtime_ms"] = self.runtime_ms
        return d

    def sort_key(self):
        return (self.name, json.dumps(self.parameters, sort_keys=True))


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = 1e3 * (time.perf_counter() - self.start)


def _fn_name(fn) -> str:
    return type(fn).__name__


# ---------------------------------------------------------------------------
# kernel mass


def _kernel_cuts(spec: KernelSpec, lo: float, hi: float) -> list[float]:
    if isinstance(spec, DeKernel):
        knots = spec.spline.knots()
        reach = int(math.ceil(spec.half_width / TWO_PI)) + 1
        return [k + TWO_PI * j for k in knots for j in range(-reach, reach + 1)]
    cuts = []
    x = 1.0 - spec.r
    while x < hi:
        cuts.extend([x, -x])
        x *= 2.0
    return cuts


def _kernel_integral(spec: KernelSpec, lo: float, hi: float, M_q: int) -> float:
    edges = panel_points(lo, hi, _kernel_cuts(spec, lo, hi) + [0.0])
    return integrate_panels(lambda u: kernel_eval(spec, u), edges, M_q)


def kernel_mass_outside(spec: KernelSpec, delta: float, M_q: int = 32) -> float:
    """Mass of the unit-mass kernel on ``delta < |t| <= pi``.

    Zero without quadrature when a De kernel's support sits inside
    ``|t| < delta``.
    """
    if not 0.0 < delta < math.pi:
        raise ValueError(f"delta must lie in (0, pi), got {delta!r}")
    if isinstance(spec, DeKernel) and spec.half_width < delta:
        return 0.0
    return 2.0 * _kernel_integral(spec, delta, math.pi, M_q)


def kernel_mass_inside(spec: KernelSpec, delta: float, M_q: int = 32) -> float:
    if not 0.0 < delta < math.pi:
        raise ValueError(f"delta must lie in (0, pi), got {delta!r}")
    return 2.0 * _kernel_integral(spec, 0.0, delta, M_q)


# ---------------------------------------------------------------------------
# jump midpoints


def jump_convergence_study(fn: FunctionSpec, r: int, alphas, t0: float, M_q: int = 16) -> list[VerificationReport]:
    """Distance of the De-summed value at a jump ``t0`` from the jump midpoint, per alpha."""
    alphas = [float(a) for a in alphas]
    if any(b >= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be strictly decreasing")
    t0r = float(reduce_angle(t0))
    match = [j for j in fn.jumps() if abs(float(reduce_angle(j.location - t0r))) < 1e-12]
    if not match:
        raise ValueError(f"t0={t0!r} is not a recorded jump of {_fn_name(fn)}")
    mid = match[0].midpoint
    reports = []
    for a in alphas:
        with _Timer() as tm:
            val = convolve_with_kernel(fn, DeKernel(r, a), t0, M_q)
        reports.append(
            VerificationReport(
                "jump_midpoint",
                {"fn": _fn_name(fn), "r": r, "alpha": a, "t0": float(t0)},
                abs(val - mid),
                1e-10,
                tm.ms,
            )
        )
    return reports


# errors below this are floating-point noise of O(1) function values
MIDPOINT_NOISE_FLOOR = 1e-13


def is_non_increasing(reports, floor: float = MIDPOINT_NOISE_FLOOR) -> bool:
    """Whether report errors never grow, treating anything under ``floor`` as zero."""
    errs = [max(rep.observed, floor) for rep in reports]
    return all(b <= a for a, b in zip(errs, errs[1:]))


# ---------------------------------------------------------------------------
# Fourier coefficients of the kernels


def _poly_cos_moment(coeffs: np.ndarray, w: float, k: int) -> complex:
    """``integral_{-w}^{w} p(s) exp(i k s) ds`` for ``p = sum coeffs[n] s^n``."""
    if k == 0:
        return complex(sum(c * (w ** (n + 1) - (-w) ** (n + 1)) / (n + 1) for n, c in enumerate(coeffs)))
    if k * w < 1.0:
        # power series of exp(iks); (kw)^j / j! < 1e-40 by j = 36
        total = 0j
        term_k = 1.0 + 0j
        for j in range(40):
            contrib = 0j
            for n, c in enumerate(coeffs):
                p = n + j
                if p % 2 == 0:
                    contrib += c * 2.0 * w ** (p + 1) / (p + 1)
            total += contrib * term_k
            term_k *= 1j * k / (j + 1)
        return total
    # repeated integration by parts
    deriv = np.polynomial.polynomial.Polynomial(coeffs)
    total_hi = 0j
    total_lo = 0j
    ik = 1j * k
    n = 0
    while deriv.degree() >= 0 and np.any(deriv.coef != 0):
        scale = (-1) ** n / ik ** (n + 1)
        total_hi += scale * deriv(w)
        total_lo += scale * deriv(-w)
        deriv = deriv.deriv()
        n += 1
        if len(deriv.coef) == 0:
            break
    return complex(np.exp(ik * w) * total_hi - np.exp(-ik * w) * total_lo)


def kernel_cosine_coefficients_exact(spec: DeKernel, K: int) -> np.ndarray:
    """``(1/pi) integral K(t) cos(kt) dt`` for ``k = 0..K`` by exact piecewise integration.

    The periodized kernel's period integral equals the line integral of
    ``(1/alpha) B_{r-1}``, which is a finite sum of polynomial pieces.
    """
    pieces = bspline_pieces(spec.spline)
    out = np.empty(K + 1)
    for k in range(K + 1):
        parts = []
        for p in pieces:
            w = 0.5 * (p.right - p.left)
            mom = _poly_cos_moment(p.coeffs, w, k)
            # cos(k(c + s)) = Re(exp(ikc) exp(iks))
            parts.append((np.exp(1j * k * p.center) * mom).real)
        out[k] = math.fsum(parts) / (spec.alpha * math.pi)
    return out


def kernel_cosine_coefficients_quadrature(spec: DeKernel, K: int, M_q: int = 24) -> np.ndarray:
    """Same coefficients by panel-split Gauss-Legendre on ``de_kernel_closed``."""
    cuts = _kernel_cuts(spec, -math.pi, math.pi)
    base = panel_points(-math.pi, math.pi, cuts)
    out = np.empty(K + 1)
    for k in range(K + 1):
        edges = [base[0]]
        for a, b in zip(base[:-1], base[1:]):
            pieces = max(1, math.ceil(k * (b - a) / 20.0))
            edges.extend(a + (b - a) * np.arange(1, pieces + 1) / pieces)
        edges[-1] = base[-1]
        out[k] = integrate_panels(lambda t: de_kernel_closed(spec, t) * np.cos(k * t), edges, M_q) / math.pi
    return out


def coefficient_roundtrip(r: int, alpha: float, K: int, method: str = "exact") -> VerificationReport:
    """Max over ``k <= K`` of ``|pi * a_k - sigma_k(r, alpha)|`` for the De kernel."""
    spec = DeKernel(r, alpha)
    with _Timer() as tm:
        if method == "exact":
            ak = kernel_cosine_coefficients_exact(spec, K)
        elif method == "quadrature":
            ak = kernel_cosine_coefficients_quadrature(spec, K)
        else:
            raise ValueError(f"unknown method {method!r}")
        sigma = factor_table(SigmaRAlpha(r, alpha), K)
        dev = float(np.max(np.abs(math.pi * ak - sigma)))
    return VerificationReport(
        "coefficient_roundtrip", {"r": r, "alpha": alpha, "K": K, "method": method}, dev, 1e-10, tm.ms
    )


# ---------------------------------------------------------------------------
# Gibbs


def gibbs_overshoot(fn: FunctionSpec, family: FactorFamily, N: int, M: int = 8192) -> float:
    """Grid maximum of the summed series minus the supremum of ``fn``."""
    if M < 4096:
        raise ValueError(f"M must be >= 4096 for overshoot measurement, got {M}")
    g = summed_function(fn, family, N, M)
    return float(np.max(g.samples) - fn.sup)


def wilbraham_gibbs_overshoot() -> float:
    """Limit overshoot ``2 Si(pi)/pi - 1`` of raw partial sums of the square wave."""
    from scipy.special import sici

    return 2.0 * sici(math.pi)[0] / math.pi - 1.0


# ---------------------------------------------------------------------------
# suites

PI = math.pi


def _ulps(x: np.ndarray, y: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    both_zero = (x == 0) & (y == 0)
    spacing = np.maximum(np.spacing(np.abs(x)), np.spacing(np.abs(y)))
    d = np.where(both_zero, 0.0, np.abs(x - y) / spacing)
    return float(np.max(d))


def suite_kernels() -> list[VerificationReport]:
    reports = []
    t = np.linspace(-PI, PI, 101)
    for r in (2, 3, 4, 5):
        for a in (PI / 8, PI / 4, PI / 2):
            spec = DeKernel(r, a)
            with _Timer() as tm:
                dev = np.max(np.abs(de_kernel_spectral(spec, t, 4096) - de_kernel_closed(spec, t)))
            reports.append(
                VerificationReport(
                    "de_spectral_vs_closed", {"r": r, "alpha": a, "N": 4096}, dev, de_tail_bound(spec, 4096) + 1e-10, tm.ms
                )
            )
    rng = np.random.default_rng(20240601)
    alpha = 0.5
    pts = rng.uniform(-PI, PI, 1000)
    pts[:200] = rng.uniform(-alpha, alpha, 200)
    with _Timer() as tm:
        got = de_kernel_closed(DeKernel(1, alpha), pts)
        want = np.where(np.abs(pts) < alpha / 2, 1 / alpha, 0.0)
        dev = _ulps(got, want)
    reports.append(VerificationReport("de1_closed_form_ulps", {"alpha": alpha, "points": 1000}, dev, 2.0, tm.ms))
    with _Timer() as tm:
        got = de_kernel_closed(DeKernel(2, alpha), pts)
        want = np.where(np.abs(pts) <= alpha, (alpha - np.abs(pts)) / alpha**2, 0.0)
        dev = _ulps(got, want)
    reports.append(VerificationReport("de2_closed_form_ulps", {"alpha": alpha, "points": 1000}, dev, 2.0, tm.ms))
    u = np.linspace(-PI, PI, 101)
    for r in (0.3, 0.5, 0.9):
        for N in (10, 50, 200):
            with _Timer() as tm:
                dev = np.max(np.abs(poisson_kernel_spectral(r, u, N) - poisson_kernel(r, u)))
            reports.append(
                VerificationReport(
                    "poisson_spectral_vs_closed", {"r": r, "N": N}, dev, poisson_tail_bound(r, N) + poisson_rounding(r), tm.ms
                )
            )
    return reports


def poisson_rounding(r: float) -> float:
    """Four ulps of the kernel's peak ``(1+r)/(2(1-r))``.

    The truncation bound is attained exactly at ``u = 0``, so comparing
    two rounded values against it needs this allowance.
    """
    return 4.0 * np.spacing(0.5 * (1.0 + r) / (1.0 - r))


def _alignment_mask(t: np.ndarray, fn, alpha: float, gap: float = 0.05) -> np.ndarray:
    keep = np.ones(t.shape, dtype=bool)
    for j in fn.jumps():
        for off in (0.0, alpha / 2, -alpha / 2):
            d = np.abs(np.asarray(reduce_angle(t + off - j.location)))
            keep &= d > gap
    return keep


def suite_convolution() -> list[VerificationReport]:
    reports = []
    alpha = PI / 8
    for fn in (SquareWave(), Sawtooth()):
        for r in (2, 3, 4):
            fam = SigmaRAlpha(r, alpha)
            with _Timer() as tm:
                g = summed_function(fn, fam, 4096, 101)
                conv = convolve_with_kernel(fn, DeKernel(r, alpha), g.t)
                dev = np.max(np.abs(g.samples - conv))
            reports.append(
                VerificationReport(
                    "spectral_vs_convolution",
                    {"fn": _fn_name(fn), "r": r, "alpha": alpha, "N": 4096},
                    dev,
                    series_tail_bound(fn, fam, 4096) + 1e-8,
                    tm.ms,
                )
            )
        with _Timer() as tm:
            g = summed_function(fn, SigmaRAlpha(1, alpha), 200_000, 101)
            conv = convolve_with_kernel(fn, DeKernel(1, alpha), g.t)
            keep = _alignment_mask(g.t, fn, alpha)
            dev = np.max(np.abs(g.samples - conv)[keep])
        reports.append(
            VerificationReport(
                "spectral_vs_convolution",
                {"fn": _fn_name(fn), "r": 1, "alpha": alpha, "N": 200_000},
                dev,
                1e-3,
                tm.ms,
            )
        )
    return reports


def suite_splines() -> list[VerificationReport]:
    reports = []
    alpha = PI / 4
    t = np.linspace(-3 * alpha, 3 * alpha, 1001)
    for m in (0, 1, 2, 3):
        s = BSpline(m, alpha)
        with _Timer() as tm:
            dev = np.max(np.abs(box_convolution(s, t) - bspline_eval(raise_order(s), t)))
        reports.append(VerificationReport("order_raising", {"m": m, "alpha": alpha, "points": 1001}, dev, 1e-8, tm.ms))
    for r in range(1, 6):
        for a in (PI / 8, PI / 4):
            reports.append(coefficient_roundtrip(r, a, 64))
    return reports


def suite_midpoint() -> list[VerificationReport]:
    reports = []
    alphas = [PI / 4, PI / 8, PI / 16]
    for fn in (SquareWave(), Sawtooth()):
        for jump in fn.jumps():
            for r in (1, 2, 3):
                rows = jump_convergence_study(fn, r, alphas, jump.location)
                reports.extend(rows)
                reports.append(
                    VerificationReport(
                        "jump_midpoint_monotone",
                        {"fn": _fn_name(fn), "r": r, "t0": jump.location},
                        0.0 if is_non_increasing(rows) else 1.0,
                        0.0,
                        sum(x.runtime_ms for x in rows),
                    )
                )
    return reports


def suite_delta() -> list[VerificationReport]:
    reports = []
    delta = 0.5
    for r in (1, 2, 3, 4, 5):
        # largest tested alpha just inside alpha < 2*delta/r
        for a in (0.999 * 2 * delta / r, PI / 16, PI / 32):
            if a >= 2 * delta / r:
                continue
            with _Timer() as tm:
                mass = kernel_mass_outside(DeKernel(r, a), delta)
            reports.append(
                VerificationReport("de_mass_outside_exact_zero", {"r": r, "alpha": a, "delta": delta}, abs(mass), 0.0, tm.ms)
            )
    masses = []
    for pr in (0.9, 0.99, 0.999):
        with _Timer() as tm:
            masses.append(kernel_mass_outside(PoissonKernel(pr), delta))
    reports.append(
        VerificationReport(
            "poisson_mass_outside_monotone",
            {"r": [0.9, 0.99, 0.999], "delta": delta},
            0.0 if masses[0] > masses[1] > masses[2] else 1.0,
            0.0,
        )
    )
    reports.append(VerificationReport("poisson_mass_outside", {"r": 0.999, "delta": delta}, masses[2], 0.01, tm.ms))
    return reports


def suite_gibbs() -> list[VerificationReport]:
    reports = []
    sq = SquareWave()
    with _Timer() as tm:
        raw = gibbs_overshoot(sq, Identity(), 511, 8192)
    reports.append(
        VerificationReport(
            "gibbs_raw_overshoot", {"N": 511, "M": 8192}, abs(raw - wilbraham_gibbs_overshoot()), 0.01, tm.ms
        )
    )
    for N in (127, 511):
        base = raw if N == 511 else gibbs_overshoot(sq, Identity(), N, 8192)
        for r in (2, 3):
            for a in (PI / 16, PI / 8):
                with _Timer() as tm:
                    ov = gibbs_overshoot(sq, SigmaRAlpha(r, a), N, 8192)
                # strictly smaller: observed must be negative
                reports.append(
                    VerificationReport(
                        "gibbs_smoothed_minus_raw",
                        {"N": N, "r": r, "alpha": a, "M": 8192},
                        ov - base,
                        -np.finfo(float).tiny,
                        tm.ms,
                    )
                )
    with _Timer() as tm:
        ov = gibbs_overshoot(sq, SigmaRAlpha(2, PI / 16), 511, 8192)
    reports.append(VerificationReport("gibbs_sigma2_overshoot", {"N": 511, "r": 2, "alpha": PI / 16}, ov, 0.01, tm.ms))
    return reports


SUITES = {
    "kernels": suite_kernels,
    "convolution": suite_convolution,
    "splines": suite_splines,
    "midpoint": suite_midpoint,
    "delta": suite_delta,
    "gibbs": suite_gibbs,
}


def run_suite(name: str = "all") -> list[VerificationReport]:
    """Run one named suite (or ``"all"``); reports come back sorted by name and parameters."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    reports = [rep for n in names for rep in SUITES[n]()]
    return sorted(reports, key=VerificationReport.sort_key)
