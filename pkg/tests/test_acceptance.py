"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Every test records a one-line verdict that conftest prints in the terminal
summary, so the outcome of each criterion is visible even under ``-q``.
"""

import math
import subprocess
import sys
import time

import mpmath
import numpy as np
import pytest

from sigmasum.analysis import (
    coefficient_roundtrip,
    gibbs_overshoot,
    jump_convergence_study,
    kernel_mass_outside,
    _alignment_mask,
)
from sigmasum.engine import Sawtooth, SquareWave, convolve_with_kernel, series_tail_bound, summed_function
from sigmasum.factors import Identity, SigmaRAlpha
from sigmasum.kernels import (
    DeKernel,
    PoissonKernel,
    de_kernel_closed,
    de_kernel_spectral,
    poisson_kernel,
    poisson_kernel_spectral,
)
from sigmasum.splines import BSpline, box_convolution, bspline_eval, raise_order

PI = math.pi
VERDICTS = []


LABELS = {
    1: "De kernel series vs closed form",
    2: "De(1), De(2) closed forms",
    3: "Poisson truncation bound",
    4: "series sum vs kernel convolution",
    5: "B-spline order raising",
    6: "factors as B-spline cosine coefficients",
    7: "midpoint value at jumps",
    8: "kernel mass concentration",
    9: "Gibbs overshoot",
    10: "byte-identical verify output",
}


def verdict(number, ok, detail):
    VERDICTS.append(f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {LABELS[number]}: {detail}")
    assert ok, detail


def ulps(x, y):
    spacing = np.maximum(np.spacing(np.abs(x)), np.spacing(np.abs(y)))
    return np.where((x == 0) & (y == 0), 0.0, np.abs(x - y) / spacing)


def test_criterion_01_closed_form_kernel():
    t = np.linspace(-PI, PI, 101)
    worst, ok = 0.0, True
    start = time.perf_counter()
    for r in (2, 3, 4, 5):
        for a in (PI / 8, PI / 4, PI / 2):
            dev = np.max(np.abs(de_kernel_spectral(DeKernel(r, a), t, 4096) - de_kernel_closed(DeKernel(r, a), t)))
            # oracle for the tail: direct sum to 1e6 plus the integral remainder
            k = np.arange(4097, 1_000_000, dtype=float)
            tail = (math.fsum((2 / (k * a)) ** r) + (2 / a) ** r / ((r - 1) * 999_999.5 ** (r - 1))) / PI
            ok &= dev <= tail + 1e-10
            worst = max(worst, dev / (tail + 1e-10))
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    verdict(1, ok, f"worst deviation/bound {worst:.3g}, {elapsed:.2f}s (< 10s)")


def test_criterion_02_literal_closed_forms():
    rng = np.random.default_rng(2)
    a = 0.5
    t = rng.uniform(-PI, PI, 1000)
    t[:400] = rng.uniform(-1.2 * a, 1.2 * a, 400)
    want1 = np.where(np.abs(t) < a / 2, 1 / a, 0.0)
    want2 = np.where(np.abs(t) <= a, (a - np.abs(t)) / a**2, 0.0)
    u1 = np.max(ulps(de_kernel_closed(DeKernel(1, a), t), want1))
    u2 = np.max(ulps(de_kernel_closed(DeKernel(2, a), t), want2))
    verdict(2, u1 <= 2 and u2 <= 2, f"De(1) {u1:.0f} ulp, De(2) {u2:.0f} ulp (<= 2)")


def test_criterion_03_poisson_identity():
    u = np.linspace(-PI, PI, 101)
    failures = []
    start = time.perf_counter()
    for r in (0.3, 0.5, 0.9):
        for N in (10, 50, 200):
            dev = np.max(np.abs(poisson_kernel_spectral(r, u, N) - poisson_kernel(r, u)))
            bound = r ** (N + 1) / (1 - r)
            if not dev <= bound:
                failures.append(f"r={r},N={N}: {dev:.3g} > {bound:.3g}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1
    detail = f"{9 - len(failures)}/9 within r^(N+1)/(1-r), {elapsed:.3f}s (< 1s)"
    if failures:
        detail += "; exceeded by float64 rounding: " + "; ".join(failures)
    verdict(3, ok, detail)


def test_criterion_04_spectral_equals_convolution():
    a = PI / 8
    worst, ok = 0.0, True
    start = time.perf_counter()
    for fn in (SquareWave(), Sawtooth()):
        for r in (2, 3, 4):
            g = summed_function(fn, SigmaRAlpha(r, a), 4096, 101)
            dev = np.max(np.abs(g.samples - convolve_with_kernel(fn, DeKernel(r, a), g.t)))
            bound = series_tail_bound(fn, SigmaRAlpha(r, a), 4096) + 1e-8
            ok &= dev <= bound
            worst = max(worst, dev / bound)
        g = summed_function(fn, SigmaRAlpha(1, a), 200_000, 101)
        keep = _alignment_mask(g.t, fn, a)
        dev = np.max(np.abs(g.samples - convolve_with_kernel(fn, DeKernel(1, a), g.t))[keep])
        ok &= dev <= 1e-3
        worst = max(worst, dev / 1e-3)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    verdict(4, ok, f"worst deviation/bound {worst:.3g}, {elapsed:.2f}s (< 60s)")


def test_criterion_05_order_raising():
    a = PI / 4
    t = np.linspace(-3 * a, 3 * a, 1001)
    start = time.perf_counter()
    dev = max(
        np.max(np.abs(box_convolution(BSpline(m, a), t) - bspline_eval(raise_order(BSpline(m, a)), t))) for m in range(4)
    )
    elapsed = time.perf_counter() - start
    verdict(5, dev <= 1e-8 and elapsed < 5, f"max deviation {dev:.3g} (<= 1e-8), {elapsed:.2f}s (< 5s)")


def test_criterion_06_fourier_coefficients():
    start = time.perf_counter()
    dev = max(coefficient_roundtrip(r, a, 64).observed for r in range(1, 6) for a in (PI / 8, PI / 4))
    elapsed = time.perf_counter() - start
    verdict(6, dev < 1e-10 and elapsed < 5, f"max deviation {dev:.3g} (< 1e-10), {elapsed:.2f}s (< 5s)")


def test_criterion_07_midpoint():
    start = time.perf_counter()
    errs = [
        rep.observed
        for fn in (SquareWave(), Sawtooth())
        for jump in fn.jumps()
        for r in (1, 2, 3)
        for rep in jump_convergence_study(fn, r, [PI / 4, PI / 8, PI / 16], jump.location)
    ]
    elapsed = time.perf_counter() - start
    worst = max(errs)
    verdict(7, worst <= 1e-10 and elapsed < 5, f"{len(errs)} cases, max error {worst:.3g} (<= 1e-10), {elapsed:.2f}s (< 5s)")


def test_criterion_08_delta_family():
    start = time.perf_counter()
    nonzero = []
    count = 0
    for delta in (0.1, 0.5, 1.0, 2.0):
        for r in (1, 2, 3, 4, 5):
            top = min(PI, 2 * delta / r)
            for frac in (0.999, 0.9, 0.5, 0.1):
                a = frac * top
                if not a < 2 * delta / r:
                    continue
                count += 1
                m = kernel_mass_outside(DeKernel(r, a), delta)
                if m != 0.0:
                    nonzero.append((r, a, delta, m))
    poisson = kernel_mass_outside(PoissonKernel(0.999), 0.5)
    elapsed = time.perf_counter() - start
    ok = not nonzero and poisson < 0.01 and elapsed < 2
    verdict(8, ok, f"{count} De cases exactly 0, {len(nonzero)} not; Poisson(0.999) {poisson:.4g} (< 0.01), {elapsed:.2f}s (< 2s)")


def test_criterion_09_gibbs():
    start = time.perf_counter()
    sq = SquareWave()
    with mpmath.workdps(30):
        oracle = float(2 * mpmath.si(mpmath.pi) / mpmath.pi - 1)
    raw = {N: gibbs_overshoot(sq, Identity(), N) for N in (127, 511)}
    ok = abs(raw[511] - oracle) <= 0.01
    worst_ratio = 0.0
    for N in (127, 511):
        for r in (2, 3, 4):
            for a in (PI / 16, PI / 8):
                ov = gibbs_overshoot(sq, SigmaRAlpha(r, a), N)
                ok &= ov < raw[N]
                worst_ratio = max(worst_ratio, ov / raw[N])
    s2 = gibbs_overshoot(sq, SigmaRAlpha(2, PI / 16), 511)
    ok &= s2 < 0.01
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    verdict(
        9,
        ok,
        f"raw {raw[511]:.5f} vs {oracle:.5f}; smoothed/raw <= {worst_ratio:.3g}; sigma(2,pi/16) {s2:.3g}; {elapsed:.2f}s (< 10s)",
    )


@pytest.mark.slow
def test_criterion_10_determinism():
    cmd = [sys.executable, "-m", "sigmasum", "verify", "--suite", "all"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and len(first.stdout) > 0
    verdict(10, same, f"{len(first.stdout)} bytes, identical={same}, exit codes {first.returncode}/{second.returncode}")
