"""Convergence-factor families and a careful ``sinc``.

A factor family maps a harmonic index ``k`` to the multiplier applied to
``a_k cos kt + b_k sin kt``. Index 0 always maps to 1 so that a whole
coefficient vector can be scaled by one table lookup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

# below this |x| the Maclaurin polynomial is used; truncation error < 1e-18
SINC_SERIES_THRESHOLD = 1e-4


def sinc(x):
    """Unnormalized sinc, ``sin(x)/x`` with ``sinc(0) == 1``.

    Accepts a float or an array. Raises ``ValueError`` on non-finite input.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("sinc: argument must be finite")
    small = np.abs(arr) < SINC_SERIES_THRESHOLD
    x2 = arr * arr
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(arr) / arr)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class Identity:
    """No attenuation: the plain partial sum."""

    def describe(self) -> str:
        return "identity"


@dataclass(frozen=True)
class PoissonAbel:
    """Abel factors ``r**k`` with ``0 < r < 1``."""

    r: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and 0.0 < self.r < 1.0):
            raise ValueError(f"PoissonAbel requires 0 < r < 1, got r={self.r!r}")

    def describe(self) -> str:
        return f"poisson(r={self.r!r})"


@dataclass(frozen=True)
class SigmaRAlpha:
    """Factors ``sinc(k*alpha/2)**r`` for integer order ``r >= 1``.

    ``alpha == pi`` is admitted so that ``Lanczos(1)`` has a twin.
    """

    r: int
    alpha: float

    def __post_init__(self):
        if isinstance(self.r, bool) or not isinstance(self.r, (int, np.integer)):
            raise ValueError(f"SigmaRAlpha requires an integer order r, got {self.r!r}")
        if self.r < 1:
            raise ValueError(f"SigmaRAlpha requires r >= 1, got r={self.r}")
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha <= math.pi):
            raise ValueError(f"SigmaRAlpha requires 0 < alpha <= pi, got alpha={self.alpha!r}")

    def describe(self) -> str:
        return f"sigma(r={self.r}, alpha={self.alpha!r})"


@dataclass(frozen=True)
class Lanczos:
    """Lanczos sigma factors for the partial sum of order ``n``.

    Equal to ``SigmaRAlpha(1, 2*pi/(n+1))`` up to ``k = n`` and zero beyond.
    """

    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"Lanczos requires a positive integer n, got {self.n!r}")

    @property
    def alpha(self) -> float:
        return 2.0 * math.pi / (self.n + 1)

    def describe(self) -> str:
        return f"lanczos(n={self.n})"


FactorFamily = Union[Identity, PoissonAbel, SigmaRAlpha, Lanczos]


def _check_index(k) -> int:
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise ValueError(f"harmonic index must be an integer, got {k!r}")
    return abs(int(k))


def _factor_array(family: FactorFamily, ks: np.ndarray) -> np.ndarray:
    ks = np.abs(ks)
    if isinstance(family, Identity):
        out = np.ones(ks.shape)
    elif isinstance(family, PoissonAbel):
        out = family.r ** ks.astype(float)
    elif isinstance(family, SigmaRAlpha):
        out = np.asarray(sinc(ks * (family.alpha / 2.0)), dtype=float) ** family.r
    elif isinstance(family, Lanczos):
        out = np.asarray(sinc(ks * (math.pi / (family.n + 1))), dtype=float)
        out = np.where(ks > family.n, 0.0, out)
    else:
        raise TypeError(f"unknown factor family {family!r}")
    return np.where(ks == 0, 1.0, out)


def factor(family: FactorFamily, k: int) -> float:
    """Multiplier for harmonic ``k``; depends only on ``|k|`` and is 1 at ``k = 0``."""
    k = _check_index(k)
    return float(_factor_array(family, np.array([k]))[0])


def factor_table(family: FactorFamily, N: int) -> np.ndarray:
    """Array of ``factor(family, k)`` for ``k = 0..N``."""
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 0:
        raise ValueError(f"N must be a non-negative integer, got {N!r}")
    return _factor_array(family, np.arange(N + 1))
