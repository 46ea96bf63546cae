"""Composite Gauss-Legendre on caller-chosen panels."""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]; cached, read-only."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def panel_points(a: float, b: float, cuts) -> np.ndarray:
    """Sorted breakpoints ``a, ..., b`` including every cut strictly inside."""
    inner = sorted({float(c) for c in cuts if a < c < b})
    return np.array([a, *inner, b], dtype=float)


def integrate_panels(func, edges, n_nodes: int) -> float:
    """Integrate a vectorized ``func`` over consecutive panels ``edges``.

    ``n_nodes`` may be an int or a callable ``(a, b) -> int``. Panel sums are
    combined with ``math.fsum`` so the result does not depend on panel order.
    """
    parts = []
    edges = np.asarray(edges, dtype=float)
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        n = n_nodes(a, b) if callable(n_nodes) else n_nodes
        x, w = gauss_legendre(int(n))
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        vals = np.asarray(func(mid + half * x), dtype=float)
        parts.append(half * math.fsum(w * vals))
    return math.fsum(parts)
