"""Convex stochastic orders and two sharp tail bounds.

All three orders reduce to pointwise dominance of shifted IQFs on
``[0, 1]``.  Two convex piecewise-linear functions compare everywhere iff
they compare at the union of their breakpoints, so each test is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .dist import AtomicDistribution
from .pwl import TOL, ConvexPWL

__all__ = [
    "icx_witness",
    "decx_witness",
    "cx_witness",
    "leq_icx",
    "leq_decx",
    "leq_cx",
    "cantelli_extremal",
    "positive_tail_extremal",
]


def _dominance_witness(f: ConvexPWL, g: ConvexPWL, tol: float) -> Optional[float]:
    """Vertex where ``f < g - tol`` is worst, or ``None`` if ``f >= g - tol``."""
    pts = np.union1d(f.breakpoints, g.breakpoints)
    gap = f(pts) - g(pts)
    i = int(np.argmin(gap))
    return float(pts[i]) if gap[i] < -tol else None


def icx_witness(X: AtomicDistribution, Y: AtomicDistribution, tol: float = TOL) -> Optional[float]:
    """A ``u`` with ``Q1_X(u) < Q1_Y(u) - tol``, or ``None``."""
    return _dominance_witness(X.iqf_shift1, Y.iqf_shift1, tol)


def decx_witness(X: AtomicDistribution, Y: AtomicDistribution, tol: float = TOL) -> Optional[float]:
    """A ``u`` with ``Q0_X(u) < Q0_Y(u) - tol``, or ``None``."""
    return _dominance_witness(X.iqf_shift0, Y.iqf_shift0, tol)


def cx_witness(X: AtomicDistribution, Y: AtomicDistribution, tol: float = TOL) -> Optional[float]:
    w = icx_witness(X, Y, tol)
    return w if w is not None else decx_witness(X, Y, tol)


def leq_icx(X: AtomicDistribution, Y: AtomicDistribution, tol: float = TOL) -> bool:
    """``X`` is below ``Y`` in the increasing convex order."""
    return icx_witness(X, Y, tol) is None


def leq_decx(X: AtomicDistribution, Y: AtomicDistribution, tol: float = TOL) -> bool:
    """``X`` is below ``Y`` in the decreasing convex order."""
    return decx_witness(X, Y, tol) is None


def leq_cx(X: AtomicDistribution, Y: AtomicDistribution, tol: float = TOL) -> bool:
    """``X`` is below ``Y`` in the convex order (both of the above)."""
    return leq_icx(X, Y, tol) and leq_decx(X, Y, tol)


def cantelli_extremal(sigma: float, t: float) -> tuple[float, AtomicDistribution]:
    """Sharp bound on ``P(Z >= t)`` for mean zero, variance ``sigma**2``.

    Returns ``sigma**2 / (sigma**2 + t**2)`` and the two-point law attaining
    it.  Arithmetic is carried out in rationals so the law has mean zero and
    variance ``sigma**2`` to the last bit the conversion allows.
    """
    if not (sigma > 0 and t > 0):
        raise ValueError("sigma and t must be positive")
    s2 = Fraction(sigma) ** 2
    T = Fraction(t)
    p = s2 / (s2 + T * T)
    low = -T * p / (1 - p)
    law = AtomicDistribution([float(low), float(T)], [float(1 - p), float(p)])
    return float(p), law


def positive_tail_extremal(a: float, b: float) -> tuple[float, AtomicDistribution]:
    """Sharp lower bound on ``P(Z > a)`` for ``Z > 0``, mean 1, ``E[Z^2] = b``.

    Returns ``(1 - a)**2 / (b - a(2 - a))`` and the two-point law attaining it.
    """
    if not 0 < a < 1:
        raise ValueError("a must lie in (0, 1)")
    if not b >= 1:
        raise ValueError("b must be at least 1 for a unit-mean law")
    A, B = Fraction(a), Fraction(b)
    denom = B - A * (2 - A)
    if denom <= 0:
        raise ValueError("b must exceed a(2 - a)")
    p = (1 - A) ** 2 / denom
    high = (1 - A * (1 - p)) / p
    law = AtomicDistribution([float(A), float(high)], [float(1 - p), float(p)])
    return float(p), law
