"""Finitely supported laws and their transforms.

An :class:`AtomicDistribution` knows its CDF, quantiles, integrated
distribution function (IDF) ``Phi(x) = int_0^x F`` and integrated quantile
function (IQF) ``Q``, the conjugate of ``Phi`` on ``[0, 1]``.  Both are
returned as exact :class:`~iqfcalc.pwl.ConvexPWL` objects.
"""

from __future__ import annotations

import csv
import math
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import DomainError
from .pwl import TOL, ConvexPWL, MonotonePWL

__all__ = [
    "MERGE_TOL",
    "MASS_FLOOR",
    "AtomicDistribution",
    "from_idf",
    "from_iqf",
    "law_from_quantile_slopes",
]

#: Locations closer than this (relative to ``max(1, |x|)``) are merged.
MERGE_TOL = 1e-12
#: Atoms lighter than this are dropped and the rest renormalized.
MASS_FLOOR = 1e-12
#: Allowed deviation of the raw mass sum from one.
_SUM_TOL = 1e-6


class AtomicDistribution:
    """Probability law with finitely many atoms.

    Parameters
    ----------
    locations, masses : sequence of float
        Atoms in any order; duplicates (within ``MERGE_TOL``) are merged and
        masses must sum to one within ``1e-6`` before renormalization.
    """

    __slots__ = ("_x", "_p", "_cum", "__dict__")

    def __init__(self, locations, masses):
        x = np.array(locations, dtype=float).reshape(-1)
        p = np.array(masses, dtype=float).reshape(-1)
        if x.size == 0 or x.shape != p.shape:
            raise ValueError("need a nonempty list of atoms with one mass each")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(p))):
            raise ValueError("atom locations and masses must be finite")
        if np.any(p < 0):
            raise ValueError("masses must be nonnegative")
        total = float(p.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"masses sum to {total}, not 1")
        order = np.argsort(x, kind="stable")
        x, p = x[order], p[order]
        x, p = _merge(x, p)
        keep = p >= MASS_FLOOR
        if not keep.any():
            raise ValueError("all masses are negligible")
        x, p = x[keep], p[keep]
        p = p / p.sum()
        cum = np.cumsum(p)
        cum[-1] = 1.0
        for a in (x, p, cum):
            a.flags.writeable = False
        self._x, self._p, self._cum = x, p, cum

    # -- constructors --------------------------------------------------------
    @classmethod
    def point(cls, c: float) -> "AtomicDistribution":
        return cls([c], [1.0])

    @classmethod
    def from_atoms(cls, atoms) -> "AtomicDistribution":
        """From an iterable of ``(location, mass)`` pairs."""
        atoms = list(atoms)
        return cls([a for a, _ in atoms], [m for _, m in atoms])

    @classmethod
    def from_samples(cls, values, weights=None) -> "AtomicDistribution":
        """Empirical law of ``values``, optionally weighted."""
        v = np.array(values, dtype=float).reshape(-1)
        if v.size == 0:
            raise ValueError("from_samples needs at least one value")
        if weights is None:
            w = np.ones_like(v)
        else:
            w = np.array(weights, dtype=float).reshape(-1)
            if w.shape != v.shape:
                raise ValueError("weights must match values in length")
            if np.any(w < 0) or not np.all(np.isfinite(w)):
                raise ValueError("weights must be finite and nonnegative")
        total = float(w.sum())
        if not total > 0:
            raise ValueError("weights must have a positive sum")
        return cls(v, w / total)

    @classmethod
    def from_csv(cls, path) -> "AtomicDistribution":
        """Read one value per line, with an optional weight column."""
        values, weights = [], []
        with open(Path(path), newline="") as fh:
            for row in csv.reader(fh):
                row = [c.strip() for c in row if c.strip()]
                if not row or row[0].startswith("#"):
                    continue
                try:
                    values.append(float(row[0]))
                    weights.append(float(row[1]) if len(row) > 1 else 1.0)
                except ValueError:
                    if not values:  # header line
                        continue
                    raise
        return cls.from_samples(values, weights)

    @classmethod
    def from_dict(cls, data: dict) -> "AtomicDistribution":
        atoms = data["atoms"]
        return cls([a["x"] for a in atoms], [a["p"] for a in atoms])

    def to_dict(self) -> dict:
        return {"atoms": [{"x": float(a), "p": float(m)} for a, m in zip(self._x, self._p)]}

    # -- basic data ----------------------------------------------------------
    @property
    def locations(self) -> np.ndarray:
        return self._x

    @property
    def masses(self) -> np.ndarray:
        return self._p

    @property
    def cumulative(self) -> np.ndarray:
        """``F`` at each atom."""
        return self._cum

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return [(float(a), float(m)) for a, m in zip(self._x, self._p)]

    def __len__(self) -> int:
        return self._x.size

    def __repr__(self) -> str:
        body = ", ".join(f"{a:g}: {m:g}" for a, m in self.atoms)
        return f"AtomicDistribution({{{body}}})"

    def isclose(self, other: "AtomicDistribution", tol: float = TOL) -> bool:
        if len(self) != len(other):
            return False
        sc = max(1.0, float(np.max(np.abs(self._x))), float(np.max(np.abs(other._x))))
        return bool(
            np.all(np.abs(self._x - other._x) <= tol * sc)
            and np.all(np.abs(self._p - other._p) <= tol)
        )

    # -- moments -------------------------------------------------------------
    def mean(self) -> float:
        return float(self._p @ self._x)

    def pos_part_mean(self) -> float:
        return float(self._p @ np.maximum(self._x, 0.0))

    def neg_part_mean(self) -> float:
        return float(self._p @ np.maximum(-self._x, 0.0))

    def abs_mean(self) -> float:
        return float(self._p @ np.abs(self._x))

    def second_moment(self) -> float:
        return float(self._p @ (self._x * self._x))

    def variance(self) -> float:
        m = self.mean()
        return float(self._p @ ((self._x - m) ** 2))

    # -- distribution function and quantiles ---------------------------------
    def cdf(self, x):
        i = np.searchsorted(self._x, x, side="right")
        return _lookup(self._cum, i)

    def cdf_left(self, x):
        i = np.searchsorted(self._x, x, side="left")
        return _lookup(self._cum, i)

    def cdf_function(self) -> MonotonePWL:
        return MonotonePWL.step(self._x, self._cum)

    def quantile_left(self, u: float) -> float:
        """``inf{x : F(x) >= u}``."""
        _check_open_unit(u)
        return float(self._x[min(np.searchsorted(self._cum, u, side="left"), len(self) - 1)])

    def quantile_right(self, u: float) -> float:
        """``inf{x : F(x) > u}``."""
        _check_open_unit(u)
        return float(self._x[min(np.searchsorted(self._cum, u, side="right"), len(self) - 1)])

    # -- integrated transforms -----------------------------------------------
    @cached_property
    def idf(self) -> ConvexPWL:
        """``Phi(x) = int_0^x F(t) dt``; slopes between atoms are CDF values."""
        x, p, cum = self._x, self._p, self._cum
        partial = np.cumsum(p * x)
        values = x * cum - partial - self.neg_part_mean()
        slopes = np.concatenate(([0.0], cum[:-1], [1.0]))
        return ConvexPWL.from_parts(x, values, slopes)

    @cached_property
    def iqf(self) -> ConvexPWL:
        """Integrated quantile function on ``[0, 1]``; slopes are the atoms."""
        x, p = self._x, self._p
        u = np.concatenate(([0.0], self._cum[:-1], [1.0]))
        pos = np.concatenate(([0.0], np.cumsum(p * np.maximum(x, 0.0))))
        neg_rev = np.cumsum((p * np.maximum(-x, 0.0))[::-1])[::-1]
        neg = np.concatenate((neg_rev, [0.0]))
        slopes = np.concatenate(([-math.inf], x, [math.inf]))
        return ConvexPWL.from_parts(u, pos + neg, slopes)

    @cached_property
    def iqf_shift0(self) -> ConvexPWL:
        """``Q - Q(0)``: the absolute Lorenz curve."""
        x, p = self._x, self._p
        u = np.concatenate(([0.0], self._cum[:-1], [1.0]))
        values = np.concatenate(([0.0], np.cumsum(p * x)))
        slopes = np.concatenate(([-math.inf], x, [math.inf]))
        return ConvexPWL.from_parts(u, values, slopes)

    @cached_property
    def iqf_shift1(self) -> ConvexPWL:
        """``Q - Q(1)``."""
        x, p = self._x, self._p
        u = np.concatenate(([0.0], self._cum[:-1], [1.0]))
        tail = np.cumsum((p * x)[::-1])[::-1]
        values = np.concatenate((-tail, [0.0]))
        slopes = np.concatenate(([-math.inf], x, [math.inf]))
        return ConvexPWL.from_parts(u, values, slopes)

    # -- classical functionals -----------------------------------------------
    def psi(self, x):
        """``Psi(x) = E[(x - X)^+]``."""
        return self.idf(x) + self.neg_part_mean()

    def stop_loss(self, x):
        """``H(x) = E[(X - x)^+]``."""
        return self.idf(x) + self.pos_part_mean() - np.asarray(x, dtype=float) * 1.0

    def potential(self, x):
        """``U(x) = -E|x - X|``."""
        return np.asarray(x, dtype=float) * 1.0 - self.abs_mean() - 2.0 * self.idf(x)

    def lorenz(self, u):
        _check_closed_unit(u)
        return self.iqf_shift0(u)

    def cvar(self, u):
        """Mean of the lower ``u``-tail."""
        u_arr = np.asarray(u, dtype=float)
        if np.any(u_arr <= 0) or np.any(u_arr > 1):
            raise DomainError("cvar is defined for u in (0, 1]")
        return self.iqf_shift0(u) / u_arr

    def hardy_littlewood(self, u):
        """Mean of the upper ``(1 - u)``-tail."""
        u_arr = np.asarray(u, dtype=float)
        if np.any(u_arr < 0) or np.any(u_arr >= 1):
            raise DomainError("hardy_littlewood is defined for u in [0, 1)")
        return self.iqf_shift1(u) / (u_arr - 1.0)

    # -- derived laws --------------------------------------------------------
    def negate(self) -> "AtomicDistribution":
        return AtomicDistribution(0.0 - self._x[::-1], self._p[::-1])

    def absolute(self) -> "AtomicDistribution":
        return AtomicDistribution(np.abs(self._x), self._p)

    def map(self, fn) -> "AtomicDistribution":
        """Law of ``fn(X)`` for a vectorized ``fn``."""
        return AtomicDistribution(fn(self._x), self._p)


def _merge(x: np.ndarray, p: np.ndarray):
    if x.size < 2:
        return x.copy(), p.copy()
    gaps = np.diff(x) <= MERGE_TOL * np.maximum(1.0, np.abs(x[1:]))
    if not gaps.any():
        return x.copy(), p.copy()
    group = np.concatenate(([0], np.cumsum(~gaps)))
    m = np.bincount(group, weights=p)
    s = np.bincount(group, weights=p * x)
    first = np.concatenate(([True], ~gaps))
    xs = np.where(m > 0, s / np.where(m > 0, m, 1.0), x[first])
    # the weighted mean can drift by an ulp; exact duplicates keep their location
    lo = np.minimum.reduceat(x, np.flatnonzero(first))
    hi = np.maximum.reduceat(x, np.flatnonzero(first))
    xs = np.where(lo == hi, lo, np.clip(xs, lo, hi))
    return xs, m


def _lookup(cum: np.ndarray, i):
    padded = np.concatenate(([0.0], cum))
    out = padded[np.asarray(i)]
    return float(out) if np.ndim(out) == 0 else out


def _check_open_unit(u: float) -> None:
    if not 0.0 < u < 1.0:
        raise DomainError(f"u = {u} is outside (0, 1)")


def _check_closed_unit(u) -> None:
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < 0) or np.any(u_arr > 1):
        raise DomainError("u must lie in [0, 1]")


def from_idf(J: ConvexPWL, tol: float = TOL) -> AtomicDistribution:
    """The law whose IDF is ``J``: atoms at breakpoints, masses from slope jumps."""
    s = J.slopes
    if not (math.isfinite(s[0]) and math.isfinite(s[-1])):
        raise ValueError("an IDF is finite on the whole line")
    if abs(s[0]) > tol or abs(s[-1] - 1.0) > tol:
        raise ValueError("an IDF has asymptotic slopes 0 and 1")
    if np.any(s < -tol) or np.any(s > 1.0 + tol):
        raise ValueError("IDF slopes must lie in [0, 1]")
    scale = max(1.0, float(np.max(np.abs(J.values))))
    if abs(J(0.0)) > tol * scale:
        raise ValueError("an IDF vanishes at 0")
    masses = np.diff(np.clip(s, 0.0, 1.0))
    return AtomicDistribution(J.breakpoints, masses)


def from_iqf(K: ConvexPWL, tol: float = TOL) -> AtomicDistribution:
    """The law whose IQF is ``K``: atoms are slopes, masses are their u-lengths."""
    dom = K.domain
    if abs(dom.lo) > tol or abs(dom.hi - 1.0) > tol:
        raise ValueError("an IQF lives on [0, 1]")
    vals = K.values
    scale = max(1.0, float(np.max(np.abs(vals))))
    lo = float(np.min(vals))
    if lo < -tol * scale:
        raise ValueError("an IQF is nonnegative")
    if lo > tol * scale:
        raise ValueError("an IQF attains the value 0")
    return AtomicDistribution(K.slopes[1:-1], np.diff(K.breakpoints))


def law_from_quantile_slopes(K: ConvexPWL) -> AtomicDistribution:
    """Law whose quantile function is the derivative of ``K`` on ``[0, 1]``.

    Unlike :func:`from_iqf` the level of ``K`` is ignored, so any additive
    shift of an IQF is accepted.
    """
    dom = K.domain
    if abs(dom.lo) > TOL or abs(dom.hi - 1.0) > TOL:
        raise ValueError("quantile slopes need a function on [0, 1]")
    return AtomicDistribution(K.slopes[1:-1], np.diff(K.breakpoints))
