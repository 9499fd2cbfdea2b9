"""Exact convex analysis for piecewise-linear functions of one variable.

Every transform of a finitely supported law is piecewise linear, so
conjugation, envelopes and distances reduce to finite vertex/slope
manipulations.  Nothing here does numerical optimization.

A :class:`ConvexPWL` is stored as ``n`` breakpoints, the values there, and
``n + 1`` slopes: the left tail, the ``n - 1`` chord slopes and the right
tail.  A left slope of ``-inf`` means the function is ``+inf`` left of the
first breakpoint; a right slope of ``+inf`` means ``+inf`` right of the last
one.  Infinities never appear in the value array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, NoBracketError

__all__ = [
    "TOL",
    "COLLINEAR_TOL",
    "Interval",
    "ConvexPWL",
    "ConcavePWL",
    "MonotonePWL",
    "evaluate",
    "subdifferential",
    "fenchel_conjugate",
    "lower_hull",
    "lower_convex_envelope",
    "solve_concave_equation",
    "levy_distance",
    "sup_distance",
]

#: Absolute tolerance for "equals zero" decisions on slopes and values.
TOL = 1e-9
#: Relative tolerance under which adjacent slopes count as one (vertex merge).
COLLINEAR_TOL = 1e-12

_INF = math.inf


def _vector(a) -> np.ndarray:
    arr = np.array(a, dtype=float).reshape(-1)
    return arr


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


def _scale(*arrays) -> float:
    m = 1.0
    for a in arrays:
        a = np.asarray(a, dtype=float)
        a = a[np.isfinite(a)]
        if a.size:
            m = max(m, float(np.max(np.abs(a))))
    return m


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[lo, hi]``; endpoints may be infinite."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def __iter__(self):
        yield self.lo
        yield self.hi


def _as_interval(on) -> Interval:
    return on if isinstance(on, Interval) else Interval(float(on[0]), float(on[1]))


def _canonical(x: np.ndarray, y: np.ndarray, s: np.ndarray):
    """Drop vertices whose two adjacent slopes agree."""
    n = x.size
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        a, b = s[i], s[i + 1]
        if math.isfinite(a) and math.isfinite(b):
            if abs(b - a) <= COLLINEAR_TOL * max(1.0, abs(a), abs(b)):
                keep[i] = False
    if keep.all():
        return x, y, s
    if not keep.any():
        # affine on the whole line: anchor at the origin
        c = float(s[0])
        return np.array([0.0]), np.array([y[0] - c * x[0]]), np.array([c, c])
    idx = np.flatnonzero(keep)
    ns = [s[0]]
    for j in range(idx.size - 1):
        i0, i1 = idx[j], idx[j + 1]
        if i1 == i0 + 1:
            ns.append(s[i1])
        else:
            ns.append((y[i1] - y[i0]) / (x[i1] - x[i0]))
    ns.append(s[n])
    return x[idx], y[idx], np.array(ns)


class ConvexPWL:
    """Convex piecewise-linear function with explicit breakpoints.

    Parameters
    ----------
    breakpoints : sequence of float
        Strictly increasing, at least one.
    values : sequence of float
        Function values at the breakpoints.
    slope_left, slope_right : float or None
        Asymptotic slopes.  ``None`` (or ``-inf`` / ``+inf``) marks the
        function as ``+inf`` beyond the first / last breakpoint.

    Instances are immutable and canonical: collinear vertices are merged on
    construction.
    """

    __slots__ = ("_x", "_y", "_s")

    def __init__(self, breakpoints, values, slope_left=None, slope_right=None):
        x = _vector(breakpoints)
        y = _vector(values)
        sl = -_INF if slope_left is None else float(slope_left)
        sr = _INF if slope_right is None else float(slope_right)
        if x.size == 0 or x.shape != y.shape:
            raise ValueError("breakpoints and values must be nonempty and of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("breakpoints and values must be finite")
        if np.any(np.diff(x) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        chords = np.diff(y) / np.diff(x)
        self._init(x, y, np.concatenate(([sl], chords, [sr])))

    @classmethod
    def from_parts(cls, breakpoints, values, slopes) -> "ConvexPWL":
        """Build from breakpoints, values and the full slope vector.

        ``slopes`` has one more entry than ``breakpoints``: left tail, chord
        slopes, right tail.  Passing slopes explicitly keeps them bit-exact,
        which is what makes conjugation an exact involution.
        """
        x = _vector(breakpoints)
        y = _vector(values)
        s = _vector(slopes)
        if x.size == 0 or x.shape != y.shape or s.size != x.size + 1:
            raise ValueError("need n breakpoints, n values and n + 1 slopes")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("breakpoints and values must be finite")
        if np.any(np.diff(x) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if x.size > 1:
            inner = s[1:-1]
            if not np.all(np.isfinite(inner)):
                raise ValueError("chord slopes must be finite")
            resid = np.diff(y) - inner * np.diff(x)
            if np.any(np.abs(resid) > TOL * _scale(x, y, inner)):
                raise ValueError("values are inconsistent with slopes")
        obj = cls.__new__(cls)
        obj._init(x, y, s)
        return obj

    def _init(self, x, y, s):
        if s[0] == _INF or s[-1] == -_INF or np.any(np.isnan(s)):
            raise ValueError("invalid tail slopes")
        d = np.diff(s)
        finite = np.isfinite(d)
        if np.any(d[finite] < -TOL * _scale(s)):
            raise ValueError("slopes must be nondecreasing (function not convex)")
        x, y, s = _canonical(x, y, s)
        self._x = _frozen(x)
        self._y = _frozen(y)
        self._s = _frozen(s)

    # -- accessors -----------------------------------------------------------
    @property
    def breakpoints(self) -> np.ndarray:
        return self._x

    @property
    def values(self) -> np.ndarray:
        return self._y

    @property
    def slopes(self) -> np.ndarray:
        """Left tail slope, chord slopes, right tail slope (length n + 1)."""
        return self._s

    @property
    def slope_left(self) -> float:
        return float(self._s[0])

    @property
    def slope_right(self) -> float:
        return float(self._s[-1])

    @property
    def domain(self) -> Interval:
        lo = float(self._x[0]) if self._s[0] == -_INF else -_INF
        hi = float(self._x[-1]) if self._s[-1] == _INF else _INF
        return Interval(lo, hi)

    def vertices(self) -> list[tuple[float, float]]:
        return [(float(a), float(b)) for a, b in zip(self._x, self._y)]

    # -- evaluation ----------------------------------------------------------
    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        x, y, s = self._x, self._y, self._s
        out = np.interp(t_arr, x, y)
        left = t_arr < x[0]
        right = t_arr > x[-1]
        if np.any(left):
            tail = y[0] + s[0] * (t_arr - x[0]) if math.isfinite(s[0]) else _INF
            out = np.where(left, tail, out)
        if np.any(right):
            tail = y[-1] + s[-1] * (t_arr - x[-1]) if math.isfinite(s[-1]) else _INF
            out = np.where(right, tail, out)
        return float(out) if out.ndim == 0 else out

    def slope_at(self, t: float, side: str = "right") -> float:
        """One-sided derivative at ``t``."""
        where = "right" if side == "right" else "left"
        return float(self._s[np.searchsorted(self._x, t, side=where)])

    # -- simple transformations ----------------------------------------------
    def shift(self, c: float) -> "ConvexPWL":
        """The function ``t -> f(t) + c``."""
        return ConvexPWL.from_parts(self._x, self._y + c, self._s)

    def restrict(self, lo: float, hi: float) -> "ConvexPWL":
        """Same function on ``[lo, hi]``, ``+inf`` elsewhere."""
        if not lo < hi:
            raise ValueError("restrict needs lo < hi")
        inner = self._x[(self._x > lo) & (self._x < hi)]
        pts = np.concatenate(([lo], inner, [hi]))
        vals = self(pts)
        if not np.all(np.isfinite(vals)):
            raise DomainError(f"function is not finite on [{lo}, {hi}]")
        mids = 0.5 * (pts[:-1] + pts[1:])
        chord = self._s[np.searchsorted(self._x, mids)]
        slopes = np.concatenate(([-_INF], chord, [_INF]))
        return ConvexPWL.from_parts(pts, vals, slopes)

    def min_on(self, lo: float, hi: float) -> float:
        inner = self._x[(self._x > lo) & (self._x < hi)]
        return float(np.min(self(np.concatenate(([lo], inner, [hi])))))

    # -- comparison ----------------------------------------------------------
    def isclose(self, other: "ConvexPWL", tol: float = TOL) -> bool:
        """Functional equality up to ``tol`` relative to the coordinate scale."""
        d1, d2 = self.domain, other.domain
        sc_x = _scale(self._x, other._x)
        for a, b in ((d1.lo, d2.lo), (d1.hi, d2.hi)):
            if math.isfinite(a) != math.isfinite(b):
                return False
            if math.isfinite(a) and abs(a - b) > tol * sc_x:
                return False
        sc_s = _scale(self._s, other._s)
        for a, b in ((self._s[0], other._s[0]), (self._s[-1], other._s[-1])):
            if math.isfinite(a) != math.isfinite(b):
                return False
            if math.isfinite(a) and abs(a - b) > tol * sc_s:
                return False
        pts = np.union1d(self._x, other._x)
        lo, hi = max(d1.lo, d2.lo), min(d1.hi, d2.hi)
        pts = np.clip(pts, lo, hi)
        diff = np.abs(self(pts) - other(pts))
        return bool(np.all(diff <= tol * _scale(self._y, other._y)))

    def same_vertices(self, other: "ConvexPWL", tol: float = TOL) -> bool:
        """Vertex-for-vertex equality of canonical forms."""
        if self._x.size != other._x.size:
            return False
        if not np.array_equal(np.isfinite(self._s), np.isfinite(other._s)):
            return False
        fin = np.isfinite(self._s)
        return bool(
            np.all(np.abs(self._x - other._x) <= tol * _scale(self._x, other._x))
            and np.all(np.abs(self._y - other._y) <= tol * _scale(self._y, other._y))
            and np.all(
                np.abs(self._s[fin] - other._s[fin]) <= tol * _scale(self._s, other._s)
            )
        )

    # -- serialization -------------------------------------------------------
    def to_dict(self) -> dict:
        dom = self.domain
        bounded = math.isfinite(dom.lo) or math.isfinite(dom.hi)
        return {
            "breakpoints": [float(v) for v in self._x],
            "values": [float(v) for v in self._y],
            "slope_left": float(self._s[0]) if math.isfinite(self._s[0]) else None,
            "slope_right": float(self._s[-1]) if math.isfinite(self._s[-1]) else None,
            "domain": [_finite_or_none(dom.lo), _finite_or_none(dom.hi)] if bounded else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConvexPWL":
        f = cls(data["breakpoints"], data["values"], data.get("slope_left"), data.get("slope_right"))
        dom = data.get("domain")
        if dom is not None:
            lo = -_INF if dom[0] is None else float(dom[0])
            hi = _INF if dom[1] is None else float(dom[1])
            if (lo, hi) != (f.domain.lo, f.domain.hi):
                raise ValueError("domain does not match breakpoints and sentinel slopes")
        return f

    def __repr__(self) -> str:
        return (
            f"ConvexPWL(breakpoints={self._x.tolist()}, values={self._y.tolist()}, "
            f"slope_left={self.slope_left}, slope_right={self.slope_right})"
        )


def _finite_or_none(v: float):
    return float(v) if math.isfinite(v) else None


@dataclass(frozen=True)
class ConcavePWL:
    """Concave piecewise-linear function, held as the negation of a convex one."""

    negated: ConvexPWL

    @classmethod
    def from_vertices(cls, xs, ys) -> "ConcavePWL":
        return cls(ConvexPWL(xs, -_vector(ys)))

    def __call__(self, t):
        return -self.negated(t)

    @property
    def breakpoints(self) -> np.ndarray:
        return self.negated.breakpoints

    @property
    def values(self) -> np.ndarray:
        return -self.negated.values

    @property
    def domain(self) -> Interval:
        return self.negated.domain

    def vertices(self) -> list[tuple[float, float]]:
        return [(x, -y) for x, y in self.negated.vertices()]

    def isclose(self, other: "ConcavePWL", tol: float = TOL) -> bool:
        return self.negated.isclose(other.negated, tol)

    def to_dict(self) -> dict:
        return {"concave": True, "breakpoints": self.breakpoints.tolist(), "values": self.values.tolist()}


class MonotonePWL:
    """Nondecreasing, right-continuous, piecewise-linear function with jumps.

    At node ``x[i]`` the function jumps from ``left[i]`` to ``right[i]``;
    between nodes it interpolates linearly from ``right[i]`` to
    ``left[i + 1]``.  Tails are constant.
    """

    __slots__ = ("_x", "_left", "_right")

    def __init__(self, nodes, left, right, tol: float = TOL):
        x, lv, rv = _vector(nodes), _vector(left), _vector(right)
        if x.size == 0 or not (x.shape == lv.shape == rv.shape):
            raise ValueError("nodes, left and right must be nonempty and of equal length")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(lv)) and np.all(np.isfinite(rv))):
            raise ValueError("MonotonePWL entries must be finite")
        if np.any(np.diff(x) <= 0):
            raise ValueError("nodes must be strictly increasing")
        if np.any(rv < lv - tol) or np.any(lv[1:] < rv[:-1] - tol):
            raise ValueError("MonotonePWL must be nondecreasing")
        self._x, self._left, self._right = _frozen(x), _frozen(lv), _frozen(rv)

    @classmethod
    def step(cls, locations, cumulative) -> "MonotonePWL":
        """Right-continuous step function jumping to ``cumulative[i]`` at ``locations[i]``."""
        cum = _vector(cumulative)
        left = np.concatenate(([0.0], cum[:-1]))
        return cls(locations, left, cum)

    @property
    def nodes(self) -> np.ndarray:
        return self._x

    @property
    def left(self) -> np.ndarray:
        return self._left

    @property
    def right(self) -> np.ndarray:
        return self._right

    def __call__(self, t):
        return self._eval(t, "right")

    def left_limit(self, t):
        return self._eval(t, "left")

    def _eval(self, t, side):
        t_arr = np.asarray(t, dtype=float)
        x, lv, rv = self._x, self._left, self._right
        i = np.searchsorted(x, t_arr, side=side) - 1
        n = x.size
        ic = np.clip(i, 0, max(n - 2, 0))
        if n > 1:
            x0, x1 = x[ic], x[ic + 1]
            frac = (t_arr - x0) / (x1 - x0)
            mid = rv[ic] + frac * (lv[ic + 1] - rv[ic])
        else:
            mid = np.full(t_arr.shape, rv[0])
        out = np.where(i < 0, lv[0], np.where(i >= n - 1, rv[-1], mid))
        return float(out) if out.ndim == 0 else out

    def is_cdf(self, tol: float = TOL) -> bool:
        vals = np.concatenate((self._left, self._right))
        return bool(
            abs(self._left[0]) <= tol
            and abs(self._right[-1] - 1.0) <= tol
            and np.all(vals >= -tol)
            and np.all(vals <= 1.0 + tol)
        )

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {"x": float(a), "left": float(b), "right": float(c)}
                for a, b, c in zip(self._x, self._left, self._right)
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MonotonePWL":
        nodes = data["nodes"]
        return cls([n["x"] for n in nodes], [n["left"] for n in nodes], [n["right"] for n in nodes])

    def __repr__(self) -> str:
        return f"MonotonePWL(nodes={self._x.tolist()}, left={self._left.tolist()}, right={self._right.tolist()})"


# ---------------------------------------------------------------------------
# operations


def evaluate(f: ConvexPWL, x: float) -> float:
    """``f(x)``, ``+inf`` outside the domain."""
    return f(x)


def subdifferential(f: ConvexPWL, x: float) -> Interval:
    """``[f'_-(x), f'_+(x)]`` at an interior point of the domain."""
    dom = f.domain
    if not dom.lo < x < dom.hi:
        raise DomainError(f"{x} is not interior to the domain [{dom.lo}, {dom.hi}]")
    bp, s = f.breakpoints, f.slopes
    i = int(np.searchsorted(bp, x, side="left"))
    if i < bp.size and bp[i] == x:
        return Interval(float(s[i]), float(s[i + 1]))
    return Interval(float(s[i]), float(s[i]))


def fenchel_conjugate(f: ConvexPWL) -> ConvexPWL:
    """Exact conjugate ``u -> sup_x (x u - f(x))``.

    Breakpoints of the result are the finite slopes of ``f`` and its slopes
    are the breakpoints of ``f``; both are copied bit-for-bit.
    """
    x, y, s = f.breakpoints, f.values, f.slopes
    n = x.size
    finite = [i for i in range(n + 1) if math.isfinite(s[i])]
    if not finite:
        # f is finite at a single point only: conjugate is affine
        return ConvexPWL.from_parts([0.0], [-y[0]], [x[0], x[0]])
    bps, vals, inner = [], [], []
    for k, i in enumerate(finite):
        j = min(i, n - 1)
        u = float(s[i])
        if bps and u == bps[-1]:
            continue
        if bps:
            inner.append(float(x[finite[k - 1]]))
        bps.append(u)
        vals.append(u * x[j] - y[j])
    left = float(x[0]) if s[0] == -_INF else -_INF
    right = float(x[n - 1]) if s[n] == _INF else _INF
    return ConvexPWL.from_parts(bps, vals, [left, *inner, right])


def lower_hull(xs, ys) -> ConvexPWL:
    """Greatest convex function on ``[min xs, max xs]`` lying below the points."""
    xs, ys = _vector(xs), _vector(ys)
    if xs.size == 0 or xs.shape != ys.shape:
        raise ValueError("lower_hull needs a nonempty set of points")
    order = np.lexsort((ys, xs))
    xs, ys = xs[order], ys[order]
    first = np.concatenate(([True], np.diff(xs) > 0))
    xs, ys = xs[first], ys[first]
    hx: list[float] = []
    hy: list[float] = []
    for px, py in zip(xs, ys):
        while len(hx) >= 2:
            cross = (hx[-1] - hx[-2]) * (py - hy[-2]) - (hy[-1] - hy[-2]) * (px - hx[-2])
            if cross > 0:
                break
            hx.pop()
            hy.pop()
        hx.append(float(px))
        hy.append(float(py))
    return ConvexPWL(hx, hy)


def lower_convex_envelope(fs: Sequence[ConvexPWL], domain) -> ConvexPWL:
    """Greatest convex minorant of ``min(fs)`` on a bounded domain.

    The epigraph of the minimum is the union of the epigraphs, whose convex
    hull is spanned by the graph vertices, so the envelope is the lower hull
    of all vertices inside the domain plus the endpoint values.
    """
    fs = list(fs)
    if not fs:
        raise ValueError("lower_convex_envelope needs at least one function")
    dom = _as_interval(domain)
    if not (math.isfinite(dom.lo) and math.isfinite(dom.hi)):
        raise ValueError("envelope domain must be bounded")
    pxs, pys = [], []
    for f in fs:
        bp = f.breakpoints
        pts = np.concatenate(([dom.lo], bp[(bp > dom.lo) & (bp < dom.hi)], [dom.hi]))
        vals = f(pts)
        if not np.all(np.isfinite(vals)):
            raise DomainError("every function must be finite on the envelope domain")
        pxs.append(pts)
        pys.append(vals)
    if dom.lo == dom.hi:
        return ConvexPWL([dom.lo], [min(float(v[0]) for v in pys)])
    return lower_hull(np.concatenate(pxs), np.concatenate(pys))


def solve_concave_equation(
    f: ConvexPWL, v: float, c: float, snap_tol: float = COLLINEAR_TOL
) -> tuple[float, float]:
    """Both roots ``a < b`` of ``x * v - f(x) = c``.

    The left side is concave and piecewise linear; its maximum must exceed
    ``c`` and it must decrease to ``-inf`` on both sides.  A root within
    ``snap_tol`` (relative) of a vertex is returned as that vertex.
    """
    x, y, s = f.breakpoints, f.values, f.slopes
    n = x.size
    g = x * v - y
    k = int(np.argmax(g))
    gmax = float(g[k])
    sc = max(1.0, abs(c), float(np.max(np.abs(g))))
    if gmax <= c + snap_tol * sc:
        raise NoBracketError(f"maximum {gmax} of x*v - f(x) does not exceed {c}")
    near = np.abs(g - c) <= snap_tol * sc

    a = None
    for i in range(k - 1, -1, -1):
        if near[i]:
            a = float(x[i])
            break
        if g[i] < c:
            a = float(x[i] + (c - g[i]) / (v - s[i + 1]))
            break
    if a is None:
        if not (math.isfinite(s[0]) and v > s[0]):
            raise NoBracketError("x*v - f(x) does not decrease to -inf on the left")
        a = float(x[0] + (c - g[0]) / (v - s[0]))

    b = None
    for i in range(k + 1, n):
        if near[i]:
            b = float(x[i])
            break
        if g[i] < c:
            b = float(x[i - 1] + (c - g[i - 1]) / (v - s[i]))
            break
    if b is None:
        if not (math.isfinite(s[n]) and v < s[n]):
            raise NoBracketError("x*v - f(x) does not decrease to -inf on the right")
        b = float(x[n - 1] + (c - g[n - 1]) / (v - s[n]))
    return a, b


def _rotated_graph(F: MonotonePWL):
    """Completed graph of ``F`` in coordinates ``s = x + y``, ``d = y - x``."""
    xs = np.repeat(F.nodes, 2)
    ys = np.column_stack((F.left, F.right)).reshape(-1)
    S, D = xs + ys, ys - xs
    keep = np.concatenate(([True], (np.diff(S) != 0) | (np.diff(D) != 0)))
    return S[keep], D[keep]


def _rotated_eval(S, D, t):
    out = np.interp(t, S, D)
    out = np.where(t < S[0], D[0] - (t - S[0]), out)
    return np.where(t > S[-1], D[-1] - (t - S[-1]), out)


def levy_distance(F: MonotonePWL, G: MonotonePWL) -> float:
    """Lévy distance between two distribution functions.

    Rotating the completed graphs by 45 degrees turns each into the graph of
    a 1-Lipschitz function of ``s = x + y``; the diagonal band of half-width
    ``eps`` becomes a vertical band of half-width ``2 eps``.  Both rotated
    graphs are piecewise linear with slope -1 tails, so the distance is half
    the largest vertical gap over the union of their vertices.
    """
    for H in (F, G):
        if not isinstance(H, MonotonePWL) or not H.is_cdf():
            raise ValueError("levy_distance needs two distribution functions")
    SF, DF = _rotated_graph(F)
    SG, DG = _rotated_graph(G)
    pts = np.union1d(SF, SG)
    gap = np.abs(_rotated_eval(SF, DF, pts) - _rotated_eval(SG, DG, pts))
    return float(np.max(gap)) / 2.0


def sup_distance(f: ConvexPWL, g: ConvexPWL, on) -> float:
    """``max |f - g|`` over a bounded interval, attained at a vertex or endpoint."""
    dom = _as_interval(on)
    if not (math.isfinite(dom.lo) and math.isfinite(dom.hi)):
        raise DomainError("sup_distance needs a bounded interval")
    pts = np.union1d(f.breakpoints, g.breakpoints)
    pts = np.concatenate(([dom.lo], pts[(pts > dom.lo) & (pts < dom.hi)], [dom.hi]))
    fv, gv = f(pts), g(pts)
    if not (np.all(np.isfinite(fv)) and np.all(np.isfinite(gv))):
        raise DomainError(f"functions must be finite on [{dom.lo}, {dom.hi}]")
    return float(np.max(np.abs(fv - gv)))


def _iter_floats(values: Iterable) -> list[float]:
    return [float(v) for v in values]
