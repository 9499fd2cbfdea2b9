"""Chacon–Walsh embedding for atomic laws.

Sweeping the mass of a law inside ``[a, b]`` to the endpoints (balayage)
is what Brownian motion does when stopped on leaving ``(a, b)``.  On the
shifted IQF ``Q1 = Q - Q(1)`` a balayage replaces the arc over
``(F(a-), F(b))`` by the two tangent lines of slopes ``a`` and ``b``.  A
target ``mu`` that dominates ``mu0`` in increasing convex order is reached
by cutting the running curve down to ``Q1_mu`` at each vertex of ``Q1_mu``.

Only the chain of exit values is simulated: leaving ``(a, b)`` from ``x``
lands at ``a`` with probability ``(b - x) / (b - a)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dist import AtomicDistribution
from .errors import PreconditionError
from .orders import leq_icx
from .pwl import TOL, Interval, solve_concave_equation

__all__ = [
    "EmbeddingPlan",
    "MonteCarloReport",
    "balayage",
    "cw_step",
    "plan_embedding",
    "chain_sample",
    "chain_samples",
    "monte_carlo_verify",
]

#: Extra pins approaching ``u = 0`` when the target has a larger mean.
EXTRA_PINS = 30


@dataclass(frozen=True)
class EmbeddingPlan:
    """Intervals to exit in order, and the law after each exit.

    ``laws[0]`` is the starting law and ``laws[k + 1]`` the balayage of
    ``laws[k]`` on ``intervals[k]``.  ``exact`` records whether the final
    law equals the target.
    """

    intervals: tuple
    laws: tuple
    exact: bool

    def __len__(self) -> int:
        return len(self.intervals)

    @property
    def final(self) -> AtomicDistribution:
        return self.laws[-1]

    def to_dict(self) -> dict:
        return {
            "intervals": [[iv.lo, iv.hi] for iv in self.intervals],
            "laws": [d.to_dict() for d in self.laws],
            "exact": self.exact,
        }


def _as_interval(I) -> Interval:
    iv = I if isinstance(I, Interval) else Interval(float(I[0]), float(I[1]))
    if not (math.isfinite(iv.lo) and math.isfinite(iv.hi)) or not iv.lo < iv.hi:
        raise ValueError(f"balayage needs a finite interval with lo < hi, got [{iv.lo}, {iv.hi}]")
    return iv


def balayage(d: AtomicDistribution, I) -> AtomicDistribution:
    """Sweep the mass of ``d`` on ``[a, b]`` to ``a`` and ``b``, keeping the mean."""
    iv = _as_interval(I)
    a, b = iv.lo, iv.hi
    x, p = d.locations, d.masses
    inside = (x >= a) & (x <= b)
    if not inside.any():
        return d
    xi, pi = x[inside], p[inside]
    to_a = float(np.sum(pi * (b - xi))) / (b - a)
    to_b = float(np.sum(pi * (xi - a))) / (b - a)
    locs = np.concatenate((x[~inside], [a, b]))
    mass = np.concatenate((p[~inside], [to_a, to_b]))
    return AtomicDistribution(locs, mass)


def _check_dominance(X: AtomicDistribution, Y: AtomicDistribution, tol: float) -> None:
    f, g = X.iqf_shift1, Y.iqf_shift1
    pts = np.union1d(f.breakpoints, g.breakpoints)
    gap = f(pts) - g(pts)
    i = int(np.argmin(gap))
    if gap[i] < -tol:
        raise PreconditionError(
            f"target shifted IQF lies above the source at u = {pts[i]}", witness=float(pts[i])
        )


def cw_step(
    X: AtomicDistribution, Y: AtomicDistribution, v: float, tol: float = TOL
) -> Optional[tuple[Interval, AtomicDistribution]]:
    """One tangent-line cut pinning ``Q1_X`` to ``Q1_Y`` at ``v``.

    Returns ``None`` when the curves already touch at ``v``.
    """
    if not 0 < v < 1:
        raise ValueError("v must lie in (0, 1)")
    _check_dominance(X, Y, tol)
    target = float(Y.iqf_shift1(v))
    if X.iqf_shift1(v) - target <= tol:
        return None
    a, b = solve_concave_equation(X.idf, v, target + X.pos_part_mean())
    iv = Interval(a, b)
    return iv, balayage(X, iv)


def _stop_loss_witness(mu0: AtomicDistribution, mu: AtomicDistribution) -> float:
    ys = np.union1d(mu0.locations, mu.locations)
    gap = mu0.stop_loss(ys) - mu.stop_loss(ys)
    return float(ys[int(np.argmax(gap))])


def plan_embedding(
    mu0: AtomicDistribution, mu: AtomicDistribution, tol: float = TOL, extra_pins: int = EXTRA_PINS
) -> EmbeddingPlan:
    """Interval sequence carrying ``mu0`` to ``mu``.

    Requires ``mu0 <=icx mu``.  The running curve is pinned at every interior
    vertex of ``Q1_mu`` in increasing order; with equal means this lands on
    ``mu`` exactly.  If ``mu`` has the larger mean no finite plan can reach
    it, so ``extra_pins`` further pins at ``u1 / 2**k`` push the curve
    towards ``Q1_mu`` near ``u = 0`` and ``exact`` is false.
    """
    if not leq_icx(mu0, mu, tol):
        y = _stop_loss_witness(mu0, mu)
        raise PreconditionError(
            f"start is not below target in increasing convex order (stop-loss fails at y = {y})",
            witness=y,
        )
    pins = [float(u) for u in mu.cumulative[:-1]]
    if abs(mu0.mean() - mu.mean()) > tol * max(1.0, abs(mu.mean())) and pins:
        first = pins[0]
        pins = [first * 0.5**k for k in range(extra_pins, 0, -1)] + pins
    elif abs(mu0.mean() - mu.mean()) > tol * max(1.0, abs(mu.mean())):
        pins = [0.5**k for k in range(extra_pins, 0, -1)]
    intervals, laws = [], [mu0]
    for v in pins:
        step = cw_step(laws[-1], mu, v, tol)
        if step is None:
            continue
        intervals.append(step[0])
        laws.append(step[1])
    exact = laws[-1].iqf_shift1.isclose(mu.iqf_shift1, tol)
    return EmbeddingPlan(tuple(intervals), tuple(laws), bool(exact))


def chain_sample(plan: EmbeddingPlan, mu0: AtomicDistribution, rng: np.random.Generator) -> float:
    """Terminal value of one run of the exit chain."""
    x = float(rng.choice(mu0.locations, p=mu0.masses))
    for iv in plan.intervals:
        a, b = iv.lo, iv.hi
        if a <= x <= b:
            x = a if rng.random() < (b - x) / (b - a) else b
    return x


def chain_samples(
    plan: EmbeddingPlan, mu0: AtomicDistribution, n: int, rng: np.random.Generator
) -> np.ndarray:
    """``n`` independent terminal values, vectorized over runs."""
    x = mu0.locations[rng.choice(len(mu0), size=n, p=mu0.masses)].astype(float)
    for iv in plan.intervals:
        a, b = iv.lo, iv.hi
        inside = (x >= a) & (x <= b)
        go_a = rng.random(n) < (b - x) / (b - a)
        x = np.where(inside, np.where(go_a, a, b), x)
    return x


@dataclass(frozen=True)
class MonteCarloReport:
    n: int
    seed: int
    workers: int
    exact_plan: bool
    tv_distance: float
    kolmogorov: float
    per_atom_abs_err: tuple
    off_support: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "seed": self.seed,
            "workers": self.workers,
            "exact_plan": self.exact_plan,
            "tv_distance": self.tv_distance,
            "kolmogorov": self.kolmogorov,
            "per_atom_abs_err": list(self.per_atom_abs_err),
            "off_support": self.off_support,
        }


def _worker_streams(seed: int, workers: int) -> list[np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(workers)
    return [np.random.Generator(np.random.Philox(c)) for c in children]


def _snap_to_atoms(samples: np.ndarray, atoms: np.ndarray, tol: float):
    """Index of the matching atom for each sample, ``-1`` when none is within ``tol``."""
    j = np.clip(np.searchsorted(atoms, samples), 1, max(atoms.size - 1, 1))
    if atoms.size == 1:
        nearest = np.zeros(samples.shape, dtype=int)
    else:
        left_closer = np.abs(samples - atoms[j - 1]) <= np.abs(samples - atoms[j])
        nearest = np.where(left_closer, j - 1, j)
    ok = np.abs(samples - atoms[nearest]) <= tol * np.maximum(1.0, np.abs(samples))
    return np.where(ok, nearest, -1)


def monte_carlo_verify(
    mu0: AtomicDistribution,
    mu: AtomicDistribution,
    n: int,
    seed: int = 0,
    workers: int = 1,
    tol: float = TOL,
) -> MonteCarloReport:
    """Simulate the exit chain of the embedding plan and compare with ``mu``.

    Worker ``k`` draws from its own Philox stream spawned from ``seed``, so
    results are reproducible for a fixed ``(seed, workers)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    plan = plan_embedding(mu0, mu, tol)
    sizes = [n // workers + (1 if k < n % workers else 0) for k in range(workers)]
    streams = _worker_streams(seed, workers)
    if workers == 1:
        parts = [chain_samples(plan, mu0, sizes[0], streams[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda k: chain_samples(plan, mu0, sizes[k], streams[k]), range(workers)))
    samples = np.concatenate(parts)

    atoms, probs = mu.locations, mu.masses
    idx = _snap_to_atoms(samples, atoms, 1e-9)
    matched = idx >= 0
    counts = np.bincount(idx[matched], minlength=atoms.size)
    emp = counts / n
    off = float(np.count_nonzero(~matched)) / n
    err = np.abs(emp - probs)
    tv = 0.5 * (float(err.sum()) + off)

    values = np.where(matched, atoms[np.maximum(idx, 0)], samples)
    values.sort()
    pts = np.union1d(atoms, values)
    emp_cdf = np.searchsorted(values, pts, side="right") / n
    ks = float(np.max(np.abs(emp_cdf - mu.cdf(pts))))
    return MonteCarloReport(
        n=n,
        seed=seed,
        workers=workers,
        exact_plan=plan.exact,
        tv_distance=tv,
        kolmogorov=ks,
        per_atom_abs_err=tuple(float(e) for e in err),
        off_support=off,
    )
