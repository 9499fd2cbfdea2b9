"""Binary experiments (dichotomies) through their likelihood-ratio law.

An experiment ``(P, P')`` is stored as ``mu``, the law under ``P`` of the
ratio ``Z = dP'/dP`` of the absolutely continuous part.  ``mu`` lives on
``[0, inf)`` and has mean at most one; the missing mass is the part of
``P'`` singular to ``P``.  Every quantity below is a transform of ``mu``:

* risk function ``r(u)``: smallest type II error at type I level ``u``,
  equal to the IQF of ``-Z``;
* Bayes curve ``b(pi) = 1 - pi - pi * Phi_Z((1 - pi) / pi)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dist import AtomicDistribution
from .errors import InconsistencyError
from .orders import leq_decx
from .pwl import (
    TOL,
    ConcavePWL,
    ConvexPWL,
    MonotonePWL,
    fenchel_conjugate,
    levy_distance,
    lower_hull,
)

__all__ = [
    "INF_LABEL",
    "BinaryExperiment",
    "MeasurePair",
    "from_measures",
    "risk_function",
    "power_region_contains",
    "bayes_risk",
    "bayes_risk_curve",
    "risk_from_bayes",
    "more_informative",
    "epsilon_deficient",
    "deficiency",
    "repr_cdf",
    "canonical_experiment",
    "experiment_sequence_distance",
]

INF_LABEL = "inf"
_MEAN_SLACK = 1e-12
# verdicts of the three informativeness routes may differ only inside this band
_CROSSCHECK_BAND = 1e3


@dataclass(frozen=True, eq=False)
class BinaryExperiment:
    """A dichotomy, identified with the law ``mu`` of its likelihood ratio."""

    mu: AtomicDistribution

    def __post_init__(self):
        if self.mu.locations[0] < 0:
            raise ValueError("likelihood ratios are nonnegative")
        if self.mu.mean() > 1.0 + _MEAN_SLACK:
            raise ValueError(f"likelihood-ratio mean {self.mu.mean()} exceeds 1")

    @classmethod
    def from_ratio_law(cls, locations, masses) -> "BinaryExperiment":
        return cls(AtomicDistribution(locations, masses))

    @classmethod
    def from_dict(cls, data: dict) -> "BinaryExperiment":
        if "mu" in data:
            return cls(AtomicDistribution.from_dict(data["mu"]))
        if "p" in data and "p_prime" in data:
            return from_measures(data["p"], data["p_prime"])
        if "atoms" in data:
            return cls(AtomicDistribution.from_dict(data))
        raise ValueError('experiment JSON needs "mu" or "p" and "p_prime"')

    def to_dict(self) -> dict:
        return {"mu": self.mu.to_dict()}

    def __repr__(self) -> str:
        return f"BinaryExperiment({self.mu!r})"


@dataclass(frozen=True)
class MeasurePair:
    """Two probability vectors over labelled outcomes."""

    labels: tuple
    p: tuple
    p_prime: tuple

    def to_dict(self) -> dict:
        return {"outcomes": list(self.labels), "p": list(self.p), "p_prime": list(self.p_prime)}


def _probability_vector(v, name: str) -> np.ndarray:
    a = np.array(v, dtype=float).reshape(-1)
    if a.size == 0 or not np.all(np.isfinite(a)) or np.any(a < 0):
        raise ValueError(f"{name} must be a nonempty vector of nonnegative numbers")
    if abs(float(a.sum()) - 1.0) > TOL:
        raise ValueError(f"{name} must sum to 1")
    return a


def from_measures(p, p_prime) -> BinaryExperiment:
    """Experiment from two laws on a finite sample space (``0/0 = 0``)."""
    P = _probability_vector(p, "p")
    Pp = _probability_vector(p_prime, "p_prime")
    if P.shape != Pp.shape:
        raise ValueError("p and p_prime must have the same length")
    support = P > 0
    return BinaryExperiment(AtomicDistribution(Pp[support] / P[support], P[support]))


def risk_function(E: BinaryExperiment) -> ConvexPWL:
    """``r_E`` on ``[0, 1]``: the IQF of ``-Z``."""
    return E.mu.negate().iqf


def power_region_contains(E: BinaryExperiment, u: float, v: float, tol: float = TOL) -> bool:
    """Whether ``(u, v)`` is a (level, power) pair of some test."""
    if not (0 <= u <= 1 and 0 <= v <= 1):
        raise ValueError("u and v must lie in [0, 1]")
    r = risk_function(E)
    return bool(r(1.0 - u) <= v + tol and v <= 1.0 - r(u) + tol)


def bayes_risk(E: BinaryExperiment, pi: float) -> float:
    """Minimum Bayes risk at prior weight ``pi`` on the null."""
    if not 0 <= pi <= 1:
        raise ValueError("pi must lie in [0, 1]")
    if pi == 0 or pi == 1:
        return 0.0
    return float(1.0 - pi - pi * E.mu.idf((1.0 - pi) / pi))


def bayes_risk_curve(E: BinaryExperiment) -> ConcavePWL:
    """The Bayes curve as an exact concave function on ``[0, 1]``.

    Each positive atom ``x`` of ``Z`` contributes a vertex at
    ``1 / (1 + x)``; the curve vanishes at both ends.
    """
    pos = E.mu.locations[E.mu.locations > 0]
    inner = np.sort(1.0 / (1.0 + pos))
    inner = inner[(inner > 0) & (inner < 1)]
    pis = np.unique(np.concatenate(([0.0], inner, [1.0])))
    vals = np.array([bayes_risk(E, float(t)) for t in pis])
    return ConcavePWL.from_vertices(pis, vals)


def risk_from_bayes(b: ConcavePWL, tol: float = TOL) -> ConvexPWL:
    """Recover ``r(u) = sup_pi (b(pi) - (1 - pi) u) / pi`` exactly.

    The supremum runs over the vertices of ``b`` in ``(0, 1]``, so ``r`` is
    the upper envelope of finitely many lines ``c_k - x_k u``.  That envelope
    is the conjugate of the lower hull of the points ``(-x_k, -c_k)``.
    """
    dom = b.domain
    if abs(dom.lo) > tol or abs(dom.hi - 1.0) > tol:
        raise ValueError("a Bayes curve lives on [0, 1]")
    pis, vals = b.breakpoints, b.values
    if abs(vals[0]) > tol or abs(vals[-1]) > tol:
        raise ValueError("a Bayes curve vanishes at 0 and 1")
    check = np.union1d(pis, [0.5])
    bv = b(check)
    if np.any(bv < -tol) or np.any(bv > np.minimum(check, 1.0 - check) + tol):
        raise ValueError("a Bayes curve satisfies 0 <= b(pi) <= min(pi, 1 - pi)")
    keep = pis > 0
    pk, bk = pis[keep], vals[keep]
    xk = (1.0 - pk) / pk
    ck = bk / pk
    r = fenchel_conjugate(lower_hull(-xk, -ck)).restrict(0.0, 1.0)
    return _snap_unit_ends(r)


def _snap_unit_ends(f: ConvexPWL, eps: float = 1e-12) -> ConvexPWL:
    # rounding can leave a sliver vertex next to 0 or 1
    bp = f.breakpoints
    inner = bp[(bp > eps) & (bp < 1.0 - eps)]
    pts = np.concatenate(([0.0], inner, [1.0]))
    return ConvexPWL(pts, f(pts))


def _max_gap(f, g, pts) -> float:
    return float(np.max(f(pts) - g(pts)))


def more_informative(E: BinaryExperiment, E_tilde: BinaryExperiment, tol: float = TOL) -> bool:
    """``E`` is at least as informative as ``E_tilde`` (``r_E <= r_E~``).

    The verdict is cross-checked against Bayes-curve dominance and against
    ``mu_E~ <=decx mu_E``; a clear disagreement raises
    :class:`InconsistencyError`.
    """
    r, rt = risk_function(E), risk_function(E_tilde)
    gr = _max_gap(r, rt, np.union1d(r.breakpoints, rt.breakpoints))
    b, bt = bayes_risk_curve(E), bayes_risk_curve(E_tilde)
    gb = _max_gap(b, bt, np.union1d(b.breakpoints, bt.breakpoints))
    verdict = gr <= tol
    by_bayes = gb <= tol
    by_decx = leq_decx(E_tilde.mu, E.mu, tol)
    band = _CROSSCHECK_BAND * tol
    if by_decx != verdict and gr > band:
        raise InconsistencyError("risk and decreasing-convex routes disagree")
    if by_bayes != verdict and max(gr, gb) > band:
        raise InconsistencyError("risk and Bayes routes disagree")
    return verdict


def _bayes_gaps(E: BinaryExperiment, E_tilde: BinaryExperiment) -> np.ndarray:
    b, bt = bayes_risk_curve(E), bayes_risk_curve(E_tilde)
    pts = np.union1d(b.breakpoints, bt.breakpoints)
    return b(pts) - bt(pts)


def epsilon_deficient(
    E: BinaryExperiment, E_tilde: BinaryExperiment, eps: float, tol: float = TOL
) -> bool:
    """``b_E <= b_E~ + eps / 2`` everywhere on ``[0, 1]``."""
    if not eps >= 0:
        raise ValueError("eps must be nonnegative")
    return bool(np.max(_bayes_gaps(E, E_tilde)) <= eps / 2.0 + tol)


def deficiency(E: BinaryExperiment, E_tilde: BinaryExperiment) -> tuple[float, float]:
    """``(delta2, Delta2)`` from the Bayes curves.

    ``Delta2`` is recomputed as half the Lévy distance between the
    representation CDFs; the two must agree within ``1e-9``.
    """
    gaps = _bayes_gaps(E, E_tilde)
    delta2 = 0.5 * max(0.0, float(np.max(gaps)))
    Delta2 = 0.5 * float(np.max(np.abs(gaps)))
    via_levy = 0.5 * levy_distance(repr_cdf(E), repr_cdf(E_tilde))
    if abs(Delta2 - via_levy) > 1e-9:
        raise InconsistencyError(f"Bayes route gives {Delta2}, Lévy route gives {via_levy}")
    return delta2, Delta2


def repr_cdf(E: BinaryExperiment) -> MonotonePWL:
    """CDF ``F(x) = r_E(1 - x)`` on ``[0, 1)``, 0 before and 1 from 1 on."""
    r = risk_function(E)
    u = r.breakpoints
    inner = u[(u > 0) & (u < 1)][::-1]
    xs = np.concatenate(([0.0], 1.0 - inner, [1.0]))
    vals = r(1.0 - xs)
    left = vals.copy()
    right = vals.copy()
    left[0] = right[0] = 0.0
    left[-1] = float(r(0.0))
    right[-1] = 1.0
    return MonotonePWL(xs, left, right)


def canonical_experiment(mu: AtomicDistribution, tol: float = TOL) -> MeasurePair:
    """A concrete pair ``(P, P')`` whose likelihood-ratio law is ``mu``.

    Outcomes are the atoms of ``mu``; when ``E[Z] < 1`` an extra outcome
    ``"inf"`` carries the singular part of ``P'``.
    """
    BinaryExperiment(mu)
    x, p = mu.locations, mu.masses
    pp = x * p
    labels = [float(v) for v in x]
    P = [float(v) for v in p]
    Pp = [float(v) for v in pp]
    defect = 1.0 - float(pp.sum())
    if defect > tol:
        labels.append(INF_LABEL)
        P.append(0.0)
        Pp.append(defect)
    return MeasurePair(tuple(labels), tuple(P), tuple(Pp))


def experiment_sequence_distance(
    seq: Sequence[BinaryExperiment], target: BinaryExperiment
) -> list[float]:
    """``Delta2`` of each element against ``target``."""
    return [deficiency(E, target)[1] for E in seq]
