"""Finite-family diagnostics for tightness, uniform integrability and convergence.

Tightness and uniform integrability are properties of infinite families.
Here each functional is computed exactly for a finite family;
watching it as the family grows is left to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .dist import AtomicDistribution, from_iqf
from .pwl import Interval, lower_convex_envelope, sup_distance

__all__ = [
    "FamilyDiagnostics",
    "tightness_oscillation",
    "ui_modulus",
    "sup_abs_mean",
    "family_diagnostics",
    "dominating_variable",
    "uniform_distance_profile",
]


@dataclass(frozen=True)
class FamilyDiagnostics:
    oscillation: float
    modulus: float
    sup_abs_mean: float

    def to_dict(self) -> dict:
        return {
            "oscillation": self.oscillation,
            "modulus": self.modulus,
            "sup_abs_mean": self.sup_abs_mean,
        }


def _nonempty(family) -> list[AtomicDistribution]:
    family = list(family)
    if not family:
        raise ValueError("family must be nonempty")
    return family


def tightness_oscillation(family: Sequence[AtomicDistribution], u: float, v: float) -> float:
    """``max_alpha |Q_alpha(u) - Q_alpha(v)|``."""
    family = _nonempty(family)
    if not (0 < u < 1 and 0 < v < 1):
        raise ValueError("u and v must lie in (0, 1)")
    return max(abs(d.iqf(u) - d.iqf(v)) for d in family)


def _modulus(d: AtomicDistribution, delta: float) -> float:
    # for convex Q the widest swing in any window sits at one of the ends
    Q = d.iqf
    left = Q(0.0) - Q.min_on(0.0, delta)
    right = Q(1.0) - Q.min_on(1.0 - delta, 1.0)
    return max(left, right, 0.0)


def ui_modulus(family: Sequence[AtomicDistribution], delta: float) -> float:
    """Largest modulus of continuity of the IQFs at gap ``delta``."""
    family = _nonempty(family)
    if not 0 < delta <= 1:
        raise ValueError("delta must lie in (0, 1]")
    return max(_modulus(d, delta) for d in family)


def sup_abs_mean(family: Sequence[AtomicDistribution]) -> float:
    family = _nonempty(family)
    return max(max(d.neg_part_mean(), d.pos_part_mean()) for d in family)


def family_diagnostics(
    family: Sequence[AtomicDistribution], u: float = 0.25, v: float = 0.75, delta: float = 0.1
) -> FamilyDiagnostics:
    family = _nonempty(family)
    return FamilyDiagnostics(
        oscillation=tightness_oscillation(family, u, v),
        modulus=ui_modulus(family, delta),
        sup_abs_mean=sup_abs_mean(family),
    )


def dominating_variable(family: Sequence[AtomicDistribution]) -> AtomicDistribution:
    """Smallest law dominating every ``|X_alpha|`` in increasing convex order.

    Its shifted IQF is the convex envelope of the members' shifted IQFs.
    """
    family = _nonempty(family)
    curves = [d.absolute().iqf_shift1 for d in family]
    K = lower_convex_envelope(curves, Interval(0.0, 1.0))
    return from_iqf(K.shift(-K(0.0)))


def uniform_distance_profile(
    seq: Sequence[AtomicDistribution],
    target: AtomicDistribution,
    a: float,
    b: float,
    shifted: Optional[int] = None,
) -> list[float]:
    """``sup_{[a, b]} |Q_n - Q|`` for each element of ``seq``.

    ``shifted`` selects the raw IQF (``None``) or the shifted curves
    ``Q - Q(0)`` (``0``) and ``Q - Q(1)`` (``1``).  The raw profile needs
    ``0 < a < b < 1``; the shifted ones also allow the closed ends.
    """
    if shifted is None:
        ok = 0 < a < b < 1
    elif shifted in (0, 1):
        ok = 0 <= a < b <= 1
    else:
        raise ValueError("shifted must be None, 0 or 1")
    if not ok or math.isnan(a) or math.isnan(b):
        raise ValueError(f"invalid interval [{a}, {b}]")

    def curve(d: AtomicDistribution):
        if shifted is None:
            return d.iqf
        return d.iqf_shift0 if shifted == 0 else d.iqf_shift1

    ref = curve(target)
    on = Interval(a, b)
    return [sup_distance(curve(d), ref, on) for d in seq]
