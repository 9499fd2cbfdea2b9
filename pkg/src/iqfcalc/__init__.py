"""Exact IDF/IQF calculus for finitely supported laws."""

from .dist import AtomicDistribution, from_idf, from_iqf
from .errors import DomainError, InconsistencyError, NoBracketError, PreconditionError
from .experiments import BinaryExperiment
from .pwl import ConcavePWL, ConvexPWL, Interval, MonotonePWL
from .skorokhod import EmbeddingPlan

__version__ = "0.1.0"

__all__ = [
    "AtomicDistribution",
    "BinaryExperiment",
    "ConcavePWL",
    "ConvexPWL",
    "DomainError",
    "EmbeddingPlan",
    "InconsistencyError",
    "Interval",
    "MonotonePWL",
    "NoBracketError",
    "PreconditionError",
    "from_idf",
    "from_iqf",
]
