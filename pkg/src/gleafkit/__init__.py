"""Exact, finite checks of compository and gleaf laws.

Every number is a :class:`fractions.Fraction` (or the extended value ``INF``);
nothing passes through floating point.
"""
from .compository import Compository, MemoCompository
from .errors import (CompatibilityError, CompositionError, DomainError, GleafkitError,
                     ValidationError)
from .extended import INF
from .finset import FinMap
from .gleaf import (BaseChangeDeltaGleaf, DeltaBicovering, FinSetBicovering, Gleaf,
                    base_change_to_delta, compository_to_delta_gleaf,
                    delta_gleaf_to_compository)
from .metric import FiniteMetric, MetricCompository, MetricGleaf
from .nerve import FinCategory, NerveCompository, NervePath
from .probability import Dist, ProbabilityCompository, ProbabilityGleaf
from .relational import Relation, RelationalGleaf
from .simplex import MonotoneMap
from .spans import FinLattice, NSpan, SpanCompository
from .suites import SuiteConfig, run_suite
from .topology import FinTopology, TopologyGleaf

__version__ = "0.1.0"

__all__ = [
    "BaseChangeDeltaGleaf", "CompatibilityError", "CompositionError", "Compository",
    "DeltaBicovering", "Dist", "DomainError", "FinCategory", "FinLattice", "FinMap",
    "FinSetBicovering", "FinTopology", "FiniteMetric", "Gleaf", "GleafkitError", "INF",
    "MemoCompository", "MetricCompository", "MetricGleaf", "MonotoneMap", "NSpan",
    "NerveCompository", "NervePath", "ProbabilityCompository", "ProbabilityGleaf", "Relation",
    "RelationalGleaf", "SpanCompository", "SuiteConfig", "TopologyGleaf", "ValidationError",
    "base_change_to_delta", "compository_to_delta_gleaf", "delta_gleaf_to_compository",
    "run_suite",
]
