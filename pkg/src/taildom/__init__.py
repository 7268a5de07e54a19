"""Tail dominance and over-representation in mixed populations.

Survival functions for normal, Cauchy and Laplace traits, the crossing points
of two normal densities, pairwise tail-dominance verdicts, and per-group
shares above a cutoff or within a top fraction of a mixed population.
"""

from .distributions import (
    DistributionSpec,
    EmpiricalRuleResult,
    Family,
    ccdf,
    cauchy,
    cdf,
    empirical_rule,
    isf,
    laplace,
    log_ccdf,
    log_cdf,
    log_pdf,
    normal,
    pdf,
    quantile,
)
from .dominance import Tail, TailRelation, Verdict, ccdf_ratio_trace, classify_pair, select_dominator
from .errors import (
    CutoffUnderflow,
    DistributionsIdentical,
    EmptyInput,
    InputError,
    InvalidDistribution,
    InvalidModel,
    InvalidProbability,
    InvalidRanges,
    NoExceedances,
    NumericalError,
    RequiresTwoGroups,
    TailError,
    UnsupportedFamily,
)
from .intersection import IntersectionResult, intersect_normals
from .mixture import (
    PopulationModel,
    RangeRow,
    SimulationReport,
    Subpopulation,
    TailShareReport,
    log_mixture_ccdf,
    mixture_ccdf,
    range_ratio_table,
    simulate_tail_share,
    tail_share,
    top_fraction_cutoff,
    top_fraction_shares,
)

__version__ = "0.1.0"

__all__ = [
    "CutoffUnderflow",
    "DistributionSpec",
    "DistributionsIdentical",
    "EmpiricalRuleResult",
    "EmptyInput",
    "Family",
    "InputError",
    "IntersectionResult",
    "InvalidDistribution",
    "InvalidModel",
    "InvalidProbability",
    "InvalidRanges",
    "NoExceedances",
    "NumericalError",
    "PopulationModel",
    "RangeRow",
    "RequiresTwoGroups",
    "SimulationReport",
    "Subpopulation",
    "Tail",
    "TailError",
    "TailRelation",
    "TailShareReport",
    "UnsupportedFamily",
    "Verdict",
    "cauchy",
    "ccdf",
    "ccdf_ratio_trace",
    "cdf",
    "classify_pair",
    "empirical_rule",
    "intersect_normals",
    "isf",
    "laplace",
    "log_ccdf",
    "log_cdf",
    "log_mixture_ccdf",
    "log_pdf",
    "mixture_ccdf",
    "normal",
    "pdf",
    "quantile",
    "range_ratio_table",
    "select_dominator",
    "simulate_tail_share",
    "tail_share",
    "top_fraction_cutoff",
    "top_fraction_shares",
]
