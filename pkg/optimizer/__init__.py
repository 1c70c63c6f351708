"""
Allocation search and region construction for the coding schemes and bounds.
"""

from .compare import (
    INCLUSION_CHAIN,
    InclusionVerdict,
    SupportGap,
    check_inclusion,
    feedback_gain,
    inclusion_verdicts,
    region_gap,
)
from .config import SearchConfig, load_search_config
from .exceptions import SearchConfigError
from .linear_program import solve_variant_lp
from .regions import (
    SCHEME_ALIASES,
    SCHEMES,
    CornerRow,
    RegionTrace,
    SweepPoint,
    build_region,
    corner_rows,
    format_allocation,
    resolve_scheme,
    trace_region,
)
from .search import maximize_weighted_rate, search_candidates, simplex_grid

__all__ = [
    "SearchConfig",
    "SearchConfigError",
    "load_search_config",
    "maximize_weighted_rate",
    "search_candidates",
    "simplex_grid",
    "solve_variant_lp",
    "SCHEMES",
    "SCHEME_ALIASES",
    "SweepPoint",
    "RegionTrace",
    "CornerRow",
    "resolve_scheme",
    "trace_region",
    "build_region",
    "corner_rows",
    "format_allocation",
    "INCLUSION_CHAIN",
    "InclusionVerdict",
    "SupportGap",
    "check_inclusion",
    "inclusion_verdicts",
    "region_gap",
    "feedback_gain",
]
