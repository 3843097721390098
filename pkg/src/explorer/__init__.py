"""
Explorer Package

Seeded generators for every configuration family, randomized searches for
the two open questions, and independent re-verification of their findings.
"""

from .generators import (
    DEFAULT_BOUND,
    RETRY_BUDGET,
    derive_seed,
    gen_affine_map,
    gen_common_axis_family,
    gen_common_center_family,
    gen_line,
    gen_pairwise_perspective_family,
    gen_perspective_pair,
    gen_point,
    gen_projmap,
    gen_triangle,
    trial_rng,
)
from .search import (
    OP2_FAMILIES,
    SearchReport,
    open_problem_1_search,
    open_problem_2_search,
)
from .verify import VerificationSummary, verify_report, verify_report_file

__all__ = [
    "DEFAULT_BOUND",
    "OP2_FAMILIES",
    "RETRY_BUDGET",
    "SearchReport",
    "VerificationSummary",
    "derive_seed",
    "gen_affine_map",
    "gen_common_axis_family",
    "gen_common_center_family",
    "gen_line",
    "gen_pairwise_perspective_family",
    "gen_perspective_pair",
    "gen_point",
    "gen_projmap",
    "gen_triangle",
    "open_problem_1_search",
    "open_problem_2_search",
    "trial_rng",
    "verify_report",
    "verify_report_file",
]
