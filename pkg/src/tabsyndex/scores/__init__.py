from .association import (
    AssociationMatrix,
    association_matrix,
    correlation_ratio,
    correlation_score,
    entry_error,
    pearson,
    signed_log,
    theils_u,
)
from .basic import BasicBreakdown, BasicStatTriple, basic_score, stat_error
from .coverage import BinSpec, CoverageBreakdown, bin_counts, clipped_ratios, column_coverage, coverage_score
from .efficacy import EfficacyRow, ml_efficacy, relative_error
from .pmse import PmseResult, expected_pmse0, pmse, pmse_index, s_pmse_index

__all__ = [
    "AssociationMatrix",
    "BasicBreakdown",
    "BasicStatTriple",
    "BinSpec",
    "CoverageBreakdown",
    "EfficacyRow",
    "PmseResult",
    "association_matrix",
    "basic_score",
    "bin_counts",
    "clipped_ratios",
    "column_coverage",
    "correlation_ratio",
    "correlation_score",
    "coverage_score",
    "entry_error",
    "expected_pmse0",
    "ml_efficacy",
    "pearson",
    "pmse",
    "pmse_index",
    "relative_error",
    "s_pmse_index",
    "signed_log",
    "stat_error",
    "theils_u",
]
