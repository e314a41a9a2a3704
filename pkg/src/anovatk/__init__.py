"""One-way ANOVA, Tukey-Kramer and OLS tests, with tools that detect and
construct samples on which their verdicts contradict each other."""

from .anova import AnovaTable, GroupedSample, GroupSummary, anova_reject, anova_table, restrict, summarize
from .distributions import (
    FDist, QDist, TDist, f_cdf, f_critical, f_pdf, f_upper_tail, q_cdf, q_critical, q_pdf,
    q_pdf_two_groups, q_upper_tail, t_cdf, t_two_sided_p, t_upper_tail, verify_two_group_identity,
)
from .exceptions import DomainError, InfeasibleSpecError, NumericalError, SingularDesignError
from .mlr import RegressionCase, RegressionData, RegressionFit, classify_contradiction, drop_predictor, ols_fit
from .report import CaseLabel, ContradictionReport, full_report
from .tukey import PairwiseComparison, cr_ratio, modified_tk, q_monotone_threshold, tk_test

__version__ = "0.1.0"

__all__ = [
    "AnovaTable", "CaseLabel", "ContradictionReport", "DomainError", "FDist", "GroupSummary",
    "GroupedSample", "InfeasibleSpecError", "NumericalError", "PairwiseComparison", "QDist",
    "RegressionCase", "RegressionData", "RegressionFit", "SingularDesignError", "TDist",
    "anova_reject", "anova_table", "classify_contradiction", "cr_ratio", "drop_predictor",
    "f_cdf", "f_critical", "f_pdf", "f_upper_tail", "full_report", "modified_tk", "ols_fit",
    "q_cdf", "q_critical", "q_monotone_threshold", "q_pdf", "q_pdf_two_groups", "q_upper_tail",
    "restrict", "summarize", "t_cdf", "t_two_sided_p", "t_upper_tail", "tk_test",
    "verify_two_group_identity",
]
