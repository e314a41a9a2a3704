"""Joint verdicts of ANOVA, Tukey-Kramer and their two-group restrictions."""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

from ._validation import check_alpha
from .anova import AnovaTable, GroupedSample, anova_reject, anova_table, restrict
from .exceptions import DomainError
from .tukey import PairwiseComparison, modified_tk, tk_test


class CaseLabel(str, enum.Enum):
    """How the global F test and the pairwise TK verdicts relate."""

    AGREE = "agree"
    CASE_I = "case_i"  # F rejects, no pair is separated
    CASE_II = "case_ii"  # F does not reject, some pair is separated


@dataclass(frozen=True)
class RestrictedPair:
    """ANOVA and Tukey on the two groups ``i < j`` alone."""

    i: int
    j: int
    anova_p: float
    anova_reject: bool
    modified_tk_p: float
    modified_tk_reject: bool


@dataclass(frozen=True)
class ContradictionReport:
    alpha: float
    anova: AnovaTable
    anova_reject: bool
    tk_rows: tuple
    restricted: tuple
    case_label: CaseLabel
    contradiction_flag: bool
    flagged_pairs: tuple

    @property
    def anova_p(self) -> float:
        return self.anova.p_value

    def restricted_pair(self, i: int, j: int) -> RestrictedPair | None:
        lo, hi = min(i, j), max(i, j)
        for r in self.restricted:
            if (r.i, r.j) == (lo, hi):
                return r
        return None

    def to_dict(self) -> dict:
        out = asdict(self)
        out["case_label"] = self.case_label.value
        out["tk_rows"] = [asdict(r) for r in self.tk_rows]
        out["restricted"] = [asdict(r) for r in self.restricted]
        out["flagged_pairs"] = [list(p) for p in self.flagged_pairs]
        return out


def classify_verdicts(anova_rejects: bool, tk_rows) -> CaseLabel:
    """Case label from the global verdict and the TK rows alone."""
    any_pair = any(r.reject for r in tk_rows)
    if anova_rejects and not any_pair:
        return CaseLabel.CASE_I
    if not anova_rejects and any_pair:
        return CaseLabel.CASE_II
    return CaseLabel.AGREE


def _restricted(sample: GroupedSample, i: int, j: int, alpha: float) -> RestrictedPair | None:
    try:
        sub = restrict(sample, i, j)
    except DomainError:
        return None  # fewer than three observations in the pair
    row = modified_tk(sample, i, j, alpha)
    return RestrictedPair(i, j, anova_table(sub).p_value, anova_reject(sub, alpha), row.p_adj, row.reject)


def full_report(sample: GroupedSample, alpha: float) -> ContradictionReport:
    """Run every test layer on ``sample`` and label the outcome.

    The contradiction flag is raised when the global F test does not reject
    while some pair is separated by TK and, after discarding the other
    groups, both ANOVA and the two-group Tukey test reject that pair too.
    """
    alpha = check_alpha(alpha)
    tab = anova_table(sample)
    rejects = anova_reject(sample, alpha)
    rows = tuple(tk_test(sample, alpha))
    restricted = []
    for j in range(1, sample.k + 1):
        for i in range(j + 1, sample.k + 1):
            r = _restricted(sample, j, i, alpha)
            if r is not None:
                restricted.append(r)
    restricted = tuple(restricted)
    label = classify_verdicts(rejects, rows)
    flagged = []
    if label is CaseLabel.CASE_II:
        by_pair = {(r.i, r.j): r for r in restricted}
        for row in rows:
            r = by_pair.get((min(row.i, row.j), max(row.i, row.j)))
            if row.reject and r is not None and r.anova_reject and r.modified_tk_reject:
                flagged.append((r.i, r.j))
    return ContradictionReport(alpha, tab, rejects, rows, restricted, label, bool(flagged), tuple(flagged))


__all__ = ["CaseLabel", "ContradictionReport", "PairwiseComparison", "RestrictedPair",
           "classify_verdicts", "full_report"]
