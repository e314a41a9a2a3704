"""Group summaries and the one-way ANOVA decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._validation import check_alpha, check_int
from .distributions import f_critical, f_upper_tail
from .exceptions import DomainError


@dataclass(frozen=True)
class GroupedSample:
    """``k >= 2`` groups of finite observations with at least one error df.

    Parameters
    ----------
    groups : sequence of sequences
        One sequence of observations per group.
    labels : sequence of str, optional
        Group names; defaults to ``Group1``, ``Group2``, ...
    """

    groups: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        groups = tuple(np.array(g, dtype=float).ravel() for g in self.groups)
        for arr in groups:
            arr.setflags(write=False)
        if len(groups) < 2:
            raise DomainError(f"need at least 2 groups, got {len(groups)}")
        for j, arr in enumerate(groups, start=1):
            if arr.size == 0:
                raise DomainError(f"group {j} is empty")
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"group {j} contains non-finite values")
        n = sum(arr.size for arr in groups)
        if n - len(groups) < 1:
            raise DomainError("need n - k >= 1 so that the error mean square is defined")
        labels = tuple(str(s) for s in self.labels) or tuple(f"Group{j}" for j in range(1, len(groups) + 1))
        if len(labels) != len(groups):
            raise DomainError("one label per group is required")
        if len(set(labels)) != len(labels):
            raise DomainError("group labels must be distinct")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_long(cls, labels, values):
        """Build from parallel label/value sequences; groups keep first-appearance order."""
        order: dict = {}
        for lab, val in zip(labels, values, strict=True):
            order.setdefault(str(lab), []).append(float(val))
        return cls(tuple(order.values()), tuple(order))

    def to_long(self):
        """Return ``(labels, values)`` lists in group order."""
        labs, vals = [], []
        for lab, arr in zip(self.labels, self.groups):
            labs.extend([lab] * arr.size)
            vals.extend(arr.tolist())
        return labs, vals

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def sizes(self) -> np.ndarray:
        return np.array([arr.size for arr in self.groups])

    @property
    def n(self) -> int:
        return int(self.sizes.sum())

    def __eq__(self, other):
        if not isinstance(other, GroupedSample):
            return NotImplemented
        return self.labels == other.labels and all(
            a.shape == b.shape and np.array_equal(a, b) for a, b in zip(self.groups, other.groups))

    __hash__ = None


@dataclass(frozen=True)
class GroupSummary:
    """Size, mean and sample standard deviation (divisor ``n_j - 1``) of one group."""

    label: str
    size: int
    mean: float
    sd: float | None


def _fsum_mean(arr) -> float:
    return math.fsum(arr) / arr.size


def summarize(sample: GroupedSample):
    """Per-group summaries and the grand mean.

    Returns
    -------
    summaries : list of GroupSummary
        ``sd`` is ``None`` for single-observation groups.
    grand_mean : float
        Mean of all ``n`` observations.
    """
    out = []
    for lab, arr in zip(sample.labels, sample.groups):
        mean = _fsum_mean(arr)
        sd = math.sqrt(math.fsum((arr - mean) ** 2) / (arr.size - 1)) if arr.size > 1 else None
        out.append(GroupSummary(lab, int(arr.size), mean, sd))
    grand = math.fsum(math.fsum(arr) for arr in sample.groups) / sample.n
    return out, grand


@dataclass(frozen=True)
class AnovaTable:
    """One-way ANOVA decomposition.

    ``degenerate`` marks samples with no spread at all (``sse == ss_tr == 0``),
    where the F statistic is undefined; it is reported as ``nan`` with
    ``p_value = 1``. Zero error with positive treatment spread gives
    ``f_stat = inf`` and ``p_value = 0``.
    """

    ss_tr: float
    sse: float
    ms_tr: float
    mse: float
    f_stat: float
    df1: int
    df2: int
    p_value: float
    grand_mean: float
    ss_tr_pairwise: float
    degenerate: bool = False

    @property
    def ss_total(self) -> float:
        return self.ss_tr + self.sse


def _ss_treatment(sizes, means, grand):
    group_form = math.fsum(nj * (mj - grand) ** 2 for nj, mj in zip(sizes, means))
    terms = [sizes[j] * sizes[i] * (means[j] - means[i]) ** 2
             for j in range(len(sizes)) for i in range(j + 1, len(sizes))]
    pairwise = math.fsum(terms) / math.fsum(sizes)
    return group_form, pairwise


def anova_table(sample: GroupedSample) -> AnovaTable:
    """Decompose the total sum of squares and test equality of all group means.

    The treatment sum of squares is computed both around the grand mean and
    from pairwise differences of group means, ``(1/n) sum_{j<i} n_j n_i
    (mean_j - mean_i)^2``; the second is stored as ``ss_tr_pairwise``.
    """
    summaries, grand = summarize(sample)
    sizes = [s.size for s in summaries]
    means = [s.mean for s in summaries]
    ss_tr, ss_pair = _ss_treatment(sizes, means, grand)
    sse = math.fsum(math.fsum((arr - m) ** 2) for arr, m in zip(sample.groups, means))
    df1, df2 = sample.k - 1, sample.n - sample.k
    ms_tr, mse = ss_tr / df1, sse / df2
    degenerate = False
    if mse > 0:
        f = ms_tr / mse
        p = float(f_upper_tail(f, df1, df2))
    elif ss_tr > 0:
        f, p = math.inf, 0.0
    else:
        f, p, degenerate = math.nan, 1.0, True
    return AnovaTable(ss_tr, sse, ms_tr, mse, f, df1, df2, p, grand, ss_pair, degenerate)


def anova_reject(sample: GroupedSample, alpha: float) -> bool:
    """``True`` iff ``F > F_crit(alpha, k - 1, n - k)``.

    Compared in the cross-multiplied form ``MS(Tr) > MSE * F_crit`` so that a
    zero error mean square needs no special case.
    """
    alpha = check_alpha(alpha)
    tab = anova_table(sample)
    if tab.degenerate:
        return False
    return bool(tab.ms_tr > tab.mse * f_critical(alpha, tab.df1, tab.df2))


def restrict(sample: GroupedSample, i: int, j: int) -> GroupedSample:
    """Keep only groups ``i < j`` (1-based), with their original observations."""
    i = check_int(i, "i")
    j = check_int(j, "j")
    if not i < j <= sample.k:
        raise DomainError(f"need 1 <= i < j <= {sample.k}, got i={i}, j={j}")
    return GroupedSample((sample.groups[i - 1], sample.groups[j - 1]),
                         (sample.labels[i - 1], sample.labels[j - 1]))
