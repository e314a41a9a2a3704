"""Tukey-Kramer pairwise comparisons and the two-group reduced test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import check_alpha, check_int
from .anova import GroupedSample, anova_table, restrict, summarize
from .distributions import q_critical, q_upper_tail
from .exceptions import DomainError

SUPPORTED_ALPHAS = (0.005, 0.01, 0.025, 0.05, 0.1, 0.25, 0.5)


@dataclass(frozen=True)
class PairwiseComparison:
    """One Tukey-Kramer row comparing group ``i`` against group ``j``.

    ``diff`` is ``mean_i - mean_j`` and ``reject`` is ``|diff| > critical_range``
    (a tie is not a rejection). The interval ``[lwr, upr]`` is ``diff`` plus
    or minus the critical range, so it excludes zero exactly when the pair
    is rejected. ``statistic`` is ``|diff|`` divided by its standard error
    ``sqrt((MSE / 2)(1/n_i + 1/n_j))``.
    """

    i: int
    j: int
    label: str
    diff: float
    critical_range: float
    p_adj: float
    lwr: float
    upr: float
    reject: bool
    statistic: float


@lru_cache(maxsize=1024)
def _q_crit(alpha: float, k: int, df: int) -> float:
    return q_critical(alpha, k, df)


def _pair_rows(means, sizes, labels, mse, k, df, alpha):
    q_crit = _q_crit(alpha, k, df)
    pairs = [(i, j) for j in range(len(means)) for i in range(j + 1, len(means))]
    diffs = np.array([means[i] - means[j] for i, j in pairs])
    se = np.array([math.sqrt(0.5 * mse * (1.0 / sizes[i] + 1.0 / sizes[j])) for i, j in pairs])
    with np.errstate(divide="ignore", invalid="ignore"):
        stat = np.where(se > 0, np.abs(diffs) / se, np.where(diffs != 0, np.inf, 0.0))
    p = np.where(np.isinf(stat), 0.0, 1.0)
    finite = np.isfinite(stat) & (stat > 0)
    if finite.any():
        p[finite] = q_upper_tail(stat[finite], k, df)
    rows = []
    for (i, j), d, s, st, pv in zip(pairs, diffs, se, stat, p):
        cr = q_crit * s
        rows.append(PairwiseComparison(
            i + 1, j + 1, f"{labels[i]}-{labels[j]}", float(d), float(cr), float(pv),
            float(d - cr), float(d + cr), bool(abs(d) > cr), float(st)))
    return rows


def tk_test(sample: GroupedSample, alpha: float):
    """Tukey-Kramer test of every pair of group means.

    Rows cover each unordered pair once, ordered ``(2,1), (3,1), (3,2), ...``.
    Critical ranges use ``Q(alpha, k, n - k)``; adjusted p values are the
    studentized range upper tail at each pair's statistic.

    Returns
    -------
    list of PairwiseComparison
    """
    alpha = check_alpha(alpha)
    tab = anova_table(sample)
    summaries, _ = summarize(sample)
    means = [s.mean for s in summaries]
    sizes = [s.size for s in summaries]
    return _pair_rows(means, sizes, sample.labels, tab.mse, sample.k, tab.df2, alpha)


@dataclass(frozen=True)
class ModifiedTkInput:
    """Pooled quantities of the test restricted to two groups.

    ``n_prime = n_i + n_j``, ``mse_prime = sse_prime / (n_prime - 2)`` and
    ``cr_prime = Q(alpha, 2, n_prime - 2) sqrt((mse_prime / 2)(1/n_i + 1/n_j))``.
    """

    n_prime: int
    sse_prime: float
    mse_prime: float
    cr_prime: float


def modified_tk_input(sample: GroupedSample, i: int, j: int, alpha: float) -> ModifiedTkInput:
    alpha = check_alpha(alpha)
    sub = restrict(sample, i, j)
    tab = anova_table(sub)
    ni, nj = sub.sizes
    cr = _q_crit(alpha, 2, tab.df2) * math.sqrt(0.5 * tab.mse * (1.0 / ni + 1.0 / nj))
    return ModifiedTkInput(sub.n, tab.sse, tab.mse, float(cr))


def modified_tk(sample: GroupedSample, i: int, j: int, alpha: float) -> PairwiseComparison:
    """Compare groups ``i < j`` after discarding every other group.

    The pooled error and the studentized range both use the two retained
    groups only (``k = 2``, ``n_i + n_j - 2`` df). The returned row keeps the
    original group numbers, with ``diff = mean_j - mean_i``.
    """
    row = tk_test(restrict(sample, i, j), alpha)[0]
    return PairwiseComparison(j, i, row.label, row.diff, row.critical_range, row.p_adj,
                              row.lwr, row.upr, row.reject, row.statistic)


def cr_ratio(alpha: float, k: int, n: int) -> float:
    """Ratio of reduced to full critical ranges in a balanced equal-spread design.

    With ``k = 2 l`` groups of ``n / k`` observations and a common error
    mean square, this is ``Q(alpha, 2, nu) / Q(alpha, 2 l, nu l)`` with
    ``nu = 2 (n / k - 1)``.
    """
    alpha = check_alpha(alpha)
    k = check_int(k, "k", minimum=2)
    n = check_int(n, "n")
    if k % 2:
        raise DomainError(f"k must be even, got {k}")
    if n % k:
        raise DomainError(f"n must be a multiple of k, got n={n}, k={k}")
    ell = k // 2
    nu = 2 * (n // k - 1)
    if nu < 1:
        raise DomainError("need at least two observations per group")
    return float(q_critical(alpha, 2, nu) / q_critical(alpha, k, nu * ell))


def _supported_alpha(alpha: float) -> float:
    alpha = check_alpha(alpha)
    for a in SUPPORTED_ALPHAS:
        if math.isclose(alpha, a, rel_tol=1e-12):
            return a
    raise DomainError(f"alpha must be one of {SUPPORTED_ALPHAS}, got {alpha}")


def reduced_range_table(alpha: float, nus, l_max: int = 25) -> np.ndarray:
    """``Q(alpha, 2 l, nu l)`` for ``nu`` in ``nus`` (rows) and ``l = 1..l_max`` (columns)."""
    alpha = check_alpha(alpha)
    l_max = check_int(l_max, "l_max")
    nus = np.asarray(nus, dtype=float)
    ell = np.arange(1, l_max + 1, dtype=float)
    return q_critical(alpha, 2 * ell[None, :], nus[:, None] * ell[None, :])


def q_monotone_threshold(alpha: float, l_max: int = 25, nu_max: int = 30) -> int:
    """Smallest ``nu`` from which ``Q(alpha, 2 l, nu l)`` is nondecreasing in ``l``.

    Monotonicity over ``l = 1..l_max`` is checked for every ``nu`` up to
    ``nu_max``; the threshold is the smallest ``nu`` such that it holds for
    that ``nu`` and every larger one in the scan.

    Raises
    ------
    DomainError
        If ``alpha`` is not one of :data:`SUPPORTED_ALPHAS`.
    """
    alpha = _supported_alpha(alpha)
    nu_max = check_int(nu_max, "nu_max")
    nus = np.arange(1, nu_max + 1)
    table = reduced_range_table(alpha, nus, l_max)
    monotone = np.all(np.diff(table, axis=1) >= 0, axis=1)
    if not monotone[-1]:
        raise DomainError(f"no monotone range found for nu <= {nu_max}; increase nu_max")
    failing = np.nonzero(~monotone)[0]
    return int(nus[failing[-1] + 1]) if failing.size else 1
