"""Balanced samples on which the global F test and Tukey-Kramer disagree.

Two mean patterns over ``k`` groups of ``m = n / k`` observations with a
common sample standard deviation ``s`` (so ``MSE = s^2``):

``case_1``
    ``k`` even, the first half of the means equal to 1 and the rest 0. Some
    ``s`` makes the F test reject while no pair is separated iff
    :func:`g_function` is positive.
``case_2``
    Mean 1 for group 1 and 0 for the rest. Some ``s`` makes at least one
    pair separated while the F test does not reject iff :func:`h_function`
    is negative.

Both use the ratio ``Q^2(alpha, k, nu) / F_crit(alpha, k - 1, nu)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_alpha, check_int
from .anova import GroupedSample
from .distributions import f_critical, q_critical
from .exceptions import DomainError, InfeasibleSpecError, NumericalError
from .report import CaseLabel, ContradictionReport, full_report

POSITIVE = "positive"
NEGATIVE = "negative"
MIXED = "mixed"

DEFAULT_NU_GRID = tuple(range(1, 1001)) + (10 ** 6,)


def critical_ratio(alpha, k, nu):
    """``Q^2(alpha, k, nu) / F_crit(alpha, k - 1, nu)``; all arguments broadcast."""
    if np.any(np.asarray(k) < 2):
        raise DomainError("k must be >= 2")
    q = q_critical(alpha, k, nu)
    out = q * q / f_critical(alpha, np.asarray(k) - 1, nu)
    return float(out) if np.ndim(out) == 0 else out


def g_function(alpha, k, nu):
    """``critical_ratio - 4 (1 - 1/k)``; vectorized. Identically zero for ``k = 2``."""
    out = critical_ratio(alpha, k, nu) - 4.0 * (1.0 - 1.0 / np.asarray(k, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def h_function(alpha, k, nu):
    """``critical_ratio - k``; vectorized."""
    out = critical_ratio(alpha, k, nu) - np.asarray(k, dtype=float)
    return float(out) if np.ndim(out) == 0 else out


def classify_signs(values) -> str:
    values = np.asarray(values)
    if np.all(values > 0):
        return POSITIVE
    if np.all(values < 0):
        return NEGATIVE
    return MIXED


def h_sign_table(alphas, k_max: int, nu_grid=DEFAULT_NU_GRID, *, balanced: bool = False) -> dict:
    """Sign of ``h_function`` over the whole ``nu_grid`` for each ``alpha`` and ``k = 3..k_max``.

    With ``balanced=True`` only the ``nu`` that a balanced design can produce
    are used for each ``k``: multiples ``k (m - 1)`` of ``k``, plus every
    grid value above 10**5 kept as an asymptotic proxy.

    Returns
    -------
    dict
        ``{(alpha, k): "positive" | "negative" | "mixed"}``.
    """
    k_max = check_int(k_max, "k_max", minimum=3)
    alphas = [check_alpha(a) for a in alphas]
    nus = np.asarray(nu_grid, dtype=float)
    if not alphas or nus.size == 0:
        raise DomainError("alphas and nu_grid must be nonempty")
    ks = np.arange(3, k_max + 1)
    out = {}
    for a in alphas:
        h = h_function(a, ks[:, None], nus[None, :])
        for k, row in zip(ks, h):
            if balanced:
                row = row[(nus % k == 0) | (nus > 1e5)]
            out[(a, int(k))] = classify_signs(row)
    return out


def sign_ranges(table: dict, alpha: float):
    """Collapse one ``alpha`` row of :func:`h_sign_table` into the runs of each sign.

    Returns ``{sign: [(k_first, k_last), ...]}``.
    """
    ks = sorted(k for a, k in table if a == alpha)
    runs: dict = {}
    for k in ks:
        sign = table[(alpha, k)]
        spans = runs.setdefault(sign, [])
        if spans and spans[-1][1] == k - 1:
            spans[-1] = (spans[-1][0], k)
        else:
            spans.append((k, k))
    return runs


class CaseKind(str, enum.Enum):
    CASE_1 = "case_1"
    CASE_2 = "case_2"


@dataclass(frozen=True)
class FamilySpec:
    """Balanced design of ``k`` groups of ``n / k`` observations at level ``alpha``."""

    k: int
    n: int
    alpha: float
    case_kind: CaseKind

    def __post_init__(self):
        k = check_int(self.k, "k", minimum=2)
        n = check_int(self.n, "n")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        object.__setattr__(self, "case_kind", CaseKind(self.case_kind))
        if n % k:
            raise DomainError(f"n must be a multiple of k, got n={n}, k={k}")
        if n // k < 2:
            raise DomainError("each group needs at least 2 observations")
        if self.case_kind is CaseKind.CASE_1 and k % 2:
            raise DomainError(f"case_1 needs an even number of groups, got k={k}")

    @property
    def group_size(self) -> int:
        return self.n // self.k

    @property
    def means(self) -> tuple:
        if self.case_kind is CaseKind.CASE_1:
            half = self.k // 2
            return (1.0,) * half + (0.0,) * half
        return (1.0,) + (0.0,) * (self.k - 1)


@dataclass(frozen=True)
class MseWindow:
    """Half-open interval ``[lower, upper)`` of admissible ``MSE`` values."""

    lower: float
    upper: float

    @property
    def nonempty(self) -> bool:
        return self.lower < self.upper

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)


def mse_bounds(means, sizes, alpha: float):
    """``MSE`` values at which the F test and the TK test change their verdicts.

    Returns
    -------
    f_bound : float
        The F test rejects iff ``MSE < f_bound = SS(Tr) / ((k - 1) F_crit)``.
    tk_bound : float
        Some pair is separated iff ``MSE < tk_bound``, the largest over pairs
        of ``2 diff^2 n_i n_j / ((n_i + n_j) Q^2)``.
    """
    means = [float(v) for v in means]
    sizes = [int(v) for v in sizes]
    k, n = len(means), sum(sizes)
    nu = n - k
    pair_terms = [(sizes[j] * sizes[i], (means[j] - means[i]) ** 2, sizes[j] + sizes[i])
                  for j in range(k) for i in range(j + 1, k)]
    ss_tr = math.fsum(w * d2 for w, d2, _ in pair_terms) / n
    f_bound = ss_tr / ((k - 1) * f_critical(alpha, k - 1, nu))
    q = q_critical(alpha, k, nu)
    tk_bound = max(2.0 * d2 * w / (tot * q * q) for w, d2, tot in pair_terms)
    return f_bound, tk_bound


def mse_window(spec: FamilySpec) -> MseWindow:
    """Values of ``MSE = s^2`` that produce the disagreement ``spec`` asks for."""
    f_bound, tk_bound = mse_bounds(spec.means, [spec.group_size] * spec.k, spec.alpha)
    if spec.case_kind is CaseKind.CASE_1:
        return MseWindow(tk_bound, f_bound)
    return MseWindow(f_bound, tk_bound)


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def synthesize_group(m: int, target_mean: float, target_sd: float, seed) -> np.ndarray:
    """``m`` values with exactly the given sample mean and standard deviation.

    A standard normal base vector is drawn from PCG64 seeded with ``seed``,
    centred and scaled to unit sample standard deviation (divisor ``m - 1``),
    then mapped affinely onto the targets.
    """
    m = check_int(m, "m")
    target_mean = float(target_mean)
    target_sd = float(target_sd)
    if not (math.isfinite(target_mean) and math.isfinite(target_sd)) or target_sd < 0:
        raise DomainError("target mean must be finite and target sd finite and nonnegative")
    if target_sd == 0:
        return np.full(m, target_mean)
    if m < 2:
        raise DomainError("a positive standard deviation needs m >= 2")
    base = _rng(seed).standard_normal(m)
    for _ in range(2):  # the second pass removes rounding left by the first
        base = base - math.fsum(base) / m
        base = base / math.sqrt(math.fsum(base * base) / (m - 1))
    return target_mean + target_sd * base


def build_family_sample(spec: FamilySpec, seed) -> tuple[GroupedSample, ContradictionReport]:
    """Emit a sample realising ``spec`` and check it with the actual tests.

    Every group gets the prescribed mean and the common standard deviation
    ``s = sqrt(midpoint of mse_window)``. Group base vectors use independent
    streams spawned from ``seed``.

    Raises
    ------
    InfeasibleSpecError
        If the window is empty, i.e. ``G <= 0`` (case 1) or ``H >= 0`` (case 2).
    NumericalError
        If the emitted sample does not show the expected verdicts.
    """
    window = mse_window(spec)
    if not window.nonempty:
        nu = spec.n - spec.k
        if spec.case_kind is CaseKind.CASE_1:
            cond = f"G(alpha={spec.alpha}, k={spec.k}, nu={nu}) > 0"
        else:
            cond = f"H(alpha={spec.alpha}, k={spec.k}, nu={nu}) < 0"
        raise InfeasibleSpecError(f"no admissible MSE: the sign condition {cond} fails")
    s = math.sqrt(window.midpoint)
    children = np.random.SeedSequence(seed).spawn(spec.k)
    groups = tuple(synthesize_group(spec.group_size, mu, s, child)
                   for mu, child in zip(spec.means, children))
    sample = GroupedSample(groups)
    report = full_report(sample, spec.alpha)
    expected = CaseLabel.CASE_I if spec.case_kind is CaseKind.CASE_1 else CaseLabel.CASE_II
    if report.case_label is not expected:
        raise NumericalError(f"emitted sample is labelled {report.case_label.value}, expected {expected.value}")
    return sample, report


@dataclass(frozen=True)
class GeneratorSpec:
    """Normal populations with means ``mus``, common sd ``sigma`` and group ``sizes``."""

    mus: tuple
    sigma: float
    sizes: tuple
    seed: int

    def __post_init__(self):
        mus = tuple(float(v) for v in self.mus)
        sizes = tuple(check_int(v, "size") for v in self.sizes)
        if len(mus) != len(sizes) or len(mus) < 2:
            raise DomainError("need one size per mean and at least two groups")
        if not float(self.sigma) > 0:
            raise DomainError("sigma must be positive")
        object.__setattr__(self, "mus", mus)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "seed", check_int(self.seed, "seed", minimum=0))


def sample_inah(spec: GeneratorSpec) -> GroupedSample:
    """Independent normal draws per group from one PCG64 stream."""
    rng = _rng(spec.seed)
    return GroupedSample(tuple(rng.normal(mu, spec.sigma, size) for mu, size in zip(spec.mus, spec.sizes)))


def case_frequency(mus, sigma, sizes, alpha: float, trials: int, seed: int = 0) -> dict:
    """Share of seeds ``seed .. seed + trials - 1`` giving each case label."""
    trials = check_int(trials, "trials")
    counts = {label: 0 for label in CaseLabel}
    for t in range(trials):
        sample = sample_inah(GeneratorSpec(mus, sigma, sizes, seed + t))
        counts[full_report(sample, alpha).case_label] += 1
    return {label.value: c / trials for label, c in counts.items()}
