"""Symmetric two- and three-group samples.

Groups 1 and 2 have ``d`` observations each with means ``-1`` and ``+1``; an
optional group 3 has ``c`` observations with mean ``0``. The total error sum
of squares is ``sigma ** 2``, so ``SS(Tr) = 2 d`` and every test verdict
reduces to comparing ``sigma ** 2`` with a critical-value expression.
Throughout, ``a = d - 1`` and ``b = c - 1``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import check_alpha, check_int
from .distributions import f_critical, q_critical
from .exceptions import DomainError


@dataclass(frozen=True)
class SymmetricSpec:
    """Sizes ``d`` (groups 1, 2) and ``c`` (group 3), error scale ``sigma``, level ``alpha``."""

    d: int
    c: int
    sigma: float
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "d", check_int(self.d, "d", minimum=2))
        object.__setattr__(self, "c", check_int(self.c, "c", minimum=0))
        object.__setattr__(self, "alpha", check_alpha(self.alpha))
        sigma = float(self.sigma)
        if not sigma > 0:
            raise DomainError(f"sigma must be positive, got {self.sigma!r}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def a(self) -> int:
        return self.d - 1

    @property
    def b(self) -> int:
        if self.c < 1:
            raise DomainError("b is defined only when group 3 is present (c >= 1)")
        return self.c - 1


def _need_third(spec):
    if spec.c < 1:
        raise DomainError("the three-group tests need c >= 1")


def reject_2group_anova(spec: SymmetricSpec) -> bool:
    """ANOVA on groups 1, 2: ``4 d (d - 1) / sigma^2 > F_crit(alpha, 1, 2d - 2)``."""
    d = spec.d
    return bool(4.0 * d * (d - 1) > f_critical(spec.alpha, 1, 2 * d - 2) * spec.sigma ** 2)


def reject_2group_tk(spec: SymmetricSpec) -> bool:
    """Tukey on groups 1, 2: ``8 d (d - 1) / sigma^2 > Q^2(alpha, 2, 2d - 2)``."""
    d = spec.d
    return bool(8.0 * d * (d - 1) > q_critical(spec.alpha, 2, 2 * d - 2) ** 2 * spec.sigma ** 2)


def reject_3group_anova(spec: SymmetricSpec) -> bool:
    """ANOVA on all three groups: ``d (2d + c - 3) / sigma^2 > F_crit(alpha, 2, 2d + c - 3)``."""
    _need_third(spec)
    d, nu = spec.d, 2 * spec.d + spec.c - 3
    return bool(d * nu > f_critical(spec.alpha, 2, nu) * spec.sigma ** 2)


def reject_3group_tk(spec: SymmetricSpec) -> bool:
    """Tukey-Kramer on pair (1, 2) of three: ``4 d (2d + c - 3) / sigma^2 > Q^2(alpha, 3, 2d + c - 3)``."""
    _need_third(spec)
    d, nu = spec.d, 2 * spec.d + spec.c - 3
    return bool(4.0 * d * nu > q_critical(spec.alpha, 3, nu) ** 2 * spec.sigma ** 2)


def _ab(a, b):
    return check_int(a, "a"), check_int(b, "b", minimum=0)


def anova_pair_only_feasible(a: int, b: int, alpha: float) -> bool:
    """Whether some ``sigma`` makes ANOVA reject on groups 1, 2 but not on all three.

    Holds iff ``F_crit(alpha, 1, 2a) / F_crit(alpha, 2, 2a + b) < 4a / (2a + b)``.
    """
    a, b = _ab(a, b)
    alpha = check_alpha(alpha)
    return bool(f_critical(alpha, 1, 2 * a) * (2 * a + b) < 4 * a * f_critical(alpha, 2, 2 * a + b))


def tk_triple_only_feasible(a: int, b: int, alpha: float) -> bool:
    """Whether ``Q^2(alpha, 3, 2a + b) / Q^2(alpha, 2, 2a) < (2a + b) / (2a)``.

    This is exactly the condition for a ``sigma`` to exist at which
    Tukey-Kramer separates groups 1 and 2 in the three-group sample while
    the two-group Tukey test on groups 1 and 2 alone does not; see
    :func:`tk_sigma_interval`. The reverse situation (the pair test rejects,
    the three-group test does not) is the negation of this inequality.
    """
    a, b = _ab(a, b)
    alpha = check_alpha(alpha)
    q3 = q_critical(alpha, 3, 2 * a + b)
    q2 = q_critical(alpha, 2, 2 * a)
    return bool(q3 * q3 * 2 * a < q2 * q2 * (2 * a + b))


@dataclass(frozen=True)
class SigmaInterval:
    """Half-open interval ``[lower, upper)`` of ``sigma`` values; empty when ``lower >= upper``."""

    lower: float
    upper: float

    @property
    def empty(self) -> bool:
        return not self.lower < self.upper

    @property
    def midpoint(self) -> float:
        if self.empty:
            raise DomainError("the interval is empty")
        return 0.5 * (self.lower + self.upper)

    def __contains__(self, sigma) -> bool:
        return self.lower <= sigma < self.upper


def sigma_interval(d: int, c: int, alpha: float) -> SigmaInterval:
    """Values of ``sigma`` at which ANOVA rejects for groups 1, 2 but not for all three."""
    d = check_int(d, "d", minimum=2)
    c = check_int(c, "c")
    alpha = check_alpha(alpha)
    nu = 2 * d + c - 3
    lower = math.sqrt(d * nu / f_critical(alpha, 2, nu))
    upper = math.sqrt(4.0 * d * (d - 1) / f_critical(alpha, 1, 2 * d - 2))
    return SigmaInterval(lower, upper)


def tk_sigma_interval(d: int, c: int, alpha: float) -> SigmaInterval:
    """Values of ``sigma`` at which the three-group TK test rejects pair (1, 2) and the two-group test does not."""
    d = check_int(d, "d", minimum=2)
    c = check_int(c, "c")
    alpha = check_alpha(alpha)
    nu = 2 * d + c - 3
    lower = math.sqrt(8.0 * d * (d - 1)) / q_critical(alpha, 2, 2 * d - 2)
    upper = math.sqrt(4.0 * d * nu) / q_critical(alpha, 3, nu)
    return SigmaInterval(lower, upper)


@dataclass(frozen=True)
class QuasiPeriodicSequence:
    """Positive integers: a finite ``prefix`` followed by ``period`` repeated forever."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        prefix = tuple(check_int(v, "term") for v in self.prefix)
        period = tuple(check_int(v, "term") for v in self.period)
        if not period:
            raise DomainError("period must be nonempty")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @classmethod
    def from_blocks(cls, prefix_blocks, period_blocks):
        """Build from ``(block, repetitions)`` pairs, e.g. ``[((8, 9), 2), ((7,), 3)]``."""
        def expand(blocks):
            out = []
            for block, reps in blocks:
                out.extend(tuple(block) * check_int(reps, "repetitions", minimum=0))
            return tuple(out)
        return cls(expand(prefix_blocks), expand(period_blocks))

    def terms(self, count: int):
        """The first ``count`` terms."""
        out = list(self.prefix[:count])
        while len(out) < count:
            out.extend(self.period[:count - len(out)])
        return out


def _prefix_sums(values):
    out, acc = [0], 0
    for v in values:
        acc += v
        out.append(acc)
    return out


def a_of(a: int, seq: QuasiPeriodicSequence, *, strict: bool = False) -> int:
    """Number of leading terms whose sum does not exceed ``a``.

    The unique ``t >= 0`` with ``s_1 + ... + s_t <= a < s_1 + ... + s_(t+1)``.
    With ``strict=True`` the partial sums must stay strictly below ``a``
    instead (``s_1 + ... + s_t < a <= s_1 + ... + s_(t+1)``), which is the
    same as the default count evaluated at ``a - 1``.
    """
    a = check_int(a, "a", minimum=1 if strict else 0)
    if strict:
        a -= 1
    head = _prefix_sums(seq.prefix)
    if a < head[-1]:
        return bisect.bisect_right(head, a) - 1
    rest = a - head[-1]
    cycle = _prefix_sums(seq.period)
    full, rem = divmod(rest, cycle[-1])
    return len(seq.prefix) + full * len(seq.period) + bisect.bisect_right(cycle, rem) - 1


_A = (8, 9, 8, 8, 9)
_B = (8, 9, 8, 8, 9, 8, 8, 9)
ANOVA_BOUNDARY = QuasiPeriodicSequence.from_blocks(
    [((6,), 1), (_A, 2), (_B, 4), (_A, 1), (_B, 5)], [(_A, 1), (_B, 6)])
TK_BOUNDARY = QuasiPeriodicSequence.from_blocks([((3, 7), 1)], [((8,), 1), ((7,), 7), ((8,), 1), ((7,), 6)])


@dataclass(frozen=True)
class BoundaryCheck:
    """Outcome of an exhaustive comparison against a sequence-based boundary."""

    holds: bool
    counterexample: tuple | None
    checked: int


@lru_cache(maxsize=16)
def _critical_grids(alpha: float, nu_max: int):
    nus = np.arange(1, nu_max + 1)
    return (f_critical(alpha, 1, nus), f_critical(alpha, 2, nus),
            q_critical(alpha, 2, nus), q_critical(alpha, 3, nus))


def verify_boundary(which: str, a_max: int, alpha: float = 0.05, *, strict: bool = False) -> BoundaryCheck:
    """Check a feasibility criterion against its sequence-based closed form.

    ``which="anova"``: :func:`anova_pair_only_feasible` is true iff
    ``b < a + a_of(a, ANOVA_BOUNDARY)``, for ``b = 0 .. a + a_of(a) + 2``.
    ``which="tk"``: :func:`tk_triple_only_feasible` is true iff
    ``b >= a - a_of(a, TK_BOUNDARY)``, for ``b = 0 .. a + 2``.
    Every ``a = 1 .. a_max`` is scanned; critical values come from one
    vectorized grid per distribution. ``strict`` selects the counting
    convention of :func:`a_of`. The scan stops at the first mismatch.
    """
    a_max = check_int(a_max, "a_max")
    alpha = check_alpha(alpha)
    if which not in ("anova", "tk"):
        raise DomainError(f"which must be 'anova' or 'tk', got {which!r}")
    seq = ANOVA_BOUNDARY if which == "anova" else TK_BOUNDARY
    shifts = [a_of(a, seq, strict=strict) for a in range(1, a_max + 1)]
    b_top = [a + s + 2 if which == "anova" else a + 2 for a, s in zip(range(1, a_max + 1), shifts)]
    nu_max = max(2 * a + bt for a, bt in zip(range(1, a_max + 1), b_top))
    f1, f2, q2, q3 = _critical_grids(alpha, nu_max)
    checked = 0
    for a, s, bt in zip(range(1, a_max + 1), shifts, b_top):
        b = np.arange(bt + 1)
        nu3 = 2 * a + b
        if which == "anova":
            actual = f1[2 * a - 1] * nu3 < 4 * a * f2[nu3 - 1]
            expected = b < a + s
        else:
            actual = q3[nu3 - 1] ** 2 * 2 * a < q2[2 * a - 1] ** 2 * nu3
            expected = b >= a - s
        checked += b.size
        bad = np.nonzero(actual != expected)[0]
        if bad.size:
            return BoundaryCheck(False, (a, int(b[bad[0]])), checked)
    return BoundaryCheck(True, None, checked)
