"""Fisher-Snedecor distribution."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._validation import as_output, check_alpha, check_int, check_int_array, check_nonneg, is_scalar_input
from ..exceptions import DomainError
from ._roots import invert_upper_tail
from ._special import betainc_pair, log_beta


def _dofs(df1, df2):
    if np.ndim(df1) == 0 and np.ndim(df2) == 0:
        return float(check_int(df1, "df1")), float(check_int(df2, "df2"))
    return check_int_array(df1, "df1"), check_int_array(df2, "df2")


def _tail_pair(x, d1, d2):
    """Return ``(P(F <= x), P(F > x))`` for arrays broadcast together."""
    x, d1, d2 = np.broadcast_arrays(x, d1, d2)
    finite = np.isfinite(x)
    xf = np.where(finite, x, 0.0)
    denom = d2 + d1 * xf
    y = d2 / denom
    one_minus_y = d1 * xf / denom
    upper, lower = betainc_pair(d2 / 2.0, d1 / 2.0, y, one_minus_y)
    lower = np.where(finite, lower, 1.0)
    upper = np.where(finite, upper, 0.0)
    return lower, upper


def _pdf(x, d1, d2):
    x, d1, d2 = np.broadcast_arrays(x, d1, d2)
    with np.errstate(divide="ignore", invalid="ignore"):
        logf = (0.5 * d1 * np.log(d1 / d2) + (0.5 * d1 - 1.0) * np.log(x)
                - 0.5 * (d1 + d2) * np.log1p(d1 * x / d2) - log_beta(d1 / 2.0, d2 / 2.0))
        out = np.exp(logf)
    at_zero = x == 0
    if at_zero.any():
        # density at the origin: infinite, 1 or 0 as df1 is 1, 2 or larger
        out = np.where(at_zero & (d1 == 2), 1.0, out)
        out = np.where(at_zero & (d1 == 1), np.inf, out)
        out = np.where(at_zero & (d1 > 2), 0.0, out)
    return np.where(np.isinf(x), 0.0, out)


def f_pdf(x, df1, df2):
    """Density of the F distribution with ``(df1, df2)`` degrees of freedom."""
    scalar = is_scalar_input(x, df1, df2)
    xs = check_nonneg(x)
    d1, d2 = _dofs(df1, df2)
    return as_output(_pdf(xs, d1, d2), scalar)


def f_cdf(x, df1, df2):
    scalar = is_scalar_input(x, df1, df2)
    xs = check_nonneg(x)
    d1, d2 = _dofs(df1, df2)
    return as_output(_tail_pair(xs, d1, d2)[0], scalar)


def f_upper_tail(x, df1, df2):
    """``P(F > x)``: the p-value of an observed F statistic ``x``.

    Evaluated through the regularized incomplete beta function
    ``I_y(df2/2, df1/2)`` with ``y = df2 / (df2 + df1 x)``; ``1 - y`` is
    formed directly so tiny p-values keep their relative accuracy.
    """
    scalar = is_scalar_input(x, df1, df2)
    xs = check_nonneg(x)
    d1, d2 = _dofs(df1, df2)
    return as_output(_tail_pair(xs, d1, d2)[1], scalar)


def f_critical(alpha, df1, df2):
    """Critical value ``x`` with ``P(F > x) = alpha``.

    Vectorized over any broadcastable combination of arguments.
    """
    scalar = is_scalar_input(alpha, df1, df2)
    if scalar:
        a = np.asarray(check_alpha(alpha))
    else:
        a = np.asarray(alpha, dtype=float)
        if np.any(~(a > 0) | ~(a < 1)):
            raise DomainError("alpha must lie strictly between 0 and 1")
    d1, d2 = _dofs(df1, df2)
    a, d1, d2 = np.broadcast_arrays(a, d1, d2)
    shape = a.shape
    a, d1, d2 = a.ravel().copy(), d1.ravel().copy(), d2.ravel().copy()

    def evaluate(x, idx):
        _, upper = _tail_pair(x, d1[idx], d2[idx])
        return upper, _pdf(x, d1[idx], d2[idx])

    root = invert_upper_tail(evaluate, a, np.ones_like(a))
    return as_output(root.reshape(shape), scalar)


@dataclass(frozen=True)
class FDist:
    """Fisher-Snedecor law with integer degrees of freedom."""

    df1: int
    df2: int

    def __post_init__(self):
        object.__setattr__(self, "df1", check_int(self.df1, "df1"))
        object.__setattr__(self, "df2", check_int(self.df2, "df2"))

    def pdf(self, x):
        return f_pdf(x, self.df1, self.df2)

    def cdf(self, x):
        return f_cdf(x, self.df1, self.df2)

    def sf(self, x):
        return f_upper_tail(x, self.df1, self.df2)

    def critical(self, alpha):
        return f_critical(alpha, self.df1, self.df2)
