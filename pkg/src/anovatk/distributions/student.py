"""Student t distribution for integer degrees of freedom.

Probabilities come from the finite trigonometric series for ``P(|T| <= t)``
that exists for every integer ``nu``, not from the incomplete beta function,
so the ``t^2 = F(1, nu)`` identity can be checked between two independent
routes. Below 0.01, where ``1 - P(|T| <= t)`` would cancel, the two-sided
tail is taken from ``P(F(1, nu) > t^2)`` instead so that small p-values
keep their relative accuracy; agreement between the routes is therefore
only independent above that level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._validation import as_output, check_int, check_int_array, is_scalar_input
from .fisher import _tail_pair as _f_tail_pair


def _central_mass(t, nu: int):
    """``P(|T| <= |t|)`` for a fixed integer ``nu``."""
    theta = np.arctan(np.abs(t) / math.sqrt(nu))
    sin_t = np.sin(theta)
    cos_t = np.cos(theta)
    cos2 = cos_t * cos_t
    if nu % 2 == 1:
        if nu == 1:
            return 2.0 * theta / math.pi
        term = cos_t.copy()
        acc = term.copy()
        for j in range(1, (nu - 3) // 2 + 1):
            term = term * cos2 * (2.0 * j) / (2.0 * j + 1.0)
            acc = acc + term
        return 2.0 / math.pi * (theta + sin_t * acc)
    term = np.ones_like(cos_t)
    acc = term.copy()
    for j in range(1, (nu - 2) // 2 + 1):
        term = term * cos2 * (2.0 * j - 1.0) / (2.0 * j)
        acc = acc + term
    return sin_t * acc


def _two_sided(x, nu):
    x = np.asarray(x, dtype=float)
    nu = np.asarray(nu, dtype=float)
    x, nu = np.broadcast_arrays(x, nu)
    out = np.empty(x.shape)
    for v in np.unique(nu):
        sel = nu == v
        t = x[sel]
        res = 1.0 - _central_mass(t, int(v))
        far = res < 0.01
        if far.any():
            res[far] = _f_tail_pair(t[far] * t[far], 1.0, v)[1]
        out[sel] = res
    return np.clip(out, 0.0, 1.0)


def _check_nu(nu):
    if np.ndim(nu) == 0:
        return check_int(nu, "nu")
    return check_int_array(nu, "nu")


def t_two_sided_p(x, nu):
    """Two-sided p-value ``P(|T| > |x|)`` of a t statistic."""
    scalar = is_scalar_input(x, nu)
    return as_output(_two_sided(x, _check_nu(nu)), scalar)


def t_upper_tail(x, nu):
    """One-sided ``P(T > x)``."""
    scalar = is_scalar_input(x, nu)
    x = np.asarray(x, dtype=float)
    half = 0.5 * _two_sided(x, _check_nu(nu))
    return as_output(np.where(x >= 0, half, 1.0 - half), scalar)


def t_cdf(x, nu):
    scalar = is_scalar_input(x, nu)
    x = np.asarray(x, dtype=float)
    half = 0.5 * _two_sided(x, _check_nu(nu))
    return as_output(np.where(x >= 0, 1.0 - half, half), scalar)


@dataclass(frozen=True)
class TDist:
    nu: int

    def __post_init__(self):
        object.__setattr__(self, "nu", check_int(self.nu, "nu"))

    def cdf(self, x):
        return t_cdf(x, self.nu)

    def sf(self, x):
        return t_upper_tail(x, self.nu)

    def two_sided_p(self, x):
        return t_two_sided_p(x, self.nu)
