"""Studentized range distribution.

For ``k`` group means and ``nu`` error degrees of freedom,

    P(Q > q) = int_0^inf f_nu(s) J_k(q s) ds,
    J_k(w)   = k int phi(z) [Phi(z)^(k-1) - (Phi(z) - Phi(z - w))^(k-1)] dz,

where ``f_nu`` is the density of ``s = sqrt(chi2_nu / nu)``. Writing the
inner integral in complement form keeps the upper tail accurate without
relying on ``k int phi Phi^(k-1) = 1`` holding numerically.

Both integrals use fixed Gauss-Legendre panels. The outer panels are cut at
points of the chi density (Wilson-Hilferty quantiles from -8.5 to +8.5
standard deviations, beyond which the mass is far below 1e-12) and at
``w / q`` for a ladder of ``w`` values where ``J_k`` changes shape. The
outer range stops at ``W_MAX / q`` since ``J_k(W_MAX)`` is below 1e-18 for
any practical ``k``. The inner integral runs over ``|z| <= 8``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import gammaln, ndtr

from .._validation import as_output, check_alpha, check_int, check_int_array, check_nonneg, is_scalar_input
from ..exceptions import DomainError
from ._roots import invert_upper_tail
from ._special import log_chi_norm
from .fisher import f_critical

_INNER_EDGES = np.array([-8.0, -3.0, 0.0, 2.0, 4.0, 8.0])
_INNER_ORDER = 16
_OUTER_ORDER = 8
_CHI_POINTS = np.array([-8.5, -5.0, -3.0, -1.5, 0.0, 1.5, 3.0, 5.0, 8.5])
_W_LADDER = np.array([0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0])
W_MAX = 13.5
_ROW_BLOCK = 128
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _panel_rule(edges, order):
    x, w = leggauss(order)
    a, b = edges[:-1, None], edges[1:, None]
    nodes = (0.5 * (b - a) * x + 0.5 * (a + b)).ravel()
    weights = (0.5 * (b - a) * w).ravel()
    return nodes, weights


_Z, _WZ = _panel_rule(_INNER_EDGES, _INNER_ORDER)
_PHI_Z = np.exp(-0.5 * _Z * _Z) * _INV_SQRT_2PI
_WPHI_Z = _WZ * _PHI_Z
_CDF_Z = ndtr(_Z)
_GL_X, _GL_W = leggauss(_OUTER_ORDER)


def _outer_panels(q, nu):
    """Per-row panel edges over the effective range of ``s``."""
    centre = 1.0 - 2.0 / (9.0 * nu)
    spread = np.sqrt(2.0 / (9.0 * nu))
    chi = np.maximum(centre[:, None] + _CHI_POINTS[None, :] * spread[:, None], 0.0) ** 1.5
    s_lo, s_hi = chi[:, 0], chi[:, -1]
    q_safe = np.maximum(q, 1e-300)
    top = np.maximum(np.minimum(s_hi, W_MAX / q_safe), s_lo)
    cuts = np.concatenate([chi, _W_LADDER[None, :] / q_safe[:, None], top[:, None]], axis=1)
    cuts = np.clip(cuts, s_lo[:, None], top[:, None])
    return np.sort(cuts, axis=1)


def _int_power(x, n: int):
    """``x ** n`` by repeated squaring (much faster than ``pow`` for arrays)."""
    result = None
    base = x
    while n:
        if n & 1:
            result = base.copy() if result is None else result * base
        n >>= 1
        if n:
            base = base * base
    return np.ones_like(x) if result is None else result


def _kernel_block(q, k: int, nu, want_density: bool):
    edges = _outer_panels(q, nu)
    a, b = edges[:, :-1], edges[:, 1:]
    live = b > a
    row_of_panel = np.nonzero(live)[0]
    a, b = a[live], b[live]
    half = 0.5 * (b - a)
    s = (half[:, None] * _GL_X + 0.5 * (a + b)[:, None]).ravel()
    ws = (half[:, None] * _GL_W).ravel()
    row = np.repeat(row_of_panel, _OUTER_ORDER)
    nu_n = nu[row]
    with np.errstate(divide="ignore"):
        log_s = np.log(s)
    dens_s = np.exp(log_chi_norm(nu_n) + (nu_n - 1.0) * log_s - 0.5 * nu_n * (s - 1.0) * (s + 1.0))
    dens_s = np.where(s > 0, dens_s, 0.0) * ws
    w = q[row] * s
    shifted = _Z[None, :] - w[:, None]
    diff = _CDF_Z[None, :] - ndtr(shifted)
    np.maximum(diff, 0.0, out=diff)
    pow_k2 = _int_power(diff, k - 2)
    inner = _CDF_Z ** (k - 1) - pow_k2 * diff
    J = k * (inner @ _WPHI_Z)
    R = q.size
    tail = np.bincount(row, weights=dens_s * J, minlength=R)
    if not want_density:
        return tail, None
    phi_shift = np.exp(-0.5 * shifted * shifted) * _INV_SQRT_2PI
    dJ = -k * (k - 1) * ((pow_k2 * phi_shift) @ _WPHI_Z)
    density = -np.bincount(row, weights=dens_s * s * dJ, minlength=R)
    return tail, density


def _tail_density(q, k, nu, want_density=True):
    """Upper tail ``P(Q > q)`` and density, for 1-d arrays of equal length."""
    q = np.asarray(q, dtype=float)
    k = np.asarray(k)
    nu = np.asarray(nu, dtype=float)
    tail = np.empty(q.size)
    dens = np.empty(q.size)
    for kv in np.unique(k):
        sel = np.nonzero(k == kv)[0]
        for start in range(0, sel.size, _ROW_BLOCK):
            blk = sel[start:start + _ROW_BLOCK]
            t, d = _kernel_block(q[blk], int(kv), nu[blk], want_density)
            tail[blk] = t
            if want_density:
                dens[blk] = d
    tail = np.clip(tail, 0.0, 1.0)
    return tail, (np.maximum(dens, 0.0) if want_density else None)


def _check_k(k):
    if np.ndim(k) == 0:
        return check_int(k, "k", minimum=2)
    return check_int_array(k, "k", minimum=2).astype(int)


def _check_nu(nu):
    if np.ndim(nu) == 0:
        return float(check_int(nu, "nu"))
    return check_int_array(nu, "nu")


def _flat(*arrays):
    arrays = np.broadcast_arrays(*arrays)
    return arrays[0].shape, [np.ravel(a).copy() for a in arrays]


def q_upper_tail(q, k, nu):
    """``P(Q > q)`` for the studentized range of ``k`` means with ``nu`` df."""
    scalar = is_scalar_input(q, k, nu)
    shape, (qs, ks, nus) = _flat(check_nonneg(q, "q"), _check_k(k), _check_nu(nu))
    tail, _ = _tail_density(qs, ks, nus, want_density=False)
    return as_output(tail.reshape(shape), scalar)


def q_cdf(q, k, nu):
    """``P(Q <= q)``."""
    scalar = is_scalar_input(q, k, nu)
    shape, (qs, ks, nus) = _flat(check_nonneg(q, "q"), _check_k(k), _check_nu(nu))
    tail, _ = _tail_density(qs, ks, nus, want_density=False)
    return as_output((1.0 - tail).reshape(shape), scalar)


def q_pdf(q, k, nu):
    """Density of the studentized range (general ``k``)."""
    scalar = is_scalar_input(q, k, nu)
    shape, (qs, ks, nus) = _flat(check_nonneg(q, "q"), _check_k(k), _check_nu(nu))
    _, dens = _tail_density(qs, ks, nus)
    return as_output(dens.reshape(shape), scalar)


def q_pdf_two_groups(q, nu):
    """Closed-form density of the range of two studentized means.

    ``sqrt(2) nu^(nu/2) Gamma((nu+1)/2) / (sqrt(pi) Gamma(nu/2) (nu + q^2/2)^((nu+1)/2))``,
    evaluated in log space.
    """
    scalar = is_scalar_input(q, nu)
    qs = check_nonneg(q, "q")
    v = _check_nu(nu)
    log_f = (0.5 * math.log(2.0 / math.pi) + gammaln((v + 1.0) / 2.0) - gammaln(v / 2.0)
             - 0.5 * np.log(v) - 0.5 * (v + 1.0) * np.log1p(qs * qs / (2.0 * v)))
    return as_output(np.exp(log_f), scalar)


def _initial_guess(alpha, k, nu):
    base = np.sqrt(2.0 * f_critical(alpha, np.ones_like(nu), nu))
    return base * (1.0 + 0.3 * np.log(k / 2.0))


def _solve(alpha, k, nu, x0):
    def evaluate(x, idx):
        return _tail_density(x, k[idx], nu[idx])

    return invert_upper_tail(evaluate, alpha, x0)


def q_critical(alpha, k, nu):
    """Critical value ``q`` with ``P(Q > q) = alpha``.

    All arguments broadcast. Long runs sharing ``(alpha, k)`` are solved on
    a sparse subset of ``nu`` first; those roots, interpolated in
    ``log nu``, seed Newton for the remaining rows.
    """
    scalar = is_scalar_input(alpha, k, nu)
    if scalar:
        a = np.asarray(check_alpha(alpha))
    else:
        a = np.asarray(alpha, dtype=float)
        if np.any(~(a > 0) | ~(a < 1)):
            raise DomainError("alpha must lie strictly between 0 and 1")
    shape, (a, ks, nus) = _flat(a, _check_k(k), _check_nu(nu))
    ks = ks.astype(int)
    out = np.empty(a.size)
    keys = np.stack([a, ks.astype(float)], axis=1)
    _, group = np.unique(keys, axis=0, return_inverse=True)
    group = np.ravel(group)
    for g in np.unique(group):
        idx = np.nonzero(group == g)[0]
        idx = idx[np.argsort(nus[idx], kind="stable")]
        out[idx] = _solve_group(a[idx], ks[idx], nus[idx])
    return as_output(out.reshape(shape), scalar)


def _solve_group(alpha, k, nu):
    n = nu.size
    x0 = _initial_guess(alpha, k, nu)
    if n <= 24:
        return _solve(alpha, k, nu, x0)
    pilot = np.unique(np.round(np.geomspace(1, n, 16)).astype(int) - 1)
    roots = _solve(alpha[pilot], k[pilot], nu[pilot], x0[pilot])
    x0 = np.exp(np.interp(np.log(nu), np.log(nu[pilot]), np.log(roots)))
    rest = np.setdiff1d(np.arange(n), pilot)
    out = np.empty(n)
    out[pilot] = roots
    out[rest] = _solve(alpha[rest], k[rest], nu[rest], x0[rest])
    return out


@dataclass(frozen=True)
class QDist:
    """Studentized range law for ``k`` groups and ``nu`` error df."""

    k: int
    nu: int

    def __post_init__(self):
        object.__setattr__(self, "k", check_int(self.k, "k", minimum=2))
        object.__setattr__(self, "nu", check_int(self.nu, "nu"))

    def cdf(self, q):
        return q_cdf(q, self.k, self.nu)

    def sf(self, q):
        return q_upper_tail(q, self.k, self.nu)

    def pdf(self, q):
        return q_pdf(q, self.k, self.nu)

    def critical(self, alpha):
        return q_critical(alpha, self.k, self.nu)
