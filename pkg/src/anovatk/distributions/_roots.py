"""Vectorized quantile inversion for monotone decreasing upper tails."""

from __future__ import annotations

import numpy as np

from ..exceptions import NumericalError


def invert_upper_tail(evaluate, alpha, x0, *, xtol=1e-12, accept_step=1e-6, max_step=3.0, maxiter=200):
    """Solve ``tail(x) = alpha`` for many rows at once.

    Newton's method runs on ``log tail`` as a function of ``log x``, which is
    close to linear for both light and heavy tails. Every evaluated point
    tightens a per-row bracket; a Newton step that leaves the bracket is
    replaced by bisection in ``log x``, and while one side of the bracket is
    still unknown the step is capped at ``max_step``, so the bracket grows
    geometrically until it encloses the root.

    Parameters
    ----------
    evaluate : callable
        ``evaluate(x, idx) -> (tail, density)`` for the rows ``idx``; the
        tail must be strictly decreasing in ``x``.
    alpha : ndarray
        Target upper-tail probabilities, one per row.
    x0 : ndarray
        Positive starting points.
    xtol : float
        Convergence tolerance on ``|log x_new - log x|``.
    accept_step : float
        When ``|log tail - log alpha|`` is below this, the Newton step (if it
        stays inside the bracket) is taken as final without another
        evaluation: with quadratic convergence the relative tail error left
        after it is of order ``accept_step ** 2``.

    Returns
    -------
    ndarray
        Roots, one per row.
    """
    alpha = np.asarray(alpha, dtype=float)
    u = np.log(np.asarray(x0, dtype=float)).copy()
    log_alpha = np.log(alpha)
    lo = np.full(u.shape, -np.inf)
    hi = np.full(u.shape, np.inf)
    active = np.arange(u.size)
    for _ in range(maxiter):
        if active.size == 0:
            return np.exp(u)
        ua = u[active]
        x = np.exp(ua)
        tail, dens = evaluate(x, active)
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.log(tail) - log_alpha[active]
            slope = -x * dens / tail
            step = -g / slope
        above = g > 0
        lo[active] = np.where(above, np.maximum(lo[active], ua), lo[active])
        hi[active] = np.where(above, hi[active], np.minimum(hi[active], ua))
        exact = g == 0
        bad = ~np.isfinite(step)
        step = np.where(bad, np.where(above, max_step, -max_step), step)
        step = np.clip(step, -max_step, max_step)
        converged = np.abs(step) < xtol
        cand = ua + step
        la, ha = lo[active], hi[active]
        outside = ((cand <= la) | (cand >= ha)) & ~converged
        converged |= ~outside & ~bad & (np.abs(g) < accept_step)
        both = np.isfinite(la) & np.isfinite(ha)
        cand = np.where(outside & both, 0.5 * (la + ha), cand)
        cand = np.where(outside & ~both, ua + np.where(above, max_step, -max_step), cand)
        done = exact | converged | (both & (ha - la < xtol))
        u[active] = np.where(exact, ua, cand)
        active = active[~done]
    raise NumericalError("quantile inversion did not converge")
