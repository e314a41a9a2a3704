"""Fisher-Snedecor, Student t and studentized range distributions."""

from __future__ import annotations

import numpy as np

from ..exceptions import DomainError
from .fisher import FDist, f_cdf, f_critical, f_pdf, f_upper_tail
from .student import TDist, t_cdf, t_two_sided_p, t_upper_tail
from .studentized import QDist, q_cdf, q_critical, q_pdf, q_pdf_two_groups, q_upper_tail

__all__ = [
    "FDist", "QDist", "TDist",
    "f_cdf", "f_critical", "f_pdf", "f_upper_tail",
    "q_cdf", "q_critical", "q_pdf", "q_pdf_two_groups", "q_upper_tail",
    "t_cdf", "t_two_sided_p", "t_upper_tail",
    "verify_two_group_identity",
]


def verify_two_group_identity(alphas, nus) -> float:
    """Largest relative gap between ``Q^2(alpha, 2, nu)`` and ``2 F_crit(alpha, 1, nu)``.

    The studentized range of two means is ``sqrt(2) |T|``, so the squared
    critical value must equal twice the F critical value with one numerator
    degree of freedom. ``Q`` is computed from the general ``k`` double
    integral, which never sees the F distribution, so the comparison checks
    one implementation against the other.

    Parameters
    ----------
    alphas, nus : sequence
        Significance levels in ``(0, 1)`` and positive integer error df.

    Returns
    -------
    float
        ``max |Q^2 - 2 F| / (2 F)`` over the full grid.
    """
    alphas = np.asarray(list(alphas), dtype=float)
    nus = np.asarray(list(nus), dtype=float)
    if alphas.size == 0 or nus.size == 0:
        raise DomainError("alphas and nus must both be nonempty")
    a, v = np.meshgrid(alphas, nus, indexing="ij")
    q = q_critical(a, 2, v)
    f2 = 2.0 * f_critical(a, 1, v)
    return float(np.max(np.abs(q * q - f2) / f2))
