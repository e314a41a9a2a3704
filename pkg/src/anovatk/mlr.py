"""Ordinary least squares with an intercept, its t tests and the overall F test."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_alpha, check_int, check_regression_input
from .distributions import f_upper_tail, t_two_sided_p
from .exceptions import DomainError, SingularDesignError


@dataclass(frozen=True)
class RegressionData:
    """``n`` observations of ``k`` predictors and a response, with ``n > k + 1``."""

    predictors: np.ndarray
    response: np.ndarray
    names: tuple = ()

    def __post_init__(self):
        X, y = check_regression_input(self.predictors, self.response)
        n, k = X.shape
        if k < 1:
            raise DomainError("need at least one predictor")
        if n <= k + 1:
            raise DomainError(f"need n > k + 1 observations, got n={n}, k={k}")
        names = tuple(str(v) for v in self.names) or tuple(f"X{i}" for i in range(1, k + 1))
        if len(names) != k:
            raise DomainError("one name per predictor column is required")
        X.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "predictors", X)
        object.__setattr__(self, "response", y)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.predictors.shape[0]

    @property
    def k(self) -> int:
        return self.predictors.shape[1]


@dataclass(frozen=True)
class RegressionFit:
    """OLS estimates; index 0 of each coefficient array is the intercept."""

    names: tuple
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    residual_se: float
    r_squared: float
    adj_r_squared: float
    f_stat: float
    f_p_value: float
    df: tuple
    residuals: np.ndarray
    fitted: np.ndarray

    @property
    def slope_p_values(self) -> np.ndarray:
        return self.p_values[1:]

    def to_dict(self) -> dict:
        return {
            "terms": ["(Intercept)", *self.names],
            "coefficients": self.coefficients.tolist(),
            "std_errors": self.std_errors.tolist(),
            "t_values": self.t_values.tolist(),
            "p_values": self.p_values.tolist(),
            "residual_se": self.residual_se,
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "f_stat": self.f_stat,
            "f_p_value": self.f_p_value,
            "df": list(self.df),
        }


def ols_fit(data: RegressionData) -> RegressionFit:
    """Least squares through a Householder QR factorization of the design.

    Raises
    ------
    SingularDesignError
        If the design with intercept is numerically rank deficient.
    """
    X, y = data.predictors, data.response
    n, k = X.shape
    design = np.column_stack([np.ones(n), X])
    Q, R = np.linalg.qr(design)
    diag = np.abs(np.diag(R))
    if diag.min() <= diag.max() * max(design.shape) * np.finfo(float).eps:
        raise SingularDesignError("design matrix with intercept is rank deficient")
    beta = np.linalg.solve(R, Q.T @ y)
    fitted = design @ beta
    resid = y - fitted
    df_resid = n - k - 1
    sse = math.fsum(resid * resid)
    ybar = math.fsum(y) / n
    sst = math.fsum((y - ybar) ** 2)
    sigma2 = sse / df_resid
    r_inv = np.linalg.solve(R, np.eye(k + 1))
    se = np.sqrt(sigma2 * np.sum(r_inv * r_inv, axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = beta / se
    p = np.where(np.isfinite(t), t_two_sided_p(np.where(np.isfinite(t), t, 0.0), df_resid), 0.0)
    if sst > 0:
        r2 = 1.0 - sse / sst
        ssr = sst - sse
    else:
        r2, ssr = 0.0, 0.0
    adj = 1.0 - (1.0 - r2) * (n - 1) / df_resid
    if sse > 0:
        f = (ssr / k) / sigma2
        f_p = float(f_upper_tail(max(f, 0.0), k, df_resid))
    elif ssr > 0:
        f, f_p = math.inf, 0.0
    else:
        f, f_p = math.nan, 1.0
    return RegressionFit(data.names, beta, se, t, p, math.sqrt(sigma2), r2, adj, f, f_p,
                         (k, df_resid), resid, fitted)


def drop_predictor(data: RegressionData, i: int) -> RegressionData:
    """Remove predictor column ``i`` (1-based)."""
    i = check_int(i, "i")
    if i > data.k:
        raise DomainError(f"predictor index must be in 1..{data.k}, got {i}")
    keep = [c for c in range(data.k) if c != i - 1]
    return RegressionData(data.predictors[:, keep], data.response, tuple(data.names[c] for c in keep))


class RegressionCase(str, enum.Enum):
    """How the overall F test and the individual slope t tests relate."""

    AGREE = "agree"
    CASE_J = "case_j"  # F rejects, no slope t test does
    CASE_JJ = "case_jj"  # F does not reject, some slope t test does


def classify_contradiction(fit: RegressionFit, alpha: float) -> RegressionCase:
    """Compare the F test with the slope t tests at level ``alpha``; the intercept is ignored."""
    alpha = check_alpha(alpha)
    f_rejects = fit.f_p_value < alpha
    any_t = bool(np.any(fit.slope_p_values < alpha))
    if f_rejects and not any_t:
        return RegressionCase.CASE_J
    if not f_rejects and any_t:
        return RegressionCase.CASE_JJ
    return RegressionCase.AGREE
