"""scikit-learn style wrappers around the functional API.

Grouped estimators take observations ``X`` (1-d or one column) and group
labels ``y``; :class:`LinearRegressionTests` takes a predictor matrix and a
response. Hyperparameters live in ``__init__`` and fitted results in
trailing-underscore attributes, so ``get_params``/``set_params``/``clone``
work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_is_fitted

from ._validation import check_alpha, check_grouped_input
from .anova import anova_reject, anova_table
from .mlr import RegressionData, classify_contradiction, ols_fit
from .report import full_report
from .tukey import tk_test

__all__ = ["ContradictionDetector", "LinearRegressionTests", "NotFittedError", "OneWayAnova", "TukeyKramer"]


class OneWayAnova(BaseEstimator):
    """One-way ANOVA F test.

    Attributes
    ----------
    table_ : AnovaTable
    reject_ : bool
    p_value_ : float
    """

    def __init__(self, alpha: float = 0.05):
        self.alpha = alpha

    def fit(self, X, y):
        sample = check_grouped_input(X, y)
        alpha = check_alpha(self.alpha)
        self.table_ = anova_table(sample)
        self.reject_ = anova_reject(sample, alpha)
        self.p_value_ = self.table_.p_value
        return self


class TukeyKramer(BaseEstimator):
    """Tukey-Kramer comparisons of all pairs of groups.

    Attributes
    ----------
    comparisons_ : list of PairwiseComparison
    rejected_pairs_ : list of tuple
    """

    def __init__(self, alpha: float = 0.05):
        self.alpha = alpha

    def fit(self, X, y):
        sample = check_grouped_input(X, y)
        self.comparisons_ = tk_test(sample, check_alpha(self.alpha))
        self.rejected_pairs_ = [(r.i, r.j) for r in self.comparisons_ if r.reject]
        return self


class ContradictionDetector(BaseEstimator):
    """Full joint report of ANOVA, TK and the two-group restricted tests.

    Attributes
    ----------
    report_ : ContradictionReport
    case_label_ : CaseLabel
    """

    def __init__(self, alpha: float = 0.05):
        self.alpha = alpha

    def fit(self, X, y):
        sample = check_grouped_input(X, y)
        self.report_ = full_report(sample, check_alpha(self.alpha))
        self.case_label_ = self.report_.case_label
        return self


class LinearRegressionTests(RegressorMixin, BaseEstimator):
    """OLS with intercept plus the F/t verdict comparison at level ``alpha``.

    Attributes
    ----------
    fit_ : RegressionFit
    intercept_ : float
    coef_ : ndarray of shape (k,)
    case_ : RegressionCase
    """

    def __init__(self, alpha: float = 0.05):
        self.alpha = alpha

    def fit(self, X, y):
        alpha = check_alpha(self.alpha)
        self.fit_ = ols_fit(RegressionData(X, y))
        self.intercept_ = float(self.fit_.coefficients[0])
        self.coef_ = self.fit_.coefficients[1:].copy()
        self.n_features_in_ = self.coef_.size
        self.case_ = classify_contradiction(self.fit_, alpha)
        return self

    def predict(self, X):
        check_is_fitted(self, "fit_")
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return self.intercept_ + X @ self.coef_
