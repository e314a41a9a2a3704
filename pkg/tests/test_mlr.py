import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from anovatk import (
    DomainError, RegressionCase, RegressionData, SingularDesignError, classify_contradiction,
    drop_predictor, ols_fit,
)


def random_regression(seed, n, k):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, k))
    y = X @ rng.normal(size=k) + rng.normal(size=n)
    return RegressionData(X, y)


@settings(max_examples=50)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4), st.integers(3, 25))
def test_against_normal_equations(seed, k, extra):
    data = random_regression(seed, k + 1 + extra, k)
    fit = ols_fit(data)
    design = np.column_stack([np.ones(data.n), data.predictors])
    beta, *_ = np.linalg.lstsq(design, data.response, rcond=None)
    resid = data.response - design @ beta
    df = data.n - k - 1
    sigma2 = resid @ resid / df
    se = np.sqrt(np.diag(sigma2 * np.linalg.inv(design.T @ design)))
    assert np.allclose(fit.coefficients, beta, rtol=1e-9, atol=1e-12)
    assert np.allclose(fit.std_errors, se, rtol=1e-8)
    assert np.allclose(fit.p_values, 2 * stats.t.sf(np.abs(beta / se), df), rtol=1e-6, atol=1e-14)
    tss = np.sum((data.response - data.response.mean()) ** 2)
    f = ((tss - resid @ resid) / k) / sigma2
    assert fit.f_stat == pytest.approx(f, rel=1e-8)
    assert fit.f_p_value == pytest.approx(stats.f.sf(f, k, df), rel=1e-6, abs=1e-14)
    assert fit.df == (k, df)
    assert np.allclose(fit.fitted + fit.residuals, data.response)


def test_single_predictor_t_and_f_agree():
    fit = ols_fit(random_regression(4, 12, 1))
    assert fit.t_values[1] ** 2 == pytest.approx(fit.f_stat, rel=1e-10)
    assert fit.p_values[1] == pytest.approx(fit.f_p_value, rel=1e-9)


def test_validation_and_singular_design():
    with pytest.raises(DomainError):
        RegressionData(np.ones((3, 2)), [1.0, 2.0, 3.0])  # n must exceed k + 1
    with pytest.raises(DomainError):
        RegressionData(np.ones((5, 1)), [1.0, 2.0, 3.0, 4.0])
    with pytest.raises(DomainError):
        RegressionData(np.ones((5, 1)), [1.0, 2.0, 3.0, math.nan, 5.0])
    x = np.arange(6.0)
    with pytest.raises(SingularDesignError):
        ols_fit(RegressionData(np.column_stack([x, 2 * x]), x ** 2))
    with pytest.raises(SingularDesignError):
        ols_fit(RegressionData(np.ones((6, 1)), x))


def test_exact_fit():
    x = np.arange(6.0)
    fit = ols_fit(RegressionData(x[:, None], 2 * x + 1))
    # rounding leaves residuals near 1e-15, so F is huge rather than infinite
    assert fit.f_stat > 1e20 and fit.f_p_value < 1e-30
    assert fit.coefficients == pytest.approx([1.0, 2.0])
    assert fit.r_squared == pytest.approx(1.0)


def test_drop_predictor_keeps_names():
    data = RegressionData(np.random.default_rng(0).normal(size=(8, 3)), np.arange(8.0), ("u", "v", "w"))
    sub = drop_predictor(data, 2)
    assert sub.names == ("u", "w") and sub.k == 2
    assert np.array_equal(sub.predictors[:, 1], data.predictors[:, 2])
    with pytest.raises(DomainError):
        drop_predictor(data, 4)


class _Fit:
    def __init__(self, f_p, slope_p):
        self.f_p_value = f_p
        self.slope_p_values = np.asarray(slope_p)


@pytest.mark.parametrize("f_p,slope_p,want", [
    (0.01, [0.2, 0.3], RegressionCase.CASE_J),
    (0.2, [0.01, 0.3], RegressionCase.CASE_JJ),
    (0.01, [0.01, 0.3], RegressionCase.AGREE),
    (0.2, [0.2, 0.3], RegressionCase.AGREE),
])
def test_case_labels(f_p, slope_p, want):
    assert classify_contradiction(_Fit(f_p, slope_p), 0.05) is want


def test_to_dict_lists_terms():
    d = ols_fit(random_regression(1, 10, 2)).to_dict()
    assert d["terms"] == ["(Intercept)", "X1", "X2"]
    assert len(d["p_values"]) == 3
