"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import DomainError


def check_alpha(alpha, name: str = "alpha") -> float:
    """Return ``alpha`` as a float after checking ``0 < alpha < 1``."""
    try:
        value = float(alpha)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a real number, got {alpha!r}") from None
    if not 0.0 < value < 1.0:
        raise DomainError(f"{name} must lie strictly between 0 and 1, got {value}")
    return value


def check_int(value, name: str, minimum: int = 1) -> int:
    """Return ``value`` as an int, rejecting non-integral reals and values below ``minimum``."""
    if isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if isinstance(value, numbers.Integral):
        out = int(value)
    elif isinstance(value, numbers.Real) and float(value).is_integer():
        out = int(value)
    else:
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if out < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {out}")
    return out


def check_int_array(values, name: str, minimum: int = 1) -> np.ndarray:
    """Integer-valued array version of :func:`check_int` (returned as float64)."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise DomainError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)) or np.any(arr != np.round(arr)):
        raise DomainError(f"{name} must contain integers only")
    if np.any(arr < minimum):
        raise DomainError(f"{name} must be >= {minimum}")
    return arr


def check_nonneg(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be nonnegative")
    return arr


def check_finite_1d(values, name: str = "values") -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must contain only finite values")
    return arr


def check_grouped_input(X, groups):
    """Build a :class:`~anovatk.anova.GroupedSample` from observations and labels.

    ``X`` holds one observation per row (1-d, or a single column); ``groups``
    holds the matching labels. Group order is the order of first appearance.
    """
    from .anova import GroupedSample

    values = check_finite_1d(X, "X")
    labels = np.asarray(groups)
    if labels.ndim != 1 or len(labels) != len(values):
        raise DomainError("groups must be a 1-d array with one label per observation")
    return GroupedSample.from_long(labels.tolist(), values.tolist())


def check_regression_input(X, y):
    """Return ``(X, y)`` as float arrays of shapes ``(n, k)`` and ``(n,)``."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    y = check_finite_1d(y, "y")
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DomainError(f"X must be 2-d with {y.shape[0]} rows, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DomainError("X must contain only finite values")
    return X, y


def is_scalar_input(*args) -> bool:
    return all(np.ndim(a) == 0 for a in args)


def as_output(arr, scalar: bool):
    """Return a Python float for scalar calls, the array otherwise."""
    if scalar:
        return float(np.asarray(arr).reshape(()))
    return arr

