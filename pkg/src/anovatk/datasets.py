"""CSV readers and writers, and the bundled example tables."""

from __future__ import annotations

import csv
import io
import math
from importlib import resources

import numpy as np

from .anova import GroupedSample
from .exceptions import DomainError

GROUPED_TABLES = ("1A", "2A")
REGRESSION_TABLES = ("5A", "6A", "7A")


class ParseError(DomainError):
    """Malformed CSV input."""


def _parse_float(text: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{where}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"{where}: value must be finite, got {text!r}")
    return value


def _rows(text: str):
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if len(rows) < 2:
        raise ParseError("input needs a header row and at least one data row")
    header = [h.strip() for h in rows[0]]
    if any(not h for h in header) or len(set(header)) != len(header):
        raise ParseError("header names must be nonempty and distinct")
    body = []
    for n, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"line {n}: expected {len(header)} fields, got {len(row)}")
        body.append([cell.strip() for cell in row])
    return header, body


def parse_grouped(text: str) -> GroupedSample:
    """Parse a grouped sample from CSV text.

    Long format has exactly the two columns ``group,value`` (any order).
    Otherwise every column is one group (wide format); blank cells are
    allowed for groups shorter than the longest one.
    """
    header, body = _rows(text)
    lower = [h.lower() for h in header]
    if sorted(lower) == ["group", "value"]:
        gi, vi = lower.index("group"), lower.index("value")
        labels, values = [], []
        for n, row in enumerate(body, start=2):
            if not row[gi]:
                raise ParseError(f"line {n}: empty group label")
            labels.append(row[gi])
            values.append(_parse_float(row[vi], f"line {n}"))
        return GroupedSample.from_long(labels, values)
    groups = [[] for _ in header]
    for n, row in enumerate(body, start=2):
        for col, cell in enumerate(row):
            if cell:
                groups[col].append(_parse_float(cell, f"line {n}"))
    return GroupedSample(tuple(groups), tuple(header))


def format_grouped(sample: GroupedSample) -> str:
    """Long-format CSV with 17 significant digits, so parsing it back is exact."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["group", "value"])
    for lab, val in zip(*sample.to_long()):
        writer.writerow([lab, f"{val:.17g}"])
    return out.getvalue()


def parse_regression(text: str, response: str | None = None):
    """Parse a regression table; the response defaults to the last column.

    Returns
    -------
    X : ndarray of shape (n, k)
    y : ndarray of shape (n,)
    names : list of str
        Predictor column names.
    response : str
    """
    header, body = _rows(text)
    response = header[-1] if response is None else response
    if response not in header:
        raise ParseError(f"response column {response!r} not found")
    data = np.array([[_parse_float(c, f"line {n}") for c in row] for n, row in enumerate(body, start=2)])
    ri = header.index(response)
    names = [h for h in header if h != response]
    X = np.delete(data, ri, axis=1)
    return X, data[:, ri], names, response


def table_text(name: str) -> str:
    """Raw CSV text of a bundled table (``1A``, ``2A``, ``5A``, ``6A`` or ``7A``)."""
    if name not in GROUPED_TABLES + REGRESSION_TABLES:
        raise DomainError(f"unknown table {name!r}")
    return resources.files("anovatk").joinpath("tables", f"{name}.csv").read_text(encoding="utf-8")


def load_grouped(name: str) -> GroupedSample:
    return parse_grouped(table_text(name))


def load_regression(name: str):
    return parse_regression(table_text(name))
