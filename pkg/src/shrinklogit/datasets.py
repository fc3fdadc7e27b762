"""CSV ingestion, serialization, and multicollinearity diagnostics.

The input format is RFC-4180-style comma separated text, UTF-8, with a
'.' decimal separator and an optional header row. Missing values are a
hard error; every parse failure is reported with its 1-based row (and
column) number.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from .errors import ConstantColumnError, CsvParseError, NonBinaryResponseError
from .linalg import DEFAULT_TOLERANCE, Tolerance, symmetrize
from .logit import Dataset

__all__ = [
    "DiagnosticsReport",
    "load_csv",
    "save_csv",
    "diagnostics",
    "bundled_dataset_path",
]


def bundled_dataset_path() -> Path:
    """Path of the bundled synthetic application dataset.

    83 rows, four strongly correlated predictors and a binary response,
    generated by demos/make_synthetic_dataset.py to mimic a small
    municipal statistics extract with severe multicollinearity. The
    original administrative data is not redistributable, so the bundled
    file is synthetic by construction.
    """
    return Path(resources.files("shrinklogit").joinpath("data/municipal_synthetic.csv"))


def _resolve_response(response_column, names, ncols, header):
    if isinstance(response_column, str):
        if not header:
            raise CsvParseError(
                f"response column {response_column!r} named but the file has no header"
            )
        try:
            return names.index(response_column)
        except ValueError:
            raise CsvParseError(
                f"response column {response_column!r} not found in header {names}"
            ) from None
    idx = int(response_column)
    if not -ncols <= idx < ncols:
        raise CsvParseError(f"response column index {idx} out of range for {ncols} columns")
    return idx % ncols


def load_csv(
    path,
    header: bool = True,
    response_column=0,
    intercept: bool = True,
) -> Dataset:
    """Read a dataset from CSV.

    ``response_column`` may be an index or, when ``header`` is set, a
    column name. With ``intercept`` a constant-1 column is prepended to
    the predictors.

    Raises
    ------
    CsvParseError
        For ragged rows, empty fields, or non-numeric fields, with the
        offending 1-based row and column.
    NonBinaryResponseError
        If a response value parses to something other than 0 or 1.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        raw = [(lineno, row) for lineno, row in enumerate(csv.reader(handle), start=1) if row]
    if not raw:
        raise CsvParseError(f"{path}: file contains no data rows")
    names = None
    if header:
        names = [field.strip() for field in raw[0][1]]
        raw = raw[1:]
        if not raw:
            raise CsvParseError(f"{path}: file contains a header but no data rows")
    ncols = len(raw[0][1])
    if ncols < 2:
        raise CsvParseError(f"{path}: need a response and at least one predictor column")
    response_index = _resolve_response(response_column, names, ncols, header)

    y = np.empty(len(raw))
    x = np.empty((len(raw), ncols - 1))
    for i, (lineno, row) in enumerate(raw):
        if len(row) != ncols:
            raise CsvParseError(
                f"row {lineno}: expected {ncols} fields, got {len(row)}", row=lineno
            )
        k = 0
        for j, field in enumerate(row):
            text = field.strip()
            if text == "":
                raise CsvParseError(
                    f"row {lineno}, column {j + 1}: missing value", row=lineno, column=j + 1
                )
            try:
                value = float(text)
            except ValueError:
                raise CsvParseError(
                    f"row {lineno}, column {j + 1}: cannot parse {field!r} as a number",
                    row=lineno,
                    column=j + 1,
                ) from None
            if j == response_index:
                if value not in (0.0, 1.0):
                    raise NonBinaryResponseError(
                        f"row {lineno}: response value {field!r} is not 0 or 1",
                        row=lineno,
                        column=j + 1,
                    )
                y[i] = value
            else:
                x[i, k] = value
                k += 1
    if intercept:
        x = np.column_stack([np.ones(len(raw)), x])
    return Dataset(X=x, y=y, has_intercept=intercept)


def save_csv(data: Dataset, path, header: bool = True):
    """Write a dataset as CSV with the response first.

    The intercept column, if present, is omitted so that reading the
    file back with the same ``intercept`` flag reproduces the dataset.
    Floats are written with full round-trip precision.
    """
    x = data.X[:, 1:] if data.has_intercept else data.X
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        if header:
            writer.writerow(["y"] + [f"x{j + 1}" for j in range(x.shape[1])])
        for yi, row in zip(data.y, x):
            writer.writerow([repr(int(yi))] + [repr(float(v)) for v in row])


@dataclass(frozen=True)
class DiagnosticsReport:
    """Collinearity diagnostics for the predictor columns.

    ``correlation`` is the Pearson correlation matrix of the
    (non-intercept) predictors. ``kappa`` is the condition number
    sqrt(lambda_max / lambda_min) of the matrix whose ``eigenvalues``
    are reported (descending); perfect collinearity is reported as the
    +inf sentinel rather than an error.
    """

    correlation: NDArray
    kappa: float
    eigenvalues: NDArray


def diagnostics(
    data: Dataset,
    use_correlation: bool = True,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> DiagnosticsReport:
    """Pairwise correlations and the collinearity condition number.

    By default ``kappa`` comes from the correlation matrix, which makes
    it invariant to rescaling any predictor; setting ``use_correlation``
    to False computes it from the raw cross-product matrix X'X instead.

    Raises
    ------
    ConstantColumnError
        If any non-intercept predictor column is constant.
    """
    cols = data.X[:, 1:] if data.has_intercept else data.X
    if cols.shape[1] < 1:
        raise ValueError("no predictor columns to diagnose")
    if data.n < 2:
        raise ValueError("need at least two rows for correlations")
    spans = np.ptp(cols, axis=0)
    for j, span in enumerate(spans):
        if span == 0.0:
            raise ConstantColumnError(f"predictor column {j + 1} is constant")
    correlation = symmetrize(np.corrcoef(cols, rowvar=False))
    np.fill_diagonal(correlation, 1.0)
    basis = correlation if use_correlation else symmetrize(cols.T @ cols)
    evals = np.linalg.eigvalsh(basis)[::-1].copy()
    if evals[-1] <= tol.rank_cut * evals[0]:
        kappa = np.inf
    else:
        kappa = float(np.sqrt(evals[0] / evals[-1]))
    return DiagnosticsReport(correlation=correlation, kappa=kappa, eigenvalues=evals)
