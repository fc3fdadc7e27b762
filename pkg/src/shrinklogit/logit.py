"""Binary logistic regression fitted by iteratively reweighted least squares.

The fit produces, besides the maximum likelihood coefficients, the
working quantities every downstream estimator consumes: the Bernoulli
variance weights W, the working response Z, and the information matrix
C = X'WX evaluated at the final iterate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit, logit as logit_link

from .errors import NotConvergedError, SingularInformationError
from .linalg import DEFAULT_TOLERANCE, Tolerance, symmetrize

__all__ = [
    "Dataset",
    "FitOptions",
    "FittedLogit",
    "LinearRestriction",
    "working_quantities",
    "irls_fit",
]


@dataclass(frozen=True)
class Dataset:
    """Design matrix and binary response.

    ``has_intercept`` records whether column 0 is the constant-1 column,
    so diagnostics and display code can skip it. Construction validates
    that the response is exactly 0/1 and that the design has at least as
    many rows as columns.
    """

    X: NDArray
    y: NDArray
    has_intercept: bool = False

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if X.ndim != 2:
            raise ValueError(f"X must be 2-dimensional, got shape {X.shape}")
        if y.shape != (X.shape[0],):
            raise ValueError(f"y has shape {y.shape}, expected ({X.shape[0]},)")
        if X.shape[1] < 1 or X.shape[0] < X.shape[1]:
            raise ValueError(
                f"need n >= m >= 1 rows and columns, got n={X.shape[0]}, m={X.shape[1]}"
            )
        if not np.all(np.isfinite(X)):
            raise ValueError("X has non-finite entries")
        if not np.all((y == 0.0) | (y == 1.0)):
            raise ValueError("y entries must be exactly 0 or 1")
        if self.has_intercept and not np.all(X[:, 0] == 1.0):
            raise ValueError("has_intercept is set but column 0 is not constant 1")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def m(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class FitOptions:
    """IRLS controls.

    ``tol`` bounds the max-norm coefficient change between iterations;
    ``prob_clip`` clamps fitted probabilities into
    [prob_clip, 1 - prob_clip] before weights and working responses are
    formed, which keeps separated data from producing infinite values.
    """

    max_iter: int = 50
    tol: float = 1e-8
    prob_clip: float = 1e-6

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if not 0.0 < self.prob_clip < 0.5:
            raise ValueError("prob_clip must be in (0, 0.5)")


@dataclass(frozen=True)
class FittedLogit:
    """Converged IRLS state.

    ``W`` and ``Z`` are evaluated at ``beta_mle``, and ``C`` is the
    symmetrized information matrix X'WX at the same point, so the fixed
    point beta = C^-1 X'WZ holds to within the convergence tolerance.
    """

    beta_mle: NDArray
    W: NDArray
    Z: NDArray
    C: NDArray
    iterations: int
    converged: bool
    final_step: float


@dataclass(frozen=True)
class LinearRestriction:
    """Linear equality constraints H beta = h.

    H must have full row rank (q rows, q <= number of coefficients);
    rank is checked through the singular values at ``rank_cut``.
    """

    H: NDArray
    h: NDArray

    def __post_init__(self):
        H = np.atleast_2d(np.asarray(self.H, dtype=float))
        h = np.atleast_1d(np.asarray(self.h, dtype=float))
        q, width = H.shape
        if not 1 <= q <= width:
            raise ValueError(f"need 1 <= q <= m restriction rows, got H shape {H.shape}")
        if h.shape != (q,):
            raise ValueError(f"h has shape {h.shape}, expected ({q},)")
        if not (np.all(np.isfinite(H)) and np.all(np.isfinite(h))):
            raise ValueError("restriction has non-finite entries")
        s = np.linalg.svd(H, compute_uv=False)
        if s[-1] <= DEFAULT_TOLERANCE.rank_cut * s[0]:
            raise ValueError("H is rank deficient: restriction rows must be independent")
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "h", h)

    @property
    def q(self) -> int:
        return self.H.shape[0]

    @property
    def width(self) -> int:
        return self.H.shape[1]


def working_quantities(data: Dataset, beta, opts: FitOptions = FitOptions()):
    """Weights, working response, and information matrix at ``beta``.

    Probabilities are clamped by ``prob_clip`` before W and Z are formed.
    The working response is logit(pi) + (y - pi) / (pi (1 - pi)).
    Returns the triple (W, Z, C) with C symmetrized.
    """
    beta = np.asarray(beta, dtype=float)
    eta = data.X @ beta
    pi = np.clip(expit(eta), opts.prob_clip, 1.0 - opts.prob_clip)
    w = pi * (1.0 - pi)
    z = logit_link(pi) + (data.y - pi) / w
    c = symmetrize(data.X.T @ (w[:, None] * data.X))
    return w, z, c


def _check_information(c, tol: Tolerance):
    evals = np.linalg.eigvalsh(c)
    if evals[-1] <= 0.0 or evals[0] <= tol.rank_cut * evals[-1]:
        raise SingularInformationError(
            "information matrix X'WX is rank deficient "
            f"(eigenvalue range [{evals[0]:.3e}, {evals[-1]:.3e}])"
        )


def irls_fit(
    data: Dataset,
    opts: FitOptions = FitOptions(),
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> FittedLogit:
    """Fit the logistic MLE by iteratively reweighted least squares.

    Starts from beta = 0 (all probabilities one half) and repeats the
    weighted least squares step beta <- (X'WX)^-1 X'WZ until the max-norm
    change falls below ``opts.tol``. Deterministic: the same data and
    options give a bit-identical result.

    Raises
    ------
    SingularInformationError
        If X'WX is rank deficient at ``tol.rank_cut`` in any iteration.
    NotConvergedError
        If ``opts.max_iter`` is reached; the exception carries the
        partial fit in its ``fit`` attribute.
    """
    beta = np.zeros(data.m)
    step = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        w, z, c = working_quantities(data, beta, opts)
        _check_information(c, tol)
        beta_next = np.linalg.solve(c, data.X.T @ (w * z))
        step = float(np.max(np.abs(beta_next - beta)))
        beta = beta_next
        if step <= opts.tol:
            converged = True
            break
    w, z, c = working_quantities(data, beta, opts)
    fit = FittedLogit(
        beta_mle=beta,
        W=w,
        Z=z,
        C=c,
        iterations=iterations,
        converged=converged,
        final_step=step,
    )
    if not converged:
        raise NotConvergedError(
            f"IRLS did not converge in {opts.max_iter} iterations "
            f"(last step {step:.3e})",
            fit=fit,
        )
    return fit
