"""Exact bias, covariance, and mean squared error at known truth.

Risk is evaluated under the linearized sampling model in which the MLE
is normal with mean beta_true and covariance C^-1. Every estimator in
the family is a fixed affine map of the MLE, so its covariance, bias,
matrix MSE (covariance plus bias outer product), and scalar MSE (the
trace of the matrix MSE) all have closed forms:

===========  =======================  =============================
kind         covariance               bias
===========  =======================  =============================
mle          C^-1                     0
rmle         A C A                    -C^-1 H'(H C^-1 H')^-1 (H b - h)
le           F C^-1 F                 (F - I) b
rle          F A F                    (F - I) b
aule         L C^-1 L                 (L - I) b
raule        L A L                    (L - I) b
===========  =======================  =============================

with b = beta_true, L the shrinkage operator of :func:`ld_matrix`,
F the Liu smoother, and A = C^-1 - C^-1 H'(H C^-1 H')^-1 H C^-1 the
restricted dispersion kernel.

The restricted shrinkage rows use the bias form that assumes the
restriction holds at the truth. When it does not, the report carries
``restriction_violated=True``; the RMLE row is the exception and always
uses its exact bias under the linearized model, which vanishes when the
restriction is satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from numpy.typing import NDArray

from .errors import (
    MissingRestrictionError,
    SingularInformationError,
    SingularRestrictionGramError,
)
from .estimators import SHRINKAGE_KINDS, EstimatorSpec, ld_factors
from .linalg import DEFAULT_TOLERANCE, SpectralDecomp, Tolerance, sym_eigen, symmetrize
from .logit import LinearRestriction

__all__ = [
    "RiskScenario",
    "RiskReport",
    "SpectralRiskTerms",
    "SweepRow",
    "a_matrix",
    "risk",
    "spectral_risk_terms",
    "d_sweep",
]

#: Restriction residuals larger than this mark the truth as violating H b = h.
RESTRICTION_VIOLATION_TOL = 1e-8


def a_matrix(C, restriction: LinearRestriction, tol: Tolerance = DEFAULT_TOLERANCE) -> NDArray:
    """Restricted dispersion kernel A = C^-1 - C^-1 H'(H C^-1 H')^-1 H C^-1.

    A is nonnegative definite with rank m - q: it is the covariance of
    the restricted MLE, which has no variance along the q directions
    pinned by the restriction.

    Computed through the equivalent null-space form N (N'CN)^-1 N', with
    N an orthonormal basis of null(H). The subtraction form loses the
    rank structure to cancellation once C's condition number approaches
    1/rank_cut; the null-space form annihilates range(H') exactly, so
    the q zero eigenvalues stay at machine precision regardless of
    conditioning.

    Raises
    ------
    SingularInformationError
        If C is not positive definite at ``tol.rank_cut``.
    SingularRestrictionGramError
        If H C^-1 H' is rank deficient (redundant restriction rows).
    """
    C = symmetrize(C)
    evals = np.linalg.eigvalsh(C)
    if evals[-1] <= 0.0 or evals[0] <= tol.rank_cut * evals[-1]:
        raise SingularInformationError(
            f"C is not positive definite (eigenvalue range [{evals[0]:.3e}, {evals[-1]:.3e}])"
        )
    H = restriction.H
    gram = symmetrize(H @ np.linalg.solve(C, H.T))
    gevals = np.linalg.eigvalsh(gram)
    if gevals[-1] <= 0.0 or gevals[0] <= tol.rank_cut * gevals[-1]:
        raise SingularRestrictionGramError("H C^-1 H' is rank deficient")
    _, _, vt = np.linalg.svd(H)
    null_basis = vt[restriction.q :].T
    if null_basis.shape[1] == 0:
        return np.zeros_like(C)
    core = symmetrize(null_basis.T @ C @ null_basis)
    return symmetrize(null_basis @ np.linalg.solve(core, null_basis.T))


@dataclass(frozen=True)
class RiskScenario:
    """Ground truth for exact risk evaluation.

    Bundles the information matrix C (positive definite), the true
    coefficient vector, and optionally a linear restriction. The kernel
    A, the inverse of C, and the spectral decomposition of C are computed
    eagerly and cached, so scenarios are cheap to reuse across many
    estimators and biasing parameters, and immutable afterwards.
    """

    C: NDArray
    beta_true: NDArray
    restriction: LinearRestriction | None = None
    tol: Tolerance = DEFAULT_TOLERANCE
    A: NDArray | None = field(init=False, default=None)

    def __post_init__(self):
        C = symmetrize(self.C)
        beta = np.asarray(self.beta_true, dtype=float)
        if beta.shape != (C.shape[0],):
            raise ValueError(
                f"beta_true has shape {beta.shape}, expected ({C.shape[0]},)"
            )
        evals = np.linalg.eigvalsh(C)
        if evals[-1] <= 0.0 or evals[0] <= self.tol.rank_cut * evals[-1]:
            raise SingularInformationError(
                f"C is not positive definite (eigenvalue range [{evals[0]:.3e}, {evals[-1]:.3e}])"
            )
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "beta_true", beta)
        object.__setattr__(self, "_c_inv", symmetrize(np.linalg.inv(C)))
        object.__setattr__(self, "_decomp", sym_eigen(C))
        if self.restriction is not None:
            if self.restriction.width != C.shape[0]:
                raise ValueError(
                    f"restriction width {self.restriction.width} does not match dim {C.shape[0]}"
                )
            object.__setattr__(self, "A", a_matrix(C, self.restriction, self.tol))

    @property
    def m(self) -> int:
        return self.C.shape[0]

    @property
    def c_inv(self) -> NDArray:
        return self._c_inv

    @property
    def decomp(self) -> SpectralDecomp:
        return self._decomp

    def restriction_violated(self) -> bool:
        """Whether the truth fails H beta = h beyond the violation tolerance."""
        if self.restriction is None:
            return False
        gap = self.restriction.H @ self.beta_true - self.restriction.h
        return float(np.max(np.abs(gap))) > RESTRICTION_VIOLATION_TOL

    def _require_restriction(self, what: str) -> LinearRestriction:
        if self.restriction is None:
            raise MissingRestrictionError(f"{what} needs a linear restriction (H, h)")
        return self.restriction

    def rmle_bias(self) -> NDArray:
        """Exact RMLE bias -C^-1 H'(H C^-1 H')^-1 (H beta_true - h)."""
        restriction = self._require_restriction("the restricted MLE")
        ci_ht = self._c_inv @ restriction.H.T
        gram = symmetrize(restriction.H @ ci_ht)
        gap = restriction.H @ self.beta_true - restriction.h
        return -ci_ht @ np.linalg.solve(gram, gap)


@dataclass(frozen=True)
class RiskReport:
    """Risk of one estimator at one scenario.

    By construction ``mmse`` equals ``cov`` plus the bias outer product
    and ``mse`` equals the trace of ``mmse``. ``restriction_violated``
    flags reports of restricted kinds whose bias formula assumed a
    restriction that the scenario's truth does not satisfy.
    """

    spec: EstimatorSpec
    cov: NDArray
    bias: NDArray
    mmse: NDArray
    mse: float
    restriction_violated: bool = False


def _smoother(scenario: RiskScenario, spec: EstimatorSpec) -> NDArray:
    dec = scenario.decomp
    if spec.kind in ("aule", "raule"):
        factors = ld_factors(dec.values, spec.d)
    else:  # le, rle
        factors = (dec.values + spec.d) / (dec.values + 1.0)
    return symmetrize((dec.basis * factors) @ dec.basis.T)


def _assemble(spec, cov, bias, violated) -> RiskReport:
    cov = symmetrize(cov)
    mmse = symmetrize(cov + np.outer(bias, bias))
    mse = float(np.trace(cov) + bias @ bias)
    return RiskReport(
        spec=spec,
        cov=cov,
        bias=bias,
        mmse=mmse,
        mse=mse,
        restriction_violated=violated,
    )


def risk(scenario: RiskScenario, spec: EstimatorSpec) -> RiskReport:
    """Exact risk report for one estimator at the scenario's truth.

    Raises
    ------
    MissingRestrictionError
        If ``spec`` is a restricted kind and the scenario has no restriction.
    """
    beta = scenario.beta_true
    if spec.kind == "mle":
        return _assemble(spec, scenario.c_inv, np.zeros(scenario.m), False)
    if spec.kind == "rmle":
        scenario._require_restriction("the restricted MLE")
        violated = scenario.restriction_violated()
        cov = scenario.A @ scenario.C @ scenario.A
        return _assemble(spec, cov, scenario.rmle_bias(), violated)
    smoother = _smoother(scenario, spec)
    bias = smoother @ beta - beta
    if spec.kind in ("le", "aule"):
        cov = smoother @ scenario.c_inv @ smoother
        return _assemble(spec, cov, bias, False)
    # rle, raule
    scenario._require_restriction(f"estimator {spec.kind!r}")
    violated = scenario.restriction_violated()
    cov = smoother @ scenario.A @ smoother
    return _assemble(spec, cov, bias, violated)


class SpectralRiskTerms(NamedTuple):
    """Eigen-aligned ingredients of the scalar risk formulas.

    ``eigenvalues`` are the eigenvalues of C in descending order,
    ``a_diag`` the diagonal of T'AT, and ``alpha`` the coordinates T'b
    of the true coefficients, all in the same eigenvector order. Within
    a repeated eigenspace the individual entries of ``a_diag`` and
    ``alpha`` depend on the basis choice; only basis-independent
    aggregates (sums, traces, the risk itself) are contractual.
    """

    eigenvalues: NDArray
    a_diag: NDArray
    alpha: NDArray


def spectral_risk_terms(scenario: RiskScenario) -> SpectralRiskTerms:
    """Eigenvalues of C with the matching diagonal of T'AT and T'beta."""
    scenario._require_restriction("spectral risk terms")
    dec = scenario.decomp
    a_diag = np.sum(dec.basis * (scenario.A @ dec.basis), axis=0)
    alpha = dec.basis.T @ scenario.beta_true
    return SpectralRiskTerms(dec.values.copy(), a_diag, alpha)


@dataclass(frozen=True)
class SweepRow:
    """One (d, estimator) cell of a risk sweep.

    ``coefficients`` is the mean of the estimator under the linearized
    model, beta_true plus the bias, which is what coefficient tables
    report when fitted quantities stand in for the truth.
    """

    d: float
    kind: str
    mse: float
    coefficients: NDArray
    report: RiskReport


def d_sweep(
    scenario: RiskScenario,
    kinds: Sequence[str],
    d_grid: Sequence[float],
) -> list[SweepRow]:
    """Risk of each requested estimator at every d in the grid.

    Kinds without a biasing parameter (mle, rmle) get one row per d as
    well so tables stay rectangular; those rows are constant in d.
    """
    rows = []
    for d in d_grid:
        d = float(d)
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"d grid values must be in [0, 1], got {d}")
        for kind in kinds:
            spec = EstimatorSpec(kind, d if kind in SHRINKAGE_KINDS else None)
            report = risk(scenario, spec)
            rows.append(
                SweepRow(
                    d=d,
                    kind=spec.kind,
                    mse=report.mse,
                    coefficients=scenario.beta_true + report.bias,
                    report=report,
                )
            )
    return rows
