"""The estimator family: MLE, restricted MLE, and Liu-type shrinkage.

Six estimators are supported, all closed forms in the fitted information
matrix C and the MLE coefficients:

* ``mle``    maximum likelihood
* ``rmle``   restricted MLE under H beta = h
* ``le``     Liu estimator          (C+I)^-1 (C+dI) beta_mle
* ``rle``    restricted Liu         (C+I)^-1 (C+dI) beta_rmle
* ``aule``   almost unbiased Liu    L_d beta_mle
* ``raule``  restricted almost unbiased Liu   L_d beta_rmle

with the shrinkage operator L_d = I - (1-d)^2 (C+I)^-2. The biasing
parameter d lives in [0, 1]; both endpoints are admitted because d = 1
collapses each shrunken estimator onto its unshrunken counterpart, which
is the natural closure of the family and a useful consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import (
    DimensionMismatchError,
    MissingRestrictionError,
    SingularInformationError,
    SingularRestrictionGramError,
)
from .linalg import DEFAULT_TOLERANCE, SpectralDecomp, Tolerance, sym_eigen, symmetrize
from .logit import FittedLogit, LinearRestriction

__all__ = [
    "KINDS",
    "SHRINKAGE_KINDS",
    "RESTRICTED_KINDS",
    "EstimatorSpec",
    "Estimate",
    "ld_matrix",
    "liu_matrix",
    "estimate",
    "residual",
]

KINDS = ("mle", "rmle", "le", "rle", "aule", "raule")
SHRINKAGE_KINDS = frozenset({"le", "rle", "aule", "raule"})
RESTRICTED_KINDS = frozenset({"rmle", "rle", "raule"})


@dataclass(frozen=True)
class EstimatorSpec:
    """Tagged choice of estimator, with the biasing parameter where needed.

    ``d`` must be present exactly for the shrinkage kinds and lie in
    [0, 1]. Restricted kinds additionally need a LinearRestriction at
    evaluation time.
    """

    kind: str
    d: float | None = None

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown estimator kind {self.kind!r}, expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        if kind in SHRINKAGE_KINDS:
            if self.d is None:
                raise ValueError(f"estimator {kind!r} needs a biasing parameter d")
            d = float(self.d)
            if not 0.0 <= d <= 1.0:
                raise ValueError(f"d must be in [0, 1], got {d}")
            object.__setattr__(self, "d", d)
        elif self.d is not None:
            raise ValueError(f"estimator {kind!r} takes no biasing parameter")

    @property
    def requires_restriction(self) -> bool:
        return self.kind in RESTRICTED_KINDS

    def label(self) -> str:
        if self.d is None:
            return self.kind.upper()
        return f"{self.kind.upper()}(d={self.d:g})"


@dataclass(frozen=True)
class Estimate:
    """Coefficient vector produced by one estimator."""

    spec: EstimatorSpec
    beta: NDArray


def _spectral_map(decomp: SpectralDecomp, factors: NDArray) -> NDArray:
    return symmetrize((decomp.basis * factors) @ decomp.basis.T)


def ld_factors(eigenvalues: NDArray, d: float) -> NDArray:
    """Eigenvalues of L_d given the eigenvalues of C: 1 - (1-d)^2/(lam+1)^2."""
    return 1.0 - (1.0 - d) ** 2 / (eigenvalues + 1.0) ** 2


def ld_matrix(C, d: float) -> NDArray:
    """Shrinkage operator I - (1-d)^2 (C+I)^-2, built on C's eigenbasis.

    The spectral route avoids squaring an explicit inverse, which matters
    when C is badly conditioned. For positive semidefinite C the operator
    is positive definite for every d in [0, 1].
    """
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"d must be in [0, 1], got {d}")
    dec = sym_eigen(C)
    return _spectral_map(dec, ld_factors(dec.values, d))


def liu_matrix(C, d: float) -> NDArray:
    """Liu smoother (C+I)^-1 (C+dI), built on C's eigenbasis."""
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"d must be in [0, 1], got {d}")
    dec = sym_eigen(C)
    return _spectral_map(dec, (dec.values + d) / (dec.values + 1.0))


def _check_pd(C, tol: Tolerance):
    evals = np.linalg.eigvalsh(C)
    if evals[-1] <= 0.0 or evals[0] <= tol.rank_cut * evals[-1]:
        raise SingularInformationError(
            f"C is not positive definite at rank_cut={tol.rank_cut:g} "
            f"(eigenvalue range [{evals[0]:.3e}, {evals[-1]:.3e}])"
        )


def restricted_mle(C, beta_mle, restriction: LinearRestriction, tol: Tolerance = DEFAULT_TOLERANCE) -> NDArray:
    """Project the MLE onto the restriction set in the C metric.

    Returns beta - C^-1 H' (H C^-1 H')^-1 (H beta - h), the minimizer of
    the weighted least squares objective subject to H beta = h.
    """
    C = np.asarray(C, dtype=float)
    beta_mle = np.asarray(beta_mle, dtype=float)
    if restriction.width != C.shape[0]:
        raise DimensionMismatchError(
            f"restriction width {restriction.width} does not match coefficient count {C.shape[0]}"
        )
    _check_pd(C, tol)
    ci_ht = np.linalg.solve(C, restriction.H.T)
    gram = symmetrize(restriction.H @ ci_ht)
    gevals = np.linalg.eigvalsh(gram)
    if gevals[-1] <= 0.0 or gevals[0] <= tol.rank_cut * gevals[-1]:
        raise SingularRestrictionGramError(
            "H C^-1 H' is rank deficient; restrictions are redundant at this fit"
        )
    slack = restriction.H @ beta_mle - restriction.h
    return beta_mle - ci_ht @ np.linalg.solve(gram, slack)


def estimate(
    fit: FittedLogit,
    spec: EstimatorSpec,
    restriction: LinearRestriction | None = None,
    tol: Tolerance = DEFAULT_TOLERANCE,
) -> Estimate:
    """Evaluate one estimator on a fitted model.

    Restricted kinds require ``restriction``; there is no silent fallback
    to the unrestricted analogue.

    Raises
    ------
    MissingRestrictionError
        If a restricted kind is requested without a restriction.
    SingularInformationError
        If C is not positive definite at ``tol.rank_cut``.
    SingularRestrictionGramError
        If H C^-1 H' is rank deficient.
    """
    if spec.requires_restriction and restriction is None:
        raise MissingRestrictionError(
            f"estimator {spec.kind!r} needs a linear restriction (H, h)"
        )
    C = fit.C
    base = fit.beta_mle
    if spec.kind == "mle":
        _check_pd(C, tol)
        return Estimate(spec, base.copy())
    if spec.kind == "rmle":
        return Estimate(spec, restricted_mle(C, base, restriction, tol))
    if spec.kind == "le":
        _check_pd(C, tol)
        return Estimate(spec, liu_matrix(C, spec.d) @ base)
    if spec.kind == "rle":
        target = restricted_mle(C, base, restriction, tol)
        return Estimate(spec, liu_matrix(C, spec.d) @ target)
    if spec.kind == "aule":
        _check_pd(C, tol)
        return Estimate(spec, ld_matrix(C, spec.d) @ base)
    # raule
    target = restricted_mle(C, base, restriction, tol)
    return Estimate(spec, ld_matrix(C, spec.d) @ target)


def residual(restriction: LinearRestriction, est: Estimate) -> NDArray:
    """Restriction residual H beta - h for an estimate."""
    beta = np.asarray(est.beta, dtype=float)
    if restriction.width != beta.shape[0]:
        raise DimensionMismatchError(
            f"restriction width {restriction.width} does not match estimate length {beta.shape[0]}"
        )
    return restriction.H @ beta - restriction.h
