"""Dense symmetric linear algebra primitives.

Everything downstream (estimator formulas, risk matrices, dominance
predicates) reduces to a handful of operations on real symmetric
matrices: spectral decomposition, Moore-Penrose inversion, positive
semidefiniteness tests, range membership, and a generalized Rayleigh
ratio. They live here so tolerance handling is defined in one place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import InvalidMatrixError, NotPSDError

__all__ = [
    "Tolerance",
    "DEFAULT_TOLERANCE",
    "SpectralDecomp",
    "PsdResult",
    "symmetrize",
    "sym_eigen",
    "moore_penrose",
    "is_psd",
    "in_range",
    "lambda_max_ratio",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds shared by rank and definiteness tests.

    ``rank_cut`` is relative: eigenvalues whose magnitude falls below
    ``rank_cut`` times the largest magnitude are treated as exact zeros.
    ``psd_slack`` is absolute: a matrix counts as positive semidefinite
    when its smallest eigenvalue is at least ``-psd_slack``.

    The defaults suit double precision with matrices up to dimension a
    few dozen and condition numbers up to about 1e7, the regime produced
    by near-unit pairwise correlations in the design.
    """

    rank_cut: float = 1e-10
    psd_slack: float = 1e-8

    def __post_init__(self):
        if not 0.0 < self.rank_cut < 1e-3:
            raise ValueError(f"rank_cut must be in (0, 1e-3), got {self.rank_cut}")
        if self.psd_slack <= 0.0:
            raise ValueError(f"psd_slack must be positive, got {self.psd_slack}")


DEFAULT_TOLERANCE = Tolerance()


def symmetrize(matrix) -> NDArray:
    """Return the symmetric part (M + M') / 2 as a float64 array.

    Floating point products such as X'WX drift slightly from exact
    symmetry, so constructors symmetrize instead of rejecting.

    Raises
    ------
    InvalidMatrixError
        If the input is not square or has non-finite entries.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidMatrixError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidMatrixError("matrix has non-finite entries")
    return 0.5 * (m + m.T)


@dataclass(frozen=True)
class SpectralDecomp:
    """Eigendecomposition of a symmetric matrix with eigenvalues descending.

    ``basis`` is orthogonal; column i is the eigenvector for ``values[i]``.
    """

    values: NDArray
    basis: NDArray

    def reconstruct(self) -> NDArray:
        return (self.basis * self.values) @ self.basis.T


def sym_eigen(matrix) -> SpectralDecomp:
    """Spectral decomposition of a (nearly) symmetric matrix.

    The input is symmetrized first; eigenvalues come back sorted in
    descending order with the eigenvector columns permuted to match.
    """
    m = symmetrize(matrix)
    values, basis = np.linalg.eigh(m)
    return SpectralDecomp(values[::-1].copy(), basis[:, ::-1].copy())


def moore_penrose(matrix, tol: Tolerance = DEFAULT_TOLERANCE) -> NDArray:
    """Moore-Penrose inverse of a symmetric matrix via its spectrum.

    Eigenvalues with magnitude at most ``rank_cut`` times the largest
    magnitude are dropped; the remaining ones are inverted in place on
    the eigenbasis. The zero matrix maps to the zero matrix.
    """
    dec = sym_eigen(matrix)
    scale = float(np.max(np.abs(dec.values))) if dec.values.size else 0.0
    if scale == 0.0:
        return np.zeros((dec.basis.shape[0], dec.basis.shape[0]))
    keep = np.abs(dec.values) > tol.rank_cut * scale
    inv = np.zeros_like(dec.values)
    inv[keep] = 1.0 / dec.values[keep]
    return symmetrize((dec.basis * inv) @ dec.basis.T)


@dataclass(frozen=True)
class PsdResult:
    """Outcome of a positive semidefiniteness test with its witness."""

    ok: bool
    min_eigenvalue: float

    def __bool__(self) -> bool:
        return self.ok


def is_psd(matrix, tol: Tolerance = DEFAULT_TOLERANCE) -> PsdResult:
    """Test nonnegative definiteness, reporting the smallest eigenvalue.

    True iff the minimum eigenvalue is at least ``-psd_slack``. The
    witness is reported either way.
    """
    w = np.linalg.eigvalsh(symmetrize(matrix))
    wmin = float(w[0])
    return PsdResult(wmin >= -tol.psd_slack, wmin)


def in_range(vector, matrix, tol: Tolerance = DEFAULT_TOLERANCE) -> bool:
    """Test whether ``vector`` lies in the column space of ``matrix``.

    Uses the projector M M^+: membership means the residual
    (I - M M^+) v has norm at most ``rank_cut`` times the norm of v.
    The zero vector is in every range.
    """
    v = np.asarray(vector, dtype=float)
    m = symmetrize(matrix)
    if v.shape != (m.shape[0],):
        raise InvalidMatrixError(
            f"vector of length {v.shape} does not match matrix dim {m.shape[0]}"
        )
    residual = v - m @ (moore_penrose(m, tol) @ v)
    return float(np.linalg.norm(residual)) <= tol.rank_cut * float(np.linalg.norm(v))


def lambda_max_ratio(numerator, denominator, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Largest eigenvalue of N M^+ for positive semidefinite N and M.

    When range(N) is contained in range(M) this value does not depend on
    which generalized inverse of M is used, which makes the Moore-Penrose
    choice canonical. It is computed through the symmetric congruence
    S'NS with S = (columns of M's eigenbasis) scaled by lambda^{-1/2},
    which shares the nonzero spectrum of N M^+ and keeps the eigenproblem
    real and well conditioned.

    Raises
    ------
    NotPSDError
        If either argument fails :func:`is_psd`.
    """
    n = symmetrize(numerator)
    m = symmetrize(denominator)
    for name, mat in (("numerator", n), ("denominator", m)):
        check = is_psd(mat, tol)
        if not check.ok:
            raise NotPSDError(
                f"{name} is not positive semidefinite "
                f"(min eigenvalue {check.min_eigenvalue:.3e})"
            )
    dec = sym_eigen(m)
    scale = float(np.max(np.abs(dec.values))) if dec.values.size else 0.0
    if scale == 0.0:
        return 0.0
    keep = dec.values > tol.rank_cut * scale
    if not np.any(keep):
        return 0.0
    s = dec.basis[:, keep] * (dec.values[keep] ** -0.5)
    core = s.T @ n @ s
    w = np.linalg.eigvalsh(0.5 * (core + core.T))
    return float(max(w[-1], 0.0))
