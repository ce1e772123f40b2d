"""Dense linear algebra used by the matrix cones and the generic solver.

Thin wrappers over LAPACK (via numpy/scipy) that enforce the contracts the
rest of the package relies on: validated symmetry, descending spectra, and a
distinct error type when a Cholesky pivot fails so the caller can report that
an iterate left the cone interior instead of crashing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

__all__ = [
    "SymEigen",
    "Svd",
    "NonPositiveDefiniteError",
    "sym_eigen",
    "svd",
    "cholesky_factor",
    "cholesky_solve",
]

_SYM_TOL = 1e-13


class NonPositiveDefiniteError(ArithmeticError):
    """A Cholesky factorization hit a non-positive pivot."""


@dataclass(frozen=True)
class SymEigen:
    """Eigendecomposition ``A = U diag(values) U^T`` with descending values."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.T


@dataclass(frozen=True)
class Svd:
    """Thin SVD ``A = U diag(sigma) V^T`` for ``d1 <= d2``.

    ``U`` is ``d1 x d1`` orthogonal, ``V`` is ``d2 x d1`` with orthonormal
    columns, ``sigma`` is nonnegative and descending.
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.U * self.sigma) @ self.V.T


def sym_eigen(a: np.ndarray) -> SymEigen:
    """Symmetric eigendecomposition with eigenvalues sorted descending."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("sym_eigen: expected a square matrix")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.T) > _SYM_TOL * max(scale, 1.0):
        raise ValueError("sym_eigen: matrix is not symmetric")
    values, vectors = np.linalg.eigh(a)
    return SymEigen(values=values[::-1].copy(), vectors=vectors[:, ::-1].copy())


def svd(a: np.ndarray) -> Svd:
    """Thin SVD of a ``d1 x d2`` matrix with ``d1 <= d2``."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2:
        raise ValueError("svd: expected a matrix")
    d1, d2 = a.shape
    if d1 > d2:
        raise ValueError("svd: requires d1 <= d2")
    u, sigma, vt = np.linalg.svd(a, full_matrices=False)
    return Svd(U=u, sigma=sigma, V=vt.T.copy())


def cholesky_factor(h: np.ndarray):
    """Lower-triangular Cholesky factor of a symmetric positive definite matrix.

    Raises :class:`NonPositiveDefiniteError` when a pivot fails, which the
    Newton solver interprets as the evaluation point having left the cone
    interior.
    """
    h = np.asarray(h, dtype=float)
    try:
        return scipy.linalg.cho_factor(h, lower=True, check_finite=False)
    except (scipy.linalg.LinAlgError, np.linalg.LinAlgError) as exc:
        raise NonPositiveDefiniteError(str(exc)) from exc


def cholesky_solve(h: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``H x = b`` for symmetric positive definite ``H``."""
    factor = cholesky_factor(h)
    return scipy.linalg.cho_solve(factor, np.asarray(b, dtype=float),
                                  check_finite=False)
