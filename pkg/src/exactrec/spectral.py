"""Laplacians, signed Laplacians, a Jacobi eigensolver, and Cheeger-type checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import (
    DisconnectedGraphError,
    InvalidArgumentError,
    InvalidLabelingError,
    InvalidSizeError,
    NumericalError,
    TooLargeError,
)
from .graph import CHEEGER_MAX_N, cheeger_exact, is_connected, max_degree

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-11
# above this size lambda_2 queries go to LAPACK instead of Jacobi
JACOBI_AUTO_MAX_N = 200


@dataclass(frozen=True)
class EigenSystem:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # column k pairs with values[k]
    sweeps: int = 0


def as_symmetric(m):
    """Copy of ``m`` with the upper triangle mirrored into the lower one."""
    a = np.array(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {a.shape}")
    upper = np.triu(a)
    return upper + np.triu(a, 1).T


def check_labeling(y, n=None):
    y = np.asarray(y)
    if y.ndim != 1 or (n is not None and y.shape[0] != n):
        raise InvalidLabelingError(f"labeling must be a length-{n} vector, got shape {y.shape}")
    if not np.all((y == 1) | (y == -1)):
        raise InvalidLabelingError("labeling entries must be +1 or -1")
    return y.astype(np.int64)


def laplacian(g):
    L = -g.adjacency_matrix()
    L[np.diag_indices(g.n)] = g.degrees()
    return L


def signed_laplacian(g, y):
    """D - diag(y) A diag(y): quadratic form sum over edges of (y_i x_i - y_j x_j)^2."""
    y = check_labeling(y, g.n).astype(np.float64)
    M = -(y[:, None] * g.adjacency_matrix() * y[None, :])
    M[np.diag_indices(g.n)] = g.degrees()
    return M


def symmetric_eigen(m, max_sweeps=JACOBI_MAX_SWEEPS):
    """Full eigendecomposition by cyclic Jacobi rotations.

    Sweeps until the largest off-diagonal magnitude is at most
    ``1e-11 * ||m||_F``; raises NumericalError after ``max_sweeps``.
    """
    a = np.ascontiguousarray(as_symmetric(m))
    if a.shape[0] < 1:
        raise InvalidSizeError("empty matrix")
    tol = JACOBI_REL_TOL * float(np.linalg.norm(a))
    diag, vecs, sweeps, off = kernels.jacobi_eigen(a, tol, max_sweeps)
    if off > tol:
        raise NumericalError(f"Jacobi did not converge in {max_sweeps} sweeps", residual=off)
    order = np.argsort(diag, kind="stable")
    return EigenSystem(diag[order], vecs[:, order], sweeps)


def eigenvalues(m, method="auto"):
    """Ascending eigenvalues; ``auto`` uses Jacobi up to n = 200 and LAPACK beyond."""
    a = as_symmetric(m)
    if method == "jacobi" or (method == "auto" and a.shape[0] <= JACOBI_AUTO_MAX_N):
        return symmetric_eigen(a).values
    if method in ("lapack", "auto"):
        return np.linalg.eigvalsh(a)
    raise InvalidArgumentError(f"unknown eigen method {method!r}")


def rayleigh(m, a):
    a = np.asarray(a, dtype=np.float64)
    denom = float(a @ a)
    if denom == 0.0:
        raise InvalidArgumentError("Rayleigh quotient of the zero vector")
    return float(a @ np.asarray(m) @ a) / denom


def lemma1_check(g, y, a, delta):
    """Return (R_L(a*y + delta), R_M(a)) for M the signed Laplacian of ``y``.

    ``a`` must be orthogonal to ``y``; the first value never exceeds the second.
    """
    y = check_labeling(y, g.n)
    a = np.asarray(a, dtype=np.float64)
    if a.shape != (g.n,):
        raise InvalidArgumentError(f"vector must have length {g.n}")
    if abs(float(a @ y)) > 1e-9 * float(np.linalg.norm(a)):
        raise InvalidArgumentError("a must be orthogonal to y")
    shifted = a * y + delta
    return rayleigh(laplacian(g), shifted), rayleigh(signed_laplacian(g, y), a)


def theorem1_bound(g, y):
    """Return (phi^2 / (4 dmax), lambda_2 of the signed Laplacian); the first is <= the second."""
    if g.n > CHEEGER_MAX_N:
        raise TooLargeError(
            f"needs exact expansion (n <= {CHEEGER_MAX_N}); use cheeger_bounds_spectral"
        )
    if not is_connected(g):
        raise DisconnectedGraphError("graph must be connected")
    phi = float(cheeger_exact(g).expansion)
    lam = symmetric_eigen(signed_laplacian(g, y)).values
    return phi * phi / (4.0 * max_degree(g)), float(lam[1])


def laplacian_lambda2(g, method="auto"):
    if g.n < 2:
        return 0.0
    return max(0.0, float(eigenvalues(laplacian(g), method)[1]))


def cheeger_bounds_spectral(g, method="auto"):
    """(lambda_2 / 2, 2 sqrt(lambda_2 dmax)) bracketing the edge expansion."""
    if not is_connected(g):
        return 0.0, 0.0
    lam2 = laplacian_lambda2(g, method)
    return lam2 / 2.0, 2.0 * math.sqrt(lam2 * max_degree(g))
