"""Dense linear-algebra kernel backing the estimators.

Matrices are plain 2-D float64 ``numpy.ndarray``s.  Least squares goes
through a Householder QR factorization (LAPACK, via numpy) instead of the
normal equations; the inverse normal matrix ``(X'X)^-1`` that coefficient
covariances need is recovered from the R factor.  Everything here is pure
and safe for concurrent use.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ConvergenceError, NotPositiveDefiniteError, SingularDesignError

# Relative tolerance below which an R diagonal marks the design rank deficient.
RANK_RTOL = 1e-10
# Relative tolerance for the symmetry pre-check of Cholesky inputs.
SYMMETRY_RTOL = 1e-10


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D float64 array."""
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size and not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")
    return arr


class LeastSquares(NamedTuple):
    coefficients: np.ndarray          # (m, q)
    residuals: np.ndarray             # (n, q)
    normal_matrix_inverse: np.ndarray  # (m, m)


def solve_least_squares(design, targets) -> LeastSquares:
    """Minimize ``||targets - design @ B||_F`` over B for a full-rank design.

    Raises :class:`SingularDesignError` (with the offending column index)
    when the smallest R diagonal falls below ``RANK_RTOL`` times the largest.
    """
    x = as_matrix(design, "design")
    y = as_matrix(targets, "targets")
    n, m = x.shape
    if y.shape[0] != n:
        raise ValueError(f"design has {n} rows but targets has {y.shape[0]}")
    if n < m:
        raise ValueError(f"underdetermined system: {n} rows < {m} columns")

    q, r = np.linalg.qr(x, mode="reduced")
    diag = np.abs(np.diag(r))
    cutoff = RANK_RTOL * diag.max(initial=0.0)
    bad = np.nonzero(diag <= cutoff)[0]
    if diag.max(initial=0.0) == 0.0 or bad.size:
        col = int(bad[0]) if bad.size else 0
        raise SingularDesignError(
            f"design is rank deficient: column {col} is collinear with earlier columns",
            column=col,
        )

    coef = solve_triangular(r, q.T @ y)
    resid = y - x @ coef
    r_inv = solve_triangular(r, np.eye(m))
    nmi = r_inv @ r_inv.T
    return LeastSquares(coef, resid, nmi)


def cholesky_lower(m) -> np.ndarray:
    """Lower-triangular P with ``P @ P.T == m`` for symmetric positive definite m."""
    a = as_matrix(m)
    k = a.shape[0]
    if a.shape[1] != k:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = np.abs(a).max(initial=0.0)
    if np.abs(a - a.T).max(initial=0.0) > SYMMETRY_RTOL * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric within tolerance")

    low = np.zeros((k, k))
    for j in range(k):
        d = a[j, j] - low[j, :j] @ low[j, :j]
        if d <= 0.0:
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: pivot {j} is {d:.3e}", pivot=j
            )
        low[j, j] = np.sqrt(d)
        if j + 1 < k:
            low[j + 1 :, j] = (a[j + 1 :, j] - low[j + 1 :, :j] @ low[j, :j]) / low[j, j]
    return low


def log_det_pd(m) -> float:
    """log determinant of a symmetric positive definite matrix."""
    return float(2.0 * np.sum(np.log(np.diag(cholesky_lower(m)))))


def spectral_radius(m) -> float:
    """Largest eigenvalue modulus of a square matrix (0.0 for an empty one)."""
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        return 0.0
    try:
        eig = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue computation failed to converge: {exc}") from exc
    return float(np.abs(eig).max())


def companion_matrix(coef: np.ndarray) -> np.ndarray:
    """Companion form of a stack of lag matrices, shape (K*p, K*p).

    ``coef`` has shape (p, K, K); the top block row is [A1 ... Ap] and the
    subdiagonal carries identities.  For p == 0 the result is empty.
    """
    coef = np.asarray(coef, dtype=float)
    if coef.ndim != 3 or coef.shape[1] != coef.shape[2]:
        raise ValueError(f"lag stack must have shape (p, K, K), got {coef.shape}")
    p, k = coef.shape[0], coef.shape[1]
    comp = np.zeros((k * p, k * p))
    if p == 0:
        return comp
    comp[:k] = coef.transpose(1, 0, 2).reshape(k, k * p)
    if p > 1:
        idx = np.arange(k * (p - 1))
        comp[k + idx, idx] = 1.0
    return comp
