"""Dense numeric substrate: small vectors/matrices, orthonormalization,
a Jacobi eigensolver and finite-difference stencils.

Vectors and matrices are plain numpy arrays (float64).  Everything here is
sized for frames of dimension <= ~30; no sparse or blocked structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateInputError, InvalidInputError, NumericalDomainError

__all__ = [
    "Tolerance",
    "as_vector",
    "as_matrix",
    "gram_schmidt",
    "sym_eigen",
    "central_diff",
    "second_diff",
    "cross_diff",
]


@dataclass(frozen=True)
class Tolerance:
    """Tolerance policy shared across the package.

    algebraic: exact-identity checks on frame-level algebra.
    finite_difference: default step / acceptance band for stencil-based geometry.
    equality_gap: |rhs - lhs| band under which an inequality is reported as equality.
    """

    algebraic: float = 1e-10
    finite_difference: float = 1e-4
    equality_gap: float = 1e-6

    def __post_init__(self):
        if min(self.algebraic, self.finite_difference, self.equality_gap) <= 0.0:
            raise InvalidInputError("tolerances must be strictly positive")


DEFAULT_TOLERANCE = Tolerance()


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Validate and return a finite 1-d float array (dim >= 1)."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise InvalidInputError(f"expected a 1-d vector, got shape {arr.shape}")
    if dim is not None and arr.size != dim:
        raise InvalidInputError(f"expected dimension {dim}, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise NumericalDomainError("vector has non-finite entries")
    return arr


def as_matrix(m, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Validate and return a finite 2-d float array."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim != 2:
        raise InvalidInputError(f"expected a 2-d matrix, got shape {arr.shape}")
    if rows is not None and arr.shape[0] != rows:
        raise InvalidInputError(f"expected {rows} rows, got {arr.shape[0]}")
    if cols is not None and arr.shape[1] != cols:
        raise InvalidInputError(f"expected {cols} cols, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise NumericalDomainError("matrix has non-finite entries")
    return arr


def gram_schmidt(
    vectors: Sequence[np.ndarray],
    inner: Callable[[np.ndarray, np.ndarray], float] | None = None,
    tol: float = DEFAULT_TOLERANCE.algebraic,
) -> list[np.ndarray]:
    """Orthonormalize `vectors` with modified Gram-Schmidt.

    `inner` is a positive-definite bilinear form; Euclidean dot product when
    omitted.  Prefix spans are preserved.  Raises DegenerateInputError when a
    pivot norm falls below `tol` (dependent input).
    """
    if inner is None:
        inner = lambda u, v: float(u @ v)
    out: list[np.ndarray] = []
    for v in vectors:
        w = as_vector(v).copy()
        for u in out:
            w = w - inner(u, w) * u
        norm = np.sqrt(max(inner(w, w), 0.0))
        if norm < tol:
            raise DegenerateInputError(
                f"rank-deficient input at vector {len(out)}: pivot norm {norm:.3e}"
            )
        out.append(w / norm)
    return out


def sym_eigen(m: np.ndarray, tol: float = DEFAULT_TOLERANCE.algebraic):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvectors as columns).  Convergence when
    the off-diagonal Frobenius norm drops below 1e-13.  Raises
    InvalidInputError if `m` is not symmetric within `tol`.
    """
    a = as_matrix(m)
    n = a.shape[0]
    if a.shape[1] != n:
        raise InvalidInputError("matrix must be square")
    if np.max(np.abs(a - a.T)) > tol:
        raise InvalidInputError("matrix not symmetric within tolerance")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    for _ in range(100):
        # off-diagonal Frobenius norm, summed directly (the difference of
        # total and diagonal sums cancels catastrophically near convergence)
        off = np.sqrt(np.sum((a - np.diag(np.diag(a))) ** 2))
        if off < 1e-13:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-20:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rows_p - s * rows_q
                a[q, :] = s * rows_p + c * rows_q
                cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cols_p - s * cols_q
                a[:, q] = s * cols_p + c * cols_q
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    order = np.argsort(np.diag(a))
    return np.diag(a)[order].copy(), v[:, order].copy()


def _check_finite(value: float) -> float:
    if not np.isfinite(value):
        raise NumericalDomainError("function evaluation returned a non-finite value")
    return float(value)


def _step(x: np.ndarray, i: int, h: float) -> float:
    # absolute step scaled by the coordinate magnitude; charts here are O(1)
    return h * max(1.0, abs(float(x[i])))


def central_diff(
    f: Callable[[np.ndarray], float],
    x: np.ndarray,
    i: int,
    h: float = DEFAULT_TOLERANCE.finite_difference,
) -> float:
    """Second-order central difference of f along coordinate i at x."""
    x = as_vector(x)
    hi = _step(x, i, h)
    xp, xm = x.copy(), x.copy()
    xp[i] += hi
    xm[i] -= hi
    return (_check_finite(f(xp)) - _check_finite(f(xm))) / (2.0 * hi)


def second_diff(
    f: Callable[[np.ndarray], float],
    x: np.ndarray,
    i: int,
    h: float = DEFAULT_TOLERANCE.finite_difference,
) -> float:
    """3-point stencil for the pure second derivative along coordinate i."""
    x = as_vector(x)
    hi = _step(x, i, h)
    xp, xm = x.copy(), x.copy()
    xp[i] += hi
    xm[i] -= hi
    return (
        _check_finite(f(xp)) - 2.0 * _check_finite(f(x)) + _check_finite(f(xm))
    ) / (hi * hi)


def cross_diff(
    f: Callable[[np.ndarray], float],
    x: np.ndarray,
    i: int,
    j: int,
    h: float = DEFAULT_TOLERANCE.finite_difference,
) -> float:
    """4-point cross stencil for the mixed second derivative along (i, j)."""
    if i == j:
        return second_diff(f, x, i, h)
    x = as_vector(x)
    hi, hj = _step(x, i, h), _step(x, j, h)
    xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
    xpp[[i, j]] += (hi, hj)
    xpm[i] += hi
    xpm[j] -= hj
    xmp[i] -= hi
    xmp[j] += hj
    xmm[[i, j]] -= (hi, hj)
    return (
        _check_finite(f(xpp))
        - _check_finite(f(xpm))
        - _check_finite(f(xmp))
        + _check_finite(f(xmm))
    ) / (4.0 * hi * hj)
