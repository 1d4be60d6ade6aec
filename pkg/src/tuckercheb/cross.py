"""Index-selection kernels: full-pivot ACA, DEIM, and oblique projectors."""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg


class DegenerateInputError(RuntimeError):
    """Raised when a selection step meets a numerically singular input."""


@dataclass
class AcaResult:
    """Row/column index sets of a cross approximation M ~ M(:,J) M(I,J)^-1 M(I,:)."""

    row_indices: list
    col_indices: list
    pivot_magnitudes: list = field(default_factory=list)

    @property
    def rank(self):
        return len(self.row_indices)


def aca(m, tol_abs, max_rank=None):
    """Adaptive cross approximation with full pivoting.

    Greedily picks the entry of largest residual magnitude, records its
    row and column, and subtracts the rank-1 cross.  Stops once the
    residual maximum drops below tol_abs, the rank cap is hit, or the
    pivot is exactly zero.  Ties go to the first maximum in column-major
    scan order.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ValueError("aca expects a matrix")
    if not np.all(np.isfinite(m)):
        raise ValueError("aca requires finite entries")
    if tol_abs <= 0:
        raise ValueError("tol_abs must be positive")
    nrows, ncols = m.shape
    cap = min(nrows, ncols)
    if max_rank is not None:
        cap = min(cap, max_rank)

    residual = m.copy()
    result = AcaResult(row_indices=[], col_indices=[])
    while result.rank < cap:
        flat = np.argmax(np.abs(residual).ravel(order="F"))
        i = int(flat % nrows)
        j = int(flat // nrows)
        pivot = residual[i, j]
        if abs(pivot) < tol_abs or pivot == 0.0:
            break
        result.row_indices.append(i)
        result.col_indices.append(j)
        result.pivot_magnitudes.append(abs(pivot))
        residual -= np.outer(residual[:, j], residual[i, :]) / pivot
    return result


def deim(q):
    """Discrete empirical interpolation indices for an orthonormal basis.

    Returns r distinct row indices such that q[I, :] is invertible;
    index k is the argmax of the k-th column's interpolation residual.
    Ties go to the smallest index.
    """
    q = np.asarray(q, dtype=float)
    if q.ndim != 2:
        raise ValueError("deim expects a matrix")
    n, r = q.shape
    if r > n:
        raise ValueError(f"more columns ({r}) than rows ({n})")
    gram = q.T @ q
    if np.max(np.abs(gram - np.eye(r))) > 1e-8:
        import warnings

        warnings.warn("deim input columns are not orthonormal", stacklevel=2)

    if np.max(np.abs(q[:, 0])) == 0.0:
        raise DegenerateInputError("zero column in deim input")
    indices = [int(np.argmax(np.abs(q[:, 0])))]
    for k in range(1, r):
        c = np.linalg.solve(q[np.ix_(indices, range(k))], q[indices, k])
        resid = q[:, k] - q[:, :k] @ c
        if np.max(np.abs(resid)) == 0.0:
            raise DegenerateInputError(f"zero residual at deim step {k}")
        indices.append(int(np.argmax(np.abs(resid))))
    return indices


@dataclass
class ObliqueProjector:
    """Oblique projector Q (Q[I,:])^-1 restricted-row interpolation operator."""

    basis: np.ndarray
    interp_rows: list
    mixing: np.ndarray
    mixing_norm: float

    def apply(self, x):
        """Project x: interpolate its values at rows I in span(basis)."""
        x = np.asarray(x)
        return self.basis @ (self.mixing @ x[self.interp_rows])


def build_oblique(q):
    """Run DEIM on q and assemble the stabilized oblique projector.

    The mixing matrix inv(q[I,:]) is obtained from a pivoted LU solve and
    its 2-norm is recorded for diagnostics.
    """
    q = np.asarray(q, dtype=float)
    rows = deim(q)
    sub = q[rows, :]
    r = sub.shape[0]
    lu, piv = scipy.linalg.lu_factor(sub)
    if np.min(np.abs(np.diag(lu))) <= np.finfo(float).eps * np.max(np.abs(sub)) * r:
        raise DegenerateInputError("deim interpolation matrix is numerically singular")
    mixing = scipy.linalg.lu_solve((lu, piv), np.eye(r))
    norm2 = float(np.linalg.svd(mixing, compute_uv=False)[0])
    return ObliqueProjector(basis=q, interp_rows=rows, mixing=mixing, mixing_norm=norm2)
