"""Index selection on matrices: cross approximation and DEIM.

The constructor never looks at a full tensor.  It reduces everything to
two matrix questions: which rows/columns capture a matrix (ACA), and
which rows of an orthonormal basis make a stable interpolation operator
(DEIM).  This demo shows both on a Hilbert-like matrix whose singular
values decay fast.
"""

import numpy as np

from tuckercheb import aca, build_oblique


def main():
    n = 200
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    m = 1.0 / (1.0 + i + j)  # numerically low rank

    sv = np.linalg.svd(m, compute_uv=False)
    print("Singular values 1, 5, 10:", [f"{sv[k]:.2e}" for k in (0, 4, 9)])

    res = aca(m, tol_abs=1e-10 * np.max(np.abs(m)))
    I, J = res.row_indices, res.col_indices
    print(f"\nACA picked rank {res.rank} from {n}x{n} entries")
    print(f"pivot magnitudes: {[f'{p:.1e}' for p in res.pivot_magnitudes[:5]]} ...")

    rec = m[:, J] @ np.linalg.solve(m[np.ix_(I, J)], m[I, :])
    print(f"cross reconstruction error: {np.max(np.abs(m - rec)):.2e}")
    print(f"(only {res.rank} rows + {res.rank} columns of the matrix were needed)")

    # DEIM: pick interpolation rows from an orthonormal basis of the range
    q, _ = np.linalg.qr(m[:, J])
    proj = build_oblique(q)
    print(f"\nDEIM interpolation rows: {proj.interp_rows}")
    print(f"mixing-matrix 2-norm (error amplification factor): {proj.mixing_norm:.2f}")

    v = m @ np.random.default_rng(0).standard_normal(n)  # lies in the range
    print(f"projector error on an in-range vector: {np.max(np.abs(proj.apply(v) - v)):.2e}")


if __name__ == "__main__":
    main()
