"""Univariate Chebyshev machinery on [-1, 1].

Grids are Chebyshev points of the second kind, ordered decreasing from 1
to -1.  Value/coefficient transforms are the DCT-I pair, so a series of
length n interpolates its samples exactly and round-trips to machine
precision.
"""

import math

import numpy as np
from numpy.polynomial.chebyshev import chebval
from scipy.fft import dct


def cheb_points(n):
    """Chebyshev points of the second kind, x_j = cos(j*pi/(n-1)).

    Computed as sin(pi*(n-1-2j)/(2(n-1))) with the fraction reduced
    first, so that nested grids (n -> 2n-1) share bit-identical points
    and the grid is exactly symmetric about 0.
    """
    if n < 1:
        raise ValueError(f"need at least one point, got n={n}")
    if n == 1:
        return np.zeros(1)
    pts = np.empty(n)
    den = 2 * (n - 1)
    for j in range(n):
        num = n - 1 - 2 * j
        g = math.gcd(abs(num), den)
        if g == 0:
            pts[j] = 0.0
        else:
            pts[j] = math.sin(math.pi * (num // g) / (den // g))
    return pts


def vals_to_coeffs(values):
    """Map samples at cheb_points(n) to Chebyshev coefficients.

    Accepts a vector or a matrix whose columns are independent sample
    sets.  Exact (to round-off) for polynomials of degree <= n-1.
    """
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("empty sample vector")
    n = v.shape[0]
    if n == 1:
        return v.copy()
    c = dct(v, type=1, axis=0) / (n - 1)
    c[0] /= 2
    c[-1] /= 2
    return c


def coeffs_to_vals(coeffs, n):
    """Sample a Chebyshev series on cheb_points(n), n >= len(coeffs)."""
    c = np.asarray(coeffs, dtype=float)
    m = c.shape[0]
    if n < m:
        raise ValueError(f"target grid size {n} smaller than series length {m}")
    if n == 1:
        return c.copy()
    pad_shape = (n,) + c.shape[1:]
    a = np.zeros(pad_shape)
    a[:m] = c
    a[1:-1] /= 2
    return dct(a, type=1, axis=0)


def eval_series(coeffs, x):
    """Evaluate sum_k c_k T_k(x) by Clenshaw recurrence.

    For matrix coefficients, each column is a separate series and the
    result has one value per column.
    """
    c = np.asarray(coeffs, dtype=float)
    return chebval(x, c)


def _tail_window(n):
    return max(3, math.ceil(0.15 * n))


def is_resolved(coeffs, tol, vscale):
    """Plateau check: the trailing coefficient window is below tol*vscale.

    The window covers the last max(3, ceil(0.15*n)) coefficients; series
    shorter than 5 are never considered resolved.
    """
    c = np.asarray(coeffs, dtype=float)
    n = c.shape[0]
    if n < 5:
        return False
    w = _tail_window(n)
    return bool(np.max(np.abs(c[-w:])) <= tol * vscale)


def refine_size(n):
    """Next nested grid size, 2n-1."""
    if n < 2:
        raise ValueError(f"cannot refine a grid of size {n}")
    return 2 * n - 1


def chop_series(coeffs, tol, vscale):
    """Shortest prefix whose removed tail is below tol*vscale (length >= 1)."""
    c = np.asarray(coeffs, dtype=float)
    keep = np.nonzero(np.abs(c) > tol * vscale)[0]
    if keep.size == 0:
        return c[:1].copy()
    return c[: keep[-1] + 1].copy()
