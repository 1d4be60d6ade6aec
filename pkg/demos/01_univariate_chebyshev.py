"""Univariate warm-up: Chebyshev grids, coefficient decay, and chopping.

Everything the trivariate constructor does is built from this machinery:
sample a function on a Chebyshev grid, transform the samples to series
coefficients, look at the coefficient tail to decide whether the grid is
fine enough, and chop the series to its minimal length.
"""

import numpy as np

from tuckercheb import cheb_points, chop_series, eval_series, is_resolved, refine_size, vals_to_coeffs


def main():
    f = lambda x: np.exp(x) * np.sin(5 * x)
    tol = 1e-12

    print("Doubling the grid (2n-1 keeps old points) until the tail is flat:")
    n = 9
    while True:
        x = cheb_points(n)
        coeffs = vals_to_coeffs(f(x))
        vscale = np.max(np.abs(f(x)))
        tail = np.max(np.abs(coeffs[-max(3, int(np.ceil(0.15 * n))):]))
        status = "resolved" if is_resolved(coeffs, tol, vscale) else "not yet"
        print(f"  n = {n:4d}   tail = {tail:9.2e}   {status}")
        if is_resolved(coeffs, tol, vscale):
            break
        n = refine_size(n)

    chopped = chop_series(coeffs, tol, vscale)
    print(f"\nChopped series length: {chopped.size} (from {coeffs.size} samples)")

    xs = np.linspace(-1, 1, 1001)
    err = np.max(np.abs(eval_series(chopped, xs) - f(xs)))
    print(f"Max error of the chopped interpolant on [-1,1]: {err:.2e}")

    print("\nNote the grids are nested: the 2n-1 point grid contains the")
    print("n point grid bit-for-bit, so refinement reuses every old sample.")
    coarse, fine = cheb_points(17), cheb_points(33)
    print(f"cheb_points(33)[::2] == cheb_points(17): {np.array_equal(fine[::2], coarse)}")


if __name__ == "__main__":
    main()
