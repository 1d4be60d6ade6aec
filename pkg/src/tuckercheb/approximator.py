"""Three-phase fiber-based constructor for functional Tucker approximants.

Phase 1 alternates cross approximation over lazily sampled coarse-grid
subtensors to pick fiber indices and factor matrices.  Phase 2 refines
each factor's Chebyshev grid (2n-1 nesting) until the coefficient tails
are resolved.  Phase 3 orthonormalizes the factors, picks interpolation
rows by DEIM, samples the r1*r2*r3 core entries, and verifies the result
at Halton points, restarting on coarser-than-needed grids.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .chebyshev import cheb_points, eval_series, is_resolved, refine_size, vals_to_coeffs
from .cross import DegenerateInputError, aca, build_oblique
from .oracle import InstrumentedOracle
from .tensor import matricize, subtensor

RANK_RATIO_THRESHOLD = 1.0 / (2.0 * math.sqrt(2.0))


@dataclass
class ConstructorConfig:
    tol: float = 1e-12
    coarse_dims: tuple = (17, 17, 17)
    rank_guesses: tuple = (6, 6, 6)
    rank_ratio_threshold: float = RANK_RATIO_THRESHOLD
    halton_count: int = 30
    acceptance_factor: float = 10.0
    max_restarts: int = 5
    max_fine_size: int = 2**14 + 1
    max_coarse_size: int = 2000
    max_rank: int = 512
    seed: int = 0

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.halton_count < 1 or self.max_restarts < 0:
            raise ValueError("bad sampling configuration")


@dataclass
class ModeFibers:
    """Fiber samples for one mode: values[:, c] is f along the mode axis
    with the other two coordinates fixed at coords[c] = (a, b)."""

    mode: int
    values: np.ndarray
    coords: list


@dataclass
class TuckerApproximant:
    """Core tensor plus columnwise Chebyshev-interpolated factors."""

    core: np.ndarray
    coeffs: tuple  # (A_U, A_V, A_W), shape (d_alpha, r_alpha) each
    stats: dict = field(default_factory=dict)

    @property
    def ranks(self):
        return tuple(self.core.shape)

    @property
    def degrees(self):
        return tuple(a.shape[0] for a in self.coeffs)

    def evaluate(self, x, y, z):
        u = np.atleast_1d(eval_series(self.coeffs[0], x))
        v = np.atleast_1d(eval_series(self.coeffs[1], y))
        w = np.atleast_1d(eval_series(self.coeffs[2], z))
        return float(np.einsum("ijk,i,j,k", self.core, u, v, w))

    def evaluate_many(self, pts):
        """Evaluate at an (m, 3) array of points, returning shape (m,)."""
        pts = np.asarray(pts, dtype=float)
        u = np.atleast_2d(eval_series(self.coeffs[0], pts[:, 0]))
        v = np.atleast_2d(eval_series(self.coeffs[1], pts[:, 1]))
        w = np.atleast_2d(eval_series(self.coeffs[2], pts[:, 2]))
        return np.einsum("ijk,im,jm,km->m", self.core, u, v, w)


def _radical_inverse(i, base):
    f = 1.0
    r = 0.0
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def halton_points(count, offset=0):
    """Halton sequence in bases (2, 3, 5), mapped from (0,1) to (-1,1)."""
    if count < 1:
        raise ValueError("count must be positive")
    pts = np.empty((count, 3))
    for row in range(count):
        idx = offset + 1 + row
        for d, b in enumerate((2, 3, 5)):
            pts[row, d] = 2.0 * _radical_inverse(idx, b) - 1.0
    return pts


def grow_size(n):
    """Coarse-grid growth rule: floor(sqrt(2)^floor(2*log2(n)+1)) + 1."""
    return int(math.floor(math.sqrt(2.0) ** math.floor(2.0 * math.log2(n) + 1.0))) + 1


def _aca_on_matrix(m, tol_rel, max_rank):
    """ACA with tolerance relative to the initial residual maximum.

    Falls back to a single first-row/first-column cross if the sampled
    matrix is identically zero, so downstream machinery always has at
    least one fiber to work with.
    """
    m0 = float(np.max(np.abs(m))) if m.size else 0.0
    if m0 == 0.0:
        return [0], [0]
    res = aca(m, tol_abs=tol_rel * m0, max_rank=max_rank)
    if res.rank == 0:
        return [0], [0]
    return res.row_indices, res.col_indices


def _col_coords(cols, a_indices, a_points, b_indices, b_points):
    """Map unfolding column numbers back to fixed coordinate pairs."""
    na = len(a_indices)
    out = []
    for c in cols:
        a = a_indices[c % na]
        b = b_indices[c // na]
        out.append((a_points[a], b_points[b]))
    return out


def phase1_factors(oracle, cfg, dims, guesses, rng):
    """Alternating fiber selection (two sweeps) on the coarse grid.

    Returns (mode_fibers, dims, ranks), or None when the function is
    numerically zero on the initial probe.
    """
    dims = tuple(dims)
    guesses = tuple(guesses)
    first_probe = True
    while True:
        n1, n2, n3 = dims
        pts = [cheb_points(n) for n in dims]
        J = list(rng.choice(n2, size=min(guesses[1], n2), replace=False))
        K = list(rng.choice(n3, size=min(guesses[2], n3), replace=False))
        I = []
        grown = False
        fibers = [None, None, None]
        for _ in range(2):
            m1 = matricize(subtensor(oracle, dims, range(n1), J, K), 1)
            if first_probe:
                first_probe = False
                if oracle.vscale == 0.0:
                    return None
            I, cols = _aca_on_matrix(m1, cfg.tol, cfg.max_rank)
            fibers[0] = ModeFibers(1, m1[:, cols], _col_coords(cols, J, pts[1], K, pts[2]))

            m2 = matricize(subtensor(oracle, dims, I, range(n2), K), 2)
            J, cols = _aca_on_matrix(m2, cfg.tol, cfg.max_rank)
            fibers[1] = ModeFibers(2, m2[:, cols], _col_coords(cols, I, pts[0], K, pts[2]))

            m3 = matricize(subtensor(oracle, dims, I, J, range(n3)), 3)
            K, cols = _aca_on_matrix(m3, cfg.tol, cfg.max_rank)
            fibers[2] = ModeFibers(3, m3[:, cols], _col_coords(cols, I, pts[0], J, pts[1]))

            ranks = (len(I), len(J), len(K))
            if any(r / n > cfg.rank_ratio_threshold for r, n in zip(ranks, dims)):
                new_dims = tuple(min(grow_size(n), cfg.max_coarse_size) for n in dims)
                if new_dims != dims:
                    dims = new_dims
                    guesses = tuple(max(r, 1) for r in ranks)
                    grown = True
                    break
            if min(ranks) <= 1:
                break
        if grown:
            continue
        return fibers, dims, (len(I), len(J), len(K))


def phase2_refine(oracle, mode_fibers, dims, cfg):
    """Refine each mode's fiber grid until every column is resolved.

    Old grid points are reused through nestedness (even indices of the
    2n-1 grid), so only the new odd-index points are evaluated.
    Returns (fine_fibers, fine_dims, unresolved_modes).
    """
    fine = []
    fine_dims = []
    unresolved = []
    for mf in mode_fibers:
        n = mf.values.shape[0]
        vals = mf.values
        r = vals.shape[1]
        a = np.array([c[0] for c in mf.coords])
        b = np.array([c[1] for c in mf.coords])
        while True:
            coeffs = vals_to_coeffs(vals)
            w = max(3, math.ceil(0.15 * n))
            tail = np.max(np.abs(coeffs[-w:, :])) if n >= 5 else np.inf
            if n >= 5 and tail <= cfg.tol * oracle.vscale:
                break
            if refine_size(n) > cfg.max_fine_size:
                unresolved.append(mf.mode)
                break
            n_new = refine_size(n)
            newpts = cheb_points(n_new)[1::2]
            m = newpts.size
            var = np.tile(newpts, r)
            fa = np.repeat(a, m)
            fb = np.repeat(b, m)
            if mf.mode == 1:
                sampled = oracle.eval_points(var, fa, fb)
            elif mf.mode == 2:
                sampled = oracle.eval_points(fa, var, fb)
            else:
                sampled = oracle.eval_points(fa, fb, var)
            grown = np.empty((n_new, r))
            grown[0::2, :] = vals
            grown[1::2, :] = sampled.reshape(r, m).T
            vals = grown
            n = n_new
        fine.append(ModeFibers(mf.mode, vals, mf.coords))
        fine_dims.append(n)
    return fine, tuple(fine_dims), unresolved


def phase3_core(oracle, fine_fibers, fine_dims, cfg):
    """QR + DEIM oblique projection and core sampling.

    Returns (approximant_without_stats, diagnostics dict).  Raises
    DegenerateInputError if a DEIM interpolation matrix is singular.
    """
    factor_coeffs = []
    deim_rows = []
    mixing_norms = []
    for mf in fine_fibers:
        q, rmat, _ = scipy.linalg.qr(mf.values, mode="economic", pivoting=True)
        diag = np.abs(np.diag(rmat))
        dmax = diag.max() if diag.size else 0.0
        keep = int(np.sum(diag > 1e-14 * dmax)) if dmax > 0 else 0
        keep = max(keep, 1)
        q = q[:, :keep]
        proj = build_oblique(q)
        factor = q @ proj.mixing  # rows at proj.interp_rows are the identity
        factor_coeffs.append(vals_to_coeffs(factor))
        deim_rows.append(proj.interp_rows)
        mixing_norms.append(proj.mixing_norm)
    grids = [cheb_points(n) for n in fine_dims]
    core = oracle.eval_grid(
        grids[0][deim_rows[0]], grids[1][deim_rows[1]], grids[2][deim_rows[2]]
    )
    approx = TuckerApproximant(core=core, coeffs=tuple(factor_coeffs))
    diag = {"deim_rows": deim_rows, "mixing_norms": mixing_norms}
    return approx, diag


def _modified_guesses(ranks, cfg):
    # collapsed modes restart small; the rest get room to grow
    return tuple(
        3 if r <= 2 else min(max(6, 2 * r), cfg.max_rank) for r in ranks
    )


def _eval_stats(oracle):
    phases = {}
    for name, (total, distinct) in oracle.counts.items():
        phases[name] = {"total": total, "distinct": distinct}
    return phases


def _zero_approximant(oracle, cfg):
    approx = TuckerApproximant(
        core=np.zeros((1, 1, 1)), coeffs=(np.zeros((1, 1)),) * 3
    )
    approx.stats = {
        "schema_version": 1,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "ranks": [1, 1, 1],
        "degrees": [1, 1, 1],
        "coarse_dims": list(cfg.coarse_dims),
        "restarts": 0,
        "vscale": 0.0,
        "halton_error": 0.0,
        "certified": True,
        "unresolved_modes": [],
        "mixing_norms": [1.0, 1.0, 1.0],
        "evals": _eval_stats(oracle),
        "total_calls": oracle.total_calls,
        "distinct_points": oracle.distinct_points,
    }
    return approx


def build(f, config=None, vectorized=True):
    """Construct a TuckerApproximant for f on [-1,1]^3.

    f may be any callable of three floats (or arrays, if vectorized).
    The returned approximant carries construction stats; see the
    'certified' flag for whether the Halton accuracy check passed.
    """
    cfg = config if config is not None else ConstructorConfig()
    oracle = InstrumentedOracle(f, vectorized=vectorized)
    rng = np.random.default_rng(cfg.seed)

    dims = tuple(cfg.coarse_dims)
    guesses = tuple(cfg.rank_guesses)
    restarts = 0
    best = None  # (err, approx, detail)

    while True:
        oracle.set_phase("phase1")
        p1 = phase1_factors(oracle, cfg, dims, guesses, rng)
        if p1 is None:
            return _zero_approximant(oracle, cfg)
        mode_fibers, dims, ranks = p1

        oracle.set_phase("phase2")
        fine_fibers, fine_dims, unresolved = phase2_refine(oracle, mode_fibers, dims, cfg)

        err = math.inf
        approx = None
        detail = None
        try:
            oracle.set_phase("phase3_core")
            approx, diag = phase3_core(oracle, fine_fibers, fine_dims, cfg)
            oracle.set_phase("verify")
            pts = halton_points(cfg.halton_count)
            fvals = oracle.eval_points(pts[:, 0], pts[:, 1], pts[:, 2])
            err = float(np.max(np.abs(fvals - approx.evaluate_many(pts))))
            detail = {
                "coarse_dims": list(dims),
                "fine_dims": list(fine_dims),
                "unresolved": list(unresolved),
                "mixing_norms": diag["mixing_norms"],
            }
        except DegenerateInputError:
            pass

        if approx is not None and (best is None or err < best[0]):
            best = (err, approx, detail)

        certified = (
            approx is not None
            and err <= cfg.acceptance_factor * cfg.tol * oracle.vscale
        )
        if certified or restarts >= cfg.max_restarts:
            break
        restarts += 1
        guesses = _modified_guesses(ranks, cfg)
        dims = tuple(min(grow_size(n), cfg.max_coarse_size) for n in dims)

    if best is None:
        raise DegenerateInputError("every construction attempt failed in phase 3")
    err, approx, detail = best
    approx.stats = {
        "schema_version": 1,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "ranks": list(approx.ranks),
        "degrees": list(approx.degrees),
        "coarse_dims": detail["coarse_dims"],
        "restarts": restarts,
        "vscale": oracle.vscale,
        "halton_error": err,
        "certified": bool(err <= cfg.acceptance_factor * cfg.tol * oracle.vscale),
        "unresolved_modes": detail["unresolved"],
        "mixing_norms": detail["mixing_norms"],
        "evals": _eval_stats(oracle),
        "total_calls": oracle.total_calls,
        "distinct_points": oracle.distinct_points,
    }
    return approx
