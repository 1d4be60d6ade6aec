"""Instrumented wrapper around the target function.

Every sample is memoized by its exact floating-point (x, y, z) triple,
so re-queried points cost nothing and the distinct-point counter is the
honest measure of evaluation work.  A running max of |f| (vscale) feeds
the relative tolerance heuristics of the constructor.
"""

import numpy as np


class SamplingError(RuntimeError):
    """The target function produced a non-finite value."""

    def __init__(self, point, value):
        self.point = point
        self.value = value
        super().__init__(f"f{tuple(point)} = {value} is not finite")


class InstrumentedOracle:
    """Wraps f: [-1,1]^3 -> R with memoization and per-phase counters.

    If ``vectorized`` is true (default), f is called once per batch with
    numpy arrays; otherwise it is called point by point.
    """

    def __init__(self, fn, vectorized=True):
        self._fn = fn
        self._vectorized = vectorized
        self._memo = {}
        self.total_calls = 0
        self.distinct_points = 0
        self.vscale = 0.0
        self.phase = "init"
        self.counts = {}

    def set_phase(self, name):
        self.phase = name

    def _bump(self, total, distinct):
        self.total_calls += total
        self.distinct_points += distinct
        t, d = self.counts.get(self.phase, (0, 0))
        self.counts[self.phase] = (t + total, d + distinct)

    def eval_points(self, xs, ys, zs):
        """Evaluate f at point triples given by parallel flat arrays."""
        xs = np.asarray(xs, dtype=float).ravel()
        ys = np.asarray(ys, dtype=float).ravel()
        zs = np.asarray(zs, dtype=float).ravel()
        n = xs.size
        out = np.empty(n)
        memo = self._memo
        miss = []
        new_keys = set()
        for idx in range(n):
            key = (xs[idx], ys[idx], zs[idx])
            val = memo.get(key)
            if val is None:
                miss.append(idx)
                new_keys.add(key)
            else:
                out[idx] = val
        if miss:
            mi = np.asarray(miss)
            if self._vectorized:
                vals = np.asarray(self._fn(xs[mi], ys[mi], zs[mi]), dtype=float)
                vals = np.broadcast_to(vals, mi.shape).astype(float)
            else:
                vals = np.array(
                    [float(self._fn(xs[i], ys[i], zs[i])) for i in miss]
                )
            bad = ~np.isfinite(vals)
            if np.any(bad):
                k = miss[int(np.argmax(bad))]
                raise SamplingError((xs[k], ys[k], zs[k]), vals[int(np.argmax(bad))])
            for pos, idx in enumerate(miss):
                v = vals[pos]
                memo[(xs[idx], ys[idx], zs[idx])] = v
                out[idx] = v
            vmax = float(np.max(np.abs(vals)))
            if vmax > self.vscale:
                self.vscale = vmax
        self._bump(n, len(new_keys))
        return out

    def eval_grid(self, xs, ys, zs):
        """Evaluate f on the outer-product grid xs x ys x zs."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        zs = np.asarray(zs, dtype=float)
        X, Y, Z = np.meshgrid(xs, ys, zs, indexing="ij")
        flat = self.eval_points(X.ravel(), Y.ravel(), Z.ravel())
        return flat.reshape(xs.size, ys.size, zs.size)

    def __call__(self, x, y, z):
        return float(self.eval_points([x], [y], [z])[0])
