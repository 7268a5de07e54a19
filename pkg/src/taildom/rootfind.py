"""Bracketed Newton iteration, vectorized over independent problems."""

from __future__ import annotations

from typing import Callable

import numpy as np

Objective = Callable[..., "tuple[np.ndarray, np.ndarray]"]


def safeguarded_newton(
    func: Objective,
    lo,
    hi,
    x0=None,
    *,
    args: tuple = (),
    ftol: float = 0.0,
    maxiter: int = 200,
) -> np.ndarray:
    """Solve ``g(x) = 0`` elementwise for an increasing ``g`` on ``[lo, hi]``.

    ``func(x, *args)`` must return ``(g(x), g'(x))`` for an array ``x``;
    ``args`` are per-element arrays, sliced alongside ``x``. The caller
    guarantees ``g(lo) <= 0 <= g(hi)``. Every iterate updates the bracket;
    Newton steps that leave the bracket (or are not finite) are replaced by
    bisection. Iteration stops per element once ``|g| <= ftol`` or the step
    falls below a few ulps of ``x``.
    """
    arrays = [np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)]
    arrays += [np.asarray(a, dtype=float) for a in args]
    if x0 is not None:
        arrays.append(np.asarray(x0, dtype=float))
    shape = np.broadcast_shapes(*(a.shape for a in arrays))
    flat = [np.broadcast_to(a, shape).reshape(-1).copy() for a in arrays]
    lo, hi = flat[0], flat[1]
    args = tuple(flat[2:2 + len(args)])
    x = np.clip(flat[-1], lo, hi) if x0 is not None else 0.5 * (lo + hi)

    active = np.ones(lo.shape, dtype=bool)
    for _ in range(maxiter):
        idx = np.nonzero(active)
        if not idx[0].size:
            break
        xa = x[idx]
        g, dg = func(xa, *(a[idx] for a in args))
        g = np.asarray(g, dtype=float)
        dg = np.asarray(dg, dtype=float)

        below = g < 0
        lo_a = np.where(below, xa, lo[idx])
        hi_a = np.where(below, hi[idx], xa)
        lo[idx], hi[idx] = lo_a, hi_a

        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            step = g / dg
            xn = xa - step
        bad = ~np.isfinite(xn) | (xn <= lo_a) | (xn >= hi_a)
        xn = np.where(bad, 0.5 * (lo_a + hi_a), xn)

        tiny = 4.0 * np.spacing(np.maximum(np.abs(xa), np.finfo(float).tiny))
        done = (np.abs(g) <= ftol) | (g == 0)
        stalled = (np.abs(xn - xa) <= tiny) | (hi_a - lo_a <= tiny)
        # keep an exact hit, otherwise accept the final (sub-ulp) update
        x[idx] = np.where(done, xa, xn)
        active[idx] = ~(done | stalled)
    return x.reshape(shape)
