"""Nelder-Mead simplex minimizer with deterministic restart policy.

Plain textbook coefficients (reflection 1, expansion 2, contraction 0.5,
shrink 0.5).  A round converges when both the function-value spread and the
vertex spread of the simplex collapse below tolerance; the search then
restarts up to ``n_restarts`` times from the incumbent with a fresh simplex
perturbed by ``restart_scale``, which is what pulls fits off the flat shape
ridge this model family produces.  All randomness comes from the seeded
generator, so results are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SimplexOptions", "SimplexResult", "minimize_simplex"]


@dataclass(frozen=True)
class SimplexOptions:
    tol_f: float = 1e-10
    tol_x: float = 1e-8
    max_evals: int = 50_000
    n_restarts: int = 5
    restart_scale: float = 0.10
    # a restart that gains less than this in objective value ends the search;
    # on likelihoods whose supremum sits at a parameter-space boundary the
    # vertex-spread test can never fire, but progress stalling can
    f_progress_tol: float = 1e-6
    seed: int = 0


@dataclass
class SimplexResult:
    x: np.ndarray
    fun: float
    n_evals: int
    converged: bool
    n_restarts_used: int


def _as_finite(v: float) -> float:
    # nan cannot be ordered; treat it like an infeasible point
    return np.inf if np.isnan(v) else v


def _run_round(fn, x0, f0, steps, opts, budget):
    """One simplex descent from x0 (already evaluated).  Returns
    (x, f, evals_used, converged)."""
    n = x0.size
    verts = np.empty((n + 1, n))
    fvals = np.empty(n + 1)
    verts[0] = x0
    fvals[0] = f0
    evals = 0
    for j in range(n):
        v = x0.copy()
        v[j] += steps[j]
        verts[j + 1] = v
        fvals[j + 1] = _as_finite(fn(v))
        evals += 1

    while evals < budget:
        order = np.argsort(fvals, kind="stable")
        verts = verts[order]
        fvals = fvals[order]
        f_spread = fvals[-1] - fvals[0]
        x_spread = np.max(np.abs(verts[1:] - verts[0]))
        if f_spread < opts.tol_f and x_spread < opts.tol_x:
            return verts[0], fvals[0], evals, True
        centroid = verts[:-1].mean(axis=0)
        xr = centroid + (centroid - verts[-1])
        fr = _as_finite(fn(xr))
        evals += 1
        if fr < fvals[0]:
            xe = centroid + 2.0 * (centroid - verts[-1])
            fe = _as_finite(fn(xe))
            evals += 1
            if fe < fr:
                verts[-1], fvals[-1] = xe, fe
            else:
                verts[-1], fvals[-1] = xr, fr
        elif fr < fvals[-2]:
            verts[-1], fvals[-1] = xr, fr
        else:
            if fr < fvals[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid - 0.5 * (centroid - verts[-1])
            fc = _as_finite(fn(xc))
            evals += 1
            if fc < min(fr, fvals[-1]):
                verts[-1], fvals[-1] = xc, fc
            else:
                # shrink toward the best vertex
                for j in range(1, n + 1):
                    verts[j] = verts[0] + 0.5 * (verts[j] - verts[0])
                    fvals[j] = _as_finite(fn(verts[j]))
                    evals += 1
    order = np.argsort(fvals, kind="stable")
    return verts[order[0]], fvals[order[0]], evals, False


def minimize_simplex(fn, x0, options: SimplexOptions = SimplexOptions(),
                     initial_step=None) -> SimplexResult:
    """Minimize ``fn`` from ``x0``; ``fn`` may return +inf for infeasible
    points but the start itself must be feasible."""
    x0 = np.asarray(x0, dtype=float)
    f0 = _as_finite(fn(x0))
    if not np.isfinite(f0):
        raise ValueError("objective is not finite at the starting point")
    if initial_step is None:
        steps = 0.10 * np.maximum(np.abs(x0), 1.0)
    else:
        steps = np.broadcast_to(np.asarray(initial_step, dtype=float), x0.shape).copy()
    rng = np.random.default_rng(options.seed)

    best_x, best_f = x0, f0
    total_evals = 0
    converged = False
    restarts_used = 0
    round_slice = max(options.max_evals // (options.n_restarts + 1), 2 * (x0.size + 1))
    for round_idx in range(options.n_restarts + 1):
        budget = min(round_slice, options.max_evals - total_evals)
        if budget <= x0.size:
            break
        if round_idx > 0:
            restarts_used += 1
            signs = np.where(rng.random(x0.size) < 0.5, -1.0, 1.0)
            steps = (
                options.restart_scale
                * np.maximum(np.abs(best_x), 0.25)
                * signs
                * rng.uniform(0.5, 1.5, x0.size)
            )
        prev_f = best_f
        x, f, used, ok = _run_round(fn, best_x, best_f, steps, options, budget)
        total_evals += used
        if f < best_f:
            best_x, best_f = x, f
        converged = ok
        if round_idx > 0 and prev_f - best_f < options.f_progress_tol:
            converged = True
            break
    return SimplexResult(best_x, best_f, total_evals, converged, restarts_used)
