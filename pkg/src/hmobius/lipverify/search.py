"""Coordinate pattern search used to refine sampled extrema."""
from __future__ import annotations

import numpy as np


def pattern_search(objective, project, z0, step: float, max_steps: int, tol: float = 1e-9):
    """Maximise ``objective`` by compass polls along each coordinate.

    ``objective`` maps an ``(m, d)`` array to ``(m,)`` values (NaN = infeasible);
    ``project`` maps candidates back into the feasible set. Each step polls
    ``z +- step e_i`` for all ``d`` coordinates, moves to the best improving
    poll, and halves ``step`` when nothing improves. Stops when ``step < tol``
    or after ``max_steps`` polls.

    Returns ``(z, f(z), steps_taken)``.
    """
    z = np.asarray(z0, dtype=np.float64)
    fz = objective(z[None])[0]
    d = z.shape[0]
    dirs = np.concatenate([np.eye(d), -np.eye(d)])
    steps = 0
    while steps < max_steps and step >= tol:
        polls = project(z + step * dirs)
        vals = objective(polls)
        steps += 1
        if np.all(np.isnan(vals)):
            step *= 0.5
            continue
        best = int(np.nanargmax(vals))
        if vals[best] > fz:
            z, fz = polls[best], vals[best]
        else:
            step *= 0.5
    return z, fz, steps
