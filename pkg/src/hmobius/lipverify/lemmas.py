"""Randomised oracles for the auxiliary identities and inequalities.

Identities report the worst relative gap, measured against the size of the
largest term entering the subtraction (so a result computed to full working
precision scores about 1e-16 regardless of cancellation). Inequalities report
the worst slack ``larger side - smaller side``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..vecgeom import Seed, random_points_in_ball
from .punctured import case_bound_maximum

IDENTITY_TOL = 1e-11
SLACK_TOL = -1e-12


@dataclass(frozen=True)
class OracleResult:
    name: str
    kind: str  # "identity" or "inequality"
    worst: float
    tolerance: float
    n_samples: int

    @property
    def passed(self) -> bool:
        if self.kind == "identity":
            return self.worst <= self.tolerance
        return self.worst >= self.tolerance


def _nonzero_ball(rng, k, n):
    a = random_points_in_ball(rng, k, n, 0.0, 1.0)
    zero = np.linalg.norm(a, axis=1) == 0.0
    a[zero, 0] = 0.5
    return a


def ball_identity_gap(a, b):
    """Relative gap of ``|a|^2 |b-a*|^2 - |b-a|^2 = (1-|a|^2)(1-|b|^2)``."""
    na2 = np.sum(a * a, axis=-1)
    astar = a / na2[..., None]
    t1 = na2 * np.sum((b - astar) ** 2, axis=-1)
    t2 = np.sum((b - a) ** 2, axis=-1)
    rhs = (1.0 - na2) * (1.0 - np.sum(b * b, axis=-1))
    return np.abs((t1 - t2) - rhs) / np.maximum(t1, t2)


def ball_ratio_slacks(a, b):
    """Slacks of ``||b|-|a||/(1-|a||b|) <= |b-a|/(|a||b-a*|) <= (|b|+|a|)/(1+|a||b|)``."""
    na = np.linalg.norm(a, axis=-1)
    nb = np.linalg.norm(b, axis=-1)
    astar = a / (na * na)[..., None]
    mid = np.linalg.norm(b - a, axis=-1) / (na * np.linalg.norm(b - astar, axis=-1))
    lo = np.abs(nb - na) / (1.0 - na * nb)
    hi = (nb + na) / (1.0 + na * nb)
    return mid - lo, hi - mid


def inverse_point_slack(a, z):
    """Slack of ``|a||z - a*| >= 1 - |a||z|``."""
    na = np.linalg.norm(a, axis=-1)
    astar = a / (na * na)[..., None]
    return na * np.linalg.norm(z - astar, axis=-1) - (1.0 - na * np.linalg.norm(z, axis=-1))


def outer_shell_slack(na, nz):
    """Slack of ``|z|(1 - |a||z|) >= (1 - |a|/2)(1 - |z|)`` for ``1/2 <= |z| <= 1``."""
    return nz * (1.0 - na * nz) - (1.0 - 0.5 * na) * (1.0 - nz)


def bernoulli_slack(r, t):
    """Slack of ``r log(1+t) >= log(1+rt)`` for ``r >= 1``, ``t > 0``."""
    return r * np.log1p(t) - np.log1p(r * t)


def lemma_oracles(n_samples: int = 10**6, seed=0, n: int = 3):
    """Evaluate every auxiliary identity/inequality on ``n_samples`` random admissible inputs.

    Returns a list of :class:`OracleResult`, one row per check.
    """
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    rng = seed.rng(0)
    k = int(n_samples)
    rows = []

    a, b = _nonzero_ball(rng, k, n), random_points_in_ball(rng, k, n)
    rows.append(OracleResult("ball identity |a|^2|b-a*|^2-|b-a|^2", "identity",
                             float(np.max(ball_identity_gap(a, b))), IDENTITY_TOL, k))
    s_lo, s_hi = ball_ratio_slacks(a, b)
    rows.append(OracleResult("ratio bounds, lower", "inequality", float(np.min(s_lo)), SLACK_TOL, k))
    rows.append(OracleResult("ratio bounds, upper", "inequality", float(np.min(s_hi)), SLACK_TOL, k))

    a, z = _nonzero_ball(rng, k, n), random_points_in_ball(rng, k, n)
    rows.append(OracleResult("|a||z-a*| >= 1-|a||z|", "inequality",
                             float(np.min(inverse_point_slack(a, z))), SLACK_TOL, k))

    na = rng.uniform(0.0, 1.0, k)
    nz = rng.uniform(0.5, 1.0, k)
    rows.append(OracleResult("|z|(1-|a||z|) >= (1-|a|/2)(1-|z|)", "inequality",
                             float(np.min(outer_shell_slack(na, nz))), SLACK_TOL, k))

    r = 1.0 + rng.exponential(2.0, k)
    t = 10.0 ** rng.uniform(-8.0, 6.0, k)
    rows.append(OracleResult("Bernoulli r log(1+t) >= log(1+rt)", "inequality",
                             float(np.min(bernoulli_slack(r, t))), SLACK_TOL, k))

    grid = np.arange(1, 100) / 100.0
    gap = float(np.max(np.abs(case_bound_maximum(grid) - (1.0 + grid))))
    rows.append(OracleResult("max of case constants = 1+|a|", "identity", gap, IDENTITY_TOL, grid.size))
    return rows
