"""Ratios along the explicit extremal paths, and the half-space invariance check."""
from __future__ import annotations

import numpy as np

from ..domains import HalfSpace, UnitBall
from ..mobius import MobiusMap, apply_batch, ball_to_halfspace, sigma_a
from ..vecgeom import Seed, as_point
from .ratio import ratio_batch
from .sampling import general_points

__all__ = ["sharpness_scan_b2b", "sharpness_scan_b2h", "h2h_invariance_check", "geometric_grid"]


def geometric_grid(k_min: int = 1, k_max: int = 8):
    """``t = 10^-k`` for ``k = k_min .. k_max``."""
    return [10.0 ** -k for k in range(k_min, k_max + 1)]


def sharpness_scan_b2b(a, params, t_values, inverse: bool = False):
    """Ratios for ``sigma_a`` on the pairs ``x = t a/|a| = -y``.

    As ``t -> 0+`` these approach ``1 + |a|``. With ``inverse=True`` the pair
    ``(sigma_a(x), sigma_a(y))`` is used instead and the ratios approach
    ``1 / (1 + |a|)``.
    """
    a = as_point(a)
    na = np.linalg.norm(a)
    if na == 0.0:
        raise ValueError("a must be nonzero")
    t = np.asarray(t_values, dtype=np.float64)
    if np.any((t <= 0) | (t >= na)):
        raise ValueError("every t must lie in (0, |a|)")
    n = a.shape[0]
    f = sigma_a(a)
    X = t[:, None] * (a / na)
    Y = -X
    if inverse:
        X, Y = apply_batch(f, X), apply_batch(f, Y)
    _, _, r = ratio_batch(f, UnitBall(n), UnitBall(n), params, X, Y)
    return list(zip(t.tolist(), r.tolist()))


def sharpness_scan_b2h(params, t_values, n: int = 2):
    """Ratios for the ball-to-half-space inversion on ``x = -y = t e_1``.

    Tends to 2 as ``t -> 0+`` and to 1 as ``t -> 1-`` (slowly, like a ratio of logarithms).
    """
    t = np.asarray(t_values, dtype=np.float64)
    if np.any((t <= 0) | (t >= 1)):
        raise ValueError("every t must lie in (0, 1)")
    X = np.zeros((t.size, n))
    X[:, 0] = t
    _, _, r = ratio_batch(ball_to_halfspace(n), UnitBall(n), HalfSpace(n), params, X, -X)
    return list(zip(t.tolist(), r.tolist()))


def h2h_invariance_check(f: MobiusMap, params, n_samples: int, seed=0) -> float:
    """Largest ``|ratio - 1|`` over random pairs for a self-map ``f`` of the upper half-space."""
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    H = HalfSpace(f.n)
    rng = seed.rng()
    X = general_points(H, rng, n_samples)
    Y = general_points(H, rng, n_samples)
    _, _, r = ratio_batch(f, H, H, params, X, Y, check=True)
    return float(np.max(np.abs(r - 1.0)))
