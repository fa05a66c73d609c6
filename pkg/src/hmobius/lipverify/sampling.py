"""Stratified pair sampling in the canonical domains.

Pairs are drawn from a fixed mix of strata: independent points, both points
near the boundary, both near an anchor point, one of each, and pairs at small
separations ``1e-1``, ``1e-3`` and ``1e-6`` around general or anchored base
points. Every point is projected to keep a ``1e-12`` clearance from the
boundary.
"""
from __future__ import annotations

import numpy as np

from ..domains import Domain, HalfSpace, PuncturedUnitBall, UnitBall
from ..vecgeom import random_directions, random_points_in_ball

CLEARANCE = 1e-12
SEPARATIONS = (1e-1, 1e-3, 1e-6)

# stratum name -> share of the budget
STRATA = (
    ("uniform", 0.15),
    ("boundary", 0.15),
    ("anchor", 0.15),
    ("mixed", 0.10),
    ("small_sep", 0.20),
    ("small_sep_anchor", 0.25),
)

HALF_WIDTH = 3.0


def project(D: Domain, X: np.ndarray) -> np.ndarray:
    """Pull points back inside ``D`` with clearance 1e-12 (radial clamp / height floor)."""
    X = np.array(X, dtype=np.float64, copy=True)
    if isinstance(D, (UnitBall, PuncturedUnitBall)):
        r = np.linalg.norm(X, axis=-1)
        lim = 1.0 - CLEARANCE
        out = r > lim
        X[out] *= (lim / r[out])[:, None]
    if isinstance(D, PuncturedUnitBall):
        d = X - D.puncture
        r = np.linalg.norm(d, axis=-1)
        close = r < CLEARANCE
        if np.any(close):
            d[close & (r == 0.0)] = np.eye(D.n)[0]
            r = np.linalg.norm(d, axis=-1)
            X[close] = D.puncture + d[close] * (CLEARANCE / r[close])[:, None]
    if isinstance(D, HalfSpace):
        X[:, -1] = np.maximum(X[:, -1], CLEARANCE)
    return X


def general_points(D: Domain, rng, k: int) -> np.ndarray:
    if isinstance(D, HalfSpace):
        X = np.empty((k, D.n))
        X[:, :-1] = rng.uniform(-HALF_WIDTH, HALF_WIDTH, (k, D.n - 1))
        X[:, -1] = 10.0 ** rng.uniform(-4.0, 1.0, k)
        return X
    return random_points_in_ball(rng, k, D.n, 0.0, 1.0 - CLEARANCE)


def boundary_points(D: Domain, rng, k: int) -> np.ndarray:
    depth = 10.0 ** rng.uniform(-12.0, -1.0, k)
    if isinstance(D, HalfSpace):
        X = general_points(D, rng, k)
        X[:, -1] = depth
        return X
    return random_directions(rng, k, D.n) * (1.0 - depth)[:, None]


def anchored_points(D: Domain, anchors, rng, k: int) -> np.ndarray:
    anchors = np.atleast_2d(anchors)
    base = anchors[rng.integers(0, len(anchors), k)]
    rho = 10.0 ** rng.uniform(-8.0, -0.5, k)
    return base + random_directions(rng, k, D.n) * rho[:, None]


def _counts(k: int):
    shares = np.array([s for _, s in STRATA])
    edges = np.rint(np.cumsum(shares) / shares.sum() * k).astype(int)
    return np.diff(np.concatenate([[0], edges]))


def stratified_pairs(D: Domain, anchors, rng: np.random.Generator, k: int):
    """``k`` pairs ``(X, Y)`` following the stratum mix; ``X[i] != Y[i]`` always."""
    counts = _counts(k)
    xs, ys = [], []
    for (name, _), m in zip(STRATA, counts):
        if m == 0:
            continue
        if name == "uniform":
            x, y = general_points(D, rng, m), general_points(D, rng, m)
        elif name == "boundary":
            x, y = boundary_points(D, rng, m), boundary_points(D, rng, m)
        elif name == "anchor":
            x, y = anchored_points(D, anchors, rng, m), anchored_points(D, anchors, rng, m)
        elif name == "mixed":
            x = boundary_points(D, rng, m)
            y = np.where((rng.uniform(size=m) < 0.5)[:, None],
                         anchored_points(D, anchors, rng, m), general_points(D, rng, m))
        else:
            x = general_points(D, rng, m) if name == "small_sep" else anchored_points(D, anchors, rng, m)
            sep = np.asarray(SEPARATIONS)[np.arange(m) % len(SEPARATIONS)]
            sep = sep * 10.0 ** rng.uniform(-0.5, 0.5, m)
            y = x + random_directions(rng, m, D.n) * sep[:, None]
        xs.append(project(D, x))
        ys.append(project(D, y))
    X = np.concatenate(xs)
    Y = np.concatenate(ys)
    same = np.all(X == Y, axis=-1)
    while np.any(same):
        Y[same] = project(D, X[same] + 1e-6 * random_directions(rng, int(same.sum()), D.n))
        same = np.all(X == Y, axis=-1)
    return X, Y
