"""Distortion ratios ``h_{D',c}(f(x), f(y)) / h_{D,c}(x, y)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..domains import Domain, HalfSpace, OutsideDomainError, PuncturedUnitBall, UnitBall
from ..hmetric import MetricParams, h_from_parts
from ..mobius import MobiusMap, Trace, apply, inverse, push_pair
from ..vecgeom import INF, as_point

__all__ = ["RatioSample", "ratio", "ratio_batch", "image_boundary_distance"]


@dataclass(frozen=True)
class RatioSample:
    x: np.ndarray
    y: np.ndarray
    h_source: float
    h_image: float
    ratio: float


def _ball_part(t: Trace):
    r = np.linalg.norm(t.points, axis=-1)
    w = t.ball_defect if t.ball_defect is not None else (1.0 - r) * (1.0 + r)
    return np.where(r < 1.0, w / (1.0 + r), -1.0)


def _puncture_preimage(f: MobiusMap, source: Domain, target: PuncturedUnitBall):
    """Source point mapped onto the target puncture, preferring the exact source puncture."""
    if isinstance(source, PuncturedUnitBall):
        img = apply(f, source.puncture)
        if img is not INF and np.linalg.norm(img - target.puncture) <= 1e-9 * (1.0 + np.linalg.norm(target.puncture)):
            return source.puncture
    pre = apply(inverse(f), target.puncture)
    return None if pre is INF else pre


def image_boundary_distance(f: MobiusMap, source: Domain, target: Domain, X, tx: Trace | None = None):
    """Boundary distance in ``target`` of ``f(X)``, using tracked quantities where possible.

    Entries are ``<= 0`` where the image is not inside ``target``.
    """
    X = np.atleast_2d(X)
    if tx is None:
        tx, _, _ = push_pair(f, X, X)
    if isinstance(target, UnitBall):
        return _ball_part(tx)
    if isinstance(target, HalfSpace):
        return tx.height if tx.height is not None else tx.points[:, -1]
    if isinstance(target, PuncturedUnitBall):
        pre = _puncture_preimage(f, source, target)
        if pre is not None:
            _, _, hole = push_pair(f, X, np.broadcast_to(pre, X.shape))
            # an exact hit of the puncture is outside the domain
            hole = np.where(np.all(tx.points == target.puncture, axis=-1), 0.0, hole)
        else:
            hole = np.linalg.norm(tx.points - target.puncture, axis=-1)
        return np.minimum(hole, _ball_part(tx))
    inside = target.contains(tx.points)
    d = np.where(inside, target._distance(tx.points), -1.0)
    return d


def ratio_batch(f: MobiusMap, D: Domain, D2: Domain, params, X, Y, check: bool = True):
    """Vectorised ratios for pair batches ``X``, ``Y`` of shape ``(k, n)``.

    Returns ``(h_source, h_image, ratio)``. With ``check=False`` invalid pairs
    (coincident, outside ``D``, or image outside ``D2``) give NaN instead of
    raising.
    """
    c = params.c if isinstance(params, MetricParams) else MetricParams(float(params)).c
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    ok = D.contains(X) & D.contains(Y)
    same = np.all(X == Y, axis=-1)
    if check:
        if not np.all(ok):
            raise OutsideDomainError()
        if np.any(same):
            raise ValueError("x and y coincide: the ratio is 0/0")
    ok &= ~same
    Xs, Ys = X, Y
    if not np.all(ok):
        # park invalid rows on a harmless valid pair, blank them at the end
        Xs, Ys = _park(D, X, Y, ok)
    dx = D._distance(Xs)
    dy = D._distance(Ys)
    hs = h_from_parts(c, np.linalg.norm(Xs - Ys, axis=-1), dx, dy)
    tx, ty, dimg = push_pair(f, Xs, Ys)
    bx = image_boundary_distance(f, D, D2, Xs, tx)
    by = image_boundary_distance(f, D, D2, Ys, ty)
    inside = (bx > 0) & (by > 0)
    if check and not np.all(inside):
        raise OutsideDomainError("image point outside target domain")
    ok &= inside
    bx = np.where(ok, bx, 1.0)
    by = np.where(ok, by, 1.0)
    hi = h_from_parts(c, dimg, bx, by)
    r = hi / hs
    nan = np.nan
    return np.where(ok, hs, nan), np.where(ok, hi, nan), np.where(ok, r, nan)


def _unit(n):
    e = np.zeros(n)
    e[0] = 1.0
    return e


def _park(D, X, Y, ok):
    X = X.copy()
    Y = Y.copy()
    p = _interior_pair(D)
    X[~ok] = p[0]
    Y[~ok] = p[1]
    return X, Y


def _interior_pair(D):
    n = D.n
    e = _unit(n)
    if isinstance(D, HalfSpace):
        return D.anchor(), D.anchor() + 0.5 * e
    p, q = 0.3 * e, 0.4 * e
    if isinstance(D, PuncturedUnitBall) and (np.array_equal(p, D.puncture) or np.array_equal(q, D.puncture)):
        p, q = -p, -q
    return p, q


def ratio(f: MobiusMap, D: Domain, D2: Domain, params, x, y) -> RatioSample:
    x = as_point(x)
    y = as_point(y)
    if np.array_equal(x, y):
        raise ValueError("x and y coincide: the ratio is 0/0")
    hs, hi, r = ratio_batch(f, D, D2, params, x[None], y[None], check=True)
    return RatioSample(x, y, float(hs[0]), float(hi[0]), float(r[0]))
