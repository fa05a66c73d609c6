"""The hyperbolic-type metric ``h_{D,c}(x, y) = log(1 + c |x-y| / sqrt(d_D(x) d_D(y)))``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import Domain
from .vecgeom import as_point

__all__ = [
    "MetricParams",
    "BoundaryProximityError",
    "h_eval",
    "h_from_parts",
    "one_minus_norm_of_ball_inversion",
]

#: boundary distances below this are treated as "on the boundary"
MIN_BOUNDARY_DISTANCE = 1e-300


class BoundaryProximityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MetricParams:
    """The constant ``c``. The triangle inequality is only guaranteed for ``c >= 2``."""

    c: float = 2.0

    def __post_init__(self):
        if not (np.isfinite(self.c) and self.c > 0):
            raise ValueError(f"c must be a positive real, got {self.c!r}")

    @property
    def metric_axioms_guaranteed(self) -> bool:
        return self.c >= 2.0


def _c(params) -> float:
    return params.c if isinstance(params, MetricParams) else MetricParams(float(params)).c


def h_from_parts(c: float, d, dx, dy):
    """``log1p(c d / (sqrt(dx) sqrt(dy)))`` from a distance and two boundary distances.

    Works elementwise on arrays. Raises :class:`BoundaryProximityError` if a
    boundary distance is below 1e-300.
    """
    dx = np.asarray(dx, dtype=np.float64)
    dy = np.asarray(dy, dtype=np.float64)
    if np.any(dx < MIN_BOUNDARY_DISTANCE) or np.any(dy < MIN_BOUNDARY_DISTANCE):
        raise BoundaryProximityError("boundary distance below 1e-300")
    # sqrt separately: dx * dy can underflow
    return np.log1p(c * np.asarray(d) / (np.sqrt(dx) * np.sqrt(dy)))


def h_eval(D: Domain, params, x, y):
    """Evaluate ``h_{D,c}(x, y)``.

    ``x`` and ``y`` are single points or equally shaped ``(k, n)`` batches.
    Operands are put in lexicographic order first, so the result is
    bit-identical under swapping ``x`` and ``y``.
    """
    c = _c(params)
    px = np.asarray(x, dtype=np.float64)
    py = np.asarray(y, dtype=np.float64)
    if px.ndim == 1:
        px, py = as_point(px), as_point(py)
        if tuple(py) < tuple(px):
            px, py = py, px
    dx = D.boundary_distance(px)
    dy = D.boundary_distance(py)
    d = np.linalg.norm(px - py, axis=-1)
    h = h_from_parts(c, d, dx, dy)
    return float(h) if np.ndim(h) == 0 else h


def one_minus_norm_of_ball_inversion(a, x):
    """``1 - |sigma_a(x)|`` without cancellation near the unit sphere.

    Uses ``1 - |sigma_a(x)| = (1-|a|^2)(1-|x|^2) / (|a||x-a*| (|a||x-a*| + |x-a|))``,
    which follows from ``|a|^2 |x-a*|^2 - |x-a|^2 = (1-|a|^2)(1-|x|^2)`` and
    ``|sigma_a(x)| = |x-a| / (|a||x-a*|)``. ``x`` may be a ``(k, n)`` batch.
    """
    a = as_point(a)
    na = np.linalg.norm(a)
    if na == 0.0:
        raise ValueError("sigma_a is undefined for a = 0")
    if not na < 1.0:
        raise ValueError("a must lie in the open unit ball")
    x = np.asarray(x, dtype=np.float64)
    nx = np.linalg.norm(x, axis=-1)
    astar = a / (na * na)
    p = na * np.linalg.norm(x - astar, axis=-1)
    q = np.linalg.norm(x - a, axis=-1)
    num = (1.0 - na) * (1.0 + na) * (1.0 - nx) * (1.0 + nx)
    out = num / (p * (p + q))
    return float(out) if np.ndim(out) == 0 else out
