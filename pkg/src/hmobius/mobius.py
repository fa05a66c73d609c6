"""Möbius maps of the extended space stored as chains of primitive maps.

A :class:`MobiusMap` is an ordered tuple of primitives applied left to right.
There is no matrix (Vahlen) representation; the chain is the map.

Besides plain point evaluation, :func:`push_pair` carries a pair of point
batches through the chain together with quantities that would otherwise be
recovered by cancellation-prone subtraction: the image distance ``|f(x)-f(y)|``,
the unit-ball defect ``1 - |f(x)|^2`` and the half-space height ``f(x)_n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .vecgeom import INF, OrthogonalMatrix, Seed, as_point, random_orthogonal

__all__ = [
    "PoleProximityError",
    "SphereInversion",
    "Orthogonal",
    "Translation",
    "Scaling",
    "MobiusMap",
    "identity",
    "apply",
    "apply_batch",
    "compose",
    "inverse",
    "sigma_a",
    "ball_automorphism",
    "ball_to_halfspace",
    "unit_inversion",
    "halfspace_mobius",
    "random_halfspace_similarity",
    "inversion_distance_identity_check",
    "Trace",
    "push_pair",
    "parse_map",
]

POLE_TOL = 1e-300


class PoleProximityError(ArithmeticError):
    """A point lies within 1e-300 of an inversion centre but not exactly on it."""


def _frozen(v) -> np.ndarray:
    a = np.array(v, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SphereInversion:
    """``x -> q + r2 (x - q) / |x - q|^2``; the centre goes to infinity and back."""

    center: np.ndarray
    radius2: float

    def __post_init__(self):
        c = as_point(self.center)
        if not (np.isfinite(self.radius2) and self.radius2 > 0):
            raise ValueError("inversion radius^2 must be positive")
        object.__setattr__(self, "center", _frozen(c))
        object.__setattr__(self, "radius2", float(self.radius2))

    def __eq__(self, other):
        return (isinstance(other, SphereInversion) and self.radius2 == other.radius2
                and np.array_equal(self.center, other.center))

    def __hash__(self):
        return hash((self.center.tobytes(), self.radius2))

    @property
    def n(self):
        return self.center.shape[0]

    def _parts(self, X):
        d = X - self.center
        s = np.max(np.abs(d), axis=-1)
        if np.any(s < POLE_TOL):
            raise PoleProximityError("point within 1e-300 of an inversion centre")
        ds = d / s[..., None]
        q = np.sum(ds * ds, axis=-1)
        # image = q + (r2 / (|ds|^2 s)) ds ; factor r2 / |x - q|^2
        return self.center + (self.radius2 / (q * s))[..., None] * ds, self.radius2 / (q * s * s)

    def factor(self, X):
        """``r2 / |x - q|^2`` row-wise."""
        return self._parts(X)[1]

    def apply_batch(self, X):
        return self._parts(X)[0]

    def apply_point(self, x):
        if x is INF:
            return self.center.copy()
        if np.array_equal(x, self.center):
            return INF
        return self._parts(x[None])[0][0]

    def inverse(self):
        return self

    def preserves_unit_sphere(self):
        # a sphere orthogonal to S^{n-1}: |q|^2 = 1 + r^2
        q2 = float(self.center @ self.center)
        return abs(q2 - 1.0 - self.radius2) <= 1e-12 * q2

    def swaps_ball_and_halfspace(self):
        e = np.zeros(self.n)
        e[-1] = -1.0
        return self.radius2 == 2.0 and np.array_equal(self.center, e)


@dataclass(frozen=True, eq=False)
class Orthogonal:
    Q: OrthogonalMatrix

    def __eq__(self, other):
        return isinstance(other, Orthogonal) and self.Q == other.Q

    def __hash__(self):
        return hash(self.Q)

    @property
    def n(self):
        return self.Q.n

    def apply_batch(self, X):
        return X @ self.Q.matrix.T

    def apply_point(self, x):
        return INF if x is INF else self.Q.matrix @ x

    def inverse(self):
        return Orthogonal(self.Q.T)


@dataclass(frozen=True, eq=False)
class Translation:
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", _frozen(as_point(self.v)))

    def __eq__(self, other):
        return isinstance(other, Translation) and np.array_equal(self.v, other.v)

    def __hash__(self):
        return hash(self.v.tobytes())

    @property
    def n(self):
        return self.v.shape[0]

    def apply_batch(self, X):
        return X + self.v

    def apply_point(self, x):
        return INF if x is INF else x + self.v

    def inverse(self):
        return Translation(-self.v)


@dataclass(frozen=True)
class Scaling:
    lam: float

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError("scaling factor must be positive")
        object.__setattr__(self, "lam", float(self.lam))

    n = None

    def apply_batch(self, X):
        return self.lam * X

    def apply_point(self, x):
        return INF if x is INF else self.lam * x

    def inverse(self):
        return Scaling(1.0 / self.lam)


Primitive = SphereInversion | Orthogonal | Translation | Scaling


@dataclass(frozen=True)
class MobiusMap:
    n: int
    chain: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(self.chain))
        for p in self.chain:
            if p.n is not None and p.n != self.n:
                raise ValueError(f"primitive of dimension {p.n} in a map of dimension {self.n}")

    def __call__(self, x):
        return apply(self, x)

    def __len__(self):
        return len(self.chain)


def identity(n: int) -> MobiusMap:
    return MobiusMap(n, ())


def apply(m: MobiusMap, x):
    """Image of a single point of the extended space (``INF`` allowed)."""
    p = x if x is INF else as_point(x)
    for prim in m.chain:
        p = prim.apply_point(p)
    return p


def apply_batch(m: MobiusMap, X) -> np.ndarray:
    """Images of a ``(k, n)`` batch of finite points. Poles raise."""
    X = np.asarray(X, dtype=np.float64)
    for prim in m.chain:
        X = prim.apply_batch(X)
    return X


def compose(m1: MobiusMap, m2: MobiusMap) -> MobiusMap:
    """The map ``x -> m2(m1(x))``."""
    if m1.n != m2.n:
        raise ValueError("dimension mismatch")
    return MobiusMap(m1.n, m1.chain + m2.chain)


def inverse(m: MobiusMap) -> MobiusMap:
    return MobiusMap(m.n, tuple(p.inverse() for p in reversed(m.chain)))


def _ball_point(a, what="a"):
    a = as_point(a)
    na = float(np.linalg.norm(a))
    if not na < 1.0:
        raise ValueError(f"{what} must lie in the open unit ball")
    return a, na


def sigma_a(a) -> MobiusMap:
    """Inversion in ``S(a*, r)``, ``r^2 = |a|^-2 - 1``: an involution of the ball with ``a -> 0``."""
    a, na = _ball_point(a)
    if na == 0.0:
        raise ValueError("sigma_a needs a != 0")
    r2 = (1.0 - na) * (1.0 + na) / (na * na)
    return MobiusMap(a.shape[0], (SphereInversion(a / (na * na), r2),))


def ball_automorphism(a, A: OrthogonalMatrix | None = None) -> MobiusMap:
    """The ball self-map ``A o sigma_a`` sending ``a`` to 0 (just ``A`` when ``a = 0``)."""
    a, na = _ball_point(a)
    n = a.shape[0]
    tail = () if A is None else (Orthogonal(A),)
    if na == 0.0:
        return MobiusMap(n, tail)
    return MobiusMap(n, sigma_a(a).chain + tail)


def ball_to_halfspace(n: int) -> MobiusMap:
    """Inversion in ``S(-e_n, sqrt 2)``: maps the unit ball onto the upper half-space, 0 to e_n."""
    e = np.zeros(n)
    e[-1] = -1.0
    return MobiusMap(n, (SphereInversion(e, 2.0),))


def unit_inversion(n: int) -> MobiusMap:
    return MobiusMap(n, (SphereInversion(np.zeros(n), 1.0),))


def _check_halfspace_similarity(prim, n):
    if isinstance(prim, Translation):
        if prim.v[-1] != 0.0:
            raise ValueError("translations preserving H^n must have zero last component")
    elif isinstance(prim, Orthogonal):
        if not prim.Q.fixes_last_axis():
            raise ValueError("orthogonal maps preserving H^n must fix e_n")
    elif not isinstance(prim, Scaling):
        raise ValueError(f"{type(prim).__name__} is not a similarity")


def halfspace_mobius(a, similarity: Sequence = (), n: int | None = None) -> MobiusMap:
    """A Möbius self-map of the upper half-space sending the boundary point ``a`` to infinity.

    Built as translation by ``-a``, inversion in the unit sphere, then the
    given similarity primitives. With ``a = INF`` only the similarity remains.
    """
    if a is INF:
        if n is None:
            sized = [p for p in similarity if p.n is not None]
            if not sized:
                raise ValueError("dimension n is required")
            n = sized[0].n
        head = ()
    else:
        a = as_point(a)
        n = a.shape[0]
        if a[-1] != 0.0:
            raise ValueError("a must lie on the boundary hyperplane x_n = 0 (or be INF)")
        head = (Translation(-a), SphereInversion(np.zeros(n), 1.0))
    similarity = tuple(similarity)
    for p in similarity:
        _check_halfspace_similarity(p, n)
    return MobiusMap(n, head + similarity)


def random_halfspace_similarity(n: int, seed=0, shift_scale: float = 3.0) -> tuple:
    """Random translation (horizontal), scaling and orthogonal map fixing e_n."""
    rng = seed.rng() if isinstance(seed, Seed) else np.random.default_rng(seed)
    v = np.zeros(n)
    v[:-1] = rng.uniform(-shift_scale, shift_scale, n - 1)
    lam = float(np.exp(rng.uniform(-2.0, 2.0)))
    block = np.eye(n)
    if n > 2:
        block[:-1, :-1] = random_orthogonal(n - 1, rng).matrix
    elif rng.uniform() < 0.5:
        block[0, 0] = -1.0
    return (Orthogonal(OrthogonalMatrix(block)), Scaling(lam), Translation(v))


def inversion_distance_identity_check(center, radius2, x, y):
    """Both sides of ``|s(x) - s(y)| = r^2 |x - y| / (|x - q| |y - q|)``.

    Works on single points or ``(k, n)`` batches; ``center`` may be a single
    point or one centre per row, with ``radius2`` scalar or per row.
    Returns ``(lhs, rhs)``.
    """
    X = np.asarray(x, dtype=np.float64)
    Y = np.asarray(y, dtype=np.float64)
    C = np.asarray(center, dtype=np.float64)
    if np.any(np.all(X == C, axis=-1)) or np.any(np.all(Y == C, axis=-1)):
        raise ValueError("x and y must differ from the inversion centre")
    if C.ndim == 1:
        invs = [SphereInversion(C, radius2)]
        SX, SY = invs[0].apply_batch(X), invs[0].apply_batch(Y)
    else:
        R = np.broadcast_to(np.asarray(radius2, dtype=np.float64), C.shape[:1])
        invs = [SphereInversion(c, r) for c, r in zip(C, R)]
        SX = np.array([s.apply_batch(p) for s, p in zip(invs, X)])
        SY = np.array([s.apply_batch(p) for s, p in zip(invs, Y)])
    r2 = np.array([s.radius2 for s in invs]) if C.ndim > 1 else invs[0].radius2
    lhs = np.linalg.norm(SX - SY, axis=-1)
    rhs = r2 * np.linalg.norm(X - Y, axis=-1) / (
        np.linalg.norm(X - C, axis=-1) * np.linalg.norm(Y - C, axis=-1))
    if np.ndim(lhs) == 0:
        return float(lhs), float(rhs)
    return lhs, rhs


class Trace(NamedTuple):
    """A point batch pushed through a chain with stably tracked side quantities.

    ``ball_defect`` is ``1 - |z|^2`` and ``height`` is ``z_n``; either is
    ``None`` once a primitive is met that does not carry it exactly.
    """

    points: np.ndarray
    ball_defect: np.ndarray | None
    height: np.ndarray | None


def _start(X):
    r = np.linalg.norm(X, axis=-1)
    return Trace(X, (1.0 - r) * (1.0 + r), X[..., -1].copy())


def _step(prim, t: Trace):
    X, w, h = t
    if isinstance(prim, SphereInversion):
        Z, f = prim._parts(X)
        w2 = h2 = None
        if prim.preserves_unit_sphere():
            w2 = None if w is None else w * f
        if prim.swaps_ball_and_halfspace():
            # sigma_n(x) = (1-|x|^2)/|x+e_n|^2 and the inverse relation
            w2 = None if h is None else 2.0 * h * f
            h2 = None if w is None else 0.5 * w * f
        elif prim.center[-1] == 0.0:
            h2 = None if h is None else h * f
        return Trace(Z, w2, h2), f
    if isinstance(prim, Orthogonal):
        Z = prim.apply_batch(X)
        return Trace(Z, w, h if prim.Q.fixes_last_axis() else None), None
    if isinstance(prim, Translation):
        Z = prim.apply_batch(X)
        return Trace(Z, None, None if h is None else h + prim.v[-1]), None
    Z = prim.apply_batch(X)
    return Trace(Z, None, None if h is None else prim.lam * h), None


def push_pair(m: MobiusMap, X, Y):
    """Push batches ``X``, ``Y`` through ``m``.

    Returns ``(trace_x, trace_y, distance)`` where ``distance`` is
    ``|m(x) - m(y)|`` accumulated factor by factor (sphere inversions scale it
    by ``r^2 / (|x-q||y-q|)``), so it keeps full relative accuracy even when
    the images nearly coincide.
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    tx, ty = _start(X), _start(Y)
    D = np.linalg.norm(X - Y, axis=-1)
    for prim in m.chain:
        tx, fx = _step(prim, tx)
        ty, fy = _step(prim, ty)
        if fx is not None:
            D = D * np.sqrt(fx) * np.sqrt(fy)
        elif isinstance(prim, Scaling):
            D = D * prim.lam
    return tx, ty, D


def _floats(text):
    return [float(v) for v in text.split(",")]


def parse_map(text: str, n: int | None = None) -> MobiusMap:
    """Parse ``sigma:a1,..,an``, ``b2h``, ``unitinv``, ``trans:v1,..``, ``scale:l``, ``orth:seed`` joined by ``;``.

    Components are applied left to right. ``n`` is required when no component
    carries coordinates.
    """
    items = [s.strip() for s in text.split(";") if s.strip()]
    if not items:
        raise ValueError("empty map descriptor")
    if n is None:
        for it in items:
            head, _, arg = it.partition(":")
            if head in ("sigma", "trans"):
                n = len(_floats(arg))
                break
    if n is None:
        raise ValueError("dimension n is required for this map descriptor")
    chain = []
    for it in items:
        head, _, arg = it.partition(":")
        try:
            if head == "sigma":
                chain += sigma_a(_floats(arg)).chain
            elif head == "b2h" and not arg:
                chain += ball_to_halfspace(n).chain
            elif head == "unitinv" and not arg:
                chain += unit_inversion(n).chain
            elif head == "trans":
                chain.append(Translation(_floats(arg)))
            elif head == "scale":
                chain.append(Scaling(float(arg)))
            elif head == "orth":
                chain.append(Orthogonal(random_orthogonal(n, Seed(int(arg)))))
            else:
                raise ValueError("unknown component")
        except ValueError as exc:
            raise ValueError(f"bad map component {it!r}: {exc}") from None
    return MobiusMap(n, tuple(chain))
