"""Vectors in R^n, the point at infinity, orthogonal matrices and seeded sampling.

Finite points are plain 1-D float64 numpy arrays; the point at infinity is the
singleton :data:`INF`. Batched helpers take ``(k, n)`` arrays.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "INF",
    "Infinity",
    "NonFinitePointError",
    "OrthogonalMatrix",
    "Seed",
    "as_point",
    "is_inf",
    "star",
    "norm",
    "dist",
    "random_orthogonal",
    "random_point_in_ball",
    "random_points_in_ball",
    "random_directions",
]


class NonFinitePointError(ValueError):
    pass


class Infinity:
    """The point at infinity of the extended space. Has no coordinates."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (Infinity, ())

    def __bool__(self):
        return True

    def _no_coords(self, *args, **kwargs):
        raise NonFinitePointError("nonfinite point")

    __getitem__ = _no_coords
    __array__ = _no_coords
    __iter__ = _no_coords
    __len__ = _no_coords


INF = Infinity()


def is_inf(x) -> bool:
    return x is INF


def as_point(x) -> np.ndarray:
    """Coerce ``x`` to a finite point (1-D float64 array, n >= 2)."""
    if x is INF:
        raise NonFinitePointError("nonfinite point")
    p = np.asarray(x, dtype=np.float64)
    if p.ndim != 1 or p.shape[0] < 2:
        raise ValueError(f"points must be 1-D with dimension >= 2, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise NonFinitePointError("nonfinite point")
    return p


def star(x, n: int | None = None):
    """Reflection in the unit sphere, ``x* = x / |x|^2``, with ``0* = INF`` and ``INF* = 0``.

    ``n`` is only needed to build the origin when ``x`` is ``INF``.
    """
    if x is INF:
        if n is None:
            raise ValueError("star(INF) needs the dimension n")
        return np.zeros(n)
    p = as_point(x)
    s = p @ p
    if s == 0.0:
        return INF
    return p / s


def norm(x) -> float:
    return float(np.linalg.norm(as_point(x)))


def dist(x, y) -> float:
    return float(np.linalg.norm(as_point(x) - as_point(y)))


@dataclass(frozen=True)
class Seed:
    """A reproducible random stream: ``(seed, stream)`` fully determines the output.

    Sub-streams (for example one per sampling chunk) are addressed by extra
    integer keys passed to :meth:`rng`, so parallel workers never share state.
    """

    seed: int
    stream: int = 0

    def __post_init__(self):
        for v in (self.seed, self.stream):
            if not (0 <= int(v) < 2**64):
                raise ValueError("seed and stream must be unsigned 64-bit integers")

    def rng(self, *sub: int) -> np.random.Generator:
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream), *map(int, sub)))
        return np.random.Generator(np.random.PCG64(ss))

    def to_dict(self):
        return {"seed": int(self.seed), "stream": int(self.stream)}


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, Seed):
        return seed.rng()
    return Seed(int(seed)).rng()


class OrthogonalMatrix:
    """An n x n real matrix with ``Q^T Q = I`` (checked to 1e-12 on construction)."""

    __slots__ = ("_q",)

    def __init__(self, entries, tol: float = 1e-12):
        q = np.array(entries, dtype=np.float64)
        if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape[0] < 2:
            raise ValueError(f"orthogonal matrix must be square with n >= 2, got {q.shape}")
        err = np.max(np.abs(q.T @ q - np.eye(q.shape[0])))
        if err > tol * q.shape[0]:
            raise ValueError(f"matrix is not orthogonal (max |Q^T Q - I| = {err:.3e})")
        q.setflags(write=False)
        self._q = q

    @classmethod
    def identity(cls, n: int) -> "OrthogonalMatrix":
        return cls(np.eye(n))

    @property
    def matrix(self) -> np.ndarray:
        return self._q

    @property
    def n(self) -> int:
        return self._q.shape[0]

    @property
    def T(self) -> "OrthogonalMatrix":
        return OrthogonalMatrix(self._q.T)

    def fixes_last_axis(self, tol: float = 1e-14) -> bool:
        """True if Q maps e_n to e_n, i.e. Q preserves the upper half-space."""
        e = np.zeros(self.n)
        e[-1] = 1.0
        return bool(np.max(np.abs(self._q[:, -1] - e)) <= tol and np.max(np.abs(self._q[-1] - e)) <= tol)

    def __matmul__(self, x):
        return np.asarray(x) @ self._q.T

    def __eq__(self, other):
        return isinstance(other, OrthogonalMatrix) and np.array_equal(self._q, other._q)

    def __hash__(self):
        return hash(self._q.tobytes())

    def __repr__(self):
        return f"OrthogonalMatrix({self._q.tolist()!r})"


def random_orthogonal(n: int, seed=0) -> OrthogonalMatrix:
    """Haar-distributed orthogonal matrix via QR of a Gaussian matrix.

    The signs of R's diagonal are folded into Q so the factorization is unique,
    which is what makes the distribution uniform.
    """
    if n < 2:
        raise ValueError("dimension must be >= 2")
    rng = _as_rng(seed)
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return OrthogonalMatrix(q * d)


def random_directions(rng: np.random.Generator, k: int, n: int) -> np.ndarray:
    v = rng.standard_normal((k, n))
    nv = np.linalg.norm(v, axis=1)
    bad = nv == 0.0
    while np.any(bad):
        v[bad] = rng.standard_normal((int(bad.sum()), n))
        nv = np.linalg.norm(v, axis=1)
        bad = nv == 0.0
    return v / nv[:, None]


def _check_radii(min_radius, max_radius):
    if not (0.0 <= min_radius < max_radius <= 1.0):
        raise ValueError(f"invalid radius interval [{min_radius}, {max_radius}]")


def random_points_in_ball(rng: np.random.Generator, k: int, n: int,
                          min_radius: float = 0.0, max_radius: float = 1.0) -> np.ndarray:
    """``k`` points with uniform direction and radius uniform on ``[min_radius, max_radius]``."""
    _check_radii(min_radius, max_radius)
    r = rng.uniform(min_radius, max_radius, size=k)
    return random_directions(rng, k, n) * r[:, None]


def random_point_in_ball(n: int, seed=0, min_radius: float = 0.0, max_radius: float = 1.0) -> np.ndarray:
    if n < 2:
        raise ValueError("dimension must be >= 2")
    return random_points_in_ball(_as_rng(seed), 1, n, min_radius, max_radius)[0]
