"""Canonical open domains of R^n and their boundary distances.

Every domain accepts a single point of shape ``(n,)`` or a batch of shape
``(k, n)``; results follow the leading shape.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .vecgeom import INF, NonFinitePointError

__all__ = [
    "Domain",
    "UnitBall",
    "HalfSpace",
    "PuncturedUnitBall",
    "OutsideDomainError",
    "parse_domain",
    "format_domain",
]


class OutsideDomainError(ValueError):
    """A point was not in the (open) domain where a quantity is defined."""

    def __init__(self, msg="point outside domain"):
        super().__init__(msg)


def _coords(x, n):
    if x is INF:
        raise NonFinitePointError("nonfinite point")
    p = np.asarray(x, dtype=np.float64)
    if p.shape[-1] != n:
        raise ValueError(f"expected points of dimension {n}, got shape {p.shape}")
    return p


class Domain:
    """Boundary oracle: subclasses provide ``_distance`` (signed, positive inside)."""

    kind: str = ""
    n: int

    def _distance(self, p: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _inside(self, p: np.ndarray) -> np.ndarray:
        return self._distance(p) > 0.0

    def contains(self, x):
        p = _coords(x, self.n)
        r = self._inside(p)
        return bool(r) if np.ndim(r) == 0 else r

    def boundary_distance(self, x):
        """Euclidean distance from ``x`` to the boundary; raises outside the domain."""
        p = _coords(x, self.n)
        inside = self._inside(p)
        if not np.all(inside):
            raise OutsideDomainError()
        d = self._distance(p)
        return float(d) if np.ndim(d) == 0 else d

    def anchor(self) -> np.ndarray:
        """Reference point that sampling concentrates around (the puncture for punctured balls)."""
        raise NotImplementedError


@dataclass(frozen=True)
class UnitBall(Domain):
    n: int
    kind: str = field(default="ball", init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be >= 2")

    def _distance(self, p):
        return 1.0 - np.linalg.norm(p, axis=-1)

    def anchor(self):
        return np.zeros(self.n)


@dataclass(frozen=True)
class HalfSpace(Domain):
    """Upper half-space ``{x : x_n > 0}``."""

    n: int
    kind: str = field(default="half", init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be >= 2")

    def _distance(self, p):
        return p[..., -1]

    def anchor(self):
        e = np.zeros(self.n)
        e[-1] = 1.0
        return e


@dataclass(frozen=True, eq=False)
class PuncturedUnitBall(Domain):
    """Unit ball with one interior point removed; the puncture is part of the boundary."""

    n: int
    puncture: np.ndarray
    kind: str = field(default="pball", init=False)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("dimension must be >= 2")
        p = np.array(self.puncture, dtype=np.float64)
        if p.shape != (self.n,):
            raise ValueError(f"puncture must have dimension {self.n}")
        if not np.linalg.norm(p) < 1.0:
            raise ValueError("puncture must lie in the open unit ball")
        p.setflags(write=False)
        object.__setattr__(self, "puncture", p)

    def __eq__(self, other):
        return (isinstance(other, PuncturedUnitBall) and self.n == other.n
                and np.array_equal(self.puncture, other.puncture))

    def __hash__(self):
        return hash((self.n, self.puncture.tobytes()))

    def _distance(self, p):
        to_ball = 1.0 - np.linalg.norm(p, axis=-1)
        to_hole = np.linalg.norm(p - self.puncture, axis=-1)
        return np.minimum(to_hole, to_ball)

    def _inside(self, p):
        # exact exclusion of the puncture, not a distance threshold
        hole = np.all(p == self.puncture, axis=-1)
        return (np.linalg.norm(p, axis=-1) < 1.0) & ~hole

    def anchor(self):
        return self.puncture.copy()


def parse_domain(text: str) -> Domain:
    """Parse ``ball:n``, ``half:n`` or ``pball:n:p1,...,pn``."""
    parts = text.strip().split(":")
    try:
        kind = parts[0]
        n = int(parts[1])
        if kind == "ball" and len(parts) == 2:
            return UnitBall(n)
        if kind == "half" and len(parts) == 2:
            return HalfSpace(n)
        if kind == "pball" and len(parts) == 3:
            return PuncturedUnitBall(n, [float(v) for v in parts[2].split(",")])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad domain descriptor {text!r}: {exc}") from None
    raise ValueError(f"bad domain descriptor {text!r}")


def format_domain(d: Domain) -> str:
    if isinstance(d, PuncturedUnitBall):
        return f"pball:{d.n}:" + ",".join(repr(float(v)) for v in d.puncture)
    return f"{d.kind}:{d.n}"
