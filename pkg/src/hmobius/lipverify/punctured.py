"""Distortion under ``sigma_a`` from the ball punctured at 0 to the ball punctured at ``a``.

A pair ``(x, y)`` with ``|y| <= |x|`` falls in one of four cases according to
which term realises each minimum in
``T = sqrt(min{|s(x)-a|, 1-|s(x)|} * min{|s(y)-a|, 1-|s(y)|})``, ``s = sigma_a``:

====  ==================  ==================
case  x term              y term
====  ==================  ==================
1     ``|s(x) - a|``      ``|s(y) - a|``
2     ``|s(x) - a|``      ``1 - |s(y)|``
3     ``1 - |s(x)|``      ``|s(y) - a|``
4     ``1 - |s(x)|``      ``1 - |s(y)|``
====  ==================  ==================

and in one of three subcases by where ``|x|`` and ``|y|`` sit relative to 1/2.
Ties between the two terms go to the puncture term.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..domains import PuncturedUnitBall, UnitBall
from ..hmetric import one_minus_norm_of_ball_inversion
from ..mobius import apply_batch, push_pair, sigma_a
from ..vecgeom import Seed, as_point, random_directions, random_points_in_ball
from .estimate import N_STARTS, LipschitzReport, _extremes, _Tracker, default_anchors, verdict_for
from .ratio import ratio_batch
from .sampling import CLEARANCE, project, stratified_pairs
from .search import pattern_search

__all__ = [
    "PuncturedCase",
    "SUBCASES",
    "case_bound",
    "subcase_bound",
    "punctured_case_classify",
    "classify_batch",
    "PuncturedReport",
    "punctured_bound_check",
    "case_bound_maximum",
]

SUBCASES = ("both_far", "mixed", "both_near")
CELLS = tuple((c, s) for c in (1, 2, 3, 4) for s in SUBCASES)


def case_bound(case: int, na: float) -> float:
    """Per-case Lipschitz constant for ``|a| = na``."""
    if case == 1:
        return 2.0 / (2.0 - na)
    if case in (2, 3):
        return float(np.sqrt(2.0 * (1.0 + na) / (2.0 - na)))
    if case == 4:
        return 1.0 + na
    raise ValueError(f"no case {case}")


def subcase_bound(case: int, subcase: str, na: float) -> float:
    """The sharper constant obtained inside each subcase (never above :func:`case_bound`)."""
    far, mixed = subcase == "both_far", subcase == "mixed"
    if case == 1:
        return 2.0 / (2.0 - na)
    if case == 2 and far or case == 3 and (far or mixed):
        return float(2.0 * np.sqrt((1.0 + na) / (4.0 - na * na)))
    if case in (2, 3):
        return float(np.sqrt(2.0 * (1.0 + na) / (2.0 - na)))
    if far:
        return 2.0 * (1.0 + na) / (2.0 + na)
    if mixed:
        return float(np.sqrt(2.0) * (1.0 + na) / np.sqrt(2.0 + na))
    return 1.0 + na


def case_bound_maximum(na) -> np.ndarray:
    """``max`` of the three case constants; equals ``1 + |a|`` on (0, 1)."""
    na = np.asarray(na, dtype=np.float64)
    return np.maximum.reduce([2.0 / (2.0 - na), np.sqrt(2.0 * (1.0 + na) / (2.0 - na)), 1.0 + na])


@dataclass(frozen=True)
class PuncturedCase:
    tag: int
    subcase: str
    bound: float


def _terms(a, X):
    """``(|sigma_a(x) - a|, 1 - |sigma_a(x)|)`` row-wise, both without cancellation."""
    f = sigma_a(a)
    _, _, to_hole = push_pair(f, X, np.zeros_like(X))
    return to_hole, one_minus_norm_of_ball_inversion(a, X)


def classify_batch(a, X, Y):
    """Vectorised classification. Returns ``(case, subcase_index, X, Y)`` with rows ordered ``|y| <= |x|``."""
    a = as_point(a)
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
    nx = np.linalg.norm(X, axis=-1)
    ny = np.linalg.norm(Y, axis=-1)
    if np.any(nx == 0.0) or np.any(ny == 0.0):
        raise ValueError("x and y must differ from the origin")
    swap = ny > nx
    X, Y = np.where(swap[:, None], Y, X), np.where(swap[:, None], X, Y)
    nx, ny = np.maximum(nx, ny), np.minimum(nx, ny)
    hx, bx = _terms(a, X)
    hy, by = _terms(a, Y)
    px = hx <= bx
    py = hy <= by
    case = np.where(px, np.where(py, 1, 2), np.where(py, 3, 4))
    sub = np.where(ny >= 0.5, 0, np.where(nx >= 0.5, 1, 2))
    return case, sub, X, Y


def punctured_case_classify(a, x, y) -> PuncturedCase:
    a = as_point(a)
    case, sub, _, _ = classify_batch(a, as_point(x)[None], as_point(y)[None])
    return PuncturedCase(int(case[0]), SUBCASES[int(sub[0])], case_bound(int(case[0]), float(np.linalg.norm(a))))


@dataclass(frozen=True)
class PuncturedReport:
    report: LipschitzReport
    tally: dict = field(default_factory=dict)
    cell_max: dict = field(default_factory=dict)
    case_violations: int = 0
    subcase_violations: int = 0

    @property
    def all_cells_hit(self) -> bool:
        return all(self.tally.get(c, 0) > 0 for c in CELLS)

    @property
    def passed(self) -> bool:
        return self.report.passed and self.case_violations == 0


def _cell_candidates(a, rng, k):
    """Candidate pairs aimed at every case/subcase cell.

    Points are drawn in the image ball and pulled back by ``sigma_a``
    (an involution), which makes the puncture-term region easy to hit.
    Half the pairs are independent, half are small perturbations.
    """
    n = a.shape[0]
    f = sigma_a(a)
    U = random_points_in_ball(rng, 2 * k, n, 0.0, 1.0 - CLEARANCE)
    P = project(PuncturedUnitBall(n, np.zeros(n)), apply_batch(f, U))
    X, Y = P[:k], P[k:]
    m = k // 2
    sep = 10.0 ** rng.uniform(-6.0, -1.0, m)
    Y[:m] = X[:m] + random_directions(rng, m, n) * sep[:, None]
    return X, project(PuncturedUnitBall(n, np.zeros(n)), Y)


def punctured_bound_check(a, params, n_samples: int, seed=0, refine_steps: int = 100,
                          min_per_cell: int = 50, margin: float = 1e-9) -> PuncturedReport:
    """Check the ``1 + |a|`` bound for ``sigma_a`` between punctured balls, case by case.

    Half of the ``n_samples`` pairs follow the generic stratified mix; the
    other half are targeted so that every (case, subcase) cell receives at
    least ``min_per_cell`` pairs. Each pair is classified and its ratio
    compared with its case constant at relative ``margin``. Pattern search
    then pushes the 8 pairs with the largest ``ratio / case constant``
    further; refined pairs are classified and checked as well.
    """
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    a = as_point(a)
    na = float(np.linalg.norm(a))
    if na == 0.0 or na >= 1.0:
        raise ValueError("a must satisfy 0 < |a| < 1")
    n = a.shape[0]
    f = sigma_a(a)
    D = PuncturedUnitBall(n, np.zeros(n))
    D2 = PuncturedUnitBall(n, a)
    rng = seed.rng(0)

    k_generic = n_samples // 2
    X, Y = stratified_pairs(D, default_anchors(f, D, D2), rng, k_generic)
    xs, ys = [X], [Y]

    # targeted pairs: keep drawing until each cell has its share
    need = n_samples - k_generic
    per_cell = max(min_per_cell, need // len(CELLS))
    have = {c: 0 for c in CELLS}
    rounds = 0
    while need > 0 and rounds < 200:
        rounds += 1
        cx, cy = _cell_candidates(a, rng, 8192)
        ok = ~np.all(cx == cy, axis=-1)
        cx, cy = cx[ok], cy[ok]
        case, sub, _, _ = classify_batch(a, cx, cy)
        keep = np.zeros(len(cx), bool)
        for ci, (c, s) in enumerate(CELLS):
            idx = np.flatnonzero((case == c) & (sub == SUBCASES.index(s)))
            take = idx[: max(0, min(per_cell - have[(c, s)], need - int(keep.sum())))]
            keep[take] = True
            have[(c, s)] += take.size
        xs.append(cx[keep])
        ys.append(cy[keep])
        need -= int(keep.sum())
        if all(v >= per_cell for v in have.values()):
            break
    if need > 0:
        X, Y = stratified_pairs(D, default_anchors(f, D, D2), seed.rng(1), need)
        xs.append(X)
        ys.append(Y)
    X = np.concatenate(xs)
    Y = np.concatenate(ys)

    tracker = _Tracker()
    tally = {c: 0 for c in CELLS}
    cell_max = {c: -np.inf for c in CELLS}
    counts = {"case": 0, "sub": 0}

    cbound = np.array([case_bound(c, na) for c in (1, 2, 3, 4)])
    sbound = np.array([[subcase_bound(c, s, na) for s in SUBCASES] for c in (1, 2, 3, 4)])

    def account(X, Y):
        """Classify and check every valid pair; returns ``ratio / case constant`` (NaN if invalid)."""
        score = np.full(len(X), np.nan)
        ok = ~np.all(X == Y, axis=-1) & D.contains(X) & D.contains(Y)
        _, _, r = ratio_batch(f, D, D2, params, X, Y, check=False)
        ok &= ~np.isnan(r)
        if not np.any(ok):
            return score
        Xo, Yo, ro = X[ok], Y[ok], r[ok]
        tracker.update(Xo, Yo, ro)
        case, sub, _, _ = classify_batch(a, Xo, Yo)
        cb = cbound[case - 1]
        counts["case"] += int(np.sum(ro > cb * (1 + margin)))
        counts["sub"] += int(np.sum(ro > sbound[case - 1, sub] * (1 + margin)))
        cell = (case - 1) * len(SUBCASES) + sub
        for i in np.unique(cell):
            m = cell == i
            key = CELLS[i]
            tally[key] += int(m.sum())
            cell_max[key] = max(cell_max[key], float(ro[m].max()))
        score[ok] = ro / cb
        return score

    score = account(X, Y)
    steps = 0
    if refine_steps > 0 and np.any(~np.isnan(score)):
        hi, _ = _extremes(X, Y, np.where(np.isnan(score), -np.inf, score), N_STARTS)

        def objective(Z):
            return account(Z[:, :n], Z[:, n:])

        def proj(Z):
            return np.concatenate([project(D, Z[:, :n]), project(D, Z[:, n:])], axis=1)

        for i in hi:
            step = float(np.clip(0.5 * np.linalg.norm(X[i] - Y[i]), 1e-8, 0.1))
            _, _, k = pattern_search(objective, proj, np.concatenate([X[i], Y[i]]), step, refine_steps)
            steps += k

    report = LipschitzReport(
        sup_estimate=tracker.sup,
        inf_estimate=tracker.inf,
        argmax=tracker.argmax,
        argmin=tracker.argmin,
        theoretical_upper=1.0 + na,
        theoretical_lower=0.0,
        n_samples=int(n_samples),
        n_refinement_steps=int(steps),
        verdict=verdict_for(tracker.sup, tracker.inf, 1.0 + na, 0.0),
        seed=seed,
    )
    return PuncturedReport(report, tally, cell_max, counts["case"], counts["sub"])
