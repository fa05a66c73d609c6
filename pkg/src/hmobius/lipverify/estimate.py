"""Supremum/infimum estimation of the distortion ratio of a Möbius map."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..domains import Domain
from ..mobius import MobiusMap, apply, inverse
from ..vecgeom import INF, Seed
from .ratio import ratio_batch
from .sampling import project, stratified_pairs
from .search import pattern_search

__all__ = ["LipschitzReport", "estimate_sup", "BOUND_MARGIN"]

BOUND_MARGIN = 1e-9
CHUNK = 8192
N_STARTS = 8


@dataclass(frozen=True)
class LipschitzReport:
    sup_estimate: float
    inf_estimate: float
    argmax: tuple
    argmin: tuple
    theoretical_upper: float
    theoretical_lower: float
    n_samples: int
    n_refinement_steps: int
    verdict: str
    seed: Seed = field(default_factory=lambda: Seed(0))

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def verdict_for(sup, inf, upper, lower) -> str:
    ok = sup <= upper * (1 + BOUND_MARGIN) and inf >= lower * (1 - BOUND_MARGIN)
    return "pass" if ok else "fail"


def _as_seed(seed) -> Seed:
    return seed if isinstance(seed, Seed) else Seed(int(seed))


def default_anchors(f: MobiusMap, D: Domain, D2: Domain):
    """The source anchor plus the preimage of the target anchor, when it lies in ``D``."""
    anchors = [D.anchor()]
    pre = apply(inverse(f), D2.anchor())
    if pre is not INF and np.all(np.isfinite(pre)):
        anchors.append(project(D, pre[None])[0])
    return np.array(anchors)


def _extremes(X, Y, r, k):
    """Indices of the ``k`` largest and ``k`` smallest ratios, ties broken by coordinates."""
    keys = [*np.concatenate([X, Y], axis=1).T[::-1]]
    hi = np.lexsort(keys + [-r])[:k]
    lo = np.lexsort(keys + [r])[:k]
    return hi, lo


class _Tracker:
    """Running sup/inf with argmax/argmin over every evaluated pair."""

    def __init__(self):
        self.sup = -np.inf
        self.inf = np.inf
        self.argmax = self.argmin = None

    def update(self, X, Y, r):
        if r.size == 0 or np.all(np.isnan(r)):
            return
        i = int(np.nanargmax(r))
        if r[i] > self.sup:
            self.sup, self.argmax = float(r[i]), (X[i].copy(), Y[i].copy())
        j = int(np.nanargmin(r))
        if r[j] < self.inf:
            self.inf, self.argmin = float(r[j]), (X[j].copy(), Y[j].copy())


def sample_chunks(f, D, D2, params, budget, seed: Seed, anchors, workers=1, n_keep=N_STARTS):
    """Evaluate ``budget`` stratified pairs in fixed-size chunks with one sub-stream each.

    Chunk ``i`` always uses ``seed.rng(i)``, so results do not depend on
    ``workers``. Returns the concatenated top/bottom candidates in chunk order
    plus a tracker over all samples.
    """
    sizes = [CHUNK] * (budget // CHUNK) + ([budget % CHUNK] if budget % CHUNK else [])

    def run(i):
        rng = seed.rng(i)
        X, Y = stratified_pairs(D, anchors, rng, sizes[i])
        _, _, r = ratio_batch(f, D, D2, params, X, Y, check=True)
        hi, lo = _extremes(X, Y, r, n_keep)
        return X, Y, r, hi, lo

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(run, range(len(sizes))))
    else:
        results = [run(i) for i in range(len(sizes))]

    tracker = _Tracker()
    top, bottom = [], []
    for X, Y, r, hi, lo in results:
        tracker.update(X, Y, r)
        top.append((X[hi], Y[hi], r[hi]))
        bottom.append((X[lo], Y[lo], r[lo]))
    return top, bottom, tracker


def _select(cands, k, largest):
    X = np.concatenate([c[0] for c in cands])
    Y = np.concatenate([c[1] for c in cands])
    r = np.concatenate([c[2] for c in cands])
    hi, lo = _extremes(X, Y, r, k)
    idx = hi if largest else lo
    return X[idx], Y[idx]


def refine(f, D, D2, params, starts, refine_steps, tracker, maximize=True, tol=1e-9):
    """Pattern-search refinement from each start pair; returns total poll steps."""
    n = D.n
    sign = 1.0 if maximize else -1.0

    def objective(Z):
        X, Y = Z[:, :n], Z[:, n:]
        _, _, r = ratio_batch(f, D, D2, params, X, Y, check=False)
        tracker.update(X, Y, r)
        return sign * r

    def proj(Z):
        return np.concatenate([project(D, Z[:, :n]), project(D, Z[:, n:])], axis=1)

    total = 0
    for x0, y0 in zip(*starts):
        step = float(np.clip(0.5 * np.linalg.norm(x0 - y0), 1e-8, 0.1))
        _, _, k = pattern_search(objective, proj, np.concatenate([x0, y0]), step, refine_steps, tol)
        total += k
    return total


def estimate_sup(f: MobiusMap, D: Domain, D2: Domain, params, budget: int,
                 refine_steps: int = 200, seed=0, theoretical_upper: float = np.inf,
                 theoretical_lower: float = 0.0, anchors=None, workers: int = 1) -> LipschitzReport:
    """Estimate sup and inf of ``h_{D2,c}(f(x), f(y)) / h_{D,c}(x, y)`` over pairs in ``D``.

    Draws ``budget`` stratified random pairs, then runs coordinate pattern
    search (up to ``refine_steps`` polls each, stopping at step 1e-9) from the
    8 best and the 8 worst samples. The verdict compares the estimates with the
    caller's theoretical constants at relative margin 1e-9.

    The result depends only on the arguments: equal inputs give bit-identical
    reports for any ``workers``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    seed = _as_seed(seed)
    if anchors is None:
        anchors = default_anchors(f, D, D2)
    top, bottom, tracker = sample_chunks(f, D, D2, params, int(budget), seed, anchors, workers)
    steps = 0
    if refine_steps > 0:
        steps += refine(f, D, D2, params, _select(top, N_STARTS, True), refine_steps, tracker, True)
        steps += refine(f, D, D2, params, _select(bottom, N_STARTS, False), refine_steps, tracker, False)
    return LipschitzReport(
        sup_estimate=tracker.sup,
        inf_estimate=tracker.inf,
        argmax=tracker.argmax,
        argmin=tracker.argmin,
        theoretical_upper=float(theoretical_upper),
        theoretical_lower=float(theoretical_lower),
        n_samples=int(budget),
        n_refinement_steps=int(steps),
        verdict=verdict_for(tracker.sup, tracker.inf, theoretical_upper, theoretical_lower),
        seed=seed,
    )
