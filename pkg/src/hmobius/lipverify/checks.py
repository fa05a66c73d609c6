"""Canned verification runs for the four distortion bounds, plus the self-test driver."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..domains import HalfSpace, UnitBall
from ..hmetric import MetricParams
from ..mobius import (MobiusMap, ball_automorphism, ball_to_halfspace, compose, halfspace_mobius,
                      inversion_distance_identity_check, random_halfspace_similarity)
from ..vecgeom import INF, Seed, random_directions, random_orthogonal
from .estimate import estimate_sup
from .lemmas import lemma_oracles
from .punctured import punctured_bound_check
from .sharpness import h2h_invariance_check

INVARIANCE_TOL = 1e-10
INVERSION_IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_ball_automorphism(a, params=MetricParams(), budget=10**4, seed=0, refine_steps=200, orth_seed=None):
    """Distortion of ``A o sigma_a`` on the unit ball against ``[1/(1+|a|), 1+|a|]``."""
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    A = None if orth_seed is None else random_orthogonal(n, orth_seed)
    na = float(np.linalg.norm(a))
    B = UnitBall(n)
    return estimate_sup(ball_automorphism(a, A), B, B, params, budget, refine_steps, seed,
                        1.0 + na, 1.0 / (1.0 + na))


def check_ball_to_halfspace(params=MetricParams(), n=2, budget=10**4, seed=0, refine_steps=200,
                            similarity_seed=None):
    """Distortion of the ball-to-half-space inversion (optionally followed by a similarity) against ``[1, 2]``."""
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    f = ball_to_halfspace(n)
    if similarity_seed is not None:
        f = compose(f, halfspace_mobius(INF, random_halfspace_similarity(n, similarity_seed), n))
    return estimate_sup(f, UnitBall(n), HalfSpace(n), params, budget, refine_steps, seed, 2.0, 1.0)


def random_halfspace_map(n: int, seed) -> MobiusMap:
    """Translation to a random boundary point, unit inversion, random similarity."""
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    rng = seed.rng(0)
    a = np.zeros(n)
    a[:-1] = rng.uniform(-3.0, 3.0, n - 1)
    return halfspace_mobius(a, random_halfspace_similarity(n, seed.rng(1)))


def check_halfspace_invariance(params=MetricParams(), n=2, n_maps=10, n_pairs=10**4, seed=0):
    """Largest ``|ratio - 1|`` over ``n_maps`` random half-space maps; list of per-map values."""
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    return [h2h_invariance_check(random_halfspace_map(n, Seed(seed.seed, 1000 + i)), params, n_pairs,
                                 Seed(seed.seed, 2000 + i)) for i in range(n_maps)]


def inversion_identity_gap(n_triples=10**5, seed=0, n=3) -> float:
    """Worst relative gap of the inversion distance identity over random (centre, x, y) triples."""
    seed = seed if isinstance(seed, Seed) else Seed(int(seed))
    rng = seed.rng(0)
    C = rng.normal(size=(n_triples, n)) * 2.0
    X = rng.normal(size=(n_triples, n)) * 2.0
    Y = rng.normal(size=(n_triples, n)) * 2.0
    r2 = 10.0 ** rng.uniform(-2.0, 2.0, n_triples)
    lhs, rhs = inversion_distance_identity_check(C, r2, X, Y)
    return float(np.max(np.abs(lhs - rhs) / rhs))


def run_selftest(seed=0, budget=10**4):
    """Lemma oracles, the four distortion bounds and the inversion identity at ``budget`` samples each.

    Returns a list of :class:`CheckResult`.
    """
    s = int(seed)
    p = MetricParams(2.0)
    out = []
    for row in lemma_oracles(budget, Seed(s, 10)):
        out.append(CheckResult(f"oracle: {row.name}", row.passed, f"worst={row.worst:.3e}"))

    rng = Seed(s, 11).rng()
    for i, na in enumerate((0.25, 0.5, 0.75)):
        a = na * random_directions(rng, 1, 2)[0]
        rep = check_ball_automorphism(a, p, budget, Seed(s, 20 + i), orth_seed=Seed(s, 30 + i))
        out.append(CheckResult(f"ball automorphism |a|={na}", rep.passed,
                               f"sup={rep.sup_estimate:.12g} inf={rep.inf_estimate:.12g}"))

    rep = check_ball_to_halfspace(p, 2, budget, Seed(s, 40), similarity_seed=Seed(s, 41))
    out.append(CheckResult("ball to half-space", rep.passed,
                           f"sup={rep.sup_estimate:.12g} inf={rep.inf_estimate:.12g}"))

    worst = max(check_halfspace_invariance(p, 2, 10, budget, Seed(s, 50)))
    out.append(CheckResult("half-space invariance", worst <= INVARIANCE_TOL, f"max|ratio-1|={worst:.3e}"))

    for i, na in enumerate((0.25, 0.5, 0.75)):
        a = np.array([na, 0.0])
        pr = punctured_bound_check(a, p, budget, Seed(s, 60 + i), refine_steps=50, min_per_cell=5)
        out.append(CheckResult(f"punctured |a|={na}", pr.passed,
                               f"sup={pr.report.sup_estimate:.12g} case_violations={pr.case_violations}"))

    gap = inversion_identity_gap(budget, Seed(s, 70))
    out.append(CheckResult("inversion distance identity", gap <= INVERSION_IDENTITY_TOL, f"gap={gap:.3e}"))
    return out
