import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hmobius.domains import HalfSpace, OutsideDomainError, PuncturedUnitBall, UnitBall
from hmobius.hmetric import (BoundaryProximityError, MetricParams, h_eval, h_from_parts,
                             one_minus_norm_of_ball_inversion)
from hmobius.mobius import apply, sigma_a

# reference values computed with mpmath at 50 digits
LOG_1_PLUS_SQRT2 = 0.88137358701954302523
LOG_7 = 1.9459101490553133051
PBALL_H = 1.3890631771177247166  # pball:2:0, c=2, x=(0.3,0), y=(0,0.5)


def test_examples():
    assert h_eval(UnitBall(2), MetricParams(2), [0, 0], [0.5, 0]) == pytest.approx(LOG_1_PLUS_SQRT2, rel=1e-15, abs=0)
    assert h_eval(HalfSpace(2), MetricParams(2), [0, 1], [3, 1]) == pytest.approx(LOG_7, rel=1e-15, abs=0)
    assert h_eval(PuncturedUnitBall(2, [0, 0]), 2.0, [0.3, 0], [0, 0.5]) == pytest.approx(PBALL_H, rel=1e-15, abs=0)


@pytest.mark.parametrize("D,x", [(UnitBall(3), [0.1, 0.2, 0.3]), (HalfSpace(2), [4.0, 0.1]),
                                 (PuncturedUnitBall(2, [0.5, 0]), [0.2, 0.2])])
def test_identity_is_exact_zero(D, x):
    assert h_eval(D, MetricParams(2.5), x, x) == 0.0


def test_params_validation():
    for bad in (0.0, -1.0, float("nan"), float("inf")):
        with pytest.raises(ValueError):
            MetricParams(bad)
    assert MetricParams(2).metric_axioms_guaranteed
    assert not MetricParams(1.5).metric_axioms_guaranteed


def test_outside_and_boundary_errors():
    with pytest.raises(OutsideDomainError):
        h_eval(UnitBall(2), MetricParams(), [1.0, 0.0], [0.0, 0.0])
    with pytest.raises(BoundaryProximityError):
        h_eval(HalfSpace(2), MetricParams(), [0.0, 1e-310], [0.0, 1.0])


def test_from_parts_no_underflow():
    # dx * dy would underflow to 0; separate square roots keep h finite
    v = h_from_parts(2.0, 1e-200, 1e-200, 1e-200)
    assert v == pytest.approx(math.log(3.0), rel=1e-15, abs=0)


def test_batch_matches_scalar():
    rng = np.random.default_rng(0)
    X = rng.uniform(-0.5, 0.5, (20, 3))
    Y = rng.uniform(-0.5, 0.5, (20, 3))
    hb = h_eval(UnitBall(3), MetricParams(3), X, Y)
    hs = [h_eval(UnitBall(3), MetricParams(3), x, y) for x, y in zip(X, Y)]
    np.testing.assert_allclose(hb, hs, rtol=1e-15)


ball_pt = st.tuples(st.floats(-0.7, 0.7), st.floats(-0.7, 0.7))
half_pt = st.tuples(st.floats(-10, 10), st.floats(1e-6, 10))


@given(ball_pt, ball_pt)
def test_symmetry_bit_exact(x, y):
    D = UnitBall(2)
    assert h_eval(D, MetricParams(2), x, y) == h_eval(D, MetricParams(2), y, x)


@settings(max_examples=200)
@given(half_pt, half_pt, half_pt, st.sampled_from([2.0, 2.5, 5.0]))
def test_triangle_halfspace(x, y, z, c):
    D, p = HalfSpace(2), MetricParams(c)
    hxy, hyz, hxz = h_eval(D, p, x, y), h_eval(D, p, y, z), h_eval(D, p, x, z)
    assert hxz <= hxy + hyz + 1e-12 * max(hxy, hyz, hxz, 1.0)


@settings(max_examples=200)
@given(ball_pt, ball_pt, ball_pt, st.sampled_from([2.0, 2.5, 5.0]))
def test_triangle_punctured(x, y, z, c):
    D, p = PuncturedUnitBall(2, [0.1, 0.0]), MetricParams(c)
    assume(all(D.contains(v) for v in (x, y, z)))
    hxy, hyz, hxz = h_eval(D, p, x, y), h_eval(D, p, y, z), h_eval(D, p, x, z)
    assert hxz <= hxy + hyz + 1e-12 * max(hxy, hyz, hxz, 1.0)


def test_one_minus_norm_examples():
    a = np.array([0.5, 0.0])
    assert one_minus_norm_of_ball_inversion(a, a) == pytest.approx(1.0, rel=1e-15, abs=0)
    assert one_minus_norm_of_ball_inversion(a, [0.0, 0.0]) == pytest.approx(0.5, rel=1e-15, abs=0)
    naive = 1.0 - np.linalg.norm(apply(sigma_a(a), np.array([0.9, 0.0])))
    assert one_minus_norm_of_ball_inversion(a, [0.9, 0.0]) == pytest.approx(naive, rel=1e-9, abs=0)


def test_one_minus_norm_rejects_bad_a():
    with pytest.raises(ValueError):
        one_minus_norm_of_ball_inversion([0.0, 0.0], [0.1, 0.1])
    with pytest.raises(ValueError):
        one_minus_norm_of_ball_inversion([1.0, 0.0], [0.1, 0.1])


def test_one_minus_norm_near_sphere_matches_first_order():
    # for x = (1-e) u, 1 - |sigma_a(x)| ~ e (1-|a|^2) / |u - a|^2 as e -> 0
    a = np.array([0.3, -0.4])
    u = np.array([0.6, 0.8])
    for e in (1e-8, 1e-11, 1e-14):
        x = (1 - e) * u
        e_true = 1.0 - np.linalg.norm(x)  # exact subtraction, |x| in [1/2, 1]
        v = one_minus_norm_of_ball_inversion(a, x)
        lead = e_true * (1 - a @ a) / np.sum((u - a) ** 2)
        assert v > 0 and np.isfinite(v)
        assert v == pytest.approx(lead, rel=1e-6, abs=0)
