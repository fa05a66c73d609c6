import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hmobius.domains import HalfSpace, UnitBall
from hmobius.mobius import (MobiusMap, Orthogonal, PoleProximityError, Scaling, SphereInversion, Translation,
                            apply, apply_batch, ball_automorphism, ball_to_halfspace, compose, halfspace_mobius,
                            identity, inverse, inversion_distance_identity_check, parse_map, push_pair,
                            random_halfspace_similarity, sigma_a, unit_inversion)
from hmobius.vecgeom import INF, OrthogonalMatrix, Seed, random_orthogonal, random_points_in_ball

A05 = np.array([0.5, 0.0])


def ball_batch(k, n, seed=0, rmax=0.999):
    return random_points_in_ball(Seed(seed).rng(), k, n, 0.0, rmax)


def test_sigma_a_examples():
    f = sigma_a(A05)
    (inv,) = f.chain
    np.testing.assert_array_equal(inv.center, [2.0, 0.0])
    assert inv.radius2 == pytest.approx(3.0, rel=1e-15, abs=0)
    np.testing.assert_allclose(apply(f, A05), [0.0, 0.0], atol=1e-16)
    assert apply(f, [2.0, 0.0]) is INF
    np.testing.assert_allclose(apply(f, [0.0, 0.0]), [0.5, 0.0], rtol=1e-15)
    assert apply(f, INF) is not INF


def test_sigma_a_rejects():
    for a in ([0.0, 0.0], [1.0, 0.0], [0.8, 0.8]):
        with pytest.raises(ValueError):
            sigma_a(a)


def test_ball_automorphism_examples():
    f = ball_automorphism([0.0, 0.0])
    x = np.array([0.3, -0.2])
    np.testing.assert_array_equal(apply(f, x), x)
    np.testing.assert_allclose(apply(ball_automorphism(A05), A05), [0, 0], atol=1e-16)
    A = random_orthogonal(2, Seed(4))
    X = ball_batch(1000, 2)
    assert np.all(UnitBall(2).contains(apply_batch(ball_automorphism([0.2, 0.6], A), X)))


def test_inverse_of_automorphism_is_sigma_after_transpose():
    a = np.array([0.1, -0.3, 0.4])
    A = random_orthogonal(3, Seed(8))
    f = ball_automorphism(a, A)
    g = MobiusMap(3, (Orthogonal(A.T),) + sigma_a(a).chain)
    X = ball_batch(1000, 3, seed=2)
    np.testing.assert_allclose(apply_batch(inverse(f), X), apply_batch(g, X), atol=1e-14)
    np.testing.assert_allclose(apply_batch(compose(f, inverse(f)), X), X, atol=1e-13)


def test_ball_to_halfspace_examples():
    f = ball_to_halfspace(2)
    np.testing.assert_allclose(apply(f, [0.0, 0.0]), [0.0, 1.0], rtol=1e-15)
    assert apply(f, [0.5, 0.0])[1] == pytest.approx(0.6, rel=1e-15, abs=0)
    assert apply(f, [0.0, -1.0]) is INF
    X = ball_batch(1000, 3)
    Z = apply_batch(ball_to_halfspace(3), X)
    assert np.all(HalfSpace(3).contains(Z))
    e = np.array([0.0, 0.0, 1.0])
    expect = (1 - np.sum(X * X, 1)) / np.sum((X + e) ** 2, 1)
    np.testing.assert_allclose(Z[:, -1], expect, rtol=1e-12)


def test_halfspace_mobius_examples():
    assert apply(halfspace_mobius(INF, (), n=2), [0.3, 2.0]).tolist() == [0.3, 2.0]
    np.testing.assert_allclose(apply(halfspace_mobius([0.0, 0.0]), [0.0, 1.0]), [0.0, 1.0], rtol=1e-15)
    np.testing.assert_allclose(apply(halfspace_mobius([1.0, 0.0]), [1.0, 1.0]), [0.0, 1.0], rtol=1e-15)
    assert apply(halfspace_mobius([1.0, 0.0]), [1.0, 0.0]) is INF


def test_halfspace_mobius_rejects_non_preserving():
    with pytest.raises(ValueError):
        halfspace_mobius([0.0, 1.0])
    with pytest.raises(ValueError):
        halfspace_mobius(INF, (Translation([0.0, 1.0]),))
    R = OrthogonalMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        halfspace_mobius(INF, (Orthogonal(R),))
    with pytest.raises(ValueError):
        halfspace_mobius(INF, (unit_inversion(2).chain[0],))


@pytest.mark.parametrize("n", [2, 3])
def test_random_halfspace_similarity_preserves_h(n):
    sim = random_halfspace_similarity(n, Seed(1))
    f = halfspace_mobius(np.zeros(n), sim)
    X = random_points_in_ball(Seed(3).rng(), 500, n) + 0.0
    X[:, -1] = np.abs(X[:, -1]) + 1e-3
    assert np.all(HalfSpace(n).contains(apply_batch(f, X)))


def test_inversion_primitives():
    inv = SphereInversion([0.0, 0.0], 1.0)
    assert inv.inverse() is inv
    assert apply(MobiusMap(2, (inv,)), INF).tolist() == [0.0, 0.0]
    with pytest.raises(PoleProximityError):
        apply_batch(MobiusMap(2, (inv,)), np.zeros((1, 2)))
    with pytest.raises(ValueError):
        SphereInversion([0.0, 0.0], -1.0)
    with pytest.raises(ValueError):
        Scaling(0.0)


def test_similarities_fix_infinity():
    m = MobiusMap(2, (Translation([1.0, 2.0]), Scaling(3.0), Orthogonal(random_orthogonal(2, Seed(0)))))
    assert apply(m, INF) is INF
    assert apply(inverse(m), INF) is INF


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        MobiusMap(3, (Translation([1.0, 0.0]),))
    with pytest.raises(ValueError):
        compose(identity(2), identity(3))


def test_identity_check_examples():
    lhs, rhs = inversion_distance_identity_check([0, 0], 1.0, [0.3, 0.1], [0.3, 0.1])
    assert lhs == rhs == 0.0
    inv = sigma_a(A05).chain[0]
    lhs, rhs = inversion_distance_identity_check(inv.center, inv.radius2, [0.0, 0.0], [0.25, 0.0])
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=0)
    with pytest.raises(ValueError):
        inversion_distance_identity_check([0, 0], 1.0, [0, 0], [1, 1])


def test_identity_check_random_ball_pairs():
    inv = sigma_a([0.2, -0.3, 0.5]).chain[0]
    X, Y = ball_batch(10**4, 3, 1), ball_batch(10**4, 3, 2)
    lhs, rhs = inversion_distance_identity_check(inv.center, inv.radius2, X, Y)
    assert np.max(np.abs(lhs - rhs) / rhs) <= 1e-10


def test_identity_check_per_row_centres():
    rng = np.random.default_rng(5)
    C, X, Y = (rng.normal(size=(200, 2)) for _ in range(3))
    lhs, rhs = inversion_distance_identity_check(C, rng.uniform(0.5, 2, 200), X, Y)
    assert np.max(np.abs(lhs - rhs) / rhs) <= 1e-12


def test_push_pair_tracks_distance_and_defects():
    a = np.array([0.3, 0.4, -0.2])
    f = ball_automorphism(a, random_orthogonal(3, Seed(1)))
    X, Y = ball_batch(500, 3, 5, 0.9), ball_batch(500, 3, 6, 0.9)
    tx, ty, D = push_pair(f, X, Y)
    FX, FY = apply_batch(f, X), apply_batch(f, Y)
    np.testing.assert_allclose(D, np.linalg.norm(FX - FY, axis=1), rtol=1e-12)
    np.testing.assert_allclose(tx.ball_defect, 1 - np.sum(FX * FX, 1), rtol=1e-10)
    np.testing.assert_array_equal(tx.points, FX)


def test_push_pair_close_points_keep_accuracy():
    # images 1e-13 apart: direct subtraction keeps ~3 digits, the tracked distance all of them
    f = sigma_a([0.6, 0.0])
    x = np.array([[0.1, 0.2]])
    y = x + np.array([[1e-13, 0.0]])
    inv = f.chain[0]
    exact = inv.radius2 * np.linalg.norm(x - y) / (np.linalg.norm(x - inv.center) * np.linalg.norm(y - inv.center))
    _, _, D = push_pair(f, x, y)
    assert D[0] == pytest.approx(exact, rel=1e-14, abs=0)


def test_push_pair_halfspace_height():
    f = compose(ball_to_halfspace(2), halfspace_mobius([0.5, 0.0], random_halfspace_similarity(2, Seed(3))))
    X = ball_batch(300, 2, 1, 0.99)
    tx, _, _ = push_pair(f, X, X[::-1])
    np.testing.assert_allclose(tx.height, apply_batch(f, X)[:, -1], rtol=1e-9)
    assert np.all(tx.height > 0)


def test_parse_map():
    f = parse_map("sigma:0.5,0")
    assert f == sigma_a(A05)
    g = parse_map("b2h; trans:1,0; scale:2; orth:3", n=2)
    assert len(g) == 4 and g.n == 2
    np.testing.assert_allclose(apply(g, [0.0, 0.0]),
                               apply(MobiusMap(2, g.chain[3:]), [2.0, 2.0]), rtol=1e-15)
    assert parse_map("unitinv", n=3).n == 3


@pytest.mark.parametrize("bad", ["", "sigma:1,0", "b2h", "foo:1", "scale:-1", "trans:1,x", "orth:1.5"])
def test_parse_map_rejects(bad):
    with pytest.raises(ValueError):
        parse_map(bad)


vec3 = st.tuples(*[st.floats(-0.55, 0.55)] * 3)


@settings(max_examples=100)
@given(vec3, vec3, st.integers(0, 1000))
def test_ball_automorphism_maps_a_to_zero_and_is_invertible(a, x, s):
    a = np.array(a)
    assume(np.linalg.norm(a) > 1e-3)
    f = ball_automorphism(a, random_orthogonal(3, Seed(s)))
    # the centre a* lies at distance 1/|a|: absolute rounding scales with it
    tol = 1e-14 * (1.0 + 1.0 / np.linalg.norm(a))
    np.testing.assert_allclose(apply(f, a), 0.0, atol=tol)
    x = np.array(x)
    np.testing.assert_allclose(apply(inverse(f), apply(f, x)), x, atol=10 * tol)
    assert np.linalg.norm(apply(f, x)) < 1.0


@settings(max_examples=100)
@given(vec3, vec3)
def test_sigma_a_is_involution(a, x):
    a = np.array(a)
    assume(np.linalg.norm(a) > 1e-3)
    f = sigma_a(a)
    tol = 1e-13 * (1.0 + 1.0 / np.linalg.norm(a))
    np.testing.assert_allclose(apply(f, apply(f, np.array(x))), x, atol=tol)
