import math

import numpy as np
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from gyrolab_lite.exceptions import ModelDomainError
from gyrolab_lite.models import (
    IDENTITY_NAMES,
    BallPoint,
    DiskPoint,
    ModelKind,
    evaluate_identities,
    einstein_gyr,
    einstein_gyr_via_identity,
    einstein_op,
    exact_einstein_parallel,
    exact_mobius_op,
    get_model,
    mobius_gyr,
    mobius_gyr_via_identity,
    mobius_op,
    model_identity_sampler,
)

coords = st.floats(min_value=-0.7, max_value=0.7, allow_nan=False)


def disk_points():
    return st.tuples(coords, coords).map(lambda p: DiskPoint(*p))


def ball_points():
    return st.tuples(coords, coords, coords).filter(lambda p: sum(x * x for x in p) < 0.98).map(
        lambda p: BallPoint(*p))


class TestMobius:
    def test_identity_element(self):
        a = DiskPoint(0.3, -0.2)
        assert mobius_op(a, DiskPoint(0.0, 0.0)) == a

    def test_inverse_is_negation(self):
        a = DiskPoint(0.3, -0.2)
        assert abs(mobius_op(a, DiskPoint(-0.3, 0.2))) < 1e-12

    def test_real_sum(self):
        r = mobius_op(DiskPoint(0.5, 0.0), DiskPoint(0.5, 0.0))
        assert r.re == pytest.approx(0.8, abs=1e-12)
        assert r.im == 0.0

    def test_exact_real_sum(self):
        assert exact_mobius_op(sympy.Rational(1, 2), sympy.Rational(1, 2)) == sympy.Rational(4, 5)

    def test_gyr_zero_argument(self):
        z = DiskPoint(0.1, 0.4)
        assert mobius_gyr(DiskPoint(0.6, 0.1), DiskPoint(0.0, 0.0), z) == z

    def test_real_gyration_is_identity(self):
        z = DiskPoint(-0.2, 0.5)
        r = mobius_gyr(DiskPoint(0.4, 0.0), DiskPoint(-0.7, 0.0), z)
        assert r.re == pytest.approx(z.re, abs=1e-15)
        assert r.im == pytest.approx(z.im, abs=1e-15)

    def test_dual_path_agreement(self):
        a, b, z = DiskPoint(0.0, 0.5), DiskPoint(0.5, 0.0), DiskPoint(0.3, 0.3)
        closed = mobius_gyr(a, b, z)
        via = mobius_gyr_via_identity(a, b, z)
        assert abs(closed.value - via.value) < 1e-12
        assert abs(closed) == pytest.approx(abs(z), abs=1e-12)

    def test_even_property(self):
        a, b, z = DiskPoint(0.3, 0.4), DiskPoint(-0.5, 0.1), DiskPoint(0.2, -0.3)
        neg_a, neg_b = DiskPoint(-0.3, -0.4), DiskPoint(0.5, -0.1)
        assert abs(mobius_gyr(a, b, z).value - mobius_gyr(neg_a, neg_b, z).value) < 1e-15
        # swapping the negated arguments gives gyr[b,a], the inverse rotation
        swapped = mobius_gyr(neg_b, neg_a, z)
        assert abs(swapped.value - mobius_gyr(b, a, z).value) < 1e-15
        assert abs(swapped.value - mobius_gyr(a, b, z).value) > 0.3

    @given(disk_points(), disk_points(), disk_points())
    def test_gyration_is_rotation(self, a, b, z):
        assert abs(mobius_gyr(a, b, z)) == pytest.approx(abs(z), abs=1e-12)
        assert abs(mobius_gyr(a, b, z).value - mobius_gyr_via_identity(a, b, z).value) < 1e-12

    def test_domain(self):
        with pytest.raises(ModelDomainError):
            DiskPoint(1.0, 0.0)
        with pytest.raises(ModelDomainError):
            DiskPoint(0.8, 0.7)


class TestEinstein:
    def test_identity_element(self):
        u = BallPoint(0.2, 0.1, -0.3)
        assert einstein_op(u, BallPoint(0.0, 0.0, 0.0)) == u

    @pytest.mark.parametrize("p, q", [(0.5, 0.5), (0.9, -0.3), (0.25, 0.6)])
    def test_parallel_speeds(self, p, q):
        r = einstein_op(BallPoint(p, 0.0, 0.0), BallPoint(q, 0.0, 0.0))
        assert r.x == pytest.approx(float(exact_einstein_parallel(sympy.nsimplify(p), sympy.nsimplify(q))), abs=1e-12)
        assert (r.y, r.z) == (0.0, 0.0)

    def test_exact_parallel(self):
        assert exact_einstein_parallel(sympy.Rational(1, 2), sympy.Rational(1, 2)) == sympy.Rational(4, 5)

    def test_gyr_zero_argument(self):
        w = BallPoint(0.1, -0.4, 0.2)
        assert einstein_gyr(BallPoint(0.5, 0.1, 0.0), BallPoint(0.0, 0.0, 0.0), w) == w

    def test_perpendicular_vector_is_fixed(self):
        w = BallPoint(0.0, 0.0, 0.6)
        r = einstein_gyr(BallPoint(0.7, 0.0, 0.0), BallPoint(0.0, -0.6, 0.0), w)
        assert (r.x, r.y, r.z) == pytest.approx((0.0, 0.0, 0.6), abs=1e-15)

    def test_closed_form_matches_identity(self):
        u, v, w = BallPoint(0.6, 0.2, -0.1), BallPoint(-0.3, 0.7, 0.1), BallPoint(0.2, 0.2, 0.5)
        closed = einstein_gyr(u, v, w)
        via = einstein_gyr_via_identity(u, v, w)
        assert np.linalg.norm(closed.value - via.value) < 1e-12

    def test_closed_form_near_boundary(self):
        u = BallPoint(0.998, 0.0, 0.0)
        v = BallPoint(0.0, 0.998, 0.0)
        w = BallPoint(0.5, -0.5, 0.1)
        closed = einstein_gyr(u, v, w)
        assert np.linalg.norm(closed.value - einstein_gyr_via_identity(u, v, w).value) < 1e-12
        assert abs(closed) == pytest.approx(abs(w), abs=1e-12)

    @given(ball_points(), ball_points(), ball_points())
    def test_closed_form_agrees_with_identity(self, u, v, w):
        assert np.linalg.norm(einstein_gyr(u, v, w).value - einstein_gyr_via_identity(u, v, w).value) < 1e-12

    @given(ball_points(), ball_points(), ball_points())
    def test_gyration_preserves_norm(self, u, v, w):
        assert abs(einstein_gyr(u, v, w)) == pytest.approx(abs(w), abs=1e-9)

    @given(ball_points(), ball_points())
    def test_sum_stays_in_ball(self, u, v):
        assume(abs(u) < 0.95 and abs(v) < 0.95)
        assert abs(einstein_op(u, v)) < 1.0

    def test_domain(self):
        with pytest.raises(ModelDomainError):
            BallPoint(0.6, 0.6, 0.6)


@pytest.mark.parametrize("kind", list(ModelKind))
def test_residuals_vanish_at_origin(kind):
    model = get_model(kind)
    zero = model.zero(1)
    residuals = evaluate_identities(model, zero, zero, zero)
    assert set(residuals) == set(IDENTITY_NAMES)
    assert all(float(np.max(r)) == 0.0 for r in residuals.values())


@pytest.mark.parametrize("kind", ["mobius", "einstein"])
def test_sampled_identities_pass(kind):
    report = model_identity_sampler(kind, samples=10_000, tol=1e-9, seed=0)
    assert report.ok, report.to_dict()
    assert report["2_left_cancellation"].max_residual < 1e-9
    assert report["norm_preservation"].max_residual < 1e-9
    assert report["6_even_property"].max_residual < 1e-9
    assert report["dual_path"].max_residual < 1e-12
    for name in ("codiff_self", "g4", "right_cancellation"):
        assert report[name].max_residual < 1e-9


def test_report_independent_of_worker_count():
    one = model_identity_sampler(ModelKind.MOBIUS, samples=2500, seed=7, workers=1)
    two = model_identity_sampler(ModelKind.MOBIUS, samples=2500, seed=7, workers=2)
    assert one.to_dict() == two.to_dict()


def test_seed_changes_sample():
    a = model_identity_sampler(ModelKind.EINSTEIN, samples=200, seed=1)
    b = model_identity_sampler(ModelKind.EINSTEIN, samples=200, seed=2)
    assert a.to_dict() != b.to_dict()


def test_report_shape():
    data = model_identity_sampler("einstein", samples=10, seed=3).to_dict()
    assert data["model"] == "einstein"
    assert [e["name"] for e in data["identities"]] == list(IDENTITY_NAMES)
    assert all(math.isfinite(e["max_residual"]) for e in data["identities"])


@pytest.mark.parametrize("samples, tol", [(0, 1e-9), (10, 0.0)])
def test_sampler_rejects_bad_arguments(samples, tol):
    with pytest.raises(ValueError):
        model_identity_sampler("mobius", samples=samples, tol=tol)
