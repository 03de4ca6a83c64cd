import numpy as np
import pytest

from spirallike.core import (
    Angle,
    DomainError,
    PoleError,
    caratheodory_disc,
    f_lambda,
    f_lambda_zero_radius,
    p_lambda,
    p_lambda_inverse,
    principal_power,
    q_lambda,
)

from oracles import random_disc_points

# Reference values frozen from a 50-digit evaluation of the closed forms
# with an independent arbitrary-precision evaluator.
POWER_HALF_1PLUSI = 0.38461945068198605 - 0.3194806381568174j
F_QUARTER_AT_03 = 0.34916038223322426 + 0.06293702053770754j
Q_QUARTER_AT_02 = 1.1157023428809023 + 0.125j
P_QUARTER_AT_05I = 0.4 + 0.2j

QUARTER = Angle(np.pi / 4)


class TestAngle:
    def test_valid_range(self):
        assert Angle(0.0).lam == 0.0
        assert Angle(1.57).lam == 1.57

    @pytest.mark.parametrize("bad", [np.pi / 2, -np.pi / 2, 2.0, -3.0, np.nan, np.inf])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(DomainError):
            Angle(bad)

    def test_conjugate(self):
        assert Angle(0.3).conjugate().lam == -0.3


class TestPrincipalPower:
    def test_base_one_is_one(self):
        for w in [0.0, 2.0, 1 + 1j, -3.7j, 100.0]:
            assert principal_power(1.0, w) == 1.0

    def test_plain_square(self):
        assert principal_power(1 - 1j, 2) == pytest.approx(-2j, abs=1e-15)

    def test_transcendental_oracle(self):
        assert principal_power(0.5, 1 + 1j) == pytest.approx(POWER_HALF_1PLUSI, abs=1e-15)

    def test_branch_is_principal(self):
        # arg of the log lives in (-pi, pi]: the cut maps to +pi even for a
        # negative-zero imaginary part.
        assert principal_power(-1.0, 0.5) == pytest.approx(1j, abs=1e-15)
        assert principal_power(complex(-1.0, -0.0), 0.5) == pytest.approx(1j, abs=1e-15)

    def test_zero_base_rejected(self):
        with pytest.raises(DomainError):
            principal_power(0.0, 2.0)

    def test_array_input(self):
        out = principal_power(np.array([1.0, 4.0]), 0.5)
        np.testing.assert_allclose(out, [1.0, 2.0], atol=1e-15)


class TestFLambda:
    def test_untilted_collapse(self):
        rng = np.random.default_rng(11)
        z = random_disc_points(rng, 40)
        np.testing.assert_allclose(f_lambda(Angle(0.0), z), z / (1 - z), atol=1e-12)

    def test_normalization_at_zero(self):
        for lam in [0.0, 0.4, -1.1, np.pi / 4]:
            assert f_lambda(Angle(lam), 0.0) == 0.0

    def test_scalar_oracle(self):
        assert f_lambda(QUARTER, 0.3) == pytest.approx(F_QUARTER_AT_03, abs=1e-14)

    def test_rejects_boundary(self):
        with pytest.raises(DomainError):
            f_lambda(QUARTER, 1.0)


class TestQLambda:
    def test_untilted_collapse(self):
        rng = np.random.default_rng(12)
        z = random_disc_points(rng, 40)
        np.testing.assert_allclose(q_lambda(Angle(0.0), z), 1 / (1 - z), atol=1e-12)
        assert q_lambda(Angle(0.0), 0.5) == pytest.approx(2.0, abs=1e-14)

    def test_removable_singularity(self):
        for lam in [0.0, 0.9, -0.6]:
            assert q_lambda(Angle(lam), 0.0) == 1.0

    def test_scalar_oracle(self):
        assert q_lambda(QUARTER, 0.2) == pytest.approx(Q_QUARTER_AT_02, abs=1e-13)

    def test_series_seam_accuracy(self):
        # frozen 50-digit values just inside and outside the series switchover
        series_side = 1.0000059666382972 + 6.97525161415275e-05j
        direct_side = 1.0000060870883363 + 7.116174140057503e-05j
        assert q_lambda(QUARTER, 0.99e-4 * np.exp(0.7j)) == pytest.approx(series_side, abs=1e-12)
        assert q_lambda(QUARTER, 1.01e-4 * np.exp(0.7j)) == pytest.approx(direct_side, abs=1e-12)


class TestPLambda:
    def test_value_at_zero(self):
        for lam in [0.0, 0.7, -1.3]:
            assert p_lambda(Angle(lam), 0.0) == 1.0

    def test_untilted_value(self):
        assert p_lambda(Angle(0.0), 0.5) == pytest.approx(3.0, abs=1e-15)

    def test_scalar_oracle(self):
        assert p_lambda(QUARTER, 0.5j) == pytest.approx(P_QUARTER_AT_05I, abs=1e-15)


class TestPLambdaInverse:
    def test_unit_maps_to_origin(self):
        for lam in [0.0, 0.5, -1.2]:
            assert p_lambda_inverse(Angle(lam), 1.0) == 0.0

    def test_untilted_inverse(self):
        assert p_lambda_inverse(Angle(0.0), 3.0) == pytest.approx(0.5, abs=1e-15)

    def test_imaginary_axis_hits_unit_circle_untilted(self):
        for t in [0.3, -2.0, 17.5]:
            assert abs(p_lambda_inverse(Angle(0.0), 1j * t)) == pytest.approx(1.0, abs=1e-15)

    def test_round_trip(self):
        rng = np.random.default_rng(13)
        z = random_disc_points(rng, 60)
        for lam in [0.0, 0.8, -0.35, 1.5]:
            a = Angle(lam)
            np.testing.assert_allclose(p_lambda_inverse(a, p_lambda(a, z)), z, atol=1e-12)

    def test_halfplane_criterion(self):
        # |inverse| < 1 exactly when the value lies in the tilted half-plane
        rng = np.random.default_rng(14)
        w = rng.normal(size=200) + 1j * rng.normal(size=200)
        for lam in [0.0, 0.6, -1.0]:
            a = Angle(lam)
            inside = np.abs(p_lambda_inverse(a, w)) < 1.0
            halfplane = (np.exp(-1j * lam) * w).real > 0.0
            np.testing.assert_array_equal(inside, halfplane)

    def test_pole_rejected(self):
        a = Angle(0.25)
        with pytest.raises(PoleError):
            p_lambda_inverse(a, -a.rotation)


class TestCaratheodoryDisc:
    def test_degenerate_at_zero(self):
        d = caratheodory_disc(Angle(0.4), 0.0)
        assert d.center == 1.0 and d.radius == 0.0

    def test_untilted_values(self):
        d = caratheodory_disc(Angle(0.0), 0.5)
        assert d.center == pytest.approx(5.0 / 3.0, abs=1e-15)
        assert d.radius == pytest.approx(4.0 / 3.0, abs=1e-15)

    def test_tilted_values(self):
        d = caratheodory_disc(Angle(np.pi / 3), 0.5)
        assert d.center == pytest.approx((1 + 0.25 * np.exp(2j * np.pi / 3)) / 0.75, abs=1e-15)
        assert d.radius == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_rejects_radius_one(self):
        with pytest.raises(DomainError):
            caratheodory_disc(Angle(0.0), 1.0)

    def test_extremal_map_attains_bound(self):
        # the half-plane map of a rotated argument sits exactly on the disc rim
        rng = np.random.default_rng(15)
        for lam in [0.0, 0.7, -1.2]:
            a = Angle(lam)
            for r in [0.1, 0.5, 0.9]:
                d = caratheodory_disc(a, r)
                x = np.exp(1j * rng.uniform(0, 2 * np.pi, 20))
                z = r * np.exp(1j * rng.uniform(0, 2 * np.pi, 20))
                gap = np.abs(p_lambda(a, x * z) - d.center) - d.radius
                assert np.max(np.abs(gap)) < 1e-12


class TestSymmetries:
    def test_conjugation(self):
        rng = np.random.default_rng(16)
        z = random_disc_points(rng, 50)
        for lam in [0.3, 1.0, 1.5]:
            a, conj_a = Angle(lam), Angle(-lam)
            for fn in (f_lambda, q_lambda, p_lambda):
                np.testing.assert_allclose(
                    np.conj(fn(a, np.conj(z))), fn(conj_a, z), atol=1e-12
                )

    def test_differential_identity_residual(self):
        # q + z q'/q reproduces the half-plane map, q' by central differences
        h = 1e-5
        for lam in [0.0, np.pi / 5, -np.pi / 3]:
            a = Angle(lam)
            radii = np.linspace(0.05, 0.9, 18)
            thetas = np.linspace(0.0, 2 * np.pi, 32, endpoint=False)
            z = radii[:, None] * np.exp(1j * thetas[None, :])
            q = q_lambda(a, z)
            dq = (q_lambda(a, z + h) - q_lambda(a, z - h)) / (2 * h)
            residual = np.abs(q + z * dq / q - p_lambda(a, z))
            assert float(residual.max()) < 1e-6


class TestZeroRadius:
    def test_quarter_tilt_zero(self):
        radius = f_lambda_zero_radius(QUARTER)
        assert radius == pytest.approx(abs(1 - np.exp(-2 * np.pi)), abs=1e-15)
        z = 1 - np.exp(-2 * np.pi)
        assert abs(f_lambda(QUARTER, z)) < 1e-12

    def test_mirrored_tilt(self):
        assert f_lambda_zero_radius(Angle(-np.pi / 4)) == f_lambda_zero_radius(QUARTER)

    def test_absent_for_small_tilts(self):
        for lam in [0.0, np.pi / 12, np.pi / 6, np.pi / 3, 1.5]:
            assert f_lambda_zero_radius(Angle(lam)) == np.inf
