import numpy as np
import pytest

import spirallike.samples as samples_mod
from spirallike.core import Angle, DomainError, f_lambda, p_lambda, q_lambda
from spirallike.samples import (
    AccuracyError,
    HerglotzMeasure,
    RobertsonSample,
    eval_caratheodory,
    f_prime,
    f_value,
    f_values,
    p_of_f,
    q_of_f,
    q_values,
    sample_measure,
    tilt,
)

from oracles import random_disc_points, simpson_segment


def single_atom(lam: float, point: complex = 1.0 + 0j) -> RobertsonSample:
    return RobertsonSample(
        angle=Angle(lam), measure=HerglotzMeasure(weights=[1.0], points=[point])
    )


def random_sample(lam: float, seed: int, n_atoms: int = 3) -> RobertsonSample:
    return RobertsonSample(angle=Angle(lam), measure=sample_measure(seed, n_atoms))


class TestHerglotzMeasure:
    def test_validation(self):
        with pytest.raises(DomainError):
            HerglotzMeasure(weights=[], points=[])
        with pytest.raises(DomainError):
            HerglotzMeasure(weights=[0.5, 0.4], points=[1.0, 1.0])  # sums to 0.9
        with pytest.raises(DomainError):
            HerglotzMeasure(weights=[1.0], points=[1.5])  # off the circle
        with pytest.raises(DomainError):
            HerglotzMeasure(weights=[1.5, -0.5], points=[1.0, 1.0])

    def test_json_round_trip(self):
        m = sample_measure(5, 4)
        again = HerglotzMeasure.from_json_obj(m.to_json_obj())
        np.testing.assert_allclose(again.weights, m.weights, atol=1e-15)
        np.testing.assert_allclose(again.points, m.points, atol=1e-15)

    def test_immutable_arrays(self):
        m = sample_measure(5, 2)
        with pytest.raises(ValueError):
            m.weights[0] = 0.0


class TestSampleMeasure:
    def test_deterministic_in_seed(self):
        m1, m2 = sample_measure(123, 5), sample_measure(123, 5)
        np.testing.assert_array_equal(m1.weights, m2.weights)
        np.testing.assert_array_equal(m1.points, m2.points)

    def test_single_atom_weight(self):
        m = sample_measure(9, 1)
        assert m.n_atoms == 1 and m.weights[0] == 1.0

    def test_simplex_and_circle(self):
        m = sample_measure(7, 3)
        assert abs(m.weights.sum() - 1.0) <= 1e-14
        assert np.max(np.abs(np.abs(m.points) - 1.0)) <= 1e-14

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            sample_measure(1, 0)


class TestEvalCaratheodory:
    def test_single_atom_is_halfplane_map(self):
        m = HerglotzMeasure(weights=[1.0], points=[1.0 + 0j])
        rng = np.random.default_rng(21)
        z = random_disc_points(rng, 30)
        np.testing.assert_allclose(eval_caratheodory(m, z), p_lambda(Angle(0.0), z), atol=1e-14)

    def test_value_at_zero(self):
        assert eval_caratheodory(sample_measure(3, 4), 0.0) == 1.0

    def test_two_symmetric_atoms(self):
        m = HerglotzMeasure(weights=[0.5, 0.5], points=[1.0, -1.0])
        assert eval_caratheodory(m, 0.5) == pytest.approx(5.0 / 3.0, abs=1e-15)


class TestTilt:
    def test_fixes_one(self):
        for lam in [0.0, 0.9, -1.4]:
            assert tilt(Angle(lam), 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_identity_untilted(self):
        vals = np.array([2.0 + 1j, 0.3 - 4j])
        np.testing.assert_array_equal(tilt(Angle(0.0), vals), vals)

    def test_quarter_tilt_of_two(self):
        out = tilt(Angle(np.pi / 4), 2.0)
        assert out == pytest.approx(1.5 + 0.5j, abs=1e-15)
        assert (np.exp(-1j * np.pi / 4) * out).real == pytest.approx(np.sqrt(2), abs=1e-15)

    def test_lands_in_tilted_class(self):
        rng = np.random.default_rng(22)
        h = np.abs(rng.normal(1, 2, 100)) + 1e-6 + 1j * rng.normal(0, 3, 100)
        for lam in [0.5, -1.2]:
            tilted = (np.exp(-1j * lam) * tilt(Angle(lam), h)).real
            assert np.all(tilted > 0)


class TestFPrime:
    def test_single_atom_matches_extremal_derivative(self):
        rng = np.random.default_rng(23)
        z = random_disc_points(rng, 40)
        for lam in [0.0, np.pi / 4, -0.8]:
            a = Angle(lam)
            s = single_atom(lam)
            expected = np.exp(-(1 + a.rotation) * np.log(1 - z))
            np.testing.assert_allclose(f_prime(s, z), expected, atol=1e-12)

    def test_normalized_at_zero(self):
        for seed in range(4):
            assert f_prime(random_sample(0.6, seed), 0.0) == 1.0

    def test_against_log_derivative_quadrature(self):
        # exponentiated Simpson integral of (p(t) - 1)/t reproduces f'
        s = random_sample(np.pi / 5, seed=31, n_atoms=3)
        for z in [0.4j, -0.3 + 0.25j, 0.55]:
            log_fp = simpson_segment(
                lambda t: (p_of_f(s, t) - 1.0) / np.where(t == 0, 1.0, t), z
            )
            assert f_prime(s, z) == pytest.approx(np.exp(log_fp), abs=1e-9)


class TestFValue:
    def test_zero_maps_to_zero(self):
        assert f_value(random_sample(0.3, 1), 0.0) == 0.0

    def test_single_atom_matches_extremal(self):
        rng = np.random.default_rng(24)
        z = random_disc_points(rng, 25)
        for lam in [0.0, np.pi / 4, -1.0]:
            s = single_atom(lam)
            vals = f_values(s, z, 1e-12)
            np.testing.assert_allclose(vals, f_lambda(Angle(lam), z), atol=1e-10)

    def test_tolerance_self_consistency(self):
        s = random_sample(0.7, seed=8, n_atoms=4)
        rng = np.random.default_rng(25)
        for z in random_disc_points(rng, 10):
            coarse = f_value(s, z, 1e-8)
            fine = f_value(s, z, 1e-9)
            assert abs(coarse - fine) < 10 * 1e-8

    def test_refinement_limit_raises(self, monkeypatch):
        monkeypatch.setattr(samples_mod, "_MAX_DEPTH", 1)
        s = single_atom(0.0)
        with pytest.raises(AccuracyError) as info:
            f_value(s, 0.995, 1e-13)
        assert info.value.estimate is not None
        assert info.value.error > 1e-13

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            f_value(single_atom(0.1), 0.3, 0.0)


class TestQOfF:
    def test_value_at_zero(self):
        assert q_of_f(random_sample(0.4, 2), 0.0) == 1.0

    def test_single_atom_collapse(self):
        rng = np.random.default_rng(26)
        z = random_disc_points(rng, 30)
        for lam in [0.0, np.pi / 4, -0.9]:
            s = single_atom(lam)
            np.testing.assert_allclose(q_values(s, z), q_lambda(Angle(lam), z), atol=1e-10)

    def test_series_region(self):
        s = random_sample(0.5, seed=4, n_atoms=3)
        tiny = 5e-5 * np.exp(1.3j)
        small = 2e-4 * np.exp(1.3j)
        assert abs(q_of_f(s, tiny) - 1.0) < 1e-3
        assert abs(q_of_f(s, small) - q_of_f(s, tiny)) < 1e-3

    def test_untilted_starlikeness_inside(self):
        # untilted samples keep positive real part well inside the disc
        s = random_sample(0.0, seed=6, n_atoms=3)
        z = 0.7 * np.exp(1j * np.pi / 3)
        assert q_of_f(s, z).real > 0


class TestPOfF:
    def test_single_atom_is_halfplane_map(self):
        rng = np.random.default_rng(27)
        z = random_disc_points(rng, 30)
        for lam in [0.0, np.pi / 4, 1.2]:
            s = single_atom(lam)
            np.testing.assert_allclose(p_of_f(s, z), p_lambda(Angle(lam), z), atol=1e-12)

    def test_value_at_zero(self):
        assert p_of_f(random_sample(-0.8, 3), 0.0) == 1.0

    def test_class_membership(self):
        rng = np.random.default_rng(28)
        z = random_disc_points(rng, 200, r_max=0.95)
        for lam in [0.0, np.pi / 4, -np.pi / 3]:
            for seed in range(5):
                s = random_sample(lam, seed, n_atoms=int(1 + seed % 4))
                tilted = (np.exp(-1j * lam) * p_of_f(s, z)).real
                assert np.all(tilted > 0)


class TestIdentityChain:
    def test_q_plus_log_derivative_equals_p(self):
        # q + z q'/q = p for sampled members, q' by central differences on the
        # quadrature-backed q
        h = 1e-5
        s = random_sample(np.pi / 6, seed=12, n_atoms=3)
        rng = np.random.default_rng(29)
        for z in random_disc_points(rng, 8, r_min=0.2, r_max=0.85):
            q0 = q_of_f(s, z)
            dq = (q_of_f(s, z + h) - q_of_f(s, z - h)) / (2 * h)
            assert abs(q0 + z * dq / q0 - p_of_f(s, z)) < 1e-5
