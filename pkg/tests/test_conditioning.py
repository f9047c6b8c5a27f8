"""Gaussian and gravitational smoothing behavior."""

import numpy as np
import pytest

from choquet_edge.conditioning import (SMOOTHING_PRESETS, GaussianConfig,
                                       GravitationalConfig, as_gray_image,
                                       gaussian_kernel, gaussian_smooth,
                                       gravitational_smooth, smooth)
from oracles import gravitational_oracle


class TestGrayImageValidation:
    def test_accepts_unit_range(self):
        img = as_gray_image([[0.0, 0.5], [1.0, 0.25]])
        assert img.dtype == float and img.shape == (2, 2)

    @pytest.mark.parametrize("bad", [
        [[0.0, 1.5]], [[-0.1, 0.2]], [[np.nan, 0.0]], [0.1, 0.2], [[]],
    ])
    def test_rejects_bad_input(self, bad):
        with pytest.raises(ValueError):
            as_gray_image(bad)


class TestGaussianSmoothing:
    def test_kernel_normalized_and_sized(self):
        for sigma in (0.5, 1.0, 2.0, 3.3):
            k = gaussian_kernel(sigma)
            half = int(np.ceil(3 * sigma))
            assert k.shape == (2 * half + 1, 2 * half + 1)
            assert k.sum() == pytest.approx(1.0, abs=1e-14)

    def test_constant_preserved(self):
        img = np.full((9, 12), 0.63)
        out = gaussian_smooth(img, 1.7)
        np.testing.assert_allclose(out, img, atol=1e-12)

    def test_impulse_reproduces_kernel(self):
        img = np.zeros((21, 21))
        img[10, 10] = 1.0
        out = gaussian_smooth(img, 1.0)
        k = gaussian_kernel(1.0)
        np.testing.assert_allclose(out[7:14, 7:14], k, atol=1e-12)
        outside = out.copy()
        outside[7:14, 7:14] = 0.0
        assert outside.max() == 0.0

    def test_linearity(self):
        rng = np.random.default_rng(0)
        i1 = rng.uniform(size=(12, 14))
        i2 = rng.uniform(size=(12, 14))
        a, b = 0.3, 0.6
        lhs = gaussian_smooth(a * i1 + b * i2, 1.5)
        rhs = a * gaussian_smooth(i1, 1.5) + b * gaussian_smooth(i2, 1.5)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)

    def test_shift_equivariance_of_impulse(self):
        img1 = np.zeros((25, 25)); img1[12, 12] = 1.0
        img2 = np.zeros((25, 25)); img2[12, 15] = 1.0
        out1 = gaussian_smooth(img1, 1.0)
        out2 = gaussian_smooth(img2, 1.0)
        np.testing.assert_allclose(out1[:, 4:20], out2[:, 7:23], atol=1e-14)

    def test_step_profile_sigmoid_with_midpoint(self):
        img = np.zeros((9, 40))
        img[:, 20:] = 1.0
        out = gaussian_smooth(img, 1.0)
        profile = out[4]
        assert np.all(np.diff(profile) >= -1e-15)
        # Symmetry about the step: the two adjacent columns average to 1/2.
        assert profile[19] + profile[20] == pytest.approx(1.0, abs=1e-12)

    def test_range_and_shape_preserved(self):
        rng = np.random.default_rng(5)
        img = rng.uniform(size=(17, 13))
        out = gaussian_smooth(img, 2.0)
        assert out.shape == img.shape
        assert out.min() >= 0.0 and out.max() <= 1.0

    def test_invalid_sigma(self):
        with pytest.raises(ValueError):
            gaussian_smooth(np.zeros((5, 5)), 0.0)
        with pytest.raises(ValueError):
            GaussianConfig(sigma=-1.0)


class TestGravitationalSmoothing:
    CFG = GravitationalConfig(gravity=0.05, tonal_scale=20.0, iterations=3,
                              window_radius=5)

    def test_constant_is_exact_fixed_point(self):
        img = np.full((10, 10), 0.42)
        out = gravitational_smooth(img, self.CFG)
        np.testing.assert_array_equal(out, img)

    def test_matches_brute_force_bit_for_bit(self):
        rng = np.random.default_rng(12)
        img = rng.uniform(size=(12, 12))
        ours = gravitational_smooth(img, self.CFG)
        reference = gravitational_oracle(img, 0.05, 20.0, 3, 5)
        np.testing.assert_array_equal(ours, reference)

    def test_matches_brute_force_small_window(self):
        rng = np.random.default_rng(13)
        img = rng.uniform(size=(8, 9))
        cfg = GravitationalConfig(gravity=0.1, tonal_scale=10.0, iterations=2,
                                  window_radius=2)
        np.testing.assert_array_equal(gravitational_smooth(img, cfg),
                                      gravitational_oracle(img, 0.1, 10.0, 2, 2))

    def test_ramped_step_contracts_to_plateaus(self):
        # Two plateaus joined by a one-column ramp on each side.
        img = np.tile(np.array([0.2, 0.2, 0.2, 0.35, 0.65, 0.8, 0.8, 0.8]),
                      (8, 1))
        cfg = GravitationalConfig(gravity=0.05, tonal_scale=20.0, iterations=1,
                                  window_radius=5)
        out = gravitational_smooth(img, cfg)
        # Ramp columns move toward their nearer plateau.
        assert np.all(out[:, 3] < img[:, 3])
        assert np.all(out[:, 4] > img[:, 4])
        # Step contrast across the central boundary does not decrease.
        assert np.all(out[:, 4] - out[:, 3] >= img[:, 4] - img[:, 3])

    def test_single_iteration_is_one_force_pass(self):
        rng = np.random.default_rng(2)
        img = rng.uniform(size=(7, 7))
        cfg = GravitationalConfig(gravity=0.05, tonal_scale=20.0, iterations=1,
                                  window_radius=3)
        np.testing.assert_array_equal(gravitational_smooth(img, cfg),
                                      gravitational_oracle(img, 0.05, 20.0, 1, 3))

    def test_transposition_invariance(self):
        rng = np.random.default_rng(4)
        img = rng.uniform(size=(10, 14))
        out = gravitational_smooth(img, self.CFG)
        out_t = gravitational_smooth(img.T, self.CFG).T
        np.testing.assert_allclose(out, out_t, atol=1e-12)

    def test_range_preserved(self):
        rng = np.random.default_rng(9)
        img = rng.uniform(size=(15, 15))
        out = gravitational_smooth(img, self.CFG)
        assert out.min() >= 0.0 and out.max() <= 1.0

    def test_zero_iterations_rejected(self):
        with pytest.raises(ValueError):
            GravitationalConfig(iterations=0)

    @pytest.mark.parametrize("kwargs", [
        {"gravity": 0.0}, {"tonal_scale": -1.0}, {"window_radius": 0},
    ])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(ValueError):
            GravitationalConfig(**kwargs)


class TestPresetsAndDispatch:
    def test_preset_table(self):
        assert SMOOTHING_PRESETS["s1"] == GaussianConfig(sigma=1.0)
        assert SMOOTHING_PRESETS["s2"] == GaussianConfig(sigma=2.0)
        s3 = SMOOTHING_PRESETS["s3"]
        assert (s3.gravity, s3.tonal_scale, s3.iterations) == (0.05, 20.0, 30)
        s4 = SMOOTHING_PRESETS["s4"]
        assert (s4.gravity, s4.tonal_scale, s4.iterations) == (0.05, 70.0, 50)

    def test_dispatch(self):
        img = np.full((6, 6), 0.5)
        np.testing.assert_allclose(smooth(img, GaussianConfig(1.0)), img,
                                   atol=1e-12)
        cfg = GravitationalConfig(iterations=1)
        np.testing.assert_array_equal(smooth(img, cfg), img)
        with pytest.raises(TypeError):
            smooth(img, "s1")
