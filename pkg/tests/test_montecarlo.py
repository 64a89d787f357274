import numpy as np
import pytest

from mrcbeam import (BeamKind, BeamWeights, ChannelRealization, Direction,
                     ExperimentConfig, FieldOfView, MultipathComponent,
                     band_average_gain, make_ula, mrc_weights, noise_power,
                     remove_component, run_blockage_experiment,
                     run_effectiveness_sweep, run_snr_sweep, sample_channel,
                     single_direction_weights, strongest_component, to_db,
                     trial_rng)

# Reference 1000-trial simulation marks for half-wavelength line arrays with
# a 180 degree field of view, M = 1..15 (same data set as the theory curves
# in test_theory.py).
REFERENCE_PINEFF_MARKS = {
    8: [0, 0.0945, 0.19, 0.25925, 0.3144, 0.376, 0.427, 0.4745,
        0.499222222222222, 0.5317, 0.557727272727273, 0.586083333333333,
        0.616076923076923, 0.627, 0.656933333333333],
    16: [0, 0.049, 0.0953333333333334, 0.14725, 0.1902, 0.22, 0.267, 0.2915,
         0.322777777777778, 0.3421, 0.376636363636364, 0.398916666666667,
         0.426692307692308, 0.453, 0.467066666666667],
    32: [0, 0.0255, 0.0526666666666666, 0.0765, 0.109, 0.125166666666667,
         0.139857142857143, 0.165, 0.186, 0.2073, 0.225272727272727,
         0.243583333333333, 0.257846153846154, 0.281357142857143,
         0.297333333333333],
}

FOV180 = FieldOfView.from_degrees(180)


def _component(alpha, theta=0.0, delay=0.0):
    return MultipathComponent(alpha, Direction.from_broadside_angle(theta), delay)


class TestConfig:
    def test_defaults(self):
        cfg = ExperimentConfig(n_elements=8, m_values=(1, 2))
        assert cfg.spacing_wavelengths == 0.5
        assert cfg.fov_deg == 180.0
        assert cfg.trials == 1000
        assert cfg.delay_max_ns == 100.0
        assert cfg.bandwidth_hz == 1e9
        assert cfg.freq_points == 1024
        assert cfg.sigma0 == 1.0

    @pytest.mark.parametrize("kwargs", [
        dict(n_elements=0, m_values=(1,)),
        dict(n_elements=8, m_values=()),
        dict(n_elements=8, m_values=(0,)),
        dict(n_elements=8, m_values=(2,), trials=0),
        dict(n_elements=8, m_values=(2,), freq_points=1),
        dict(n_elements=8, m_values=(2,), bandwidth_hz=0.0),
        dict(n_elements=8, m_values=(2,), workers=0),
    ])
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            ExperimentConfig(**kwargs)


class TestTrialRng:
    def test_same_index_reproduces(self):
        a = trial_rng(123, 7).uniform(size=100)
        b = trial_rng(123, 7).uniform(size=100)
        np.testing.assert_array_equal(a, b)

    def test_distinct_indices_differ(self):
        a = trial_rng(123, 7).uniform(size=10_000)
        b = trial_rng(123, 8).uniform(size=10_000)
        assert np.any(a != b)

    def test_tuple_indices(self):
        a = trial_rng(1, (4, 2)).uniform(size=50)
        b = trial_rng(1, (4, 2)).uniform(size=50)
        c = trial_rng(1, (2, 4)).uniform(size=50)
        np.testing.assert_array_equal(a, b)
        assert np.any(a != c)

    def test_negative_seed_accepted(self):
        trial_rng(-5, 0).uniform(size=4)


class TestBandAverageGain:
    def test_single_path_ignores_bandwidth(self):
        arr = make_ula(4, 0.5)
        ch = ChannelRealization((_component(1.3 - 0.2j, 0.4, 66e-9),))
        w = mrc_weights(ch, arr)
        from mrcbeam import combined_response
        center = abs(combined_response(w, ch, arr, 0.0)) ** 2
        for bw in (1e6, 1e9, 20e9):
            got = band_average_gain(w, ch, arr, bw, 512)
            assert got == pytest.approx(center, rel=1e-12)

    def test_zero_bandwidth_is_center_power(self):
        arr = make_ula(4, 0.5)
        ch = sample_channel(5, FOV180, 100e-9, np.random.default_rng(0))
        w = mrc_weights(ch, arr)
        from mrcbeam import combined_response
        center = abs(combined_response(w, ch, arr, 0.0)) ** 2
        assert band_average_gain(w, ch, arr, 0.0, 16) == pytest.approx(center, rel=1e-12)

    def test_two_path_closed_form_oracle(self):
        # scalar expansion: |a1|^2 + |a2|^2 + 2 Re(a1 conj(a2) e^{-j2pi f (t1-t2)})
        a1, a2 = 0.9 + 0.4j, -0.3 + 1.2j
        t1, t2 = 12e-9, 81e-9
        arr = make_ula(1, 0.5)
        ch = ChannelRealization((_component(a1, 0.0, t1), _component(a2, 0.0, t2)))
        w = BeamWeights(np.array([1.0 + 0j]), BeamKind.SINGLE_DIRECTION)
        bw, points = 1e9, 257
        oracle = 0.0
        for f in np.linspace(-bw / 2, bw / 2, points):
            oracle += (abs(a1) ** 2 + abs(a2) ** 2
                       + 2 * (a1 * np.conj(a2) * np.exp(-2j * np.pi * f * (t1 - t2))).real)
        oracle /= points
        assert band_average_gain(w, ch, arr, bw, points) == pytest.approx(oracle, rel=1e-12)

    def test_grid_refinement_is_converged(self):
        # doubling the grid density moves the average by well under 0.1%
        arr = make_ula(8, 0.5)
        ch = sample_channel(6, FOV180, 100e-9, np.random.default_rng(1))
        w = mrc_weights(ch, arr)
        coarse = band_average_gain(w, ch, arr, 1e9, 1024)
        fine = band_average_gain(w, ch, arr, 1e9, 2048)
        assert abs(fine - coarse) / coarse < 1e-3


class TestEffectivenessSweep:
    def test_single_path_degenerate(self):
        cfg = ExperimentConfig(n_elements=8, m_values=(1,), trials=50, seed=0)
        res = run_effectiveness_sweep(cfg)
        assert res.columns["p_ineff_empirical"] == (0.0,)
        assert res.columns["count_mean"] == (1.0,)
        assert res.columns["p_ineff_theory"] == (0.0,)
        assert res.columns["count_theory"] == (1.0,)

    @pytest.mark.parametrize("n", [8, 16, 32])
    def test_tracks_reference_marks_across_m(self, n):
        cfg = ExperimentConfig(n_elements=n, m_values=tuple(range(1, 16)),
                               trials=1000, seed=0)
        res = run_effectiveness_sweep(cfg)
        for got, mark in zip(res.columns["p_ineff_empirical"], REFERENCE_PINEFF_MARKS[n]):
            assert abs(got - mark) <= 0.05

    def test_median_and_mean_both_reported(self):
        cfg = ExperimentConfig(n_elements=8, m_values=(6,), trials=200, seed=3)
        res = run_effectiveness_sweep(cfg)
        assert set(res.columns) >= {"count_mean", "count_median", "count_stderr",
                                    "p_ineff_theory", "p_ineff_empirical",
                                    "p_ineff_stderr", "count_theory"}
        assert res.columns["count_median"][0] == float(int(res.columns["count_median"][0] * 2)) / 2


class TestSnrSweep:
    def test_single_path_matches_array_gain(self):
        # narrowband regime: both beams deliver N, within Monte Carlo noise
        cfg = ExperimentConfig(n_elements=8, m_values=(1,), trials=3000, seed=1)
        res = run_snr_sweep(cfg)
        expected = to_db(8)
        assert res.columns["mrc_sim_db"][0] == pytest.approx(expected, abs=0.2)
        assert res.columns["single_sim_db"][0] == pytest.approx(expected, abs=0.2)
        # with one path the two beams are the same beam up to scale
        assert res.columns["mrc_sim_db"][0] == pytest.approx(
            res.columns["single_sim_db"][0], abs=1e-9)

    def test_reference_mark_single_beam(self):
        cfg = ExperimentConfig(n_elements=8, m_values=(20,), trials=1000, seed=0)
        res = run_snr_sweep(cfg)
        assert res.columns["single_sim_db"][0] == pytest.approx(17.03, abs=0.5)

    def test_theory_columns_match_direct_formulas(self):
        from mrcbeam import estimate_array_parameter, snr_mrc_theory, snr_single_theory
        from mrcbeam.montecarlo import ARRAY_PARAM_SAMPLES
        cfg = ExperimentConfig(n_elements=4, m_values=(3, 5), trials=10, seed=9)
        res = run_snr_sweep(cfg)
        s = estimate_array_parameter(cfg.array(), cfg.fov(), ARRAY_PARAM_SAMPLES,
                                     trial_rng(cfg.seed, ())).s
        for i, m in enumerate(cfg.m_values):
            assert res.columns["mrc_theory_db"][i] == pytest.approx(
                to_db(snr_mrc_theory(4, m, s, 1.0)), abs=1e-12)
            assert res.columns["single_theory_db"][i] == pytest.approx(
                to_db(snr_single_theory(4, m, s, 1.0)), abs=1e-12)


class TestBlockage:
    def test_rejects_single_path_and_multi_m(self):
        with pytest.raises(ValueError):
            run_blockage_experiment(ExperimentConfig(n_elements=8, m_values=(1,), trials=5))
        with pytest.raises(ValueError):
            run_blockage_experiment(ExperimentConfig(n_elements=8, m_values=(2, 3), trials=5))

    def test_sample_lists_sorted_and_sized(self):
        cfg = ExperimentConfig(n_elements=8, m_values=(4,), trials=64, seed=5,
                               freq_points=128)
        res = run_blockage_experiment(cfg)
        for kind in ("mrc", "single"):
            vals = res.samples[kind]
            assert len(vals) == 64
            assert all(b >= a for a, b in zip(vals, vals[1:]))
            assert all(np.isfinite(vals))

    def test_growing_trials_extends_sample_multiset(self):
        # per-trial streams do not depend on the trial count
        small = run_blockage_experiment(
            ExperimentConfig(n_elements=4, m_values=(3,), trials=30, seed=6,
                             freq_points=64))
        large = run_blockage_experiment(
            ExperimentConfig(n_elements=4, m_values=(3,), trials=60, seed=6,
                             freq_points=64))
        remaining = list(large.samples["mrc"])
        for v in small.samples["mrc"]:
            remaining.remove(v)  # raises ValueError if the first half changed
        assert len(remaining) == 30

    def test_blocking_strongest_leaves_sidelobe_energy(self):
        # two paths, beam pointed at the stronger one, stronger one removed:
        # what is left arrives only through a sidelobe of the pointed beam
        arr = make_ula(8, 0.5)
        ch = ChannelRealization((_component(2.0, 0.25, 10e-9),
                                 _component(0.8, -0.85, 60e-9)))
        k = strongest_component(ch)
        assert k == 0
        w = single_direction_weights(arr, ch.components[k].direction)
        pre = band_average_gain(w, ch, arr, 1e9, 512) / noise_power(w, 1.0)
        post = band_average_gain(w, remove_component(ch, k), arr, 1e9, 512) / noise_power(w, 1.0)
        sidelobe = abs(np.conj(ch.components[1].alpha)
                       * _pair_gain(arr, ch, 1, 0)) ** 2
        assert post == pytest.approx(sidelobe * arr.n_elements, rel=1e-9)
        assert post < pre

    def test_blocking_zero_amplitude_component_changes_nothing(self):
        arr = make_ula(8, 0.5)
        ch = ChannelRealization((_component(1.1, 0.3, 20e-9),
                                 _component(0.0, -0.5, 50e-9),
                                 _component(0.7 - 0.2j, 0.9, 80e-9)))
        for w in (mrc_weights(ch, arr),
                  single_direction_weights(arr, ch.components[0].direction)):
            pre = band_average_gain(w, ch, arr, 1e9, 256) / noise_power(w, 1.0)
            post = band_average_gain(w, remove_component(ch, 1), arr, 1e9, 256) / noise_power(w, 1.0)
            assert post == pytest.approx(pre, rel=1e-12)


def _pair_gain(arr, ch, m, h):
    from mrcbeam import component_array_factor
    return component_array_factor(arr, ch.components[m].direction,
                                  ch.components[h].direction)


class TestDeterminism:
    def test_rerun_is_identical(self):
        cfg = ExperimentConfig(n_elements=4, m_values=(2, 4), trials=40, seed=11,
                               freq_points=64)
        a = run_snr_sweep(cfg)
        b = run_snr_sweep(cfg)
        assert a.columns == b.columns

    def test_worker_count_does_not_change_results(self):
        base = ExperimentConfig(n_elements=4, m_values=(2, 3), trials=600, seed=12,
                                freq_points=64)
        parallel = ExperimentConfig(n_elements=4, m_values=(2, 3), trials=600, seed=12,
                                    freq_points=64, workers=4)
        a = run_effectiveness_sweep(base)
        b = run_effectiveness_sweep(parallel)
        assert a.columns == b.columns
        c = run_blockage_experiment(
            ExperimentConfig(n_elements=4, m_values=(4,), trials=600, seed=12,
                             freq_points=64))
        d = run_blockage_experiment(
            ExperimentConfig(n_elements=4, m_values=(4,), trials=600, seed=12,
                             freq_points=64, workers=3))
        assert c.samples == d.samples
