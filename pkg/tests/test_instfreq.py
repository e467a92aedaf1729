import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfdist import (GaussianParams, Grid, GridMismatchError, IFTrack, InvalidParamsError, Signal,
                    compare_if, dynamic_range, gen_bandlimited, gen_chirp, gen_gaussian, gen_tone,
                    if_moment, if_phase_gradient)
from tfdist.transforms import modulate_translate

# bin spacing 0.1 Hz, so 0.3 Hz is periodic on the record
TONE_GRID = Grid.centered(512, 1 / 51.2)


class TestTrack:
    def test_invalid_entries_are_nan(self):
        tr = IFTrack(np.arange(3.0), [1.0, 2.0, 3.0], [True, False, True], 0.1)
        assert np.isnan(tr.values[1]) and tr.n_valid == 2

    def test_length_mismatch(self):
        with pytest.raises(InvalidParamsError):
            IFTrack(np.arange(3.0), [1.0, 2.0], [True, True], 0.1)

    def test_nonfinite_valid_value(self):
        with pytest.raises(InvalidParamsError):
            IFTrack(np.arange(2.0), [np.inf, 0.0], [True, True], 0.1)


class TestPhaseGradient:
    def test_tone(self):
        tr = if_phase_gradient(gen_tone(TONE_GRID, 0.3))
        assert tr.valid.all()
        assert np.max(np.abs(tr.values - 0.3)) <= 1e-9

    def test_chirp_with_wide_envelope(self):
        # the record must hold the envelope and the IF must stay well below Nyquist
        g = Grid.centered(2048, 1 / 64)
        tr = if_phase_gradient(gen_chirp(g, 2.0, GaussianParams(0.05)))
        v = tr.valid
        assert np.max(np.abs(tr.values[v] - 2.0 * g.times[v])) <= 1e-8

    def test_gaussian_with_complex_a(self):
        g = Grid.centered(512, 1 / 32)
        tr = if_phase_gradient(gen_gaussian(g, GaussianParams(1 + 1j)))
        v = tr.valid
        assert np.max(np.abs(tr.values[v] + g.times[v])) <= 1e-9

    def test_central_fallback_is_close(self):
        tr = if_phase_gradient(gen_tone(TONE_GRID, 0.3), method="central")
        assert tr.estimator == "phase_gradient:central"
        assert np.max(np.abs(tr.values - 0.3)) <= 1e-3

    def test_unknown_method(self):
        with pytest.raises(InvalidParamsError):
            if_phase_gradient(gen_tone(TONE_GRID, 0.3), method="hilbert")

    @pytest.mark.parametrize("threshold", [0.0, 1.0, -1e-3])
    def test_threshold_domain(self, threshold):
        with pytest.raises(InvalidParamsError):
            if_phase_gradient(gen_tone(TONE_GRID, 0.3), threshold)

    def test_chirp_additivity(self):
        g = Grid.centered(512, 1 / 32)
        h = gen_gaussian(g, GaussianParams(0.5 + 0.25j, 0.2j))
        for rate in (0.5, 1.0, -2.0):
            a = if_phase_gradient(gen_chirp(g, rate) * h)
            b = if_phase_gradient(h)
            both = a.valid & b.valid
            assert np.max(np.abs(a.values[both] - b.values[both] - rate * g.times[both])) <= 1e-9


class TestMoment:
    def test_tone(self):
        tr = if_moment(gen_tone(TONE_GRID, 0.3), boundary="periodized")
        assert np.max(np.abs(tr.values - 0.3)) <= 1e-9

    def test_zero_signal_is_all_invalid(self):
        z = Signal(Grid.centered(32, 0.1), np.zeros(32))
        for tr in (if_moment(z), if_phase_gradient(z)):
            assert not tr.valid.any()
        assert compare_if(if_moment(z), if_phase_gradient(z))["n_compared"] == 0

    def test_modulation_shift(self):
        g = Grid.centered(256, 1 / 32)
        f = gen_bandlimited(g, (-2, 2), 9)
        base = if_moment(f, boundary="periodized")
        for q in (1, 5, -7):
            mod = if_moment(modulate_translate(f, 0, q), boundary="periodized")
            assert np.array_equal(mod.valid, base.valid)
            step = q / (g.n * g.dt)
            assert np.max(np.abs(mod.values[base.valid] - base.values[base.valid] - step)) <= 1e-9

    def test_chirp_times_bandlimited_shear_consistency(self):
        # the periodized chirp jumps at the record edge, so only interior samples are compared
        g = Grid.centered(512, 1 / 16)
        for seed in range(3):
            h = gen_bandlimited(g, (-2, 2), seed)
            rate = 0.1
            a = if_moment(gen_chirp(g, rate) * h, boundary="periodized")
            b = if_moment(h, boundary="periodized")
            keep = a.valid & b.valid & (np.abs(g.times) <= 12)
            d = a.values[keep] - b.values[keep] - rate * g.times[keep]
            assert np.max(np.abs(d)) <= 0.02 * dynamic_range(a)

    @given(seed=st.integers(0, 10_000), lo=st.floats(1e-8, 0.5), hi=st.floats(1e-8, 0.5))
    def test_threshold_monotonicity(self, seed, lo, hi):
        lo, hi = min(lo, hi), max(lo, hi)
        g = Grid.centered(64, 1 / 8)
        f = gen_bandlimited(g, (-2, 2), seed)
        for est in (if_moment, if_phase_gradient):
            assert not np.any(est(f, hi).valid & ~est(f, lo).valid)


class TestAgreement:
    @pytest.mark.parametrize("a,b", [(1 + 1j, 0.5 + 0.5j), (2 - 0.5j, 0.25j), (0.5 + 2j, 0.5)])
    def test_gaussian_envelope(self, a, b):
        f = gen_gaussian(Grid.centered(512, 1 / 32), GaussianParams(a, b))
        p, m = if_phase_gradient(f), if_moment(f)
        assert compare_if(p, m)["max_abs_err"] <= 1e-3 * dynamic_range(p)

    @pytest.mark.parametrize("seed", range(3))
    def test_bandlimited(self, seed):
        f = gen_bandlimited(Grid.centered(512, 1 / 32), (-2, 2), seed)
        p, m = if_phase_gradient(f), if_moment(f, boundary="periodized")
        assert compare_if(p, m)["max_abs_err"] <= 1e-3 * dynamic_range(p)

    @pytest.mark.parametrize("seed", range(3))
    def test_chirp_times_bandlimited(self, seed):
        g = Grid.centered(512, 1 / 16)
        f = gen_chirp(g, 0.1) * gen_bandlimited(g, (-2, 2), seed)
        p, m = if_phase_gradient(f), if_moment(f, boundary="periodized")
        assert compare_if(p, m)["max_abs_err"] <= 1e-3 * dynamic_range(p)

    def test_tone(self):
        f = gen_tone(TONE_GRID, 0.3)
        res = compare_if(if_phase_gradient(f), if_moment(f, boundary="periodized"))
        assert res["max_abs_err"] <= 1e-8 and res["n_compared"] == 512


class TestCompare:
    def test_identical(self):
        tr = if_phase_gradient(gen_gaussian(Grid.centered(128, 1 / 16), GaussianParams(1 + 1j)))
        assert compare_if(tr, tr) == {"max_abs_err": 0.0, "rms_err": 0.0, "n_compared": tr.n_valid}

    def test_axis_mismatch(self):
        a = IFTrack(np.arange(3.0), np.zeros(3), np.ones(3, bool), 0.1)
        b = IFTrack(np.arange(3.0) + 1, np.zeros(3), np.ones(3, bool), 0.1)
        with pytest.raises(GridMismatchError):
            compare_if(a, b)

    def test_only_joint_samples_count(self):
        t = np.arange(4.0)
        a = IFTrack(t, [0, 1, 2, 3], [True, True, False, True], 0.1)
        b = IFTrack(t, [0, 3, 0, 3], [True, True, True, False], 0.1)
        res = compare_if(a, b)
        assert res["n_compared"] == 2 and res["max_abs_err"] == 2.0
        assert res["rms_err"] == pytest.approx(np.sqrt(2.0))
