import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tfdist import (ChirpParams, GaussianParams, Grid, InvalidInputError, InvalidParamsError,
                    Signal, bandlimited_bins, bandlimited_spectrum, gen_bandlimited, gen_chirp,
                    gen_gaussian, gen_tone)


class TestGrid:
    def test_centred_has_zero_at_middle(self):
        g = Grid.centered(16, 0.5)
        assert g.times[8] == 0.0 and g.t0 == -4.0

    @pytest.mark.parametrize("n", [0, 1, 7, -2])
    def test_rejects_bad_length(self, n):
        with pytest.raises(InvalidParamsError):
            Grid(0.0, 1.0, n)

    @pytest.mark.parametrize("dt", [0.0, -1.0, np.inf, np.nan])
    def test_rejects_bad_spacing(self, dt):
        with pytest.raises(InvalidParamsError):
            Grid(0.0, dt, 8)

    def test_index_of_clips(self):
        g = Grid.centered(8, 1.0)
        assert g.index_of(0.2) == 4 and g.index_of(100) == 7 and g.index_of(-100) == 0


class TestSignal:
    def test_is_immutable(self):
        f = Signal(Grid.centered(4, 1.0), [1, 2, 3, 4])
        with pytest.raises(AttributeError):
            f.samples = np.zeros(4)
        with pytest.raises(ValueError):
            f.samples[0] = 5

    def test_copy_on_construction(self):
        src = np.ones(4, dtype=complex)
        f = Signal(Grid.centered(4, 1.0), src)
        src[0] = 9
        assert f.samples[0] == 1

    def test_rejects_wrong_length_and_nonfinite(self):
        g = Grid.centered(4, 1.0)
        with pytest.raises(InvalidInputError):
            Signal(g, [1, 2, 3])
        with pytest.raises(InvalidInputError):
            Signal(g, [1, 2, np.nan, 4])

    def test_product_needs_same_grid(self):
        a = Signal(Grid.centered(4, 1.0), np.ones(4))
        b = Signal(Grid.centered(4, 0.5), np.ones(4))
        with pytest.raises(InvalidInputError):
            a * b

    def test_bitwise_equality(self):
        g = Grid.centered(64, 0.1)
        assert gen_chirp(g, 1.5) == gen_chirp(g, 1.5)
        assert gen_chirp(g, 1.5) != gen_chirp(g, 1.5000001)


class TestGenerators:
    def test_tone_values(self):
        g = Grid.centered(32, 0.125)
        f = gen_tone(g, 0.75, 2.0)
        assert np.allclose(f.samples, 2 * np.exp(2j * np.pi * 0.75 * g.times))

    def test_tone_zero_amplitude(self):
        with pytest.raises(InvalidParamsError):
            gen_tone(Grid.centered(8, 1.0), 1.0, 0.0)

    def test_gaussian_requires_positive_real_part(self):
        with pytest.raises(InvalidParamsError):
            GaussianParams(-1.0)
        with pytest.raises(InvalidParamsError):
            GaussianParams(1j)

    @pytest.mark.parametrize("a,b", [(1.0, 0.0), (1 + 1j, 0.5j), (2.0, 0.3 + 0.1j)])
    def test_normalized_gaussian_has_unit_energy(self, a, b):
        f = gen_gaussian(Grid.centered(512, 1.0 / 32), GaussianParams(a, b).normalized())
        assert abs(f.energy() - 1.0) < 1e-12

    def test_chirp_params(self):
        p = ChirpParams.from_eta0(1.5)
        assert p.rate == 3.0 and p.eta0 == 1.5
        with pytest.raises(InvalidParamsError):
            ChirpParams(np.nan)

    def test_chirp_with_envelope(self):
        g = Grid.centered(64, 0.1)
        env = GaussianParams(1.0)
        f = gen_chirp(g, 2.0, env)
        expect = np.exp(1j * np.pi * 2.0 * g.times ** 2) * np.exp(-np.pi * g.times ** 2)
        assert np.allclose(f.samples, expect)


class TestBandlimited:
    def test_spectrum_vanishes_outside_band(self, bl_grid):
        band = (-4.0, 4.0)
        spec = bandlimited_spectrum(bl_grid, band, 3)
        outside = np.ones(bl_grid.n, bool)
        outside[bandlimited_bins(bl_grid, band)] = False
        assert np.all(spec[outside] == 0.0)
        f = gen_bandlimited(bl_grid, band, 3)
        computed = f.spectrum()
        assert np.max(np.abs(computed[outside])) <= 1e-13 * np.max(np.abs(computed))

    def test_unit_energy_and_determinism(self, bl_grid):
        f = gen_bandlimited(bl_grid, (-4, 4), 5)
        assert abs(f.energy() - 1) < 1e-12
        assert f == gen_bandlimited(bl_grid, (-4, 4), 5)
        assert f != gen_bandlimited(bl_grid, (-4, 4), 6)

    def test_excludes_nyquist_bin(self):
        g = Grid.centered(16, 0.5)
        idx = bandlimited_bins(g, (-1.0, 0.0))
        assert 0 not in idx

    @pytest.mark.parametrize("band", [(1.0, 1.0), (2.0, 1.0), (-20.0, 0.0), (-10.0, 10.0)])
    def test_rejects_bad_bands(self, bl_grid, band):
        with pytest.raises(InvalidParamsError):
            bandlimited_bins(bl_grid, band)

    @given(lo=st.floats(-7.9, 7.0), width=st.floats(0.2, 8.0), seed=st.integers(0, 2 ** 31))
    def test_any_valid_band_is_band_limited(self, lo, width, seed):
        g = Grid.centered(128, 1.0 / 16)
        hi = min(lo + width, 8.0)
        spec = bandlimited_spectrum(g, (lo, hi), seed)
        xi = g.freqs
        assert np.all(spec[(xi < lo - 1e-9) | (xi > hi + 1e-9)] == 0)
