"""Discrete Wigner distributions, STFTs, instantaneous frequency and cone-decay diagnostics."""

from .cone import (ConeDecayReport, ConeSpec, DecayFit, ShellProfile, SlopeRecord,
                   classify_vcon, cone_sup_profile, fit_decay)
from .errors import (DegenerateProfileError, FormatError, GridMismatchError, InvalidInputError,
                     InvalidParamsError, RealnessError, TFError, UnsupportedError)
from .fourier import dft, freq_axis
from .instfreq import (IFTrack, compare_if, dynamic_range, if_moment, if_moment_from_wigner,
                       if_phase_gradient)
from .signals import (ChirpParams, GaussianParams, Grid, Signal, bandlimited_bins,
                      bandlimited_spectrum, gen_bandlimited, gen_chirp, gen_gaussian, gen_tone)
from .transforms import (TimeFrequencyMatrix, Window, autocorrelation, cross_autocorrelation,
                         cross_wigner, custom_window, first_freq_moment, freq_moments,
                         gaussian_window, lag_dft, marginal_freq, marginal_time,
                         modulate_translate, roll_wigner, shear, slice_time, stft, total_energy,
                         wigner)
from .verification import CHECK_NAMES, VerificationReport, run_verification

__version__ = "0.1.0"
