"""Instantaneous-frequency estimators.

Two independent routes to ``(2 pi)^-1 d/dt arg f``:

* :func:`if_phase_gradient` works on the samples directly, using
  ``(u v' - v u') / (2 pi (u^2 + v^2))`` with ``f = u + i v``, so no phase
  unwrapping is ever needed.
* :func:`if_moment` takes the normalised first frequency moment of each time
  slice of the Wigner matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, InvalidParamsError
from .fourier import dft
from .signals import Signal
from .transforms import TimeFrequencyMatrix, freq_moments, wigner

DEFAULT_THRESHOLD = 1e-6


@dataclass
class IFTrack:
    """Per-sample IF estimate (cycles per unit time); NaN where ``valid`` is False."""

    time_axis: np.ndarray
    values: np.ndarray
    valid: np.ndarray
    threshold: float
    estimator: str = ""

    def __post_init__(self):
        self.time_axis = np.asarray(self.time_axis, dtype=np.float64)
        self.values = np.asarray(self.values, dtype=np.float64)
        self.valid = np.asarray(self.valid, dtype=bool)
        if not (self.time_axis.shape == self.values.shape == self.valid.shape):
            raise InvalidParamsError("time_axis, values and valid must have equal length")
        if not np.all(np.isfinite(self.values[self.valid])):
            raise InvalidParamsError("values must be finite where valid")
        self.values = np.where(self.valid, self.values, np.nan)

    @property
    def n_valid(self) -> int:
        return int(np.count_nonzero(self.valid))


def _check_threshold(threshold):
    if not 0 < threshold < 1:
        raise InvalidParamsError(f"threshold must lie in (0, 1), got {threshold}")


def _relative_mask(weights, threshold):
    top = np.max(weights)
    if not top > 0:
        return np.zeros(weights.shape, dtype=bool)
    return weights >= threshold * top


def spectral_derivative(f: Signal) -> np.ndarray:
    """``f'`` at the samples, via multiplication by ``2 pi i xi`` in frequency.

    The Nyquist bin is dropped because its derivative is not real-consistent.
    """
    g = f.grid
    spec = f.spectrum() * (2j * np.pi * g.freqs)
    spec[0] = 0.0
    return dft(spec, dt=g.dt, t0=g.t0, direction="inverse")


def central_derivative(f: Signal) -> np.ndarray:
    """Second-order central differences; one-sided at the record ends."""
    return np.gradient(f.samples, f.grid.dt, edge_order=2)


def if_phase_gradient(f: Signal, threshold: float = DEFAULT_THRESHOLD,
                      method: str = "spectral") -> IFTrack:
    """IF from the phase derivative of the samples.

    ``method="spectral"`` is exact for band-limited input; ``"central"`` is a
    finite-difference fallback for records with hard edges.
    """
    _check_threshold(threshold)
    if method == "spectral":
        d = spectral_derivative(f)
    elif method == "central":
        d = central_derivative(f)
    else:
        raise InvalidParamsError(f"method must be 'spectral' or 'central', got {method!r}")
    s = f.samples
    power = np.abs(s) ** 2
    valid = _relative_mask(power, threshold)
    values = np.full(power.shape, np.nan)
    u, v = s.real[valid], s.imag[valid]
    du, dv = d.real[valid], d.imag[valid]
    values[valid] = (u * dv - v * du) / (2.0 * np.pi * power[valid])
    return IFTrack(f.grid.times, values, valid, threshold, f"phase_gradient:{method}")


def if_moment(f: Signal, threshold: float = DEFAULT_THRESHOLD, boundary: str = "zero") -> IFTrack:
    """IF as the first frequency moment of each Wigner time slice.

    Rows whose zeroth moment (the time marginal) falls below
    ``threshold * max`` are marked invalid. In ``periodized`` mode the estimate
    coincides with the spectral phase gradient for any record with an empty
    Nyquist bin.
    """
    _check_threshold(threshold)
    return if_moment_from_wigner(wigner(f, boundary=boundary), threshold)


def if_moment_from_wigner(W: TimeFrequencyMatrix, threshold: float = DEFAULT_THRESHOLD) -> IFTrack:
    """Moment estimate from an already computed real Wigner matrix."""
    _check_threshold(threshold)
    num, den = freq_moments(W)
    valid = _relative_mask(den, threshold)
    values = np.full(den.shape, np.nan)
    values[valid] = num[valid] / den[valid]
    return IFTrack(W.time_axis, values, valid, threshold,
                   f"moment:{W.meta.get('boundary', 'unknown')}")


def compare_if(a: IFTrack, b: IFTrack) -> dict:
    """Error statistics over samples valid in both tracks."""
    if a.time_axis.shape != b.time_axis.shape or not np.array_equal(a.time_axis, b.time_axis):
        raise GridMismatchError("IF tracks have different time axes")
    both = a.valid & b.valid
    n = int(np.count_nonzero(both))
    if n == 0:
        return {"max_abs_err": 0.0, "rms_err": 0.0, "n_compared": 0}
    diff = a.values[both] - b.values[both]
    return {"max_abs_err": float(np.max(np.abs(diff))),
            "rms_err": float(np.sqrt(np.mean(diff ** 2))),
            "n_compared": n}


def dynamic_range(*tracks: IFTrack) -> float:
    """Spread ``max - min`` of the valid IF values over the given tracks."""
    vals = np.concatenate([t.values[t.valid] for t in tracks])
    if vals.size == 0:
        return 0.0
    return float(np.max(vals) - np.min(vals))
