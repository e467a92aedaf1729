"""Quadratic and linear time-frequency transforms of sampled signals.

Half-sample lags ``f(t +/- tau/2)`` are obtained by 2x spectral (zero-padding)
interpolation, which is exact for signals band-limited to half the Nyquist
range. The Wigner matrix keeps the original ``n`` time points and has ``2n``
frequency bins spanning ``[-1/(2 dt), 1/(2 dt))``.

Two boundary modes are supported:

``zero``
    the record is zero-extended (finite-record signals that decay).
``periodized``
    circular indexing of the doubled record; makes shift covariance exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.fft as sfft

from ._parallel import workers
from .errors import (GridMismatchError, InvalidInputError, RealnessError,
                     UnsupportedError)
from .fourier import _t0_phase, dft, freq_axis
from .signals import Grid, Signal

REALNESS_TOL = 1e-10
BOUNDARY_MODES = ("zero", "periodized")


@dataclass
class TimeFrequencyMatrix:
    """Dense matrix sampled on ``time_axis`` (rows) x ``freq_axis`` (columns)."""

    time_axis: np.ndarray
    freq_axis: np.ndarray
    values: np.ndarray
    value_kind: str = "real"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.time_axis = np.asarray(self.time_axis, dtype=np.float64)
        self.freq_axis = np.asarray(self.freq_axis, dtype=np.float64)
        if self.value_kind not in ("real", "complex"):
            raise InvalidInputError(f"unknown value_kind {self.value_kind!r}")
        dtype = np.float64 if self.value_kind == "real" else np.complex128
        self.values = np.asarray(self.values, dtype=dtype)
        if self.values.shape != (self.time_axis.size, self.freq_axis.size):
            raise InvalidInputError(
                f"values shape {self.values.shape} does not match axes "
                f"({self.time_axis.size}, {self.freq_axis.size})")
        if self.freq_axis.size >= 2:
            d = np.diff(self.freq_axis)
            if np.any(d <= 0) or np.max(np.abs(d - self.dfreq)) > 1e-9 * self.dfreq:
                raise InvalidInputError("freq_axis must be ascending and uniform")
        if not np.all(np.isfinite(self.values)):
            raise InvalidInputError("matrix entries must be finite")

    @property
    def shape(self):
        return self.values.shape

    @property
    def dfreq(self) -> float:
        return float((self.freq_axis[-1] - self.freq_axis[0]) / (self.freq_axis.size - 1))

    @property
    def dtime(self) -> float:
        if self.time_axis.size < 2:
            return float(self.meta.get("dt", 1.0))
        return float((self.time_axis[-1] - self.time_axis[0]) / (self.time_axis.size - 1))


@dataclass
class Window:
    """Analysis window sampled at the signal spacing; ``samples[center]`` sits at offset 0."""

    samples: np.ndarray
    center: int
    kind: str = "custom"
    a: Optional[float] = None

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(self.samples)):
            raise InvalidInputError("window samples must be finite")
        if not np.any(self.samples != 0):
            raise InvalidInputError("window must be nonzero")
        if not 0 <= self.center < self.samples.size:
            raise InvalidInputError("window center outside its support")

    @property
    def offsets(self) -> np.ndarray:
        return np.arange(self.samples.size) - self.center

    def __len__(self):
        return self.samples.size


def gaussian_window(dt: float, a: float = 2.0, max_len: Optional[int] = None,
                    cutoff: float = 1e-20) -> Window:
    """Window ``exp(-pi a x^2)`` truncated where it falls below ``cutoff``."""
    if not a > 0:
        raise InvalidInputError("gaussian window needs a > 0")
    half = int(np.ceil(np.sqrt(-np.log(cutoff) / (np.pi * a)) / dt))
    if max_len is not None:
        half = min(half, (max_len - 1) // 2)
    x = np.arange(-half, half + 1) * dt
    return Window(np.exp(-np.pi * a * x ** 2), center=half, kind="gaussian", a=float(a))


def custom_window(samples, center: Optional[int] = None) -> Window:
    samples = np.asarray(samples)
    return Window(samples, center=samples.size // 2 if center is None else center)


def window_signal(w: Window, grid: Grid) -> Signal:
    """Place a window on ``grid`` with its centre at ``t = 0`` (zero elsewhere)."""
    k0 = (0.0 - grid.t0) / grid.dt
    if abs(k0 - round(k0)) > 1e-9 or not 0 <= round(k0) < grid.n:
        raise UnsupportedError("grid must contain t = 0 as a sample point")
    k0 = int(round(k0))
    out = np.zeros(grid.n, dtype=np.complex128)
    idx = k0 + w.offsets
    keep = (idx >= 0) & (idx < grid.n)
    out[idx[keep]] = w.samples[keep]
    return Signal(grid, out)


# ---------------------------------------------------------------------------
# Wigner machinery


def _check_boundary(boundary):
    if boundary not in BOUNDARY_MODES:
        raise UnsupportedError(f"boundary must be one of {BOUNDARY_MODES}, got {boundary!r}")


def upsample2(samples: np.ndarray) -> np.ndarray:
    """Band-limited 2x interpolation: ``out[2k] == samples[k]``.

    The Nyquist coefficient is split evenly between the two new edge bins.
    """
    x = np.asarray(samples, dtype=np.complex128)
    n = x.size
    if n % 2:
        raise UnsupportedError("upsampling requires even length")
    X = sfft.fft(x)
    X2 = np.zeros(2 * n, dtype=np.complex128)
    h = n // 2
    X2[:h] = X[:h]
    X2[2 * n - h + 1:] = X[h + 1:]
    X2[h] = 0.5 * X[h]
    X2[2 * n - h] = 0.5 * X[h]
    return 2.0 * sfft.ifft(X2)


def _lag_indices(n, rows, boundary):
    m = np.arange(-n, n)
    a = 2 * np.asarray(rows)[:, None] + m[None, :]
    b = 2 * np.asarray(rows)[:, None] - m[None, :]
    if boundary == "periodized":
        return np.mod(a, 2 * n), np.mod(b, 2 * n), None
    valid = (a >= 0) & (a < 2 * n) & (b >= 0) & (b < 2 * n)
    return np.where(valid, a, 0), np.where(valid, b, 0), valid


def _lag_products(f2, g2, rows, boundary):
    n = f2.size // 2
    a, b, valid = _lag_indices(n, rows, boundary)
    r = f2[a] * np.conj(g2[b])
    if valid is not None:
        r[~valid] = 0.0
    return r


def _validate_signal(f):
    if not isinstance(f, Signal):
        raise InvalidInputError("expected a Signal")
    if f.grid.n % 2:
        raise UnsupportedError("Wigner transform requires even n")


def cross_autocorrelation(f: Signal, g: Signal, k: int, boundary: str = "zero") -> np.ndarray:
    """Lag row ``f(t_k + tau/2) conj(g(t_k - tau/2))`` for ``tau = m dt``, ``m = -n .. n-1``."""
    _check_boundary(boundary)
    if f.grid != g.grid:
        raise GridMismatchError("signals must share a grid")
    if not 0 <= k < f.grid.n:
        raise IndexError(f"time index {k} out of range")
    f2 = upsample2(f.samples)
    g2 = f2 if g is f else upsample2(g.samples)
    return _lag_products(f2, g2, np.array([k]), boundary)[0]


def autocorrelation(f: Signal, k: int, boundary: str = "zero") -> np.ndarray:
    """Lag row of the auto-Wigner at time index ``k``; its DFT is the Wigner slice."""
    return cross_autocorrelation(f, f, k, boundary)


def lag_dft(r: np.ndarray, dt: float) -> np.ndarray:
    """Continuous-normalised DFT over lags ``tau_m = m dt``, ``m = -n .. n-1``.

    Frequencies are ``j / (2 n dt)`` for ``j = -n .. n-1``.
    """
    n2 = np.shape(r)[-1]
    return dft(r, dt=dt, t0=-(n2 // 2) * dt, axis=-1)


def wigner_freq_axis(grid: Grid) -> np.ndarray:
    return freq_axis(2 * grid.n, grid.dt)


def _wigner_raw(f, g, boundary):
    _validate_signal(f)
    _validate_signal(g)
    _check_boundary(boundary)
    if f.grid != g.grid:
        raise GridMismatchError("signals must share a grid")
    n = f.grid.n
    f2 = upsample2(f.samples)
    g2 = f2 if g is f else upsample2(g.samples)
    r = _lag_products(f2, g2, np.arange(n), boundary)
    return lag_dft(r, f.grid.dt)


def wigner(f: Signal, boundary: str = "zero") -> TimeFrequencyMatrix:
    """Discrete Wigner distribution ``W_f(t_k, xi_j)`` (real-valued).

    Raises :class:`RealnessError` if the imaginary residue exceeds
    ``1e-10 * max|Re|``, which indicates aliasing or a bug rather than noise.
    """
    raw = _wigner_raw(f, f, boundary)
    peak = np.max(np.abs(raw.real)) if raw.size else 0.0
    resid = np.max(np.abs(raw.imag)) if raw.size else 0.0
    if resid > REALNESS_TOL * peak:
        raise RealnessError(
            f"Wigner imaginary residue {resid:.3e} exceeds {REALNESS_TOL:g} x peak {peak:.3e}")
    return TimeFrequencyMatrix(f.grid.times, wigner_freq_axis(f.grid), raw.real.copy(),
                               "real", {"boundary": boundary, "transform": "wigner"})


def cross_wigner(f: Signal, g: Signal, boundary: str = "zero") -> TimeFrequencyMatrix:
    """Cross-Wigner distribution ``W_{f,g}`` (complex-valued)."""
    raw = _wigner_raw(f, g, boundary)
    return TimeFrequencyMatrix(f.grid.times, wigner_freq_axis(f.grid), raw,
                               "complex", {"boundary": boundary, "transform": "cross_wigner"})


# ---------------------------------------------------------------------------
# STFT


def stft(f: Signal, w: Window, freq_oversample: int = 1, hop: int = 1,
         n_freq: Optional[int] = None) -> TimeFrequencyMatrix:
    """Short-time Fourier transform ``V_w f(t_k, xi_j)``.

    ``V[k, j] = dt * sum_m f[m] conj(w[m - k]) exp(-2 pi i t_m xi_j)`` with ``f``
    zero outside its record. Rows are every ``hop``-th sample; there are
    ``n * freq_oversample`` frequency bins of spacing ``1 / (n freq_oversample dt)``.

    ``n_freq`` overrides the bin count (it must cover the window support);
    useful for long records where only a coarse frequency grid is needed.
    """
    if int(freq_oversample) != freq_oversample or freq_oversample < 1:
        raise InvalidInputError("freq_oversample must be a positive integer")
    if int(hop) != hop or hop < 1:
        raise InvalidInputError("hop must be a positive integer")
    grid = f.grid
    n, dt = grid.n, grid.dt
    nfft = n * int(freq_oversample) if n_freq is None else int(n_freq)
    if len(w) > n:
        raise InvalidInputError(f"window support {len(w)} exceeds signal length {n}")
    if len(w) > nfft:
        raise InvalidInputError(f"n_freq={nfft} is shorter than the window support {len(w)}")
    rows = np.arange(0, n, int(hop))
    off = w.offsets
    idx = rows[:, None] + off[None, :]
    inside = (idx >= 0) & (idx < n)
    seg = np.where(inside, f.samples[np.clip(idx, 0, n - 1)], 0.0) * np.conj(w.samples)[None, :]
    buf = np.zeros((rows.size, nfft), dtype=np.complex128)
    buf[:, np.mod(off, nfft)] = seg
    spec = sfft.fftshift(sfft.fft(buf, axis=1, workers=workers()), axes=1)
    j = np.arange(nfft) - nfft // 2
    # exp(-2 pi i t_k xi_j) with t_k = t0 + k dt; the k part is reduced exactly mod nfft
    turns = np.mod(rows[:, None] * j[None, :], nfft) / nfft
    phase = np.exp(-2j * np.pi * turns)
    xi = j / (nfft * dt)
    t0_phase = _t0_phase(nfft, dt, grid.t0, -1.0)
    if t0_phase is not None:
        phase *= t0_phase[None, :]
    values = dt * spec * phase
    return TimeFrequencyMatrix(grid.times[rows], xi, values, "complex",
                               {"transform": "stft", "freq_oversample": int(freq_oversample),
                                "hop": int(hop), "window_kind": w.kind, "window_a": w.a})


# ---------------------------------------------------------------------------
# Slices, marginals, moments


def _require_real(W):
    if W.value_kind != "real":
        raise InvalidInputError("operation requires a real-valued matrix")


def slice_time(W: TimeFrequencyMatrix, k: int) -> np.ndarray:
    """Row ``k`` of the matrix, i.e. the fixed-time restriction ``W(t_k, .)``."""
    if not 0 <= k < W.values.shape[0]:
        raise IndexError(f"time index {k} out of range [0, {W.values.shape[0]})")
    return W.values[k].copy()


def marginal_freq(W: TimeFrequencyMatrix) -> np.ndarray:
    """Integral over frequency for each time row."""
    _require_real(W)
    return W.values.sum(axis=1) * W.dfreq


def marginal_time(W: TimeFrequencyMatrix) -> np.ndarray:
    """Integral over time for each frequency column."""
    _require_real(W)
    return W.values.sum(axis=0) * W.dtime


def total_energy(W: TimeFrequencyMatrix) -> float:
    _require_real(W)
    return float(W.values.sum() * W.dtime * W.dfreq)


def first_freq_moment(W: TimeFrequencyMatrix, k: int):
    """``(sum xi W dxi, sum W dxi)`` for row ``k``; callers apply their own validity policy."""
    _require_real(W)
    row = slice_time(W, k)
    d = W.dfreq
    return float(np.sum(W.freq_axis * row) * d), float(np.sum(row) * d)


def freq_moments(W: TimeFrequencyMatrix):
    """Vectorised :func:`first_freq_moment` over all rows."""
    _require_real(W)
    d = W.dfreq
    return W.values @ W.freq_axis * d, W.values.sum(axis=1) * d


# ---------------------------------------------------------------------------
# Covariance and shear helpers


def modulate_translate(f: Signal, shift_bins: int, mod_bins: int) -> Signal:
    """Circular time shift by ``shift_bins`` samples, then modulation by ``mod_bins``
    DFT bins of the signal grid (frequency ``mod_bins / (n dt)``).

    In periodized mode the Wigner matrix of the result is the input's matrix
    rolled by ``shift_bins`` rows and ``2 * mod_bins`` columns, provided the
    modulated spectrum does not wrap past the Nyquist edge.
    """
    n = f.grid.n
    shifted = np.roll(f.samples, int(shift_bins))
    k = np.arange(n)
    turns = np.mod(int(mod_bins) * k, n) / n
    mod = np.exp(2j * np.pi * turns)
    return Signal(f.grid, shifted * mod)


def roll_wigner(W: TimeFrequencyMatrix, shift_bins: int, mod_bins: int) -> np.ndarray:
    """Expected Wigner values after :func:`modulate_translate`."""
    return np.roll(np.roll(W.values, int(shift_bins), axis=0), 2 * int(mod_bins), axis=1)


def shear_bins(W: TimeFrequencyMatrix, rate: float, tol: float = 1e-9) -> np.ndarray:
    """Per-row integer column shift ``rate * t_k / dxi``; raises if not whole bins."""
    s = rate * W.time_axis / W.dfreq
    si = np.rint(s)
    if np.max(np.abs(s - si)) > tol:
        raise UnsupportedError("rate * t is not a whole number of frequency bins on this grid")
    return si.astype(np.int64)


def shear(W: TimeFrequencyMatrix, rate: float) -> TimeFrequencyMatrix:
    """Nearest-bin shear ``(t, xi) -> W(t, xi - rate t)`` with circular columns."""
    s = shear_bins(W, rate)
    ncol = W.values.shape[1]
    cols = np.mod(np.arange(ncol)[None, :] - s[:, None], ncol)
    vals = np.take_along_axis(W.values, cols, axis=1)
    return TimeFrequencyMatrix(W.time_axis, W.freq_axis, vals, W.value_kind, dict(W.meta))
