"""Sampled complex signals on uniform grids and deterministic test-signal generators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import InvalidInputError, InvalidParamsError
from .fourier import dft, freq_axis


@dataclass(frozen=True)
class Grid:
    """Uniform time grid ``t_k = t0 + k * dt`` for ``0 <= k < n``.

    ``n`` must be even: the Wigner transform doubles the grid by spectral
    interpolation and only handles the even case.
    """

    t0: float
    dt: float
    n: int

    def __post_init__(self):
        if not np.isfinite(self.t0) or not np.isfinite(self.dt):
            raise InvalidParamsError("t0 and dt must be finite")
        if self.dt <= 0:
            raise InvalidParamsError(f"dt must be positive, got {self.dt}")
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise InvalidParamsError(f"n must be an even integer >= 2, got {self.n}")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def centered(cls, n: int, dt: float) -> "Grid":
        """Grid with ``t = 0`` at sample index ``n // 2``."""
        return cls(t0=-(n // 2) * dt, dt=dt, n=n)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n) * self.dt

    @property
    def freqs(self) -> np.ndarray:
        """DFT bin frequencies (cycles per unit time), ascending and centred on 0."""
        return freq_axis(self.n, self.dt)

    @property
    def nyquist(self) -> float:
        return 0.5 / self.dt

    def index_of(self, t: float) -> int:
        """Nearest sample index to time ``t``."""
        return int(np.clip(np.rint((t - self.t0) / self.dt), 0, self.n - 1))


class Signal:
    """Complex samples ``f(t_k)`` on a :class:`Grid`.

    Samples are stored as a read-only complex128 array. Equality is bitwise.
    """

    __slots__ = ("grid", "samples")

    def __init__(self, grid: Grid, samples):
        arr = np.array(samples, dtype=np.complex128, copy=True).reshape(-1)
        if arr.shape[0] != grid.n:
            raise InvalidInputError(
                f"expected {grid.n} samples, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("samples must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "samples", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Signal is immutable")

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return (self.grid == other.grid
                and self.samples.tobytes() == other.samples.tobytes())

    def __hash__(self):
        return hash((self.grid, self.samples.tobytes()))

    def __repr__(self):
        return f"Signal(grid={self.grid!r}, n={self.grid.n})"

    def __mul__(self, other: "Signal") -> "Signal":
        if not isinstance(other, Signal):
            return NotImplemented
        if other.grid != self.grid:
            raise InvalidInputError("cannot multiply signals on different grids")
        return Signal(self.grid, self.samples * other.samples)

    def scaled(self, c: complex) -> "Signal":
        return Signal(self.grid, c * self.samples)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def energy(self) -> float:
        """Riemann-sum squared L2 norm ``dt * sum |f|^2``."""
        return float(self.grid.dt * np.sum(np.abs(self.samples) ** 2))

    def spectrum(self) -> np.ndarray:
        """Continuous-normalised DFT on ``grid.freqs``."""
        return dft(self.samples, dt=self.grid.dt, t0=self.grid.t0)


@dataclass(frozen=True)
class GaussianParams:
    """Generalised Gaussian ``exp(-pi a t^2 + 2 pi b t + c)``; requires ``Re a > 0``."""

    a: complex
    b: complex = 0.0
    c: complex = 0.0

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = complex(getattr(self, name))
            if not (np.isfinite(v.real) and np.isfinite(v.imag)):
                raise InvalidParamsError(f"{name} must be finite")
            object.__setattr__(self, name, v)
        if self.a.real <= 0:
            raise InvalidParamsError(f"Re a must be positive, got {self.a}")

    def normalized(self) -> "GaussianParams":
        """Same shape with ``c`` chosen so the L2 norm is one."""
        ra, rb = self.a.real, self.b.real
        # log of int exp(-2 pi Re(a) t^2 + 4 pi Re(b) t) dt
        log_norm2 = 0.5 * np.log(1.0 / (2.0 * ra)) + 2.0 * np.pi * rb ** 2 / ra
        return GaussianParams(self.a, self.b, complex(-0.5 * log_norm2, self.c.imag))


@dataclass(frozen=True)
class ChirpParams:
    """Linear chirp ``exp(pi i rate t^2)``, i.e. ``exp(2 pi i eta0 t^2)`` with ``eta0 = rate / 2``."""

    rate: float

    def __post_init__(self):
        if not np.isfinite(self.rate):
            raise InvalidParamsError("rate must be finite")
        object.__setattr__(self, "rate", float(self.rate))

    @classmethod
    def from_eta0(cls, eta0: float) -> "ChirpParams":
        return cls(rate=2.0 * eta0)

    @property
    def eta0(self) -> float:
        return self.rate / 2.0


def _cis(phase: np.ndarray) -> np.ndarray:
    # +0.0 folds -0.0 so equal phases give bit-identical samples
    phase = np.asarray(phase, dtype=np.float64) + 0.0
    out = np.empty(phase.shape, dtype=np.complex128)
    out.real = np.cos(phase)
    out.imag = np.sin(phase)
    return out


def gen_tone(grid: Grid, xi0: float, amplitude: complex = 1.0) -> Signal:
    """Character ``amplitude * exp(2 pi i xi0 t)``."""
    amplitude = complex(amplitude)
    if amplitude == 0:
        raise InvalidParamsError("amplitude must be nonzero")
    return Signal(grid, amplitude * _cis(2.0 * np.pi * xi0 * grid.times))


def _gaussian_samples(t: np.ndarray, p: GaussianParams) -> np.ndarray:
    return np.exp(-np.pi * p.a * t ** 2 + 2.0 * np.pi * p.b * t + p.c)


def gen_gaussian(grid: Grid, params: GaussianParams) -> Signal:
    if not isinstance(params, GaussianParams):
        raise InvalidParamsError("params must be GaussianParams")
    return Signal(grid, _gaussian_samples(grid.times, params))


def gen_chirp(grid: Grid, params: Union[ChirpParams, float],
              envelope: Optional[GaussianParams] = None) -> Signal:
    """``exp(pi i rate t^2) * h(t)`` with ``h`` a Gaussian envelope or 1."""
    if not isinstance(params, ChirpParams):
        params = ChirpParams(params)
    t = grid.times
    samples = complex(1.0) * _cis(np.pi * params.rate * t * t)
    if envelope is not None:
        samples = samples * _gaussian_samples(t, envelope)
    return Signal(grid, samples)


def bandlimited_bins(grid: Grid, band: Sequence[float]) -> np.ndarray:
    """Centred DFT bin indices whose frequency lies in the closed band.

    The Nyquist bin is never included; its content is ambiguous under
    spectral interpolation.
    """
    lo, hi = (float(band[0]), float(band[1]))
    nyq = grid.nyquist
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
        raise InvalidParamsError(f"band must satisfy lo < hi, got {band}")
    if lo < -nyq or hi > nyq:
        raise InvalidParamsError(f"band {band} outside Nyquist range +/-{nyq}")
    if hi - lo > nyq * (1 + 1e-12):
        raise InvalidParamsError(
            f"band width {hi - lo} exceeds half the Nyquist range ({nyq})")
    freqs = grid.freqs
    tol = 1e-9 / (grid.n * grid.dt)
    idx = np.nonzero((freqs >= lo - tol) & (freqs <= hi + tol))[0]
    idx = idx[idx != 0]  # centred index 0 is the Nyquist bin -n/2
    if idx.size == 0:
        raise InvalidParamsError(f"band {band} contains no DFT bins")
    return idx


def bandlimited_spectrum(grid: Grid, band: Sequence[float], seed: int) -> np.ndarray:
    """Spectrum (on ``grid.freqs``) used by :func:`gen_bandlimited`.

    Exactly zero outside the band; scaled so the time signal has unit energy.
    """
    idx = bandlimited_bins(grid, band)
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    spec = np.zeros(grid.n, dtype=np.complex128)
    # Parseval: dt * sum|f|^2 = dxi * sum|F|^2 with dxi = 1 / (n dt)
    dxi = 1.0 / (grid.n * grid.dt)
    spec[idx] = coef / np.sqrt(dxi * np.sum(np.abs(coef) ** 2))
    return spec


def gen_bandlimited(grid: Grid, band: Sequence[float], seed: int) -> Signal:
    """Pseudo-random signal whose DFT is supported on the bins inside ``band``."""
    spec = bandlimited_spectrum(grid, band, seed)
    samples = dft(spec, dt=grid.dt, t0=grid.t0, direction="inverse")
    return Signal(grid, samples)
