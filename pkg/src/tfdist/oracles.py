"""Closed-form and brute-force reference results.

Everything here is deliberately simple: direct O(n^2) sums with no FFT, and
analytic formulas evaluated pointwise. These are the ground truth the FFT
transforms are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, InvalidParamsError, UnsupportedError
from .signals import GaussianParams, Grid, Signal
from .transforms import Window, stft, window_signal, wigner
from .fourier import dft

DIRECT_MAX_N = 256


@dataclass
class OracleResult:
    values: np.ndarray
    description: str


def _guard(n):
    if n > DIRECT_MAX_N:
        raise InvalidInputError(f"direct oracle limited to n <= {DIRECT_MAX_N}, got {n}")


# ---------------------------------------------------------------------------
# analytic oracles


def gaussian_wigner_constant(params: GaussianParams) -> float:
    """Amplitude of the Gaussian Wigner closed form.

    Fixed by requiring the double integral to equal ``||f||^2``:
    ``C = ||f||^2 / (int exp(-2 pi (Re a t^2 - 2 Re b t)) dt * int exp(-2 pi u^2 / Re a) du)``.
    """
    ra, rb = params.a.real, params.b.real
    time_int = np.sqrt(1.0 / (2.0 * ra)) * np.exp(2.0 * np.pi * rb ** 2 / ra)
    freq_int = np.sqrt(ra / 2.0)
    norm2 = np.exp(2.0 * params.c.real) * time_int
    return float(norm2 / (time_int * freq_int))


def oracle_gaussian_wigner(params: GaussianParams, grid_t, grid_xi) -> np.ndarray:
    """Closed-form Wigner distribution of ``exp(-pi a t^2 + 2 pi b t + c)`` on a mesh."""
    if not isinstance(params, GaussianParams):
        raise InvalidParamsError("params must be GaussianParams")
    t = np.asarray(grid_t, dtype=np.float64)[:, None]
    xi = np.asarray(grid_xi, dtype=np.float64)[None, :]
    a, b = params.a, params.b
    C = gaussian_wigner_constant(params)
    time_part = np.exp(-2.0 * np.pi * (a.real * t ** 2 - 2.0 * b.real * t))
    u = xi + a.imag * t - b.imag
    return C * time_part * np.exp(-2.0 * np.pi * u ** 2 / a.real)


def oracle_chirp_ridge(rate: float, grid_t) -> np.ndarray:
    """Ridge frequency ``rate * t`` of the chirp ``exp(pi i rate t^2)``."""
    return float(rate) * np.asarray(grid_t, dtype=np.float64)


def oracle_chirp_stft_mag(eta0: float, window_a: float, grid_x, grid_eta) -> np.ndarray:
    """Peak-normalised ``|V_phi f|`` for ``f = exp(2 pi i eta0 t^2)``, ``phi = exp(-2 pi x^2)``."""
    if window_a != 2:
        raise UnsupportedError("closed form is only available for the window exp(-2 pi x^2)")
    x = np.asarray(grid_x, dtype=np.float64)[:, None]
    eta = np.asarray(grid_eta, dtype=np.float64)[None, :]
    return np.exp(-2.0 * np.pi / (1.0 + eta0 ** 2) * (eta0 * x - eta / 2.0) ** 2)


# ---------------------------------------------------------------------------
# brute-force oracles


def oracle_direct_dft(v, dt: float = 1.0, t0: float = 0.0) -> np.ndarray:
    """``dt * sum_k v[k] exp(-2 pi i (t0 + k dt) xi_j)`` on the centred bin grid."""
    v = np.asarray(v, dtype=np.complex128)
    n = v.size
    _guard(n)
    t = t0 + np.arange(n) * dt
    xi = (np.arange(n) - n // 2) / (n * dt)
    out = np.empty(n, dtype=np.complex128)
    for j in range(n):
        out[j] = dt * np.sum(v * np.exp(-2j * np.pi * t * xi[j]))
    return out


def _direct_interpolant(samples: np.ndarray, positions: np.ndarray) -> np.ndarray:
    """Trigonometric interpolant of ``samples`` at fractional ``positions`` (in samples).

    Nyquist content is represented as a cosine, matching the 2x upsampler.
    """
    n = samples.size
    k = np.arange(n)
    l = np.arange(n) - n // 2
    coef = np.array([np.sum(samples * np.exp(-2j * np.pi * li * k / n)) for li in l]) / n
    out = np.zeros(positions.size, dtype=np.complex128)
    for li, c in zip(l, coef):
        if li == -(n // 2) and n % 2 == 0:
            out += c * np.cos(np.pi * positions)
        else:
            out += c * np.exp(2j * np.pi * li * positions / n)
    return out


def oracle_direct_cross_wigner(f: Signal, g: Signal, boundary: str = "zero") -> np.ndarray:
    """Literal lag sum ``dt * sum_m f(t+m dt/2) conj(g(t-m dt/2)) exp(-2 pi i m dt xi)``."""
    n = f.grid.n
    _guard(n)
    dt = f.grid.dt
    half = np.arange(2 * n) / 2.0
    f2 = _direct_interpolant(f.samples, half)
    g2 = _direct_interpolant(g.samples, half)
    m = np.arange(-n, n)
    xi = (np.arange(2 * n) - n) / (2 * n * dt)
    kernel = np.exp(-2j * np.pi * np.outer(m * dt, xi))
    out = np.empty((n, 2 * n), dtype=np.complex128)
    for k in range(n):
        r = np.zeros(2 * n, dtype=np.complex128)
        for i, mm in enumerate(m):
            a, b = 2 * k + mm, 2 * k - mm
            if boundary == "periodized":
                r[i] = f2[a % (2 * n)] * np.conj(g2[b % (2 * n)])
            elif 0 <= a < 2 * n and 0 <= b < 2 * n:
                r[i] = f2[a] * np.conj(g2[b])
        out[k] = dt * (r @ kernel)
    return out


def oracle_direct_wigner(f: Signal, boundary: str = "zero") -> np.ndarray:
    return oracle_direct_cross_wigner(f, f, boundary).real


def oracle_direct_stft(f: Signal, w: Window, freq_oversample: int = 1) -> np.ndarray:
    """Literal sum ``dt * sum_m f[m] conj(w[m-k]) exp(-2 pi i t_m xi_j)``."""
    n = f.grid.n
    _guard(n)
    dt = f.grid.dt
    t = f.grid.times
    nfft = n * freq_oversample
    xi = (np.arange(nfft) - nfft // 2) / (nfft * dt)
    wmap = dict(zip(w.offsets.tolist(), w.samples))
    out = np.zeros((n, nfft), dtype=np.complex128)
    for k in range(n):
        for m in range(n):
            wv = wmap.get(m - k)
            if wv is None:
                continue
            out[k] += dt * f.samples[m] * np.conj(wv) * np.exp(-2j * np.pi * t[m] * xi)
    return out


# ---------------------------------------------------------------------------
# window / Wigner product identity


def _wigner_product_transform(f: Signal, w: Window):
    """2-D transform of ``W_f * W_w``: ``(eta, x) -> sum W_f W_w exp(-2 pi i (t eta + xi x)) dt dxi``."""
    grid = f.grid
    Wf = wigner(f)
    Ww = wigner(window_signal(w, grid))
    prod = Wf.values * Ww.values
    dxi = Wf.dfreq
    # columns: xi_j = j dxi for j = -n..n-1, dual variable x spaced dt
    over_xi = dft(prod, dt=dxi, t0=float(Wf.freq_axis[0]), axis=1)
    both = dft(over_xi, dt=grid.dt, t0=grid.t0, axis=0)
    eta = (np.arange(grid.n) - grid.n // 2) / (grid.n * grid.dt)
    x = (np.arange(2 * grid.n) - grid.n) * grid.dt
    return both, eta, x


def _effective_halfwidth(w: Window, rel: float = 1e-8) -> int:
    big = np.nonzero(np.abs(w.samples) >= rel * np.max(np.abs(w.samples)))[0]
    return int(max(abs(w.offsets[big[0]]), abs(w.offsets[big[-1]])))


def oracle_wigner_window_identity(f: Signal, w: Window, floor: float = 1e-9):
    """Largest deviation between both sides of the Wigner-product / STFT identity.

    Left side: the 2-D Fourier transform of ``W_f W_w`` at ``(eta, x)``.
    Right side: ``V_w f(-x/2, eta/2) * conj(V_w f(x/2, -eta/2))``.

    Only lags ``x = 2 s dt`` are compared, so ``+/- x/2`` land on signal
    samples and ``+/- eta/2`` on the bins of a 2x frequency-oversampled STFT.
    Lags are further limited to ``|s| + 2 h <= n/2 - 1`` with ``h`` the window
    half-width (where it exceeds 1e-8 of its peak), so neither side sees the
    record edges. Deviations are relative to the peak magnitude and taken over
    entries above ``floor * peak``; 0 when both sides vanish.
    """
    grid = f.grid
    if w.kind != "gaussian":
        raise UnsupportedError("identity check expects a Gaussian window")
    k0 = -grid.t0 / grid.dt
    if abs(k0 - round(k0)) > 1e-9 or int(round(k0)) != grid.n // 2:
        raise UnsupportedError("identity check needs a centred grid (t = 0 at index n/2)")
    n = grid.n
    c = n // 2
    smax = c - 1 - 2 * _effective_halfwidth(w)
    if smax < 0:
        raise UnsupportedError("window too wide for this record: no interior lags")
    lhs, eta, x = _wigner_product_transform(f, w)
    V = stft(f, w, freq_oversample=2).values
    s = np.arange(-smax, smax + 1)
    p = 2 * s + n  # column of x = 2 s dt in the lag-dual axis
    q = np.arange(n) - n // 2  # eta = q / (n dt); eta/2 is STFT bin q of 2n
    rhs = V[(c - s)[None, :], (q + n)[:, None]] * np.conj(V[(c + s)[None, :], (n - q)[:, None]])
    left = lhs[:, p]
    peak = max(np.max(np.abs(left)), np.max(np.abs(rhs)))
    if peak == 0:
        return 0.0
    mask = (np.abs(rhs) > floor * peak) | (np.abs(left) > floor * peak)
    return float(np.max(np.abs(left[mask] - rhs[mask])) / peak)
