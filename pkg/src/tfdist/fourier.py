"""Continuous-normalised DFT on centred frequency grids.

The forward transform approximates ``F(xi) = int f(t) exp(-2 pi i t xi) dt`` by
``dt * sum_k f[k] exp(-2 pi i t_k xi_j)`` with ``t_k = t0 + k dt`` and
``xi_j = j / (n dt)`` for the centred indices ``j = -(n//2) .. n - 1 - n//2``.
"""

import numpy as np
import scipy.fft as sfft

from ._parallel import workers


def freq_axis(n, dt=1.0):
    """Ascending bin frequencies of an ``n``-point DFT with spacing ``dt``."""
    return (np.arange(n) - n // 2) / (n * dt)


def _t0_phase(n, dt, t0, sign):
    if t0 == 0:
        return None
    # t0 * xi_j = (t0 / dt) * j / n; split into integer and fractional offset
    j = np.arange(n) - n // 2
    s = t0 / dt
    s_int = np.rint(s)
    frac = s - s_int
    turns = (np.mod(int(s_int) * j, n) / n) + frac * j / n
    return np.exp(sign * 2j * np.pi * turns)


def dft(x, dt=1.0, t0=0.0, direction="forward", axis=-1):
    """Forward or inverse continuous-normalised DFT along ``axis``.

    ``direction="inverse"`` is the exact inverse of the forward map: it takes
    values on the centred frequency grid and returns samples on ``t_k``.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[axis]
    shape = [1] * x.ndim
    shape[axis] = n
    if direction == "forward":
        out = sfft.fftshift(sfft.fft(x, axis=axis, workers=workers()), axes=axis)
        out *= dt
        ph = _t0_phase(n, dt, t0, -1.0)
        if ph is not None:
            out *= ph.reshape(shape)
        return out
    if direction == "inverse":
        y = x
        ph = _t0_phase(n, dt, t0, +1.0)
        if ph is not None:
            y = y * ph.reshape(shape)
        out = sfft.ifft(sfft.ifftshift(y, axes=axis), axis=axis, workers=workers())
        out /= dt
        return out
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
