"""The 2-D Fourier transform of W_f * W_w equals a product of two STFT values.

Run with ``python demos/window_identity.py``.
"""

from tfdist import GaussianParams, Grid, gaussian_window, gen_bandlimited, gen_gaussian
from tfdist.oracles import oracle_wigner_window_identity

grid = Grid.centered(128, 1 / 16)
w = gaussian_window(grid.dt, 2.0)
for label, f in [("Gaussian", gen_gaussian(grid, GaussianParams(1.0))),
                 ("band-limited", gen_bandlimited(grid, (-1, 1), 0))]:
    dev = oracle_wigner_window_identity(f, w)
    print(f"{label:<13} largest deviation relative to peak: {dev:.2e}")
