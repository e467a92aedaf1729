"""A linear chirp's Wigner distribution is its envelope's, sheared along xi = rate * t.

Run with ``python demos/chirp_ridge_and_shear.py``.
"""

import numpy as np

from tfdist import GaussianParams, Grid, gen_chirp, gen_gaussian, shear, wigner

grid = Grid.centered(512, 1 / 32)
rate = 2.0
W = wigner(gen_chirp(grid, rate, GaussianParams(0.1)))

# The ridge: each row peaks at xi = rate * t.
rows = [200, 240, 256, 272, 312]
for k in rows:
    t = grid.times[k]
    peak = W.freq_axis[np.argmax(W.values[k])]
    print(f"t = {t:+.3f} s   ridge at {peak:+.4f} Hz   rate*t = {rate * t:+.4f} Hz")

# When rate * t is a whole number of frequency bins the shear law holds to rounding.
grid = Grid.centered(256, 1 / 16)
env = GaussianParams(1.0)
Wc = wigner(gen_chirp(grid, 0.5, env))
Wh = wigner(gen_gaussian(grid, env))
err = np.max(np.abs(Wc.values - shear(Wh, 0.5).values)) / np.max(Wc.values)
print(f"\nshear law, rate 0.5: max relative deviation {err:.2e}")
