"""Wigner distribution of sampled signals: marginals, energy and positivity.

Run with ``python demos/wigner_identities.py``.
"""

import numpy as np

from tfdist import (GaussianParams, Grid, Signal, gen_bandlimited, gen_gaussian, gen_tone,
                    marginal_freq, marginal_time, total_energy, wigner)
from tfdist.oracles import oracle_gaussian_wigner

# A random signal whose spectrum sits inside [-4, 4] Hz, well under the 16 Hz Nyquist limit.
grid = Grid.centered(256, 1 / 32)
f = gen_bandlimited(grid, (-4.0, 4.0), seed=0)
W = wigner(f)
print(f"Wigner matrix: {W.shape[0]} times x {W.shape[1]} frequencies, "
      f"bin width {W.dfreq:.4f} Hz")

# Integrating over frequency recovers |f(t)|^2; over time, |F(xi)|^2 on the signal's DFT bins.
power = np.abs(f.samples) ** 2
spec2 = np.abs(f.spectrum()) ** 2
print("time marginal error      ", np.max(np.abs(marginal_freq(W) - power)) / power.max())
print("frequency marginal error ", np.max(np.abs(marginal_time(W)[0::2] - spec2)) / spec2.max())
print("energy: signal", f.energy(), " Wigner", total_energy(W))

# Gaussians are the only signals with a non-negative Wigner distribution.
params = GaussianParams(1 + 1j, 0.5j).normalized()
g = gen_gaussian(Grid.centered(256, 1 / 20), params)
Wg = wigner(g)
ref = oracle_gaussian_wigner(params, Wg.time_axis, Wg.freq_axis)
print("Gaussian vs closed form  ", np.max(np.abs(Wg.values - ref)) / ref.max())
print("Gaussian min/max         ", Wg.values.min() / Wg.values.max())

two = gen_tone(grid, 2.0).samples + gen_tone(grid, -2.0).samples
Wt = wigner(Signal(grid, two * np.exp(-np.pi * 0.5 * grid.times ** 2)))
print("two-tone min/max         ", Wt.values.min() / Wt.values.max(),
      "(interference terms go negative)")
