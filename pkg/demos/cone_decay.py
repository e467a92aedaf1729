"""Where does the STFT of a chirp stop decaying?

For ``exp(2 pi i eta0 t^2)`` the STFT ridge runs along ``eta = 2 eta0 x``, so a
cone ``|eta| > B |x|`` contains the ridge only when ``B < 2 eta0``. The
classifier measures decay in shells of growing radius and bisects for the slope
where decay becomes rapid.
Run with ``python demos/cone_decay.py``.
"""

from tfdist import (ChirpParams, GaussianParams, Grid, classify_vcon, gaussian_window, gen_chirp,
                    gen_gaussian)

grid = Grid.centered(8192, 1 / 128)
slopes = [0.5, 1.0, 1.5, 3.0, 4.0, 6.0]

for a in (1.0, 2.0, 4.0):
    rep = classify_vcon(gen_chirp(grid, ChirpParams.from_eta0(1.0)), gaussian_window(grid.dt, a),
                        slopes)
    print(f"chirp eta0=1, window a={a}: critical slope {rep.critical_B_estimate:.3f} "
          f"(expected 2), classes {rep.classes()}")

rep = classify_vcon(gen_gaussian(grid, GaussianParams(1.0)), gaussian_window(grid.dt, 2.0), slopes)
print("Gaussian:", rep.classes(), "critical slope:", rep.critical_B_estimate)
