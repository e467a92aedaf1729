"""Two independent instantaneous-frequency estimates and how closely they agree.

``if_phase_gradient`` differentiates the samples; ``if_moment`` averages
frequency over each Wigner time slice.
Run with ``python demos/instantaneous_frequency.py``.
"""

from tfdist import (GaussianParams, Grid, compare_if, dynamic_range, gen_bandlimited, gen_chirp,
                    gen_gaussian, if_moment, if_phase_gradient)

cases = []
g = Grid.centered(512, 1 / 32)
cases.append(("Gaussian, a = 1+i", gen_gaussian(g, GaussianParams(1 + 1j, 0.5 + 0.5j)), "zero"))
# Band-limited records are periodic, so the periodized Wigner matches them exactly.
cases.append(("band-limited", gen_bandlimited(g, (-2, 2), 0), "periodized"))
g2 = Grid.centered(512, 1 / 16)
cases.append(("chirp x band-limited", gen_chirp(g2, 0.1) * gen_bandlimited(g2, (-2, 2), 0),
              "periodized"))

for label, f, boundary in cases:
    phase = if_phase_gradient(f)
    moment = if_moment(f, boundary=boundary)
    res = compare_if(phase, moment)
    rel = res["max_abs_err"] / dynamic_range(phase)
    print(f"{label:<22} compared {res['n_compared']:>3} samples, "
          f"max error {res['max_abs_err']:.2e} Hz ({rel:.1e} of the IF range)")
