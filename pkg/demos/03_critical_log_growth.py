#!/usr/bin/env python3
"""Demo 3: the critical order s = 1/2 grows like sqrt(log t).

At s = 1/2 the power law degenerates and the squared norm becomes linear in
log t.  The script fits that line over the last two decades of a six-decade
sweep and verifies the explicit envelopes

    (P^2 / (9 e^2)) log t  <=  ||uhat(t)||_2^2  <=  4 M2^2 log t.

It also evaluates the damped oscillatory integral behind the lower envelope,
K1(t) = 2 int e^(-r^2) sin^2(t sqrt(r)) / r dr, against its logarithmic
minorant.
"""

import numpy as np

from fracwave import (Gaussian, Parameters, QuadratureBackend, ZERO, l1_norm,
                      l2_norm, log_growth_integral, log_lower_bound,
                      log_upper_bound, moment0, sample_norm_curve,
                      sandwich_check)
from fracwave.ratefit import fit_log_rate

u1 = Gaussian()
params = Parameters(s=0.5)
t_grid = np.logspace(2, 6, 25)
series = sample_norm_curve((ZERO, u1), params, t_grid, QuadratureBackend())

fit = fit_log_rate(series)
print(f"slope of ||uhat||^2 against log t: {fit.slope:.4f}  (R^2 = {fit.r_squared:.6f})")

P = moment0(u1)
M2 = l2_norm(u1) + l1_norm(u1)
lower = log_lower_bound(P)
upper = log_upper_bound(M2)
check = sandwich_check(series, lower, upper)
print(f"envelope constants: lower {lower.constant:.5f}, upper {upper.constant:.5f}")
print(f"sandwich holds from t0 = {check.t0:g} (pass fraction {check.pass_fraction:.0%})")

print()
print("log-growth integral against its minorant (2/(3e)) log(4t/pi):")
for t in (10.0, 1e3, 1e6):
    k1 = log_growth_integral(t)
    minorant = 2.0 / (3.0 * np.e) * np.log(4.0 * t / np.pi)
    print(f"  t = {t:>9g}:  K1 = {k1:8.4f}  >=  {minorant:7.4f}")
