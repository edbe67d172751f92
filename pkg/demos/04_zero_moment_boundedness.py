#!/usr/bin/env python3
"""Demo 4: zero velocity moment means no growth at all.

The blow-up of demos 2-3 is driven entirely by P = integral u1 dx.  Velocity
data with P = 0 (here: the derivative of a Gaussian) keeps the solution norm
uniformly bounded for 1/2 <= s < 1, with the explicit ceiling

    ||u(t)||_2  <=  sqrt(2) ||u0||_2 + C (||u1||_2 + ||u1||_{1,gamma}),

where C is measured empirically over a profile family.
"""

import numpy as np

from fracwave import (Gaussian, GaussianDerivative, Parameters,
                      QuadratureBackend, l2_norm, measure_constant,
                      sample_norm_curve, uniform_bound, weighted_l1_norm)
from fracwave.ratefit import fit_power_exponent

u0 = Gaussian()
u1 = GaussianDerivative()
t_grid = np.logspace(1, 5, 17)
backend = QuadratureBackend()

for s in (0.5, 0.75):
    params = Parameters(s=s)
    gamma = 1.0

    def excess_over_norms(member):
        sup = max(sample_norm_curve((u0, member), params, t_grid, backend,
                                    level="u").values)
        lhs = max(0.0, sup - np.sqrt(2.0) * l2_norm(u0))
        rhs = l2_norm(member) + weighted_l1_norm(member, gamma)
        return lhs, rhs

    family = [GaussianDerivative(), GaussianDerivative(width=0.7),
              GaussianDerivative(amplitude=2.0, width=1.5)]
    C = measure_constant(family, excess_over_norms)

    series = sample_norm_curve((u0, u1), params, t_grid, backend, level="u")
    fit = fit_power_exponent(series)
    ceiling = uniform_bound(C, l2_norm(u0), l2_norm(u1),
                            weighted_l1_norm(u1, gamma))
    print(f"s = {s}:")
    print(f"  fitted growth exponent {fit.exponent:+.2e}  (flat)")
    print(f"  sup_t ||u(t)||_2 = {np.max(series.values):.6f}  <=  ceiling "
          f"{ceiling.constant:.6f}  (measured C = {C:.4f})")
