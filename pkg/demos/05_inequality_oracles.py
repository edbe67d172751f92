#!/usr/bin/env python3
"""Demo 5: the quadrature oracles behind the boundedness estimates.

Walks through the supporting inequalities one by one:

  * Riesz energy int |fhat|^2 |xi|^(-2 theta) dxi -- finite below the
    hypothesis boundary, numerically detected divergence on it;
  * the pointwise transform bound with the provable constant 2;
  * the equivalence of the double-integral fractional seminorm with its
    spectral form, mediated by C(1,s).
"""

import numpy as np

from fracwave import (CompactBump, DivergenceError, Gaussian,
                      GaussianDerivative, RadialGaussian, check_pointwise_bound,
                      check_riesz_bound, check_riesz_bound_zero_mean,
                      gagliardo_constant, gagliardo_seminorm, hs_seminorm,
                      riesz_energy)

print("== Riesz energies at the hypothesis boundary (n = 1) ==")
g, dg = Gaussian(), GaussianDerivative()
print(f"gaussian,   theta=0.4 : {riesz_energy(g, 0.4):.6f}  (finite)")
print(f"derivative, theta=0.9 : {riesz_energy(dg, 0.9):.6f}  (finite: mean zero)")
try:
    riesz_energy(g, 0.5)
except DivergenceError as exc:
    print(f"gaussian,   theta=0.5 : diverges as expected -- {exc}")

print()
print("== Riesz bound ratios ==")
for check in (check_riesz_bound(g, theta=0.4),
              check_riesz_bound_zero_mean(dg, theta=0.9, gamma=0.5),
              check_riesz_bound(RadialGaussian(dimension=2), theta=0.9, n=2)):
    print(f"{check.check_id:16s} params={check.params}  ratio={check.ratio:.4f}  "
          f"passed={check.passed}")

print()
print("== pointwise transform bound, constant 2 ==")
xi = np.logspace(-3, 2, 500)
for profile in (g, dg, CompactBump()):
    worst = max(check_pointwise_bound(profile, gamma, xi).ratio
                for gamma in (0.0, 0.25, 0.5, 1.0))
    print(f"{type(profile).__name__:20s} worst ratio over gamma grid: {worst:.4f} <= 2")

print()
print("== Gagliardo vs spectral seminorm ==")
for s in (0.3, 0.5, 0.7):
    lhs = gagliardo_seminorm(g, s) ** 2
    rhs = 2.0 / gagliardo_constant(s) * hs_seminorm(g, s) ** 2
    print(f"s = {s}:  double integral {lhs:.8f}  spectral {rhs:.8f}  "
          f"(rel gap {abs(lhs - rhs) / rhs:.2e})")
print(f"C(1, 1/2) = {gagliardo_constant(0.5):.10f}  (1/pi = {1 / np.pi:.10f})")
