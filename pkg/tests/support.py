"""Shared helpers for the test suite: randomized data and invariant sweeps."""

import numpy as np

from fracwave import (Gaussian, GaussianDerivative, GridBackend, GridSpec,
                      Parameters, combine, evolve_state)

INVARIANT_BACKEND = GridBackend(GridSpec(24.0, 1024))


def random_profile(rng):
    kind = rng.integers(0, 3)
    a = float(rng.uniform(-2.0, 2.0))
    sigma = float(rng.uniform(0.5, 1.6))
    c = float(rng.uniform(-2.0, 2.0))
    if kind == 0:
        return Gaussian(a, sigma, c)
    if kind == 1:
        return GaussianDerivative(a, sigma, c)
    return combine((a, Gaussian(1.0, sigma, c)),
                   (0.5 * a, GaussianDerivative(1.0, max(0.5, sigma - 0.2), -c)))


def random_case(rng):
    s = float(rng.uniform(0.25, 1.0))
    t = float(rng.uniform(0.0, 20.0))
    return (random_profile(rng), random_profile(rng)), Parameters(s), t


def run_solver_invariant_cases(n_cases: int, seed: int,
                               backend=INVARIANT_BACKEND) -> list[str]:
    """Check linearity, cocycle, reality, and determinism on random data.

    Returns a list of human-readable violation messages (empty = all held).
    """
    rng = np.random.default_rng(seed)
    failures = []
    for case in range(n_cases):
        (u0, u1), params, t = random_case(rng)
        a, b = float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2))
        d2 = (random_profile(rng), random_profile(rng))
        dt = float(rng.uniform(0.0, 10.0))

        snap = evolve_state((u0, u1), params, t, backend)
        snap2 = evolve_state(d2, params, t, backend)

        mixed = evolve_state((combine((a, u0), (b, d2[0])),
                              combine((a, u1), (b, d2[1]))), params, t, backend)
        expected = a * snap.u_hat.values + b * snap2.u_hat.values
        scale = max(np.max(np.abs(expected)), 1e-12)
        if np.max(np.abs(mixed.u_hat.values - expected)) >= 1e-11 * scale:
            failures.append(f"case {case}: linearity violated")

        direct = evolve_state((u0, u1), params, t + dt, backend)
        stepped = snap.advance(dt)
        for name, lhs, rhs in (("u", stepped.u_hat.values, direct.u_hat.values),
                               ("ut", stepped.ut_hat.values, direct.ut_hat.values)):
            scale = max(np.max(np.abs(rhs)), 1e-12)
            if np.max(np.abs(lhs - rhs)) >= 1e-11 * scale:
                failures.append(f"case {case}: cocycle violated on {name}")

        for name, field in (("u", snap.u), ("ut", snap.ut)):
            fscale = max(np.max(np.abs(field)), 1e-12)
            if np.max(np.abs(field.imag)) >= 1e-12 * fscale:
                failures.append(f"case {case}: reality violated on {name}")

        again = evolve_state((u0, u1), params, t, backend)
        if not (np.array_equal(snap.u_hat.values, again.u_hat.values)
                and np.array_equal(snap.ut_hat.values, again.ut_hat.values)):
            failures.append(f"case {case}: determinism violated")
    return failures
