"""Quadrature engines shared across the package.

Three integration regimes appear throughout the solver and the estimate
machinery, and each gets a dedicated routine here:

* smooth integrands on panels  -> vectorized Gauss-Legendre (``gauss_panels``),
* oscillatory spectral integrands with phase t*|xi|^s -> panels aligned to
  half-periods of the phase (``oscillatory_integral``), with the first few
  half-periods handed to adaptive quadrature because the integrand has an
  algebraic |xi|^(2s) kink at the origin,
* power-law singularities at the origin -> dyadic descent with geometric
  tail extrapolation and divergence detection (``singular_origin_integral``).

The phase-panel rule is the workhorse: a degree-12 Gauss rule on a panel
covering one half-period of sin(t*xi^s) resolves the trigonometric factors to
near machine precision, so the cost is O(number of oscillations) with a tiny
constant, which keeps t = 1e6 sweeps in seconds.
"""

from __future__ import annotations

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import DivergenceError, NumericalFailureError

# Cache of Gauss-Legendre rules keyed by order.
_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    rule = _GL_CACHE.get(order)
    if rule is None:
        rule = np.polynomial.legendre.leggauss(order)
        _GL_CACHE[order] = rule
    return rule


def gauss_panels(f, edges: np.ndarray, order: int = 12,
                 block: int = 262144) -> float:
    """Integrate a vectorized function over consecutive panels.

    Parameters
    ----------
    f : callable
        Accepts an ndarray of abscissae, returns integrand values.
    edges : ndarray
        Strictly increasing panel boundaries, shape (n+1,).
    order : int
        Gauss-Legendre order per panel.
    block : int
        Panels are processed in blocks of this size to bound the peak
        memory of million-panel oscillatory sweeps.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.size < 2:
        return 0.0
    nodes, weights = gauss_rule(order)
    total = 0.0
    for start in range(0, edges.size - 1, block):
        stop = min(start + block, edges.size - 1)
        a = edges[start:stop]
        b = edges[start + 1:stop + 1]
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        x = mid[:, None] + half[:, None] * nodes[None, :]
        vals = f(x)
        total += float(np.einsum("pj,j,p->", vals, weights, half))
    return total


def adaptive(f, a: float, b: float, rel_tol: float = 1e-11, limit: int = 400,
             points=None) -> float:
    """Adaptive Gauss-Kronrod integration of a scalar-callable on [a, b].

    Raises NumericalFailureError when the reported error estimate is not
    consistent with the requested relative tolerance.
    """
    with warnings.catch_warnings():
        # non-convergence is converted to NumericalFailureError below
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(f, a, b, epsabs=0.0, epsrel=rel_tol, limit=limit,
                        points=points)
    scale = max(abs(val), 1e-300)
    if not np.isfinite(val) or err > max(1e3 * rel_tol * scale, 1e-290):
        raise NumericalFailureError(
            f"adaptive quadrature on [{a:g}, {b:g}] did not converge: "
            f"value={val:.6e}, error estimate={err:.2e}"
        )
    return float(val)


def log_spaced_panels(lo: float, hi: float, per_decade: int = 4) -> np.ndarray:
    """Geometrically spaced panel edges covering [lo, hi]."""
    if lo <= 0:
        raise ValueError("log panels need lo > 0")
    n = max(1, int(np.ceil(per_decade * np.log10(hi / lo))))
    return np.geomspace(lo, hi, n + 1)


def oscillatory_integral(f, t: float, s: float, xi_hi: float, *,
                         xi_lo: float = 0.0, order: int = 12,
                         lead_halfperiods: int = 4,
                         rel_tol: float = 1e-11) -> float:
    """Integrate f(xi) over [xi_lo, xi_hi] where f carries phase t*xi^s.

    Panels are placed so the phase w = t*xi^s advances by pi per panel; every
    trigonometric factor built from sin(w) and cos(w) then completes at most
    one full period per panel, which the Gauss rule resolves.  The first
    ``lead_halfperiods`` half-periods (where xi^(2s)-type kinks live when the
    interval starts at 0) go to adaptive quadrature instead.
    """
    if xi_hi <= xi_lo:
        return 0.0
    if t <= 0:
        # no oscillation at all: one adaptive sweep, helped by a few panels
        edges = np.linspace(xi_lo, xi_hi, 33)
        return gauss_panels(f, edges, order=max(order, 16))

    w_lo = t * xi_lo ** s
    w_hi = t * xi_hi ** s
    k_lo = int(np.floor(w_lo / np.pi))
    k_hi = int(np.ceil(w_hi / np.pi))

    if k_hi - k_lo <= lead_halfperiods + 1:
        return adaptive(f, xi_lo, xi_hi, rel_tol=rel_tol)

    k_lead = k_lo + lead_halfperiods
    xi_lead = (k_lead * np.pi / t) ** (1.0 / s)
    head = adaptive(f, xi_lo, xi_lead, rel_tol=rel_tol)

    ks = np.arange(k_lead, k_hi + 1, dtype=float)
    edges = (ks * np.pi / t) ** (1.0 / s)
    edges[0] = xi_lead
    edges = edges[edges < xi_hi]
    edges = np.append(edges, xi_hi)
    body = gauss_panels(f, edges, order=order)
    return head + body


def singular_origin_integral(f, upper: float, *, rel_tol: float = 1e-9,
                             order: int = 24, max_depth: int = 600,
                             flat_ratio: float = 0.95,
                             flat_runs: int = 3,
                             min_depth: int = 8) -> float:
    """Integrate f over (0, upper] when f may have a power singularity at 0.

    Works down the dyadic panels [upper*2^-(j+1), upper*2^-j].  For an
    integrand ~ c*xi^(-q) near zero the panel increments form a geometric
    sequence with ratio 2^(q-1); the integral converges iff that ratio is
    below one.  Divergence is declared once ``flat_runs`` successive
    increments each fail to decay below ``flat_ratio`` times their
    predecessor (this also catches the marginal q = 1 log-divergence, whose
    increments are asymptotically constant).  Ratios are only counted past
    ``min_depth`` panels, deep enough for any smooth envelope to flatten;
    the flip side is that exponents within ~0.04 of the divergence boundary
    are conservatively rejected.  For convergent integrals the remaining
    tail is added by geometric extrapolation.
    """
    total = 0.0
    prev_inc = None
    flat_count = 0
    last_ratio = None
    b = float(upper)
    for depth in range(max_depth):
        a = 0.5 * b
        inc = gauss_panels(f, np.array([a, b]), order=order)
        total += inc
        if prev_inc is not None and prev_inc > 0 and inc > 0:
            last_ratio = inc / prev_inc
            if depth >= min_depth and last_ratio >= flat_ratio:
                flat_count += 1
                if flat_count >= flat_runs:
                    raise DivergenceError(
                        f"integral diverges at the origin: dyadic increments "
                        f"stopped decaying (last ratio {last_ratio:.3f} over "
                        f"{flat_runs} panels, partial sum {total:.6e})"
                    )
            else:
                flat_count = 0
        if depth >= min_depth and total == 0.0 and inc == 0.0:
            return 0.0
        if (depth >= min_depth and total > 0 and inc < rel_tol * total
                and prev_inc is not None and inc <= prev_inc):
            # geometric tail below the last resolved panel
            if last_ratio is not None and last_ratio < flat_ratio:
                total += inc * last_ratio / (1.0 - last_ratio)
            return total
        prev_inc = inc
        b = a
    raise NumericalFailureError(
        f"singular-origin integral did not settle within {max_depth} dyadic panels "
        f"(partial sum {total:.6e}, last increment {prev_inc!r})"
    )
