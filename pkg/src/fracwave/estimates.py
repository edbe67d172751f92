"""Closed-form bound curves and the proof-machinery computations behind them.

The transform-level norm ||uhat(t)||_2 of the evolved solution obeys, for
one-dimensional data with nonzero velocity moment P = integral u1 dx,

    lower:  (theta0/4) |P| t^(1 - 1/(2s))            (1/2 < s < 1)
            (|P| / (3e)) sqrt(log t)                 (s = 1/2)
    upper:  sqrt(4s/(2s-1)) (||u0||_2 + ||u1||_1) t^(1 - 1/(2s))
            2 (||u0||_2 + ||u1||_2 + ||u1||_1) sqrt(log t)

for all large t, where theta0 in (0,1) is any angle with sin(x)/x >= 1/2 on
(0, theta0].  This module provides those curves as ``BoundSpec`` values, the
frequency-splitting diagnostic at the radius theta0 * t^(-1/s), the
log-growth integral

    K1(t) = 2 * integral_0^inf e^(-r^2) sin^2(t sqrt(r)) / r dr,

and the alternating area sums over the sine bumps of K1's integrand that
establish its logarithmic growth.  Everything here is stated at the raw
transform level ("u_hat"); physical-level statements differ by the
(2 pi)^(-1/2) Plancherel factor of the convention and are tagged "u".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import exp1

from .errors import (InfeasibleThresholdError, NumericalFailureError,
                     ValidityError, WrongRegimeError)
from .quadrature import gauss_panels
from .spectral import Parameters, QuadratureBackend

__all__ = [
    "BoundSpec", "SplitReport", "AreaSumReport",
    "select_theta0", "fourier_split",
    "power_lower_bound", "power_upper_bound",
    "log_lower_bound", "log_upper_bound",
    "log_growth_integral", "area_sums",
    "uniform_bound", "measure_constant",
]

_LOG_EPS = 1e-12


@dataclass(frozen=True)
class BoundSpec:
    """A closed-form bound curve: C * t^alpha, C * sqrt(log t), or C.

    ``level`` records which Plancherel convention the statement lives at:
    "u_hat" for raw transform-level norms, "u" for physical norms.
    """

    kind: str                      # "lower" | "upper"
    form: str                      # "power" | "sqrtlog" | "constant"
    constant: float
    exponent: float | None = None  # for form == "power"
    validity: float | None = None  # smallest trustworthy t, if known
    level: str = "u_hat"

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise ValueError(f"kind must be lower/upper, got {self.kind!r}")
        if self.form not in ("power", "sqrtlog", "constant"):
            raise ValueError(f"unknown bound form {self.form!r}")
        if self.constant < 0:
            raise ValueError("bound constant must be nonnegative")
        if self.form == "power" and self.exponent is None:
            raise ValueError("power-form bounds need an exponent")
        if self.level not in ("u_hat", "u"):
            raise ValueError(f"unknown norm level {self.level!r}")

    def min_time(self) -> float:
        floor = 1.0 + _LOG_EPS if self.form == "sqrtlog" else 0.0
        if self.validity is not None:
            floor = max(floor, self.validity)
        return floor

    def evaluate(self, t):
        """Bound value at time(s) t; rejects t outside the validity region."""
        t = np.asarray(t, dtype=float)
        if np.any(t < self.min_time()):
            raise ValidityError(
                f"{self.form} bound is only valid for t >= {self.min_time():g}")
        if self.form == "power":
            out = self.constant * t ** self.exponent
        elif self.form == "sqrtlog":
            out = self.constant * np.sqrt(np.log(t))
        else:
            out = np.full_like(t, self.constant)
        return out if out.ndim else float(out)

    def at_level(self, level: str) -> "BoundSpec":
        """Convert between the transform-level and physical-level statements."""
        if level == self.level:
            return self
        factor = (2.0 * np.pi) ** (-0.5 if level == "u" else 0.5)
        return BoundSpec(self.kind, self.form, self.constant * factor,
                         self.exponent, self.validity, level)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "form": self.form, "constant": self.constant,
                "exponent": self.exponent, "validity": self.validity,
                "level": self.level}


def select_theta0(threshold: float = 0.5, cap: float = 0.99,
                  samples: int = 20001) -> float:
    """Largest admissible splitting angle theta0 < 1.

    Returns the largest angle (capped at ``cap``) such that sin(x)/x stays at
    or above ``threshold`` on (0, theta0], verified by dense sampling.  When
    even the cap fails the threshold, raises InfeasibleThresholdError whose
    ``feasible_sup`` solves sin(x)/x = threshold.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError("threshold must lie in (0, 1)")
    if not 0.0 < cap < 1.0:
        raise ValueError("the splitting angle must lie in (0, 1)")
    grid = np.linspace(cap / samples, cap, samples)
    minimum = float(np.min(np.sin(grid) / grid))
    if minimum < threshold:
        lo, hi = 1e-12, np.pi - 1e-12
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if np.sin(mid) / mid >= threshold:
                lo = mid
            else:
                hi = mid
        raise InfeasibleThresholdError(
            f"sin(x)/x drops to {minimum:.6f} < threshold {threshold:g} on "
            f"(0, {cap:g}]; the feasible supremum is {lo:.6f}",
            feasible_sup=float(lo))
    return cap


@dataclass(frozen=True)
class SplitReport:
    """Low/high frequency decomposition of the transform-level mass."""

    t: float
    theta0: float
    cut: float
    i_low: float
    i_high: float
    total: float

    def to_dict(self) -> dict:
        return {"t": self.t, "theta0": self.theta0, "cut": self.cut,
                "i_low": self.i_low, "i_high": self.i_high, "total": self.total}


def fourier_split(data, params: Parameters, t: float, theta0: float,
                  backend: QuadratureBackend | None = None) -> SplitReport:
    """Split the spectral mass at the time-dependent radius theta0 * t^(-1/s).

    Requires t > 1 so that the cut radius stays at or below one.  The three
    reported integrals (low, high, total) are computed independently; their
    closure i_low + i_high = total is a quadrature-consistency check, not an
    identity enforced by construction.
    """
    if t <= 1.0:
        raise ValidityError("frequency splitting is defined for t > 1")
    if backend is None:
        backend = QuadratureBackend()
    snap = backend.evolve(data, params, t)
    cut = theta0 * t ** (-1.0 / params.s)
    i_low = snap.spectral_mass(0.0, cut)
    i_high = snap.spectral_mass(cut, None)
    total = snap.spectral_mass(0.0, None)
    return SplitReport(t=t, theta0=theta0, cut=cut,
                       i_low=i_low, i_high=i_high, total=total)


def power_lower_bound(P: float, theta0: float, s: float) -> BoundSpec:
    """Transform-level lower envelope (theta0/4)|P| t^(1-1/(2s)), s in (1/2,1)."""
    _require_power_regime(s)
    if not 0.0 < theta0 < 1.0:
        raise ValueError("theta0 must lie in (0, 1)")
    return BoundSpec("lower", "power", constant=0.25 * theta0 * abs(P),
                     exponent=1.0 - 1.0 / (2.0 * s))


def power_upper_bound(M1: float, s: float) -> BoundSpec:
    """Transform-level upper envelope sqrt(4s/(2s-1)) M1 t^(1-1/(2s))."""
    _require_power_regime(s)
    if M1 < 0:
        raise ValueError("M1 must be nonnegative")
    return BoundSpec("upper", "power",
                     constant=np.sqrt(4.0 * s / (2.0 * s - 1.0)) * M1,
                     exponent=1.0 - 1.0 / (2.0 * s))


def _require_power_regime(s: float):
    if not 0.5 < s < 1.0:
        raise WrongRegimeError(
            f"power-law envelopes hold for s in (1/2, 1), got s={s}; "
            "at s = 1/2 use the sqrt(log t) bounds")


def log_lower_bound(P: float) -> BoundSpec:
    """Transform-level lower envelope (|P|/(3e)) sqrt(log t) for s = 1/2."""
    return BoundSpec("lower", "sqrtlog", constant=abs(P) / (3.0 * np.e))


def log_upper_bound(M2: float) -> BoundSpec:
    """Transform-level upper envelope 2 M2 sqrt(log t) for s = 1/2."""
    if M2 < 0:
        raise ValueError("M2 must be nonnegative")
    return BoundSpec("upper", "sqrtlog", constant=2.0 * M2)


def log_growth_integral(t: float, rel_tol: float = 1e-10) -> float:
    """The damped oscillatory integral 2 int_0^inf e^(-r^2) sin^2(t sqrt(r))/r dr.

    Substituting v = t sqrt(r) turns it into 4 int_0^inf e^(-(v/t)^4)
    sin^2(v)/v dv, whose integrand is entire; panels of length pi then
    resolve every oscillation.  Grows like log t; the relative quadrature
    error is far below the 1e-6 the estimate checks need.
    """
    if t <= 1.0:
        raise ValidityError("the log-growth integral is evaluated for t > 1")
    v_max = 2.8 * t  # e^-(v/t)^4 < 1e-26 beyond
    n_panels = int(np.ceil(v_max / np.pi))
    edges = np.pi * np.arange(n_panels + 1, dtype=float)

    def integrand(v):
        sinv = np.sin(v)
        return np.exp(-(v / t) ** 4) * sinv * sinv / v

    val = 4.0 * gauss_panels(integrand, edges, order=12)
    if not np.isfinite(val) or val <= 0:
        raise NumericalFailureError(
            f"log-growth integral at t={t:g} returned {val!r} "
            f"over {n_panels} phase panels")
    return val


@dataclass(frozen=True)
class AreaSumReport:
    """Alternating area decomposition of int_{a0}^inf e^(-r^2)/r dr.

    The sine bumps of sin^2(t sqrt(r)) sit over [a_i, b_i] with
    a_i = ((i+1/4) pi/t)^2 and b_i = ((i+3/4) pi/t)^2; A_i integrates
    e^(-r^2)/r over a bump, B_i over the following gap [b_i, a_{i+1}].
    """

    t: float
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    A: np.ndarray = field(repr=False)
    B: np.ndarray = field(repr=False)
    truncation_index: int
    tail: float
    tolerance: float

    @property
    def sum_A(self) -> float:
        return float(np.sum(self.A))

    @property
    def sum_B(self) -> float:
        return float(np.sum(self.B))

    @property
    def full_integral(self) -> float:
        """int_{a_0}^inf e^(-r^2)/r dr, exactly 0.5 * E1(a_0^2)."""
        return float(0.5 * exp1(self.a[0] ** 2))

    def to_dict(self) -> dict:
        return {"t": self.t, "panels": int(self.truncation_index + 1),
                "sum_A": self.sum_A, "sum_B": self.sum_B,
                "full_integral": self.full_integral, "tail": self.tail,
                "max_B_over_A": float(np.max(self.B / self.A)),
                "tolerance": self.tolerance}


def _exp_integral_panel(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    # int_lo^hi e^(-r^2)/r dr = (E1(lo^2) - E1(hi^2)) / 2
    return 0.5 * (exp1(lo * lo) - exp1(hi * hi))


def area_sums(t: float, tolerance: float = 1e-10) -> AreaSumReport:
    """Bump/gap area integrals of e^(-r^2)/r until the tail is negligible.

    Panels accumulate until the analytic tail int_{a_I}^inf e^(-r^2)/r dr
    falls below ``tolerance`` times the bump sum.  All integrals use the
    exponential-integral closed form, so the only error is round-off.
    """
    if t <= np.pi / 4.0:
        raise ValidityError("area sums need t > pi/4 so that a_0 < 1")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")

    block = 8192
    a_parts, b_parts, A_parts, B_parts = [], [], [], []
    start = 0
    sum_A = 0.0
    tail = np.inf
    # hard stop: beyond a_i^2 ~ 750 the integrals underflow to zero anyway
    i_hard = int(np.ceil(1.7 * t)) + 8
    while start <= i_hard:
        i = np.arange(start, min(start + block, i_hard + 1), dtype=float)
        a = ((i + 0.25) * np.pi / t) ** 2
        b = ((i + 0.75) * np.pi / t) ** 2
        a_next = ((i + 1.25) * np.pi / t) ** 2
        A = _exp_integral_panel(a, b)
        B = _exp_integral_panel(b, a_next)
        tails = 0.5 * exp1(a_next * a_next)
        sums = sum_A + np.cumsum(A)
        done = tails <= tolerance * sums
        if np.any(done):
            k = int(np.argmax(done))
            sl = slice(0, k + 1)
            a_parts.append(a[sl]); b_parts.append(b[sl])
            A_parts.append(A[sl]); B_parts.append(B[sl])
            tail = float(tails[k])
            break
        a_parts.append(a); b_parts.append(b)
        A_parts.append(A); B_parts.append(B)
        sum_A = float(sums[-1])
        start += block
    else:
        raise NumericalFailureError(
            f"area sums at t={t:g} failed to reach tolerance {tolerance:g}")

    a = np.concatenate(a_parts)
    b = np.concatenate(b_parts)
    A = np.concatenate(A_parts)
    B = np.concatenate(B_parts)
    if np.any(A <= 0) or np.any(B <= 0):
        raise NumericalFailureError(
            "area panels lost positivity before the tail criterion was met; "
            "tolerance is too tight for double precision")
    return AreaSumReport(t=t, a=a, b=b, A=A, B=B,
                         truncation_index=len(A) - 1, tail=tail,
                         tolerance=tolerance)


def uniform_bound(C: float, u0_l2: float, u1_l2: float,
                  u1_integral_norm: float) -> BoundSpec:
    """Constant-in-time bound sqrt(2)||u0||_2 + C(||u1||_2 + ||u1||_*).

    ``u1_integral_norm`` is either the plain L1 norm or a weighted L1 norm,
    depending on which boundedness statement is being instantiated.  The
    bound is at the physical level and valid for all t >= 0.
    """
    if C <= 0:
        raise ValueError("the measured constant C must be positive")
    for name, v in (("u0_l2", u0_l2), ("u1_l2", u1_l2),
                    ("u1_integral_norm", u1_integral_norm)):
        if v is None or v < 0:
            raise ValueError(f"missing or negative norm input {name}")
    value = np.sqrt(2.0) * u0_l2 + C * (u1_l2 + u1_integral_norm)
    return BoundSpec("upper", "constant", constant=float(value), level="u")


def measure_constant(family, functional) -> float:
    """Empirical best constant: max of lhs/rhs over a family of inputs.

    ``functional`` maps a family member to a (lhs, rhs) pair with the bound
    shaped as lhs <= C * rhs.  Degenerate 0/0 members are skipped; a family
    with no informative member is an error.
    """
    ratios = []
    for member in family:
        lhs, rhs = functional(member)
        if rhs == 0.0 and lhs == 0.0:
            continue
        if rhs == 0.0:
            return float("inf")
        ratios.append(lhs / rhs)
    if not ratios:
        raise ValueError("every family member was degenerate (0/0)")
    return float(max(ratios))
