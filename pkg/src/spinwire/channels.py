"""Qubit-level experiments built on top of the auto-fidelity.

Everything downstream of alpha0 lives here:

* the reduced single-qubit channel for a maximally mixed environment
  (transverse Bloch components scale by alpha0, the longitudinal one by
  alpha0 squared);
* an exponentiality metric: integrated squared distance between the
  rescaled decay and exp(-x) on the unit interval;
* the first inflection point of the rescaled decay, numerically and in
  its short-time quadratic approximation;
* the Bloch-vector length of a qubit evolving against a fully
  magnetized chain (single-excitation sector);
* the two-qubit singlet correlation witness with sudden-death and
  rebirth detection;
* a finite-frequency recurrence demo showing why a finite environment
  cannot keep revivals away forever.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numerics import adaptive_simpson, bisect_root, bracket_first_sign_change
from .propagator import ChainSpec, SpectralAlpha
from .series import DEFAULT_ORDER, build_series, evaluate_series

WITNESS_THRESHOLD = 1.0
CROSSING_XTOL = 1e-9
INFLECTION_WINDOW = 3.0
DEFAULT_QUAD_TOL = 1e-10


# ---------------------------------------------------------------------------
# Reduced single-qubit channel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlochVector:
    vx: float
    vy: float
    vz: float

    def __post_init__(self) -> None:
        if self.norm_sq > 1.0 + 1e-12:
            raise ValueError(f"Bloch vector leaves the unit ball: {self}")

    @property
    def norm_sq(self) -> float:
        return self.vx**2 + self.vy**2 + self.vz**2


def apply_channel(v: BlochVector, alpha: float) -> BlochVector:
    """Reduced dynamics against a maximally mixed environment.

    Only the alpha0-weighted part of the evolved operator survives the
    environment trace, so the transverse components contract by alpha
    and the longitudinal one by alpha squared.  Applying alpha1 then
    alpha2 equals applying alpha1*alpha2: the family is a semigroup in
    alpha.
    """
    return BlochVector(alpha * v.vx, alpha * v.vy, alpha * alpha * v.vz)


# ---------------------------------------------------------------------------
# Exponentiality metric
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChiScan:
    """chi values over a set of coupling ratios, with the knobs that made them."""

    ratios: tuple[float, ...]
    chi: tuple[float, ...]
    series_order: int
    quadrature_tolerance: float

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.chi):
            raise ValueError("chi values must be non-negative")


def chi_metric(
    ratio: float, order: int = DEFAULT_ORDER, quad_tol: float = DEFAULT_QUAD_TOL
) -> float:
    """Integrated squared deviation of the rescaled decay from exp(-x).

    Time is rescaled so the characteristic decay time K/K0^2 equals one,
    which pins K0 = ratio and K = ratio^2 for ratio = K/K0.  The decay
    curve is the order-`order` truncated series; the integral runs over
    x in [0, 1] by adaptive Simpson quadrature.

    For large ratios the truncated series stops converging inside the
    unit interval and truncation, not physics, dominates the metric; a
    warning is issued when the series error estimate at x = 1 exceeds
    the quadrature tolerance.
    """
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    r = Fraction(ratio)
    coeffs = build_series(k0_sq=r * r, k_sq=r**4, order=order)

    _, tail = evaluate_series(coeffs, 1.0)
    if tail > quad_tol:
        warnings.warn(
            f"series truncation error {tail:.3g} at x=1 exceeds quad_tol "
            f"{quad_tol:.3g} at ratio {ratio}; chi is truncation-dominated",
            RuntimeWarning,
            stacklevel=2,
        )

    def integrand(x: float) -> float:
        value, _ = evaluate_series(coeffs, x)
        return (value - math.exp(-x)) ** 2

    # In the truncation-dominated regime the integrand is huge and its
    # float evaluation is cancellation-noisy; quadrature cannot resolve
    # below roughly 1e-10 of the integrand scale, so floor the tolerance
    # there instead of subdividing into the noise.
    scale = max(integrand(i / 64.0) for i in range(65))
    return adaptive_simpson(integrand, 0.0, 1.0, max(quad_tol, scale * 1e-10))


def chi_scan(
    ratios, order: int = DEFAULT_ORDER, quad_tol: float = DEFAULT_QUAD_TOL
) -> ChiScan:
    values = tuple(chi_metric(r, order, quad_tol) for r in ratios)
    return ChiScan(
        ratios=tuple(float(r) for r in ratios),
        chi=values,
        series_order=order,
        quadrature_tolerance=quad_tol,
    )


# ---------------------------------------------------------------------------
# Inflection point of the rescaled decay
# ---------------------------------------------------------------------------

def inflection_point(
    k0: float, k: float, order: int = DEFAULT_ORDER
) -> tuple[float, float]:
    """First inflection of alpha0((K/K0^2) x): numeric and quadratic-truncation.

    The numeric value is the first sign change of the exact series'
    second derivative (term-by-term differentiation, geometric
    bracketing, then bisection).  The truncated value keeps only the
    x^0 and x^2 terms of that derivative, giving the closed form
    sqrt(2) (K^2/K0^2 + K^4/K0^4)^(-1/2).  Both depend on the couplings
    only through K/K0.  Returns (numeric_x0, truncated_x0).
    """
    if k0 <= 0 or k <= 0:
        raise ValueError(f"couplings must be positive, got k0={k0}, k={k}")
    q = (Fraction(k) / Fraction(k0)) ** 2  # (K/K0)^2
    tau_sq = Fraction(k) ** 2 / Fraction(k0) ** 4

    # Second derivative of the rescaled series: sum over j >= 1 of
    # c_{2j} tau^{2j} (2j)(2j-1) x^{2j-2}, with float coefficients and
    # Horner in x^2.
    coeffs = build_series(k0_sq=Fraction(k0) ** 2, k_sq=Fraction(k) ** 2, order=order)
    second = [
        float(coeffs.coeffs[j] * tau_sq**j * (2 * j) * (2 * j - 1))
        for j in range(1, order + 1)
    ]

    def d2(x: float) -> float:
        u = x * x
        acc = 0.0
        for c in reversed(second):
            acc = acc * u + c
        return acc

    bracket = bracket_first_sign_change(d2, 1e-6, INFLECTION_WINDOW)
    if bracket is None:
        raise RuntimeError(
            f"no inflection of the rescaled decay in (0, {INFLECTION_WINDOW}] "
            f"for k0={k0}, k={k}"
        )
    numeric_x0 = bisect_root(d2, *bracket, xtol=1e-12)

    q_float = float(q)
    truncated_x0 = math.sqrt(2.0 / (q_float + q_float * q_float))
    return numeric_x0, truncated_x0


# ---------------------------------------------------------------------------
# Magnetized environment
# ---------------------------------------------------------------------------

def magnetized_bloch_trace(spec: ChainSpec, times) -> list[tuple[float, float]]:
    """Squared Bloch length of the qubit against a fully magnetized chain.

    The initial state (qubit along +x, every chain spin up) lives in the
    span of the vacuum and the single-excitation sector, where the chain
    Hamiltonian acts as the same tridiagonal hopping matrix that drives
    alpha0.  The surviving coherence is alpha0(t) and the excitation
    survival probability alpha0(t)^2, so

        v^2(t) = alpha0^2 + (1 - alpha0^2)^2.

    At every zero of alpha0 the excitation has fully left the qubit and
    the state is again completely polarized (v^2 = 1); the global
    minimum 3/4 sits at alpha0^2 = 1/2.
    """
    times = np.asarray(times, dtype=float)
    alpha = SpectralAlpha(spec)(times)
    a_sq = alpha * alpha
    v_sq = a_sq + (1.0 - a_sq) ** 2
    return [(float(t), float(v)) for t, v in zip(times, v_sq)]


# ---------------------------------------------------------------------------
# Singlet witness: sudden death and rebirth
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessTrace:
    """Correlation-square witness samples and the intervals where it exceeds 1."""

    times: np.ndarray
    witness: np.ndarray
    entangled_intervals: tuple[tuple[float, float], ...]
    death_time: float | None
    rebirth_times: tuple[float, ...]

    def __post_init__(self) -> None:
        if np.any(self.witness < 0):
            raise ValueError("witness values must be non-negative")
        for (a0, b0), (a1, b1) in zip(self.entangled_intervals, self.entangled_intervals[1:]):
            if not (a0 <= b0 <= a1 <= b1):
                raise ValueError("entangled intervals must be disjoint and sorted")


def singlet_witness(spec_a: ChainSpec, spec_b: ChainSpec, times) -> WitnessTrace:
    """Evolve a two-qubit singlet, each qubit against its own chain.

    The correlation tensor stays diagonal, diag(-u, -u, -u^2) with
    u = alphaA * alphaB, so the witness (sum of squared entries) is
    W = 2 u^2 + u^4; W > 1 flags entanglement.  W(0) = 3.

    Interval edges found on the grid are refined by bisection.  The grid
    is the caller's resolution contract: intervals narrower than one
    grid step can be missed.
    """
    times = np.asarray(times, dtype=float)
    if times.size < 2 or np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValueError("need a strictly increasing non-negative time grid")
    alpha_a = SpectralAlpha(spec_a)
    alpha_b = SpectralAlpha(spec_b)

    def witness_at(t):
        u = alpha_a(t) * alpha_b(t)
        u_sq = u * u
        return 2.0 * u_sq + u_sq * u_sq

    w = witness_at(times)
    above = w > WITNESS_THRESHOLD  # strict: the criterion is sufficient only

    margin = lambda t: witness_at(t) - WITNESS_THRESHOLD
    intervals: list[tuple[float, float]] = []
    start: float | None = times[0] if above[0] else None
    for i in range(1, len(times)):
        if above[i] and start is None:
            start = bisect_root(
                margin, times[i - 1], times[i], xtol=CROSSING_XTOL
            )
        elif not above[i] and start is not None:
            end = bisect_root(margin, times[i - 1], times[i], xtol=CROSSING_XTOL)
            intervals.append((start, end))
            start = None
    open_ended = start is not None
    if open_ended:
        intervals.append((start, float(times[-1])))

    death_time = None
    if intervals and not (open_ended and len(intervals) == 1):
        death_time = intervals[0][1]
    rebirth_times = tuple(a for a, _ in intervals[1:])

    return WitnessTrace(
        times=times,
        witness=w,
        entangled_intervals=tuple(intervals),
        death_time=death_time,
        rebirth_times=rebirth_times,
    )


# ---------------------------------------------------------------------------
# Poincare recurrence demo
# ---------------------------------------------------------------------------

def recurrence_demo(
    angular_frequencies, times, threshold: float = 0.9
) -> tuple[np.ndarray, float | None]:
    """Survival probability of a toy system with finitely many frequencies.

    P(t) = (m + sum_i cos(2 w_i t)) / (2 m) for m mutually irrational
    frequencies.  P(0) = 1 and, for incommensurate frequencies, P never
    returns to 1; but with few frequencies it climbs back above any
    threshold soon.  Returns the sampled trace and the first time P
    rises above the threshold from below (the initial window, which
    starts at 1, does not count).
    """
    freqs = np.asarray(list(angular_frequencies), dtype=float)
    if not 2 <= freqs.size <= 8:
        raise ValueError(f"need between 2 and 8 frequencies, got {freqs.size}")
    times = np.asarray(times, dtype=float)
    m = freqs.size
    p = (m + np.cos(2.0 * np.outer(times, freqs)).sum(axis=1)) / (2.0 * m)

    first_exceedance = None
    below = p <= threshold
    for i in range(1, len(times)):
        if below[i - 1] and not below[i]:
            first_exceedance = float(times[i])
            break
    return p, first_exceedance
