"""Bessel oracles and the analytic special cases of the auto-fidelity.

Three coupling configurations admit closed forms:

    wire off (K = 0)        alpha0(t) = cos(K0 t)
    K0 = sqrt(2) K          alpha0(t) = J0(2 K t)
    K0 = K                  alpha0(t) = J1(2 K t) / (K t)

J0 and J1 are implemented in-repo because they serve as independent
oracles for the series and matrix routes; their accuracy contract
(absolute error below 1e-12 for |x| <= 50) is owned and tested here
rather than assumed from an environment.  Ascending power series below
|x| = 12, Hankel asymptotic amplitude/phase expansion at and above;
both branches meet the contract at the switch point.

The long-time envelopes of the two Bessel cases decay as t^(-1/2) and
t^(-3/2); :func:`envelope_exponent` measures such exponents from a
sampled trace by fitting its peak heights on log-log axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .propagator import AlphaTrace

SERIES_ASYMPTOTIC_SWITCH = 12.0
RATIO_MATCH_TOL = 1e-12
MIN_PEAKS_FOR_FIT = 4


# ---------------------------------------------------------------------------
# Bessel functions J0, J1
# ---------------------------------------------------------------------------

def _ascending_series(nu: int, x: float) -> float:
    # J_nu(x) = sum_m (-1)^m (x/2)^(2m+nu) / (m! (m+nu)!); terms collected
    # and fsum-ed so the only rounding left is in the terms themselves.
    half = 0.5 * x
    q = half * half
    term = 1.0 if nu == 0 else half
    terms = [term]
    m = 0
    while abs(term) > 1e-19 or m < 4:
        m += 1
        term *= -q / (m * (m + nu))
        terms.append(term)
        if m > 80:  # converged long before this for |x| < 12
            break
    return math.fsum(terms)


def _hankel(nu: int, x: float) -> float:
    # Amplitude/phase form sqrt(2/(pi x)) (P cos w - Q sin w) with
    # w = x - (2 nu + 1) pi / 4.  P collects the even Poincare terms,
    # Q the odd ones; each sum stops at its smallest term (optimal
    # truncation), which is far below 1e-12 for x >= 12.
    mu = 4 * nu * nu
    ratios = []
    a = 1.0
    for m in range(1, 40):
        a *= (mu - (2 * m - 1) ** 2) / (8.0 * m * x)
        ratios.append(a)

    def alternating_sum(terms: list[float]) -> float:
        total, last = 0.0, math.inf
        for i, t in enumerate(terms):
            magnitude = abs(t)
            if magnitude >= last:
                break
            total += -t if i % 2 else t
            last = magnitude
        return total

    p = alternating_sum([1.0] + ratios[1::2])
    q = alternating_sum(ratios[0::2])
    w = x - (2 * nu + 1) * math.pi / 4.0
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(w) - q * math.sin(w))


def bessel_j0(x: float) -> float:
    """Bessel J0, absolute error below 1e-12 for |x| <= 50."""
    ax = abs(x)  # J0 is even
    if ax < SERIES_ASYMPTOTIC_SWITCH:
        return _ascending_series(0, ax)
    return _hankel(0, ax)


def bessel_j1(x: float) -> float:
    """Bessel J1, absolute error below 1e-12 for |x| <= 50."""
    ax = abs(x)
    value = _ascending_series(1, ax) if ax < SERIES_ASYMPTOTIC_SWITCH else _hankel(1, ax)
    return -value if x < 0 else value  # J1 is odd


# ---------------------------------------------------------------------------
# Special-case classification and closed-form evaluation
# ---------------------------------------------------------------------------

WIRE_OFF = "wire_off"
SQRT2_RATIO = "sqrt2_ratio"
EQUAL_COUPLINGS = "equal_couplings"
GENERIC = "generic"


@dataclass(frozen=True)
class SpecialCase:
    kind: str
    k0: float
    k: float


def classify_couplings(k0: float, k: float) -> SpecialCase:
    """Match a coupling pair against the analytically solvable cases."""
    if k0 < 0 or k < 0:
        raise ValueError("couplings must be non-negative")
    if k == 0:
        kind = WIRE_OFF
    elif abs(k0 - math.sqrt(2.0) * k) <= RATIO_MATCH_TOL * k0:
        kind = SQRT2_RATIO
    elif abs(k0 - k) <= RATIO_MATCH_TOL * k0:
        kind = EQUAL_COUPLINGS
    else:
        kind = GENERIC
    return SpecialCase(kind=kind, k0=k0, k=k)


def alpha_closed(case: SpecialCase, t: float) -> float:
    """Closed-form alpha0 for the solvable coupling ratios.

    The equal-couplings form has a removable singularity at t = 0, where
    the value is 1.  Generic ratios have no closed form; the matrix
    propagator handles those.
    """
    if case.kind == WIRE_OFF:
        return math.cos(case.k0 * t)
    if case.kind == SQRT2_RATIO:
        return bessel_j0(2.0 * case.k * t)
    if case.kind == EQUAL_COUPLINGS:
        y = case.k * t
        if y == 0.0:
            return 1.0
        return bessel_j1(2.0 * y) / y
    raise ValueError(
        f"no closed form for k0={case.k0}, k={case.k}; use the matrix propagator"
    )


def envelope_exponent(trace: AlphaTrace, t_min: float, t_max: float) -> float:
    """Power-law exponent of the oscillation envelope of |alpha0|.

    Finds the local maxima of |alpha0| inside [t_min, t_max], sharpens
    each with a three-point parabolic fit, and least-squares fits
    log(peak) against log(t).  The trace must resolve consecutive
    extrema (twenty or so samples per oscillation period).
    """
    mask = (trace.times >= t_min) & (trace.times <= t_max)
    times = trace.times[mask]
    magnitudes = np.abs(trace.values[mask])

    peak_times, peak_values = [], []
    for i in range(1, len(times) - 1):
        if magnitudes[i] > magnitudes[i - 1] and magnitudes[i] >= magnitudes[i + 1]:
            t_peak, v_peak = _parabolic_refine(
                times[i - 1 : i + 2], magnitudes[i - 1 : i + 2]
            )
            if v_peak > 0:
                peak_times.append(t_peak)
                peak_values.append(v_peak)

    if len(peak_times) < MIN_PEAKS_FOR_FIT:
        raise RuntimeError(
            f"need at least {MIN_PEAKS_FOR_FIT} envelope peaks in "
            f"[{t_min}, {t_max}], found {len(peak_times)}"
        )
    slope = np.polyfit(np.log(peak_times), np.log(peak_values), 1)[0]
    return float(slope)


def _parabolic_refine(ts, vs) -> tuple[float, float]:
    # Vertex of the parabola through three samples; falls back to the
    # middle sample when the points are degenerate (flat top).
    denominator = (vs[0] - 2 * vs[1] + vs[2])
    if denominator >= 0:
        return float(ts[1]), float(vs[1])
    h = 0.5 * (ts[2] - ts[0])
    shift = 0.5 * (vs[0] - vs[2]) / denominator
    t_peak = ts[1] + shift * h
    v_peak = vs[1] - 0.25 * (vs[0] - vs[2]) * shift
    return float(t_peak), float(v_peak)
