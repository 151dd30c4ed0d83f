"""Exact power series for the auto-fidelity of the observed qubit.

The overlap alpha0(t) of the evolved site-0 operator with its initial
self is even in time, with Maclaurin coefficients that are finite sums
of walk counts weighted by powers of the two couplings:

    alpha0(t) = 1 + sum_{j>=1} (-1)^j t^(2j) / (2j)! *
                sum_{k=0}^{j-1} l(2j, k) * K0^(2(k+1)) * K^(2(j-k-1))

where l(n, k) counts n-step non-negative walks through the origin k
interior times.  Each interior origin visit trades a pair of wire hops
for a pair of plug hops, which is where the K0/K bookkeeping comes
from.  The same coefficient also has a terminating Gauss-hypergeometric
form, implemented independently as a cross-check.

Coefficients are exact rationals end to end.  Floating point enters
only when a series is evaluated at a concrete time, so cancellation is
confined to the final sum and reported through an error estimate; the
alternating series is trustworthy roughly while the last retained term
is small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .walks import walk_count

DEFAULT_ORDER = 20

RationalLike = Rational | int | float


def _as_fraction(value: RationalLike, name: str) -> Fraction:
    # Fraction(float) is exact: a float is a binary rational.
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} must be a rational number, got {value!r}") from exc


@dataclass(frozen=True)
class SeriesCoefficients:
    """Maclaurin data for alpha0: alpha0(t) ~ sum_j coeffs[j] * t^(2j)."""

    k0_sq: Fraction
    k_sq: Fraction
    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def series_coefficient(j: int, k0_sq: RationalLike, k_sq: RationalLike) -> Fraction:
    """Exact coefficient of t^(2j) from the walk-count sum."""
    if j < 0:
        raise ValueError(f"series index must be non-negative, got {j}")
    if j == 0:
        return Fraction(1)
    p = _as_fraction(k0_sq, "k0_sq")
    q = _as_fraction(k_sq, "k_sq")
    total = Fraction(0)
    for k in range(j):
        total += walk_count(2 * j, k) * p ** (k + 1) * q ** (j - k - 1)
    return Fraction((-1) ** j, math.factorial(2 * j)) * total


def hypergeometric_coefficient(
    j: int, ratio_sq: RationalLike, k_sq: RationalLike = 1
) -> Fraction:
    """Same coefficient via the terminating 2F1(1-j, 2; 2-2j; z) sum.

    z = ratio_sq = (K0/K)^2, and the prefactor is
    (-1)^j K^(2j)/(2j)! * z * (2j-2)! / ((j-1)! j!).  Equals
    series_coefficient(j, z * k_sq, k_sq) as an exact rational; the two
    routes share no code beyond Fraction arithmetic.

    j = 0 is rejected: the prefactor has (j-1)! and the constant term 1
    belongs to series_coefficient.
    """
    if j < 1:
        raise ValueError(f"hypergeometric form needs j >= 1, got {j}")
    z = _as_fraction(ratio_sq, "ratio_sq")
    if z <= 0:
        raise ValueError(f"ratio_sq must be positive, got {ratio_sq!r}")
    ksq = _as_fraction(k_sq, "k_sq")

    # Terminating sum: (1-j)_s kills everything from s = j on, and the
    # denominator Pochhammer (2-2j)_s never crosses zero before that.
    total = Fraction(0)
    term = Fraction(1)
    for s in range(j):
        if s > 0:
            term *= Fraction((-j + s) * (s + 1), (1 - 2 * j + s) * s) * z
        total += term

    prefactor = (
        Fraction((-1) ** j)
        * ksq**j
        * z
        * Fraction(math.factorial(2 * j - 2), math.factorial(2 * j))
        / (math.factorial(j - 1) * math.factorial(j))
    )
    return prefactor * total


def build_series(
    k0_sq: RationalLike, k_sq: RationalLike, order: int = DEFAULT_ORDER
) -> SeriesCoefficients:
    """Assemble exact coefficients c_0 .. c_(2*order)."""
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    p = _as_fraction(k0_sq, "k0_sq")
    q = _as_fraction(k_sq, "k_sq")
    if p < 0 or q < 0:
        raise ValueError("squared couplings must be non-negative")
    coeffs = tuple(series_coefficient(j, p, q) for j in range(order + 1))
    return SeriesCoefficients(k0_sq=p, k_sq=q, coeffs=coeffs)


def evaluate_series(coeffs: SeriesCoefficients, t: float) -> tuple[float, float]:
    """Evaluate the truncated series at time t.

    Horner in t^2 on float-converted coefficients.  The error estimate
    is twice the magnitude of the last retained term, a heuristic bound
    for the alternating tail; the caller decides whether that is good
    enough.  Outside the window where the estimate is small the
    truncated polynomial is not a meaningful value of alpha0.
    """
    if coeffs.order < 2:
        raise ValueError(f"series must be built to order >= 2, got {coeffs.order}")
    u = t * t
    acc = 0.0
    for c in reversed(coeffs.coeffs):
        acc = acc * u + float(c)
    last_term = abs(float(coeffs.coeffs[-1])) * u ** coeffs.order
    return acc, 2.0 * last_term


def alpha_z(alpha_x: float) -> float:
    """Z-autocorrelation from the X one: the Z overlap is the square."""
    return alpha_x * alpha_x
