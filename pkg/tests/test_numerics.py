"""Quadrature and root-refinement unit tests."""

from __future__ import annotations

import math

import pytest

from spinwire.numerics import adaptive_simpson, bisect_root, bracket_first_sign_change


def test_simpson_polynomial_exact():
    assert adaptive_simpson(lambda x: x * x, 0.0, 1.0, 1e-12) == pytest.approx(
        1.0 / 3.0, abs=1e-12
    )


def test_simpson_sine():
    assert adaptive_simpson(math.sin, 0.0, math.pi, 1e-10) == pytest.approx(
        2.0, abs=1e-9
    )


def test_simpson_vanishing_integrand():
    # distance of a curve from itself integrates to zero
    f = lambda x: (math.exp(-x) - math.exp(-x)) ** 2
    assert adaptive_simpson(f, 0.0, 1.0, 1e-12) == 0.0


def test_simpson_steep_power():
    assert adaptive_simpson(lambda x: x**84, 0.0, 1.0, 1e-12) == pytest.approx(
        1.0 / 85.0, rel=1e-8
    )


def test_simpson_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        adaptive_simpson(math.sin, 0.0, 1.0, 0.0)


def test_simpson_depth_exhaustion():
    with pytest.raises(RuntimeError, match="depth"):
        adaptive_simpson(lambda x: abs(x - 1 / 3) ** -0.5, 0.0, 1.0, 1e-14, max_depth=4)


def test_bisect_finds_root():
    assert bisect_root(math.cos, 0.0, 2.0, xtol=1e-13) == pytest.approx(
        math.pi / 2, abs=1e-12
    )


def test_bisect_exact_endpoint():
    assert bisect_root(lambda x: x - 1.0, 1.0, 2.0) == 1.0
    assert bisect_root(lambda x: x - 2.0, 1.0, 2.0) == 2.0


def test_bisect_requires_bracket():
    with pytest.raises(ValueError, match="sign change"):
        bisect_root(lambda x: 1.0 + x * x, 0.0, 1.0)


def test_bracket_marches_geometrically():
    lo, hi = bracket_first_sign_change(lambda x: x - 1e-3, 1e-6, 10.0)
    assert lo <= 1e-3 <= hi
    assert hi / lo <= 1.05 + 1e-9


def test_bracket_returns_none_without_root():
    assert bracket_first_sign_change(lambda x: 1.0, 1e-6, 3.0) is None


def test_bracket_rejects_bad_window():
    with pytest.raises(ValueError):
        bracket_first_sign_change(lambda x: x, 0.0, 1.0)
