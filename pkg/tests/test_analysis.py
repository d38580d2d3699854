from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stackperc.analysis import (
    DensityQuery,
    TreeShape,
    alpha,
    critical_p,
    density_series,
    enumerate_trees,
    fuss_catalan,
    fuss_catalan_recursive,
    gamma_critical,
    hat_gamma,
    q_poly,
    tree_codes,
)


def test_small_fuss_catalan_values():
    # ternary trees: 1, 1, 3, 12, 55, 273
    assert [fuss_catalan(2, s) for s in range(6)] == [1, 1, 3, 12, 55, 273]
    # quaternary trees
    assert [fuss_catalan(3, s) for s in range(5)] == [1, 1, 4, 22, 140]


def test_dimension_guard():
    with pytest.raises(ValueError):
        fuss_catalan(1, 3)


@pytest.mark.parametrize("d", [2, 3])
def test_three_counts_agree(d):
    for s in range(9):
        assert fuss_catalan(d, s) == fuss_catalan_recursive(d, s) == len(set(tree_codes(d, s)))


def test_enumerated_shapes():
    shapes = enumerate_trees(2, 2)
    assert len(shapes) == 3
    for t in shapes:
        assert t.internal == 2 and t.leaves == 5
        assert len(t.children()) == 3


def test_enumeration_guard():
    with pytest.raises(ValueError):
        enumerate_trees(3, 12)


def test_alpha_exact():
    assert alpha(2) == Fraction(27, 4)
    assert alpha(3) == Fraction(256, 27)


def test_critical_values():
    assert gamma_critical(2) == pytest.approx((4 / 27) ** 0.5)
    assert critical_p(2, 200) == pytest.approx((27 / 4 * 200) ** -0.5)
    with pytest.raises(ValueError):
        critical_p(2, 3)


@given(st.integers(2, 5), st.floats(0, 1))
def test_root_solves_polynomial(d, frac):
    g = frac * gamma_critical(d)
    x = hat_gamma(d, g)
    assert abs(q_poly(d, g, x)) <= 1e-12
    assert 0 <= x <= (d + 1) ** (-1 / d) + 1e-12


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_root_at_critical_point(d):
    assert hat_gamma(d, gamma_critical(d)) == pytest.approx((d + 1) ** (-1 / d), abs=1e-6)


def test_supercritical_rejected():
    with pytest.raises(ValueError):
        DensityQuery(2, 0.5)
    with pytest.raises(ValueError):
        hat_gamma(2, -0.1)


def test_series_matches_root():
    assert abs(density_series(2, 0.2, 200) - hat_gamma(2, 0.2)) <= 1e-8
    assert hat_gamma(2, 0.0) == 0.0
