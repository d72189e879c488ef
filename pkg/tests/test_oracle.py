import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from saddlecoef.errors import InputError
from saddlecoef.oracle import (contour_coefficient, exact_coefficient, locate_maxima,
                               multinomial_coefficient, poly_mul_trunc)
from saddlecoef.profile import SeriesSpec
from saddlecoef.saddle import solve_saddle

EX1 = SeriesSpec(((3, F(1, 3)), (4, F(1))))
LINEAR = SeriesSpec(((1, F(1)),))


def test_small_values():
    assert exact_coefficient(EX1, 2, 7).exact == F(2, 3)
    assert multinomial_coefficient(EX1, 2, 7).exact == F(2, 3)
    a = exact_coefficient(EX1, 3, 12)
    assert a.exact == multinomial_coefficient(EX1, 3, 12).exact == 1
    assert a.method == "power-truncate" and a.sign == 1 and a.log_value == 0.0


@pytest.mark.parametrize("n", [1, 5, 17, 30])
def test_binomial(n):
    for k in range(n + 1):
        assert exact_coefficient(LINEAR, n, k).exact == math.comb(n, k)


def test_unreachable_is_zero():
    r = exact_coefficient(EX1, 5, 5)
    assert r.exact == 0 and r.sign == 0 and r.log_value == -math.inf
    # gcd shortcut: only multiples of 3 are reachable from z^3, z^6
    g = SeriesSpec(((3, F(1)), (6, F(2))))
    assert exact_coefficient(g, 4, 10).exact == 0
    assert exact_coefficient(g, 4, 9).exact == multinomial_coefficient(g, 4, 9).exact


def test_signed_coefficients():
    f = SeriesSpec(((1, F(-2)), (2, F(1))))     # (1 - z)^2
    for k in range(9):
        expected = (-1) ** k * math.comb(8, k)
        assert exact_coefficient(f, 4, k).exact == expected


def test_poly_mul_trunc_signed():
    a = [3, -5, 0, 7]
    b = [-2, 4, 1]
    full = [0] * 6
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            full[i + j] += x * y
    assert poly_mul_trunc(a, b, 4) == full[:5]
    assert poly_mul_trunc([0, 0], [1], 2) == [0, 0, 0]


def test_rejections():
    with pytest.raises(InputError):
        exact_coefficient(EX1, 2, -1)
    with pytest.raises(InputError):
        exact_coefficient(SeriesSpec(((2, F(1)),), truncation_degree=5), 3, 6)
    with pytest.raises(InputError):
        contour_coefficient(EX1, 3, 10, 0.5, Q=8)


def test_contour_binomial():
    q = contour_coefficient(LINEAR, 10, 3, 0.5, Q=256)
    assert q.method == "quadrature"
    assert q.value == pytest.approx(120, rel=1e-8)


def test_contour_at_saddle():
    sp = solve_saddle(EX1, 20, 12)
    q = contour_coefficient(EX1, 20, 12, sp.r, Q=512)
    ex = exact_coefficient(EX1, 20, 12)
    assert abs(q.value / float(ex.exact) - 1) < 1e-8


def test_contour_large_power_stays_finite():
    # f(r)^n overflows a double; the scaled accumulation must not
    n, k = 10 ** 6, 30
    sp = solve_saddle(EX1, n, k)
    q = contour_coefficient(EX1, n, k, sp.r)
    ex = exact_coefficient(EX1, n, k)
    assert abs(q.log_value - ex.log_value) < 1e-8


@st.composite
def small_specs(draw):
    exps = draw(st.lists(st.integers(1, 8), min_size=1, max_size=4, unique=True))
    coeffs = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5)
                           .filter(lambda x: x != 0), min_size=len(exps), max_size=len(exps)))
    return SeriesSpec(tuple(sorted(zip(exps, coeffs))))


@settings(max_examples=60, deadline=None)
@given(small_specs(), st.integers(0, 12), st.integers(0, 30))
def test_power_truncate_equals_multinomial(f, n, k):
    assert exact_coefficient(f, n, k).exact == multinomial_coefficient(f, n, k).exact


def test_maxima_ex1():
    for r in (0.05, 0.025, 0.0125):
        mp = locate_maxima(EX1, r)
        assert mp.count_matches and len(mp.thetas) == 1
        assert abs(mp.thetas[0] - 2 * math.pi / 3) < 3 * r
        assert all(v < 1 for v in mp.values)
        assert max(mp.residuals) < 1e-10


def test_maxima_even_l_hits_pi():
    f = SeriesSpec(((4, F(1, 4)), (5, F(1))))
    mp = locate_maxima(f, 0.05)
    assert len(mp.thetas) == 2 and mp.thetas[-1] == math.pi
    assert mp.thetas[0] == pytest.approx(math.pi / 2, abs=0.1)
    assert list(mp.thetas) == sorted(mp.thetas)


def test_strong_positivity_sweep():
    import numpy as np
    f = SeriesSpec(((3, F(1, 3)), (4, F(1)), (7, F(2))))
    r = 0.05
    theta = np.linspace(0.05, 2 * math.pi - 0.05, 2000)
    z = r * np.exp(1j * theta)
    vals = np.abs(1 + z ** 3 / 3 + z ** 4 + 2 * z ** 7) / float(f(r))
    assert vals.max() < 1


def test_maxima_flag_when_count_differs():
    # a large radius can merge or add maxima; the result is flagged, not raised
    f = SeriesSpec(((3, F(1, 3)), (4, F(1))))
    mp = locate_maxima(f, 3.0)
    assert mp.expected == 1
    assert isinstance(mp.count_matches, bool)
