import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from saddlecoef.errors import InputError
from saddlecoef.profile import SeriesSpec, analyze, exact_root, normalize


def spec(**terms):
    return SeriesSpec.from_mapping({int(k[1:]): v for k, v in terms.items()})


def test_ex1_profile():
    p = analyze(SeriesSpec(((3, F(1, 3)), (4, F(1)))))
    assert (p.d, p.l, p.m, p.lj, p.eps0, p.strongly_positive) == (1, 3, 1, (4,), F(1, 4), True)
    assert p.lj_prime == (4,)


def test_ex2_profile():
    p = analyze(SeriesSpec(((15, 1), (20, 1), (21, 1))))
    assert p.l == 15 and p.m == 7
    assert set(p.lj) == {20, 21}
    assert [j for j, x in enumerate(p.lj, 1) if x == 21] == [3, 6]


def test_ex3_profile():
    p = analyze(SeriesSpec(((9, F(1, 9)), (15, F(2)), (25, F(3)))))
    assert p.l == 9 and p.lj == (15, 15, 25, 15)
    assert p.eps0 == F(16, 25)


def test_negative_secondary_coefficient_breaks_positivity():
    p = analyze(SeriesSpec(((3, F(1, 3)), (4, F(-1)))))
    assert not p.strongly_positive
    assert not analyze(SeriesSpec(((3, F(-1)),))).strongly_positive


def test_gcd_reduction():
    f = SeriesSpec(((6, F(1, 3)), (8, F(1))))
    p = analyze(f)
    assert p.d == 2 and p.l == 3 and p.lj == (4,)
    d, g = f.reduced()
    for k in range(1, 6):
        assert f.coefficient(d * k) == g.coefficient(k)


def test_l_one_is_degenerate():
    p = analyze(SeriesSpec(((1, F(1)), (2, F(1)))))
    assert p.l == 1 and p.m == 0 and p.degenerate and p.lj == () and p.eps0 is None


def test_l_two_has_no_lprime():
    p = analyze(SeriesSpec(((2, F(1, 2)), (3, F(1)))))
    assert p.lj == (3,) and p.lj_prime == ()


def test_truncated_series_uses_trusted_terms():
    f = SeriesSpec(((4, F(1, 4)), (6, F(1)), (9, F(1))), truncation_degree=12)
    p = analyze(f)
    assert (p.l, p.lj, p.eps0) == (4, (6, 9), F(5, 9))
    with pytest.raises(InputError):
        f.coefficient(13)


def test_spec_validation():
    with pytest.raises(InputError):
        SeriesSpec(((3, F(0)),))
    with pytest.raises(InputError):
        SeriesSpec(((4, 1), (3, 1)))
    with pytest.raises(InputError):
        SeriesSpec(())
    with pytest.raises(InputError):
        SeriesSpec.from_mapping({0: 2, 3: 1})


def test_tail_bound():
    f = SeriesSpec(((2, F(1)), (3, F(1))), truncation_degree=5, radius=1.0)
    assert f.tail_bound(0.5) == pytest.approx(0.5 ** 6 / 0.5)
    assert math.isinf(f.tail_bound(1.0))
    assert SeriesSpec(((2, 1),)).tail_bound(10.0) == 0.0


def test_normalize():
    f = SeriesSpec(((3, F(1, 3)),))
    a, ae, g = normalize(f)
    assert ae == 1 and g == f
    a, ae, g = normalize(SeriesSpec(((3, F(1)),)))
    assert ae is None and a == pytest.approx(3 ** (-1 / 3))
    assert 3 * g.coefficient(3) == pytest.approx(1.0)
    assert g.terms[0][1] == pytest.approx(1 / 3)
    a, ae, g = normalize(SeriesSpec(((3, F(9)), (4, F(1)))))
    assert ae == F(1, 3) and g.coefficient(3) == F(1, 3) and g.coefficient(4) == F(1, 81)
    with pytest.raises(InputError):
        normalize(SeriesSpec(((3, F(-1)),)))


def test_exact_root():
    assert exact_root(F(27, 8), 3) == F(3, 2)
    assert exact_root(F(2), 2) is None


@st.composite
def specs(draw):
    exps = draw(st.lists(st.integers(2, 30), min_size=1, max_size=5, unique=True))
    coeffs = draw(st.lists(st.fractions(min_value=F(1, 9), max_value=5, max_denominator=9),
                           min_size=len(exps), max_size=len(exps)))
    return SeriesSpec(tuple(sorted(zip(exps, coeffs))))


@settings(max_examples=100, deadline=None)
@given(specs(), st.integers(1, 4))
def test_profile_invariants(f, d):
    p = analyze(f)
    if p.l == 1:
        return
    for j, lj in enumerate(p.lj, 1):
        assert (j * lj) % p.l != 0
        assert abs(complex(math.cos(lj * p.theta(j)), math.sin(lj * p.theta(j))) - 1) > 1e-9
    for j, lp in enumerate(p.lj_prime, 1):
        assert lp >= p.lj[j - 1]
        assert abs(math.sin(p.theta(j) * lp)) > 1e-9
        if p.l % 2:
            assert lp == p.lj[j - 1]
    if p.m:
        assert 0 < p.eps0 < 1
        assert any(1 - F(p.l, x) == p.eps0 for x in p.lj)
    # f(z^d) has the same profile with d recorded
    fd = SeriesSpec(tuple((e * d, c) for e, c in f.terms))
    q = analyze(fd)
    assert q.d == d * p.d and (q.l, q.lj, q.lj_prime, q.eps0) == (p.l, p.lj, p.lj_prime, p.eps0)


@settings(max_examples=50, deadline=None)
@given(specs(), st.fractions(min_value=F(1, 5), max_value=3, max_denominator=5))
def test_scaling_transports_coefficients(f, a):
    g = f.scaled(a)
    for e, c in f.terms:
        assert g.coefficient(e) / c == a ** e
