from fractions import Fraction as F

import pytest

from saddlecoef.errors import ComputationRefused, InputError
from saddlecoef.examples import (ex3_expected_rho, ex3_reversion, run_example, run_example_1,
                                 run_example_2, run_example_4)


def col(table, name):
    i = table.columns.index(name)
    return [row[i] for row in table.rows]


def test_example_1_trend():
    (t,) = run_example_1(1)
    assert col(t, "k") == [9, 12, 15]
    errs = [abs(x - 1) for x in col(t, "ratio")]
    assert errs[0] > errs[1] > errs[2]


def test_example_2_nonnegative():
    (t,) = run_example_2()
    assert len(t.rows) == 15
    assert min(col(t, "min_g_general")) >= -1e-9
    assert max(col(t, "max_abs_diff")) <= 1e-12


@pytest.mark.parametrize("b, c", [(1, 1), (2, 3), (F(1, 2), F(1, 2)), (F(-1, 3), 5)])
def test_example_3_reversion(b, c):
    rho = ex3_reversion(b, c)
    for p, v in ex3_expected_rho(b, c).items():
        assert rho[p] == v


def test_example_3_table():
    rev, est = run_example(3, 2, 3, scale=2)
    assert all(col(rev, "match"))
    assert col(est, "m") == [2]


def test_example_4_rows():
    (t,) = run_example_4(1, 1, scale=2)
    assert col(t, "k") == [64, 63]
    assert col(t, "upper_bound_only") == [True, False]
    assert col(t, "estimate_log")[0] is None


def test_budgets():
    with pytest.raises(ComputationRefused, match="--scale"):
        run_example(1, scale=1000)
    with pytest.raises(ComputationRefused):
        run_example(2, scale=1e6)
    with pytest.raises(ComputationRefused):
        run_example(3, scale=50)
    with pytest.raises(InputError):
        run_example(5)
