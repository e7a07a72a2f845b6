import pytest
from hypothesis import given
from hypothesis import strategies as st

from congrundy.metrics import metric_dev, metric_diff


@pytest.mark.parametrize("a, b, expected", [(11, 10, 10.0), (10, 10, 0.0), (9, 10, -10.0)])
def test_dev(a, b, expected):
    assert metric_dev(a, b) == pytest.approx(expected)


def test_diff():
    assert metric_diff(103, 100) == pytest.approx(3.0)
    assert metric_diff(7.3, 7.3) == 0.0


@pytest.mark.parametrize("f", [metric_dev, metric_diff])
def test_zero_base(f):
    with pytest.raises(ZeroDivisionError):
        f(1, 0)


@given(st.floats(0.1, 1e6), st.floats(0.1, 1e6))
def test_diff_sign(a, b):
    d = metric_diff(a, b)
    assert (d > 0) == (a > b) and (d < 0) == (a < b)
