from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linftile.core import (
    Box,
    DimensionMismatch,
    Interval,
    Q,
    Side,
    as_window,
    floor_log2,
    format_scalar,
    point,
    scalar,
    sup_norm,
)

from conftest import rationals


@pytest.mark.parametrize(
    "value,expected",
    [("3", (1, False)), ("2", (1, True)), ("5/2", (1, False)), ("1", (0, True)), ("1/3", (-2, False)), ("1/4", (-2, True))],
)
def test_floor_log2_examples(value, expected):
    assert floor_log2(scalar(value)) == expected


@given(st.fractions(min_value=Fraction(1, 10**6), max_value=10**6))
def test_floor_log2_brackets(s):
    k, exact = floor_log2(Q(s))
    assert Fraction(2) ** k <= s < Fraction(2) ** (k + 1)
    assert exact == (s == Fraction(2) ** k)


@given(st.integers(min_value=1, max_value=2**40))
def test_floor_log2_integers_match_bit_length(n):
    assert floor_log2(Q(n)) == (n.bit_length() - 1, n & (n - 1) == 0)


def test_floor_log2_rejects_nonpositive():
    with pytest.raises(ValueError):
        floor_log2(Q(0))


def test_scalar_parsing_is_exact():
    assert scalar("0.4") == Q(2, 5)
    assert scalar("11/5") == Q(11, 5)
    assert scalar(Fraction(3, 7)) == Q(3, 7)
    assert scalar(-3) == Q(-3)
    assert format_scalar(Q(-11, 5)) == "-11/5"
    assert format_scalar(Q(4)) == "4"


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_scalar_rejects_inexact(bad):
    with pytest.raises(TypeError):
        scalar(bad)


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.2.3"])
def test_scalar_rejects_malformed(bad):
    with pytest.raises(ValueError):
        scalar(bad)


def test_point_and_sup_norm():
    assert point("1/2", "-3") == (Q(1, 2), Q(-3))
    assert point(["1", "2"]) == (Q(1), Q(2))
    assert sup_norm(point("1/2", "-3")) == 3


def test_interval_open_sides():
    lidless = Interval(1, 2, Side.LOWER)
    assert not lidless.contains(Q(1)) and lidless.contains(Q(2)) and lidless.contains(Q(3, 2))
    assert str(lidless) == "(1,2]"
    assert str(lidless.reflect()) == "[-2,-1)"
    assert not lidless.meets(Q(0), Q(1))
    assert lidless.meets(Q(0), Q(1) + Q(1, 10**9))
    with pytest.raises(ValueError):
        Interval(1, 1)


def test_box_rejects_two_open_axes():
    with pytest.raises(ValueError):
        Box((Interval(0, 1, Side.LOWER), Interval(0, 1, Side.UPPER)))


def test_box_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Box.cube(2, 1).contains(point(0, 0, 0))


def _interval_oracle(iv: Interval, x) -> bool:
    lo_ok = x > iv.lower if iv.open_side is Side.LOWER else x >= iv.lower
    hi_ok = x < iv.upper if iv.open_side is Side.UPPER else x <= iv.upper
    return lo_ok and hi_ok


@st.composite
def intervals(draw):
    a, b = sorted(draw(st.lists(rationals(4, 8), min_size=2, max_size=2, unique=True)))
    return Interval(a, b, draw(st.sampled_from(list(Side))))


@given(intervals(), rationals(5, 8))
def test_interval_contains_matches_oracle(iv, x):
    assert iv.contains(x) == _interval_oracle(iv, x)
    assert iv.interior_contains(x) == (iv.lower < x < iv.upper)


@given(intervals(), rationals(5, 8), rationals(5, 8))
def test_interval_meets_matches_pointwise_oracle(iv, a, b):
    lo, hi = min(a, b), max(a, b)
    # candidate witnesses: both window ends and the clipped interval ends and midpoint
    cands = {lo, hi, iv.lower, iv.upper, (max(lo, iv.lower) + min(hi, iv.upper)) / 2}
    expected = any(lo <= x <= hi and _interval_oracle(iv, x) for x in cands)
    assert iv.meets(lo, hi) == expected


@given(st.lists(intervals(), min_size=2, max_size=2), st.lists(intervals(), min_size=2, max_size=2))
def test_box_relations(axes1, axes2):
    axes1[1] = Interval(axes1[1].lower, axes1[1].upper)
    axes2[1] = Interval(axes2[1].lower, axes2[1].upper)
    b1, b2 = Box(tuple(axes1)), Box(tuple(axes2))
    assert b1.interiors_disjoint(b2) == b2.interiors_disjoint(b1)
    assert b1.intersects(b2) == b2.intersects(b1)
    if not b1.interiors_disjoint(b2):
        assert b1.intersects(b2)
    centre = tuple((ax.lower + ax.upper) / 2 for ax in b1.axes)
    assert b1.interior_contains(centre)
    assert b1.reflect().contains(tuple(-c for c in centre))
    assert b1.reflect().reflect() == b1


@given(st.lists(intervals(), min_size=1, max_size=3), st.data())
def test_box_meets_point_window_is_contains(axes, data):
    for i in range(1, len(axes)):
        axes[i] = Interval(axes[i].lower, axes[i].upper)
    box = Box(tuple(axes))
    p = data.draw(st.tuples(*[rationals(5, 8) for _ in axes]))
    assert box.meets(tuple((x, x) for x in p)) == box.contains(p)


def test_as_window():
    assert as_window(Box.cube(1, 2)) == ((Q(-2), Q(2)),)
    assert as_window([("1", "1")]) == ((Q(1), Q(1)),)
    with pytest.raises(ValueError):
        as_window([(2, 1)])
    with pytest.raises(ValueError):
        as_window(Box((Interval(1, 2, Side.LOWER),)))
