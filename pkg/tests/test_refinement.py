import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linftile.core import Box, Q, point
from linftile.covering import SigmaId
from linftile.refinement import (
    DEFAULT_SCHEDULE,
    TAU_BALL,
    Schedule,
    TauId,
    TileOverflow,
    UncoveredPoint,
    check_level,
    identity_profile,
    iter_tau_in_window,
    locate_tau,
    tau_in_window,
    tau_spec,
    verify_schedule,
    worst_case_profile,
)

from conftest import points, rationals

from test_covering import all_ids, member_oracle

MAX_SLAB = 40


def tile_oracle(p):
    """Tiles containing ``p`` from the slab definition, with a = 2^n / 10^j in Fractions."""
    out = []
    for t in all_ids(len(p)):
        if not member_oracle(t, p):
            continue
        if t[0] == "ball":
            return [TAU_BALL]
        _, sign, nu, n = t
        s = Fraction(sign) * Fraction(int(p[nu - 1].numerator), int(p[nu - 1].denominator)) - 2**n
        for j in range(MAX_SLAB):
            if Fraction(2**n, 10 ** (j + 1)) <= s <= Fraction(2**n, 10**j):
                out.append(TauId.of(sign, nu, n, j))
    return out


@st.composite
def breakpoint_points(draw, dim=2):
    """Points with one coordinate on a slab facet 2^n + a(j), the rest inside the cell."""
    nu = draw(st.integers(1, dim))
    n = draw(st.integers(0, 4))
    j = draw(st.integers(0, 8))
    sign = draw(st.sampled_from([1, -1]))
    p = []
    for mu in range(1, dim + 1):
        if mu == nu:
            p.append(sign * (2**n + Q(2**n, 10**j)))
        else:
            cap = 2**n if mu < nu else 2 ** (n + 1)
            p.append(draw(st.fractions(min_value=-cap, max_value=cap, max_denominator=32).map(Q)))
    return tuple(p), (sign, nu, n, j)


def test_default_breakpoints():
    assert DEFAULT_SCHEDULE.a(1, 0, 0) == 1
    assert DEFAULT_SCHEDULE.a(1, 0, 1) == Q(1, 10)
    assert DEFAULT_SCHEDULE.a(2, 3, 2) == Q(8, 100)
    assert DEFAULT_SCHEDULE.epsilon(1, 0) == Q(9, 100)


@pytest.mark.parametrize(
    "tid,dim,expected",
    [
        (TauId.of(1, 1, 1, 0), 2, "[11/5,4]x[-4,4]"),
        (TauId.of(1, 1, 0, 1), 2, "[101/100,11/10]x[-2,2]"),
        (TauId.of(-1, 2, 0, 0), 2, "[-1,1]x[-2,-11/10]"),
        (TAU_BALL, 2, "[-1,1]x[-1,1]"),
    ],
)
def test_tau_spec_examples(tid, dim, expected):
    assert str(tau_spec(tid, dim)) == expected


def test_locate_tau_examples():
    assert locate_tau(point(3, 1)) == (TauId.of(1, 1, 1, 0),)
    assert locate_tau(point("11/5", 0)) == (TauId.of(1, 1, 1, 0), TauId.of(1, 1, 1, 1))
    assert locate_tau(point("0.5", "-0.3")) == (TAU_BALL,)
    assert locate_tau(point(4, 4)) == (TauId.of(1, 1, 1, 0),)


def test_tau_in_window_examples():
    assert tau_in_window(Box.closed([(3, Q(7, 2)), (0, 1)])) == [TauId.of(1, 1, 1, 0)]
    with pytest.raises(TileOverflow) as exc:
        tau_in_window(Box.closed([(1, Q(3, 2)), (0, Q(1, 2))]), cap=10_000)
    assert exc.value.cap == 10_000 and len(exc.value.ids) == 10_000
    with pytest.raises(ValueError):
        tau_in_window(Box.cube(1, 1), cap=0)


def test_iter_is_lazy_at_accumulation_face():
    it = iter_tau_in_window(Box.closed([(1, Q(3, 2)), (0, Q(1, 2))]))
    first = list(itertools.islice(it, 50))
    assert first[0] == TAU_BALL
    assert [t.slab for t in first[1:]] == list(range(49))


def test_id_validation_and_round_trip():
    for bad in [("ball", 1, 0, 0, 0), ("slab", 1, 1, 0, -1), ("slab", 2, 1, 0, 0)]:
        with pytest.raises(ValueError):
            TauId(*bad)
    tid = TauId.of(-1, 2, 1, 3)
    assert TauId.from_dict(tid.to_dict()) == tid
    assert tid.parent == SigmaId.cell(-1, 2, 1)
    assert str(tid) == "slab(-,2,1,3)"


@pytest.mark.parametrize("dim", [1, 2, 3])
@given(data=st.data())
def test_locate_tau_matches_oracle(dim, data):
    p = data.draw(points(dim, rationals(20, 1000)))
    ids = locate_tau(p)
    assert 1 <= len(ids) <= 2
    assert sorted(ids) == sorted(tile_oracle(p))
    for tid in ids:
        assert tau_spec(tid, dim).contains(p)


@given(breakpoint_points())
def test_facets_have_multiplicity_two(drawn):
    p, (sign, nu, n, j) = drawn
    ids = locate_tau(p)
    assert sorted(ids) == sorted(tile_oracle(p))
    if j == 0:
        # the outer facet 2^(n+1) is the cell's own closed face
        assert len(ids) >= 1
    else:
        assert set(ids) == {TauId.of(sign, nu, n, j - 1), TauId.of(sign, nu, n, j)}


@given(st.integers(0, 6), st.fractions(min_value=Fraction(1, 10**12), max_value=1))
def test_geometric_fast_path_agrees_with_search(n, frac):
    s = Q(frac) * 2**n
    fast = DEFAULT_SCHEDULE.slab_indices(1, n, s)
    slow_sched = Schedule(a_table={(1, n): (Q(2**n),)}, search_limit=100)
    assert not slow_sched.geometric
    assert slow_sched.slab_indices(1, n, s) == fast


def test_slab_indices_rejects_out_of_range():
    with pytest.raises(UncoveredPoint):
        DEFAULT_SCHEDULE.slab_indices(1, 0, Q(0))
    with pytest.raises(UncoveredPoint):
        DEFAULT_SCHEDULE.slab_indices(1, 0, Q(2))


@given(st.lists(st.tuples(st.integers(1, 2), st.integers(0, 3), st.integers(0, 6)), min_size=2, max_size=2))
def test_tile_interiors_disjoint(pair):
    (nu1, n1, j1), (nu2, n2, j2) = pair
    t1, t2 = TauId.of(1, nu1, n1, j1), TauId.of(1, nu2, n2, j2)
    b1, b2 = tau_spec(t1, 2), tau_spec(t2, 2)
    if t1 != t2:
        assert b1.interiors_disjoint(b2)
    assert b1.interiors_disjoint(tau_spec(TAU_BALL, 2))


def test_schedule_round_trip_and_override():
    sched = Schedule(a_table={(1, 0): ("1", "1/2")}, eps_table={(2, 1): "1/20"})
    again = Schedule.from_dict(sched.to_dict())
    assert again.a(1, 0, 1) == Q(1, 2) and again.a(1, 0, 3) == Q(1, 200)
    assert again.epsilon(2, 1) == Q(1, 20) and again.epsilon(1, 1) == Q(9, 100)
    assert Schedule.from_dict(DEFAULT_SCHEDULE.to_dict()) == DEFAULT_SCHEDULE
    with pytest.raises(ValueError):
        Schedule(ratio=1)
    with pytest.raises(ValueError):
        Schedule(eps=0)


def test_overridden_schedule_tiles_still_partition():
    sched = Schedule(a_table={(1, 0): ("1", "1/2", "1/3")})
    assert locate_tau(point("3/2", 0), sched) == (TauId.of(1, 1, 0, 0), TauId.of(1, 1, 0, 1))
    assert locate_tau(point("4/3", 0), sched) == (TauId.of(1, 1, 0, 1), TauId.of(1, 1, 0, 2))
    assert locate_tau(point("21/20", 0), sched) == (TauId.of(1, 1, 0, 2),)
    assert locate_tau(point("31/30", 0), sched) == (TauId.of(1, 1, 0, 2), TauId.of(1, 1, 0, 3))


# --- schedule constraints -------------------------------------------------------


def test_default_schedule_identity_and_worst_case():
    for profile in (identity_profile(8), worst_case_profile(8)):
        report = verify_schedule(DEFAULT_SCHEDULE, profile, 12)
        assert report.ok, report.failures[:1]
    worst = verify_schedule(DEFAULT_SCHEDULE, worst_case_profile(8), 12)
    assert worst.margins(level=0) == (Q(1, 100), Q(1, 100))


def test_inflated_eps_violates():
    report = verify_schedule(Schedule(eps=Q(1, 2)), worst_case_profile(2), 3)
    assert not report.ok


@pytest.mark.parametrize("a1,ok", [("1/2", True), ("3/5", False)])
def test_first_breakpoint_condition(a1, ok):
    sched = Schedule(a_table={(1, 0): ("1", a1)})
    assert check_level(sched, identity_profile(2), 1, 0).ok is ok
    # the worst-case profile only tolerates a(1) <= 11/100
    assert not check_level(sched, worst_case_profile(2), 1, 0).ok


def test_schedule_margins_scale_with_level():
    report = verify_schedule(DEFAULT_SCHEDULE, identity_profile(2), 4)
    eps_margins = [report.margins(level=n)[0] for n in range(5)]
    assert all(m > 0 for m in eps_margins)
    assert report.to_dict()["pass"] is True
