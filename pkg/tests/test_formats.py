import json

import pytest
from hypothesis import given

from linftile.core import Q
from linftile.embedding import NormedSpace, NormingSet, build_pairs
from linftile.formats import (
    pairs_to_list,
    parse_point,
    parse_window,
    read_norming,
    read_pairs,
    read_schedule,
    read_space,
    write_pairs,
    write_schedule,
)
from linftile.refinement import Schedule

from conftest import points, rationals


def test_parse_literals():
    assert parse_point("11/5,0.4,-3") == (Q(11, 5), Q(2, 5), Q(-3))
    assert parse_window("1,1.5,0,0.5") == ((Q(1), Q(3, 2)), (Q(0), Q(1, 2)))
    assert parse_window("2,2") == ((Q(2), Q(2)),)
    for bad in ("1,2,3", "", "2,1"):
        with pytest.raises(ValueError):
            parse_window(bad)


@given(points(3, rationals(100, 1000)))
def test_point_literal_round_trip(p):
    from linftile.core import format_scalar

    assert parse_point(",".join(format_scalar(x) for x in p)) == p


def test_space_and_norming_files(tmp_path):
    f = tmp_path / "x.space"
    f.write_text(json.dumps({"dim": 2, "kind": "polytope", "generators": [["1", "0"], ["-1", "0"], ["0", "2"], ["0", "-2"]]}))
    space = read_space(f)
    assert space.norm((Q(1), Q(1))) == 2
    assert set(space.extreme_points) == {(Q(1), Q(1, 2)), (Q(1), Q(-1, 2)), (Q(-1), Q(1, 2)), (Q(-1), Q(-1, 2))}
    n = tmp_path / "m.set"
    n.write_text(json.dumps(NormingSet.standard(space).to_dict()))
    assert read_norming(n) == NormingSet.standard(space)
    f.write_text(json.dumps({"dim": 3, "kind": "polytope", "generators": [["1", "0"], ["-1", "0"], ["0", "1"], ["0", "-1"]]}))
    with pytest.raises(ValueError):
        read_space(f)


def test_pairs_round_trip(tmp_path):
    space = NormedSpace.ell1(3)
    model = build_pairs(space, NormingSet.standard(space))
    path = tmp_path / "pairs.json"
    write_pairs(model, path)
    assert read_pairs(path, space) == model
    assert json.loads(path.read_text()) == pairs_to_list(model)


def test_schedule_file_round_trip(tmp_path):
    sched = Schedule(a_table={(1, 0): ("1", "1/2")}, eps_table={(1, 0): "1/20"})
    path = tmp_path / "s.json"
    write_schedule(sched, path)
    assert read_schedule(path) == sched
    with pytest.raises(ValueError):
        write_schedule(Schedule(breakpoints=lambda nu, n, j: Q(1)), path)
