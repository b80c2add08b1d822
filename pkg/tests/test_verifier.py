import json

import pytest

from linftile.core import Box, Q
from linftile.embedding import EmbeddingModel, Functional, NormedSpace, NormingSet
from linftile.refinement import DEFAULT_SCHEDULE, Schedule, locate_tau
from linftile.verifier import (
    MUTATIONS,
    SampleSpec,
    grid_points,
    run_mutation,
    sample_points,
    schedule_suite,
    verify_pullback,
    verify_sigma,
    verify_tau,
)


def test_sampling_is_deterministic_and_bounded():
    spec = SampleSpec.cube(3, 8, 200, seed=5, mode="adversarial")
    a, b = list(sample_points(spec)), list(sample_points(spec))
    assert a == b and len(a) == 200
    assert all(spec.window.contains(p) for p in a)
    uniform = list(sample_points(SampleSpec.cube(3, 8, 200, seed=5)))
    assert all(x.denominator <= 2**16 for p in uniform for x in p)


def test_adversarial_samples_hit_breakpoints():
    spec = SampleSpec.cube(2, 8, 300, seed=1, mode="adversarial")
    on_face = 0
    for p in sample_points(spec):
        for x in p:
            ax = abs(x)
            if ax >= 1 and any(ax == 2**n or (ax - 2**n) in {DEFAULT_SCHEDULE.a(1, n, j) for j in range(12)} for n in range(4)):
                on_face += 1
                break
    assert on_face == 300


def test_sample_spec_validation():
    with pytest.raises(ValueError):
        SampleSpec(0, 10, Box.cube(1, 1), "gaussian")
    with pytest.raises(ValueError):
        SampleSpec(0, -1, Box.cube(1, 1))


def test_grid_points():
    pts = list(grid_points(2))
    assert len(pts) == 81 and (Q(8), Q(-8)) in pts


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_sigma_suite_passes(dim):
    report = verify_sigma(dim, SampleSpec.cube(dim, 16, 500, seed=dim, mode="adversarial"), extra_points=grid_points(dim))
    assert report.ok and report.checks == 500 + 9**dim


def test_sigma_suite_one_dimensional_faces():
    from linftile.core import point

    report = verify_sigma(1, SampleSpec.cube(1, 1, 0), extra_points=[point(v) for v in (1, -1, 2, -2, 4, -4)])
    assert report.ok and report.checks == 6


def test_tau_suite_passes_with_multiplicity_two():
    report = verify_tau(3, DEFAULT_SCHEDULE, SampleSpec.cube(3, 8, 1000, seed=2, mode="adversarial"), windows=10)
    assert report.ok
    assert report.stats["multiplicity_2"] > 0 and report.stats["windows"] == 10 and report.stats["tile_pairs"] > 0


def test_reports_are_deterministic():
    spec = SampleSpec.cube(2, 8, 300, seed=9, mode="adversarial")
    r1 = verify_tau(2, DEFAULT_SCHEDULE, spec, windows=5)
    r2 = verify_tau(2, DEFAULT_SCHEDULE, spec, windows=5)
    assert r1.to_dict(timing=False) == r2.to_dict(timing=False)
    body = json.loads(r1.to_json())
    assert body["suite"] == "tau" and body["pass"] is True


def test_pullback_identity_agrees_with_tau():
    spec = SampleSpec.cube(2, 8, 400, seed=3, mode="adversarial")
    pull = verify_pullback(EmbeddingModel.identity(2), DEFAULT_SCHEDULE, spec, n_max=2, j_max=2)
    tau = verify_tau(2, DEFAULT_SCHEDULE, spec, windows=0)
    assert pull.ok and tau.ok
    assert pull.stats.get("multiplicity_2") == tau.stats.get("multiplicity_2")


def test_pullback_stops_on_bad_pairs():
    l1 = NormedSpace.ell1(2)
    bad = EmbeddingModel(l1, (((Q(1, 2), Q(1, 2)), Functional((1, -1))),))
    report = verify_pullback(bad, DEFAULT_SCHEDULE, SampleSpec.cube(2, 4, 100))
    assert not report.ok
    assert report.checks == 1
    assert all(f["reason"] == "pair condition violated" for f in report.failures)


def test_schedule_suite():
    assert schedule_suite(DEFAULT_SCHEDULE, 4, 6).ok
    bad = schedule_suite(Schedule(eps=Q(1, 2)), 2, 2)
    assert not bad.ok and bad.failures[0]["profile"] == "identity"


def test_failure_entries_are_json_safe():
    report = verify_sigma(
        2,
        SampleSpec.cube(2, 4, 0),
        spec_fn=lambda sid, dim: Box.cube(dim, 4),  # every member everywhere
        extra_points=[(Q(7, 3), Q(0))],
    )
    assert not report.ok
    json.dumps(report.to_dict())
    assert report.failures[0]["point"] == ["7/3", "0"]


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_each_mutation_is_caught(name):
    reports = run_mutation(name, seed=0)
    assert any(not r.ok for r in reports)


def test_unknown_mutation():
    with pytest.raises(ValueError):
        run_mutation("nope")


def test_loose_orthogonality_is_reported_as_condition_two():
    (report,) = run_mutation("loose_orthogonality")
    assert any("(2)" in f.get("detail", "") for f in report.failures)


def test_standard_norming_set_is_accepted_by_pullback():
    sup2 = NormedSpace.sup(2)
    from linftile.embedding import build_pairs

    norming = NormingSet.standard(sup2)
    model = build_pairs(sup2, norming)
    assert verify_pullback(model, DEFAULT_SCHEDULE, SampleSpec.cube(2, 8, 200), norming=norming, n_max=2, j_max=2).ok
    assert locate_tau(model.embed((Q(3), Q(1)))) == locate_tau((Q(3), Q(1)))
