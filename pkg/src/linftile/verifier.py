"""Property suites: sample points, locate them, and cross-check against enumeration.

The oracle side never calls the locate functions. It enumerates every
member meeting the degenerate window ``[p, p]`` and tests membership with
exact box predicates.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence

from .core import Q, Scalar, Box, Point, format_scalar
from .covering import SigmaId, SpecFn, locate_sigma, sigma_in_window, sigma_spec
from .embedding import (
    EmbeddingModel,
    NormedSpace,
    NormingSet,
    ScheduleError,
    build_pairs,
    check_pairs,
    sandwich_holds,
    verify_witness,
)
from .refinement import (
    DEFAULT_SCHEDULE,
    Schedule,
    TauId,
    TileOverflow,
    UncoveredPoint,
    identity_profile,
    locate_tau,
    tau_in_window,
    tau_spec,
    verify_schedule,
    worst_case_profile,
)

__all__ = [
    "SampleSpec",
    "Report",
    "sample_points",
    "grid_points",
    "verify_sigma",
    "verify_tau",
    "verify_pullback",
    "schedule_suite",
    "MUTATIONS",
    "run_mutation",
]

DENOMINATOR_BITS = 16


@dataclass(frozen=True)
class SampleSpec:
    seed: int
    count: int
    window: Box
    mode: str = "uniform"  # "uniform" | "adversarial"

    def __post_init__(self) -> None:
        if self.mode not in ("uniform", "adversarial"):
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        if self.count < 0:
            raise ValueError("count must be non-negative")

    @classmethod
    def cube(cls, dim: int, radius, count: int, seed: int = 0, mode: str = "uniform") -> "SampleSpec":
        return cls(seed, count, Box.cube(dim, radius), mode)


@dataclass
class Report:
    suite: str
    checks: int = 0
    failures: List[Dict[str, object]] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, reason: str, **detail) -> None:
        entry: Dict[str, object] = {"reason": reason}
        for key, value in detail.items():
            entry[key] = _jsonable(value)
        self.failures.append(entry)

    def bump(self, key: str, by: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + by

    def to_dict(self, timing: bool = True) -> Dict[str, object]:
        out: Dict[str, object] = {
            "suite": self.suite,
            "pass": self.ok,
            "checks": self.checks,
            "failures": self.failures,
            "stats": dict(sorted(self.stats.items())),
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)


def _jsonable(value):
    if isinstance(value, Scalar):
        return format_scalar(value)
    if isinstance(value, (SigmaId, TauId)):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# --- sampling ----------------------------------------------------------------


def _uniform(rng: random.Random, lo: Scalar, hi: Scalar) -> Scalar:
    scale = 1 << DENOMINATOR_BITS
    return lo + (hi - lo) * Q(rng.randrange(scale + 1), scale)


def _breakpoint(rng: random.Random, bounds, sched: Schedule):
    """An axis, level and signed coordinate on a tile breakpoint inside the window."""
    dim = len(bounds)
    radius = max(max(abs(lo), abs(hi)) for lo, hi in bounds)
    levels = [n for n in range(64) if 2**n < radius]
    if not levels:
        return None
    nu = rng.randrange(1, dim + 1)
    n = rng.choice(levels)
    # j = -1 stands for the accumulation face 2^n itself
    j = rng.choice([-1, 0] + [rng.randrange(1, 12) for _ in range(4)])
    sign = rng.choice((1, -1))
    value = sign * (2**n + (0 if j < 0 else sched.a(nu, n, j)))
    lo, hi = bounds[nu - 1]
    if not lo <= value <= hi:
        return None
    return nu, n, value


def sample_points(spec: SampleSpec, sched: Schedule = DEFAULT_SCHEDULE) -> Iterator[Point]:
    """Deterministic rational samples in ``spec.window``.

    Adversarial samples put one coordinate on a breakpoint ``+-2^n`` or
    ``+-(2^n + a(nu, n, j))``; half of them also keep the remaining
    coordinates inside the matching cell so the breakpoint is a slab facet.
    """
    rng = random.Random(spec.seed)
    bounds = spec.window.bounds
    dim = len(bounds)
    made = 0
    while made < spec.count:
        p = [_uniform(rng, lo, hi) for lo, hi in bounds]
        if spec.mode == "adversarial":
            hit = _breakpoint(rng, bounds, sched)
            if hit is None:
                continue
            nu, n, value = hit
            p[nu - 1] = value
            if rng.random() < 0.5:
                for mu in range(1, dim + 1):
                    if mu == nu:
                        continue
                    cap = Q(2**n if mu < nu else 2 ** (n + 1))
                    lo, hi = max(bounds[mu - 1][0], -cap), min(bounds[mu - 1][1], cap)
                    if lo <= hi:
                        p[mu - 1] = _uniform(rng, lo, hi)
        made += 1
        yield tuple(p)


def grid_points(dim: int, values: Iterable = (0, 1, -1, 2, -2, 4, -4, 8, -8)) -> Iterator[Point]:
    vals = [Q(v) for v in values]
    return (tuple(p) for p in itertools.product(vals, repeat=dim))


def _point_window(p: Sequence[Scalar]):
    return tuple((x, x) for x in p)


# --- suites ------------------------------------------------------------------


def verify_sigma(
    dim: int,
    spec: SampleSpec,
    *,
    spec_fn: SpecFn = sigma_spec,
    extra_points: Iterable[Point] = (),
    max_failures: int = 20,
) -> Report:
    """Every point lies in exactly one covering member, the located one."""
    report = Report("sigma")
    start = time.perf_counter()
    for p in itertools.chain(sample_points(spec), extra_points):
        if len(p) != dim:
            raise ValueError(f"sample of dimension {len(p)} in a dimension-{dim} suite")
        report.checks += 1
        sid = locate_sigma(p)
        if not spec_fn(sid, dim).contains(p):
            report.fail("located member does not contain the point", point=p, id=sid)
        members = sigma_in_window(_point_window(p), spec_fn)
        if len(members) != 1:
            report.fail(
                "point covered %d times" % len(members) if members else "point not covered",
                point=p,
                ids=members,
            )
        elif members[0] != sid:
            report.fail("oracle disagrees with locate", point=p, id=sid, oracle=members)
        if len(report.failures) >= max_failures:
            report.bump("stopped_early")
            break
    report.elapsed = time.perf_counter() - start
    return report


def _tile_bounds_ok(tid: TauId, box: Box, dim: int, sched: Schedule) -> bool:
    if tid.is_ball:
        return box == Box.cube(dim, 1)
    lo, hi = Q(2**tid.level), Q(2 ** (tid.level + 1))
    for mu, ax in enumerate(box.axes, start=1):
        if not ax.closed:
            return False
        if mu == tid.axis:
            a_lo = lo + sched.a(mu, tid.level, tid.slab + 1)
            a_hi = lo + sched.a(mu, tid.level, tid.slab)
            want = (a_lo, a_hi) if tid.sign > 0 else (-a_hi, -a_lo)
            if (ax.lower, ax.upper) != want or not (lo < a_lo < a_hi <= hi):
                return False
        else:
            cap = lo if mu < tid.axis else hi
            if (ax.lower, ax.upper) != (-cap, cap):
                return False
    return True


def _random_windows(rng: random.Random, spec: SampleSpec, sched: Schedule, count: int, cap: int):
    """Small windows that meet finitely many (and at most ``cap``) tiles.

    Centres are drawn from the part of the sample window inside ``[-4, 4]^d``
    where tiles are small, so windows usually meet several of them.
    """
    bounds = [(max(lo, Q(-4)), min(hi, Q(4))) for lo, hi in spec.window.bounds]
    if any(lo > hi for lo, hi in bounds):
        bounds = spec.window.bounds
    dim = len(bounds)
    made = attempts = 0
    while made < count and attempts < 200 * count:
        attempts += 1
        centre = [_uniform(rng, lo, hi) for lo, hi in bounds]
        half = Q(rng.randrange(1, 33), 32)
        w = [(c - half, c + half) for c in centre]
        if made % 2:
            # staircase: slabs j1..j2 of one cell, stopping short of its accumulation face
            nu, n = rng.randrange(1, dim + 1), rng.randrange(0, 3)
            j1 = rng.randrange(0, 4)
            j2 = j1 + rng.randrange(1, 6)
            base = Q(2**n)
            lo, hi = base + sched.a(nu, n, j2), base + sched.a(nu, n, j1)
            w[nu - 1] = (lo, hi) if rng.random() < 0.5 else (-hi, -lo)
        w = tuple(w)
        try:
            tiles = tau_in_window(w, sched, cap)
        except TileOverflow:
            continue
        made += 1
        yield w, tiles


def verify_tau(
    dim: int,
    sched: Schedule,
    spec: SampleSpec,
    *,
    windows: int = 50,
    window_cap: int = 400,
    extra_points: Iterable[Point] = (),
    max_failures: int = 20,
) -> Report:
    """Covering, order at most 2, oracle agreement, disjoint interiors, bounded tiles."""
    report = Report("tau")
    start = time.perf_counter()
    for p in itertools.chain(sample_points(spec, sched), extra_points):
        report.checks += 1
        try:
            ids = locate_tau(p, sched)
        except UncoveredPoint as exc:
            report.fail("point not covered", point=p, detail=str(exc))
            ids = ()
        if ids:
            if len(ids) > 2:
                report.fail("order exceeds 2", point=p, ids=ids)
            if len(ids) == 2:
                report.bump("multiplicity_2")
            for tid in ids:
                if not tau_spec(tid, dim, sched).contains(p):
                    report.fail("located tile does not contain the point", point=p, id=tid)
        oracle = set(tau_in_window(_point_window(p), sched, cap=8))
        if ids and oracle != set(ids):
            report.fail("oracle disagrees with locate", point=p, ids=ids, oracle=sorted(oracle))
        if len(report.failures) >= max_failures:
            report.bump("stopped_early")
            break

    rng = random.Random(spec.seed ^ 0x5EED)
    for w, tiles in _random_windows(rng, spec, sched, windows, window_cap):
        report.bump("windows")
        boxes = [(tid, tau_spec(tid, dim, sched)) for tid in tiles]
        for tid, box in boxes:
            report.checks += 1
            if not _tile_bounds_ok(tid, box, dim, sched):
                report.fail("tile outside its cell bounds", id=tid, window=w)
        for (t1, b1), (t2, b2) in itertools.combinations(boxes, 2):
            report.checks += 1
            report.bump("tile_pairs")
            if not b1.interiors_disjoint(b2):
                report.fail("tile interiors overlap", ids=[t1, t2], window=w)
            elif t1.parent != t2.parent and b1.intersects(b2):
                report.fail("tiles of different cells touch", ids=[t1, t2], window=w)
        if len(report.failures) >= max_failures:
            break
    report.elapsed = time.perf_counter() - start
    return report


def schedule_suite(sched: Schedule, gamma: int, n_max: int, model: Optional[EmbeddingModel] = None) -> Report:
    """Schedule constraints under the identity and worst-case profiles (and a model, if given)."""
    report = Report("schedule")
    start = time.perf_counter()
    profiles = [identity_profile(gamma), worst_case_profile(gamma)]
    if model is not None:
        profiles.append(model.coordinate_profile())
    for profile in profiles:
        sr = verify_schedule(sched, profile, n_max)
        report.checks += len(sr.checks)
        for c in sr.failures:
            report.fail("schedule constraint violated", profile=profile.name, axis=c.axis, level=c.level,
                        violations=c.violations)
    report.elapsed = time.perf_counter() - start
    return report


def verify_pullback(
    model: EmbeddingModel,
    sched: Schedule,
    spec: SampleSpec,
    *,
    n_max: int = 6,
    j_max: int = 6,
    norming: Optional[NormingSet] = None,
    max_failures: int = 20,
) -> Report:
    """The preimage tiling of ``X``: pair conditions, covering, order, sandwich, witnesses."""
    report = Report("pullback")
    start = time.perf_counter()
    violations = check_pairs(model, norming)
    report.checks += 1
    if violations:
        for v in violations:
            report.fail("pair condition violated", detail=v)
        report.elapsed = time.perf_counter() - start
        return report
    sr = verify_schedule(sched, model, n_max)
    report.checks += len(sr.checks)
    for c in sr.failures:
        report.fail("schedule constraint violated", axis=c.axis, level=c.level, violations=c.violations)

    for x in sample_points(spec, sched):
        report.checks += 1
        image = model.embed(x)
        if not sandwich_holds(model, x):
            report.fail("embedding sandwich violated", point=x)
        try:
            ids = locate_tau(image, sched)
        except UncoveredPoint as exc:
            report.fail("point not covered", point=x, detail=str(exc))
            continue
        if not 1 <= len(ids) <= 2:
            report.fail("bad multiplicity", point=x, ids=ids)
        if len(ids) == 2:
            report.bump("multiplicity_2")
        for tid in ids:
            if not tau_spec(tid, model.gamma, sched).contains(image):
                report.fail("tile does not contain the image point", point=x, id=tid)
        if len(report.failures) >= max_failures:
            break

    for nu in range(1, model.gamma + 1):
        for sign in (1, -1):
            for n in range(n_max + 1):
                for j in range(j_max + 1):
                    tid = TauId.of(sign, nu, n, j)
                    report.checks += 1
                    report.bump("witnesses")
                    try:
                        ok = verify_witness(model, tid, sched)
                    except ScheduleError as exc:
                        report.fail("witness unavailable", id=tid, detail=str(exc))
                        continue
                    if not ok:
                        report.fail("witness ball leaves its tile", id=tid)
            if len(report.failures) >= max_failures:
                break
    report.elapsed = time.perf_counter() - start
    return report


# --- mutations ---------------------------------------------------------------


def closed_lid_spec(sid: SigmaId, dim: int) -> Box:
    """Covering member with its open lid closed."""
    box = sigma_spec(sid, dim)
    return Box.closed(box.bounds)


def non_null_breakpoints(nu: int, n: int, j: int) -> Scalar:
    """Strictly decreasing from ``2^n`` but converging to ``2^(n-1)``."""
    return Q(2**n) * (1 + Q(1, 10**j)) / 2


def _mutant_closed_lid(seed: int) -> List[Report]:
    spec = SampleSpec.cube(2, 8, 2000, seed, "adversarial")
    return [verify_sigma(2, spec, spec_fn=closed_lid_spec, extra_points=grid_points(2))]


def _mutant_inflated_eps(seed: int) -> List[Report]:
    sched = Schedule(eps=Q(1, 2))
    model = EmbeddingModel.identity(2)
    return [
        schedule_suite(sched, 2, 6),
        verify_pullback(model, sched, SampleSpec.cube(2, 8, 200, seed)),
    ]


def _mutant_non_null(seed: int) -> List[Report]:
    sched = Schedule(breakpoints=non_null_breakpoints, search_limit=200)
    return [verify_tau(2, sched, SampleSpec.cube(2, 8, 500, seed), windows=5)]


def _mutant_loose_orthogonality(seed: int) -> List[Report]:
    space = NormedSpace.sup(2)
    norming = NormingSet.standard(space)
    model = build_pairs(space, norming, bound=Q(9, 10))
    return [verify_pullback(model, DEFAULT_SCHEDULE, SampleSpec.cube(2, 8, 200, seed), norming=norming)]


MUTATIONS: Dict[str, Callable[[int], List[Report]]] = {
    "closed_lid": _mutant_closed_lid,
    "inflated_eps": _mutant_inflated_eps,
    "non_null_schedule": _mutant_non_null,
    "loose_orthogonality": _mutant_loose_orthogonality,
}


def run_mutation(name: str, seed: int = 0) -> List[Report]:
    """Run the suites targeted by a built-in mutation; at least one should fail."""
    try:
        return MUTATIONS[name](seed)
    except KeyError:
        raise ValueError(f"unknown mutation {name!r}; choose from {sorted(MUTATIONS)}") from None
