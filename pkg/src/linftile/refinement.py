"""Splitting every lidless box into closed slabs: a tiling of order 2.

A lidless box ``(2^n, 2^(n+1)]`` along axis ``nu`` is cut at the breakpoints
``2^n + a(nu, n, j)`` of a strictly decreasing null sequence with
``a(nu, n, 0) = 2^n``. Consecutive slabs share one facet, so no point lies in
more than two tiles, but every neighbourhood of the face ``t(nu) = 2^n``
meets infinitely many of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .core import Q, Scalar, Box, Interval, as_window, format_scalar, scalar
from .covering import BALL, SigmaId, locate_sigma, sigma_in_window, sigma_spec

__all__ = [
    "Schedule",
    "TauId",
    "TAU_BALL",
    "UncoveredPoint",
    "TileOverflow",
    "tau_spec",
    "locate_tau",
    "iter_tau_in_window",
    "tau_in_window",
    "CoordinateProfile",
    "identity_profile",
    "worst_case_profile",
    "ScheduleCheck",
    "ScheduleReport",
    "verify_schedule",
    "check_level",
    "DEFAULT_SCHEDULE",
    "WITNESS_SCALE_OFFSET",
]

# z = (2^(n+1) - 2/5) T(x_nu) is the interior point of each lidless box.
WITNESS_SCALE_OFFSET = Q(2, 5)


class UncoveredPoint(LookupError):
    """No slab of the located cell contains the point (broken schedule)."""


class TileOverflow(Exception):
    """More tiles meet a window than the cap allows.

    Not a failure: an accumulation face inside the window makes the count
    infinite. ``ids`` holds the first ``cap`` tiles found.
    """

    def __init__(self, ids: List["TauId"], cap: int):
        super().__init__(f"more than {cap} tiles meet the window")
        self.ids = ids
        self.cap = cap


@dataclass(frozen=True)
class Schedule:
    """Slab breakpoints ``a(nu, n, j)`` and interior radii ``eps(nu, n)``.

    By default ``a = 2^n * ratio^j`` and ``eps`` is constant. ``a_table``
    overrides the start of the sequence for one ``(nu, n)``; the tail then
    continues geometrically from the last entry. ``breakpoints`` replaces
    ``a`` wholesale.
    """

    ratio: Scalar = Q(1, 10)
    eps: Scalar = Q(9, 100)
    a_table: Mapping[Tuple[int, int], Tuple[Scalar, ...]] = field(default_factory=dict)
    eps_table: Mapping[Tuple[int, int], Scalar] = field(default_factory=dict)
    breakpoints: Optional[Callable[[int, int, int], Scalar]] = None
    search_limit: int = 10_000

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratio", scalar(self.ratio))
        object.__setattr__(self, "eps", scalar(self.eps))
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        table = {}
        for key, values in dict(self.a_table).items():
            values = tuple(scalar(v) for v in values)
            if not values:
                raise ValueError(f"empty breakpoint table for {key}")
            table[tuple(key)] = values
        object.__setattr__(self, "a_table", table)
        object.__setattr__(self, "eps_table", {tuple(k): scalar(v) for k, v in dict(self.eps_table).items()})
        object.__setattr__(self, "_inv_ratio", 1 / self.ratio)

    @property
    def geometric(self) -> bool:
        return self.breakpoints is None and not self.a_table

    def a(self, nu: int, n: int, j: int) -> Scalar:
        if self.breakpoints is not None:
            return self.breakpoints(nu, n, j)
        prefix = self.a_table.get((nu, n))
        if prefix is None:
            return 2**n * self.ratio**j
        if j < len(prefix):
            return prefix[j]
        return prefix[-1] * self.ratio ** (j - len(prefix) + 1)

    def epsilon(self, nu: int, n: int) -> Scalar:
        return self.eps_table.get((nu, n), self.eps)

    def slab_indices(self, nu: int, n: int, s: Scalar) -> Tuple[int, ...]:
        """Slabs whose axis range ``[a(j+1), a(j)]`` contains ``s`` (offset above ``2^n``)."""
        if s <= 0 or s > self.a(nu, n, 0):
            raise UncoveredPoint(f"offset {s} outside (0, a({nu},{n},0)]")
        j = self._geometric_index(n, s) if self.geometric else self._search_index(nu, n, s)
        if j >= 1 and s == self.a(nu, n, j):
            return (j - 1, j)
        return (j,)

    def _search_index(self, nu: int, n: int, s: Scalar) -> int:
        # smallest j with a(j+1) < s; then a(j+1) < s <= a(j)
        j = 0
        while s <= self.a(nu, n, j + 1):
            j += 1
            if j > self.search_limit:
                raise UncoveredPoint(f"no breakpoint of ({nu},{n}) below {s} within {self.search_limit} slabs")
        return j

    def _geometric_index(self, n: int, s: Scalar) -> int:
        # largest j with ratio^-j <= 2^n / s
        q = Q(2**n) / s
        base = self._inv_ratio
        try:
            j = max(0, int(math.log(q) / math.log(base)))
        except OverflowError:
            j = 0
        while j > 0 and base**j > q:
            j -= 1
        while base ** (j + 1) <= q:
            j += 1
        return j

    def to_dict(self) -> Dict[str, object]:
        if self.breakpoints is not None:
            raise ValueError("schedules with custom breakpoint functions are not serialisable")
        out: Dict[str, object] = {"ratio": format_scalar(self.ratio), "eps": format_scalar(self.eps)}
        if self.a_table or self.eps_table:
            keys = sorted(set(self.a_table) | set(self.eps_table))
            rows = []
            for nu, n in keys:
                row: Dict[str, object] = {"axis": nu, "level": n}
                if (nu, n) in self.a_table:
                    row["a"] = [format_scalar(v) for v in self.a_table[(nu, n)]]
                if (nu, n) in self.eps_table:
                    row["eps"] = format_scalar(self.eps_table[(nu, n)])
                rows.append(row)
            out["overrides"] = rows
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "Schedule":
        a_table, eps_table = {}, {}
        for row in data.get("overrides", []) or []:  # type: ignore[union-attr]
            key = (int(row["axis"]), int(row["level"]))
            if "a" in row:
                a_table[key] = tuple(scalar(v) for v in row["a"])
            if "eps" in row:
                eps_table[key] = scalar(row["eps"])
        return cls(
            ratio=scalar(data.get("ratio", "1/10")),  # type: ignore[arg-type]
            eps=scalar(data.get("eps", "9/100")),  # type: ignore[arg-type]
            a_table=a_table,
            eps_table=eps_table,
        )


DEFAULT_SCHEDULE = Schedule()


@dataclass(frozen=True, order=True)
class TauId:
    kind: str
    sign: int = 0
    axis: int = 0
    level: int = 0
    slab: int = 0

    def __post_init__(self) -> None:
        if self.kind == "ball":
            if (self.sign, self.axis, self.level, self.slab) != (0, 0, 0, 0):
                raise ValueError("the ball carries no sign, axis, level or slab")
        elif self.kind == "slab":
            SigmaId.cell(self.sign, self.axis, self.level)
            if self.slab < 0:
                raise ValueError(f"slab index must be >= 0, got {self.slab}")
        else:
            raise ValueError(f"unknown tile kind {self.kind!r}")

    @classmethod
    def of(cls, sign: int, axis: int, level: int, slab: int) -> "TauId":
        return cls("slab", sign, axis, level, slab)

    @property
    def is_ball(self) -> bool:
        return self.kind == "ball"

    @property
    def parent(self) -> SigmaId:
        return BALL if self.is_ball else SigmaId.cell(self.sign, self.axis, self.level)

    def to_dict(self) -> Dict[str, object]:
        if self.is_ball:
            return {"kind": "ball"}
        return {"kind": "slab", "sign": self.sign, "axis": self.axis, "level": self.level, "slab": self.slab}

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "TauId":
        if data["kind"] == "ball":
            return TAU_BALL
        return cls.of(int(data["sign"]), int(data["axis"]), int(data["level"]), int(data["slab"]))  # type: ignore[arg-type]

    def __str__(self) -> str:
        if self.is_ball:
            return "ball"
        return f"slab({'+' if self.sign > 0 else '-'},{self.axis},{self.level},{self.slab})"


TAU_BALL = TauId("ball")


def tau_spec(tid: TauId, dim: int, sched: Schedule = DEFAULT_SCHEDULE) -> Box:
    """Closed box of a tile."""
    if tid.is_ball:
        return sigma_spec(BALL, dim)
    cell = sigma_spec(SigmaId.cell(1, tid.axis, tid.level), dim)
    base = 2**tid.level
    axes = list(cell.axes)
    axes[tid.axis - 1] = Interval(
        base + sched.a(tid.axis, tid.level, tid.slab + 1),
        base + sched.a(tid.axis, tid.level, tid.slab),
    )
    box = Box(tuple(axes))
    return box if tid.sign > 0 else box.reflect()


def locate_tau(p: Sequence[Scalar], sched: Schedule = DEFAULT_SCHEDULE) -> Tuple[TauId, ...]:
    """The one or two tiles containing ``p``, ordered by slab index."""
    sid = locate_sigma(p)
    if sid.is_ball:
        return (TAU_BALL,)
    s = abs(p[sid.axis - 1]) - 2**sid.level
    return tuple(TauId.of(sid.sign, sid.axis, sid.level, j) for j in sched.slab_indices(sid.axis, sid.level, s))


def iter_tau_in_window(window, sched: Schedule = DEFAULT_SCHEDULE) -> Iterator[TauId]:
    """Lazily yield every tile meeting a closed window.

    Infinite when the window reaches an accumulation face ``|t(nu)| = 2^n``
    from above inside the matching cell.
    """
    w = as_window(window)
    for sid in sigma_in_window(w):
        if sid.is_ball:
            yield TAU_BALL
            continue
        lo, hi = w[sid.axis - 1]
        if sid.sign < 0:
            lo, hi = -hi, -lo
        base = 2**sid.level
        misses = 0
        j = 0
        while base + sched.a(sid.axis, sid.level, j) >= lo:
            if base + sched.a(sid.axis, sid.level, j + 1) <= hi:
                misses = 0
                yield TauId.of(sid.sign, sid.axis, sid.level, j)
            else:
                misses += 1
                if misses > sched.search_limit:
                    break
            j += 1


def tau_in_window(window, sched: Schedule = DEFAULT_SCHEDULE, cap: int = 10_000) -> List[TauId]:
    """Every tile meeting the window, or :class:`TileOverflow` past ``cap`` tiles."""
    if cap < 1:
        raise ValueError("cap must be positive")
    found: List[TauId] = []
    for tid in iter_tau_in_window(window, sched):
        if len(found) == cap:
            raise TileOverflow(found, cap)
        found.append(tid)
    return found


# --- schedule verification -------------------------------------------------


@dataclass(frozen=True)
class CoordinateProfile:
    """Bounds on ``c_mu = f_mu(x_nu)``, the coordinates of ``T(x_nu)``.

    ``bounds(nu, mu)`` returns a closed interval ``(lo, hi)``.
    """

    name: str
    gamma: int
    bounds: Callable[[int, int], Tuple[Scalar, Scalar]]


def identity_profile(gamma: int) -> CoordinateProfile:
    one, zero = Q(1), Q(0)
    return CoordinateProfile("identity", gamma, lambda nu, mu: (one, one) if nu == mu else (zero, zero))


def worst_case_profile(gamma: int) -> CoordinateProfile:
    """Everything the pair conditions allow: |c| <= 1/2 before nu, c_nu in [3/4, 1], |c| <= 1 after."""
    half, three_q, one = Q(1, 2), Q(3, 4), Q(1)

    def bounds(nu: int, mu: int) -> Tuple[Scalar, Scalar]:
        if mu < nu:
            return (-half, half)
        if mu == nu:
            return (three_q, one)
        return (-one, one)

    return CoordinateProfile("worst-case", gamma, bounds)


@dataclass
class ScheduleCheck:
    axis: int
    level: int
    violations: List[str]
    eps_slack: Scalar
    a1_slack: Scalar

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass
class ScheduleReport:
    profile: str
    checks: List[ScheduleCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[ScheduleCheck]:
        return [c for c in self.checks if not c.ok]

    def margins(self, level: Optional[int] = None) -> Tuple[Scalar, Scalar]:
        """Smallest ``(eps margin, a(1) margin)``, optionally at one level.

        The radius in the doubled-ball containment is ``2 eps``, so its
        coordinate slack is halved to express it as a margin on ``eps``.
        """
        rows = [c for c in self.checks if level is None or c.level == level]
        return min(c.eps_slack for c in rows) / 2, min(c.a1_slack for c in rows)

    def to_dict(self) -> Dict[str, object]:
        return {
            "suite": "schedule",
            "profile": self.profile,
            "checks": len(self.checks),
            "pass": self.ok,
            "failures": [
                {"axis": c.axis, "level": c.level, "violations": c.violations} for c in self.failures
            ],
        }


def _containment_slacks(
    profile: CoordinateProfile, nu: int, n: int, radius: Scalar, floor: Scalar
) -> List[Tuple[str, int, Scalar, bool]]:
    """Slack of each per-axis inequality for ``z + radius*B`` inside the cell.

    Returns ``(label, axis, slack, strict)``; the inequality holds iff
    ``slack > 0`` when strict and ``slack >= 0`` otherwise. ``floor`` is the
    open lower bound on axis ``nu``.
    """
    lo_level, hi_level = Q(2**n), Q(2 ** (n + 1))
    scale = hi_level - WITNESS_SCALE_OFFSET
    out = []
    for mu in range(1, profile.gamma + 1):
        lo, hi = profile.bounds(nu, mu)
        if mu == nu:
            out.append(("lower", mu, scale * lo - radius - floor, True))
            out.append(("upper", mu, hi_level - (scale * hi + radius), False))
        else:
            reach = scale * max(abs(lo), abs(hi)) + radius
            out.append(("side", mu, (lo_level if mu < nu else hi_level) - reach, False))
    return out


def check_level(sched: Schedule, profile: CoordinateProfile, nu: int, n: int, depth: int = 8) -> ScheduleCheck:
    """Exact schedule constraints for the lidless box on axis ``nu`` at level ``n``."""
    violations: List[str] = []
    eps = sched.epsilon(nu, n)
    if not 0 < eps < 1:
        violations.append(f"eps={eps} outside (0,1)")
    seq = [sched.a(nu, n, j) for j in range(depth + 1)]
    if seq[0] != 2**n:
        violations.append(f"a(0)={seq[0]} != 2^{n}")
    if any(not x > y for x, y in zip(seq, seq[1:])) or seq[-1] <= 0:
        violations.append("breakpoints not strictly decreasing and positive")
    base = Q(2**n)
    two_eps = _containment_slacks(profile, nu, n, 2 * eps, base)
    a1 = _containment_slacks(profile, nu, n, eps, base + seq[1])
    for tag, rows in (("2eps-ball", two_eps), ("a1-ball", a1)):
        for label, mu, slack, strict in rows:
            if slack < 0 or (strict and slack == 0):
                violations.append(f"{tag}: {label} bound fails on axis {mu} (slack {slack})")
    return ScheduleCheck(nu, n, violations, min(r[2] for r in two_eps), min(r[2] for r in a1))


def verify_schedule(
    sched: Schedule,
    profile: Union[CoordinateProfile, "object"],
    n_max: int,
    *,
    depth: int = 8,
) -> ScheduleReport:
    """Check the breakpoint/radius constraints exactly for all axes and levels ``<= n_max``.

    ``profile`` is a :class:`CoordinateProfile` or anything with a
    ``coordinate_profile()`` method (an embedding model). Balls of ``T(X)``
    are bounded per coordinate by their radius.
    """
    if not isinstance(profile, CoordinateProfile):
        profile = profile.coordinate_profile()  # type: ignore[attr-defined]
    checks = [
        check_level(sched, profile, nu, n, depth)
        for nu in range(1, profile.gamma + 1)
        for n in range(n_max + 1)
    ]
    return ScheduleReport(profile.name, checks)
