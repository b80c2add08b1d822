"""The partition of finite-dimensional l-infinity into the unit ball and lidless boxes.

Members are identified symbolically by :class:`SigmaId`; their boxes are
computed on demand, never materialised as a whole. Axes are 1-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Sequence

from .core import Q, Box, Interval, Scalar, Side, as_window, floor_log2, sup_norm

__all__ = [
    "SigmaId",
    "BALL",
    "sigma_spec",
    "locate_sigma",
    "sigma_in_window",
    "SpecFn",
]


@dataclass(frozen=True, order=True)
class SigmaId:
    kind: str
    sign: int = 0
    axis: int = 0
    level: int = 0

    def __post_init__(self) -> None:
        if self.kind == "ball":
            if (self.sign, self.axis, self.level) != (0, 0, 0):
                raise ValueError("the ball carries no sign, axis or level")
        elif self.kind == "cell":
            if self.sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {self.sign}")
            if self.axis < 1:
                raise ValueError(f"axes are 1-based, got {self.axis}")
            if self.level < 0:
                raise ValueError(f"level must be >= 0, got {self.level}")
        else:
            raise ValueError(f"unknown member kind {self.kind!r}")

    @classmethod
    def cell(cls, sign: int, axis: int, level: int) -> "SigmaId":
        return cls("cell", sign, axis, level)

    @property
    def is_ball(self) -> bool:
        return self.kind == "ball"

    def to_dict(self) -> Dict[str, object]:
        if self.is_ball:
            return {"kind": "ball"}
        return {"kind": "cell", "sign": self.sign, "axis": self.axis, "level": self.level}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "SigmaId":
        if data["kind"] == "ball":
            return BALL
        return cls.cell(int(data["sign"]), int(data["axis"]), int(data["level"]))  # type: ignore[arg-type]

    def __str__(self) -> str:
        if self.is_ball:
            return "ball"
        return f"cell({'+' if self.sign > 0 else '-'},{self.axis},{self.level})"


BALL = SigmaId("ball")

SpecFn = Callable[[SigmaId, int], Box]


@lru_cache(maxsize=4096)
def sigma_spec(sid: SigmaId, dim: int) -> Box:
    """Box of a covering member in dimension ``dim``."""
    if sid.is_ball:
        return Box.cube(dim, 1)
    if sid.axis > dim:
        raise ValueError(f"axis {sid.axis} outside dimension {dim}")
    lo, hi = Q(2**sid.level), Q(2 ** (sid.level + 1))
    axes = []
    for mu in range(1, dim + 1):
        if mu < sid.axis:
            axes.append(Interval(-lo, lo))
        elif mu == sid.axis:
            axes.append(Interval(lo, hi, Side.LOWER))
        else:
            axes.append(Interval(-hi, hi))
    box = Box(tuple(axes))
    return box if sid.sign > 0 else box.reflect()


def locate_sigma(p: Sequence[Scalar]) -> SigmaId:
    """The unique covering member containing ``p``."""
    norm = sup_norm(p)
    if norm <= 1:
        return BALL
    k, exact = floor_log2(norm)
    level = k - 1 if exact else k
    threshold = 2**level
    for nu, x in enumerate(p, start=1):
        if abs(x) > threshold:
            return SigmaId.cell(1 if x > 0 else -1, nu, level)
    raise AssertionError("unreachable: the norm coordinate exceeds the threshold")


def _levels_for(window: Sequence[tuple]) -> int:
    """Largest level whose cells can reach the window (-1 if none)."""
    radius = max(max(abs(lo), abs(hi)) for lo, hi in window)
    if radius < 1:
        return -1
    return floor_log2(radius)[0]


@lru_cache(maxsize=256)
def _candidates(spec_fn: SpecFn, dim: int, top: int) -> tuple:
    cells = (
        SigmaId.cell(sign, nu, n) for sign in (1, -1) for nu in range(1, dim + 1) for n in range(top + 1)
    )
    return tuple((sid, spec_fn(sid, dim)) for sid in itertools.chain([BALL], cells))


def sigma_in_window(window, spec_fn: SpecFn = sigma_spec) -> List[SigmaId]:
    """All covering members meeting a closed window (a Box or ``(lo, hi)`` pairs).

    ``spec_fn`` swaps the member geometry; used by the mutation suites.
    """
    w = as_window(window)
    return [sid for sid, box in _candidates(spec_fn, len(w), _levels_for(w)) if box.meets(w)]
