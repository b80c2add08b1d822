"""Exact scalars, points and axis-aligned boxes.

Every coordinate and every constant is an exact rational (``gmpy2.mpq``). Boxes
carry a per-axis open-side flag so that lidless boxes (one half-open side)
and closed boxes share a single representation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from gmpy2 import mpq as Q

Scalar = type(Q(0))
Point = Tuple[Scalar, ...]
ScalarLike = Union[int, str, Scalar]

__all__ = [
    "Q",
    "Scalar",
    "Point",
    "Side",
    "Interval",
    "Box",
    "scalar",
    "point",
    "format_scalar",
    "sup_norm",
    "floor_log2",
    "contains",
    "interior_contains",
    "interiors_disjoint",
    "as_window",
    "DimensionMismatch",
]


class DimensionMismatch(ValueError):
    pass


def scalar(value: ScalarLike) -> Scalar:
    """Convert ``value`` to an exact Scalar.

    Strings may be integers, ``p/q`` or decimals (``"0.4"`` becomes ``2/5``).
    Floats are rejected: their binary expansion is rarely what was meant.
    """
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Fraction)):
        return Q(value)
    if isinstance(value, str):
        try:
            return Q(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational literal {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")


def point(*coords: ScalarLike) -> Point:
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Scalar)):
        coords = tuple(coords[0])  # type: ignore[assignment]
    if not coords:
        raise ValueError("a point needs at least one coordinate")
    return tuple(scalar(c) for c in coords)


def format_scalar(s: Scalar) -> str:
    return str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"


def sup_norm(p: Sequence[Scalar]) -> Scalar:
    return max((abs(c) for c in p), default=Q(0))


def floor_log2(s: Scalar) -> Tuple[int, bool]:
    """Return ``(k, exact)`` with ``2**k <= s < 2**(k+1)``; ``exact`` iff ``s == 2**k``."""
    s = scalar(s)
    if s <= 0:
        raise ValueError(f"floor_log2 needs a positive argument, got {s}")
    num, den = s.numerator, s.denominator
    k = num.bit_length() - den.bit_length()
    # 2**k <= num/den  <=>  num << -k >= den  (or num >= den << k)
    def at_least(e: int) -> bool:
        return num >= den << e if e >= 0 else num << -e >= den

    if not at_least(k):
        k -= 1
    elif at_least(k + 1):
        k += 1
    exact = (num << -k == den) if k < 0 else (num == den << k)
    return k, exact


class Side(enum.Enum):
    NONE = "none"
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class Interval:
    """Non-trivial interval; ``open_side`` marks which endpoint is excluded."""

    lower: Scalar
    upper: Scalar
    open_side: Side = Side.NONE

    def __post_init__(self) -> None:
        object.__setattr__(self, "lower", scalar(self.lower))
        object.__setattr__(self, "upper", scalar(self.upper))
        if not self.lower < self.upper:
            raise ValueError(f"trivial interval [{self.lower}, {self.upper}]")

    @property
    def closed(self) -> bool:
        return self.open_side is Side.NONE

    def contains(self, x: Scalar) -> bool:
        if x < self.lower or x > self.upper:
            return False
        if x == self.lower:
            return self.open_side is not Side.LOWER
        if x == self.upper:
            return self.open_side is not Side.UPPER
        return True

    def interior_contains(self, x: Scalar) -> bool:
        return self.lower < x < self.upper

    def meets(self, lo: Scalar, hi: Scalar) -> bool:
        """Whether this interval meets the closed interval ``[lo, hi]`` (``lo <= hi``)."""
        if hi < self.lower or lo > self.upper:
            return False
        if hi == self.lower and self.open_side is Side.LOWER:
            return False
        if lo == self.upper and self.open_side is Side.UPPER:
            return False
        return True

    def reflect(self) -> "Interval":
        side = {Side.LOWER: Side.UPPER, Side.UPPER: Side.LOWER}.get(self.open_side, Side.NONE)
        return Interval(-self.upper, -self.lower, side)

    def __str__(self) -> str:
        left = "(" if self.open_side is Side.LOWER else "["
        right = ")" if self.open_side is Side.UPPER else "]"
        return f"{left}{format_scalar(self.lower)},{format_scalar(self.upper)}{right}"


@dataclass(frozen=True)
class Box:
    """Product of non-trivial intervals, at most one of them half-open."""

    axes: Tuple[Interval, ...]

    def __post_init__(self) -> None:
        axes = tuple(self.axes)
        if not axes:
            raise ValueError("a box needs at least one axis")
        if sum(not ax.closed for ax in axes) > 1:
            raise ValueError("at most one axis of a box may be half-open")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def closed(cls, bounds: Iterable[Tuple[ScalarLike, ScalarLike]]) -> "Box":
        return cls(tuple(Interval(scalar(lo), scalar(hi)) for lo, hi in bounds))

    @classmethod
    def cube(cls, dim: int, radius: ScalarLike) -> "Box":
        r = scalar(radius)
        return cls.closed([(-r, r)] * dim)

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def is_closed(self) -> bool:
        return all(ax.closed for ax in self.axes)

    @property
    def bounds(self) -> Tuple[Tuple[Scalar, Scalar], ...]:
        return tuple((ax.lower, ax.upper) for ax in self.axes)

    def _check(self, other_dim: int) -> None:
        if other_dim != self.dim:
            raise DimensionMismatch(f"dimension {other_dim} does not match box dimension {self.dim}")

    def contains(self, p: Sequence[Scalar]) -> bool:
        self._check(len(p))
        return all(ax.contains(x) for ax, x in zip(self.axes, p))

    def interior_contains(self, p: Sequence[Scalar]) -> bool:
        self._check(len(p))
        return all(ax.lower < x < ax.upper for ax, x in zip(self.axes, p))

    def meets(self, window: Sequence[Tuple[Scalar, Scalar]]) -> bool:
        """Whether the box meets the closed window given as ``(lo, hi)`` pairs.

        Degenerate pairs (``lo == hi``) are allowed, so a point is a window.
        """
        if len(window) != len(self.axes):
            self._check(len(window))
        for ax, (lo, hi) in zip(self.axes, window):
            if not ax.meets(lo, hi):
                return False
        return True

    def intersects(self, other: "Box") -> bool:
        self._check(other.dim)
        for a, b in zip(self.axes, other.axes):
            lo, hi = max(a.lower, b.lower), min(a.upper, b.upper)
            if lo > hi:
                return False
            if lo == hi and not (a.contains(lo) and b.contains(lo)):
                return False
        return True

    def interiors_disjoint(self, other: "Box") -> bool:
        self._check(other.dim)
        return any(
            max(a.lower, b.lower) >= min(a.upper, b.upper) for a, b in zip(self.axes, other.axes)
        )

    def reflect(self) -> "Box":
        return Box(tuple(ax.reflect() for ax in self.axes))

    def diameter(self) -> Scalar:
        return max(ax.upper - ax.lower for ax in self.axes)

    def __str__(self) -> str:
        return "x".join(str(ax) for ax in self.axes)


def as_window(window: Union[Box, Sequence[Tuple[ScalarLike, ScalarLike]]]) -> Tuple[Tuple[Scalar, Scalar], ...]:
    """Normalise a window to closed ``(lo, hi)`` pairs; a Box must be closed."""
    if isinstance(window, Box):
        if not window.is_closed:
            raise ValueError("windows must be closed boxes")
        return window.bounds
    pairs = tuple((scalar(lo), scalar(hi)) for lo, hi in window)
    for lo, hi in pairs:
        if lo > hi:
            raise ValueError(f"empty window axis [{lo}, {hi}]")
    return pairs


def contains(box: Box, p: Sequence[Scalar]) -> bool:
    return box.contains(p)


def interior_contains(box: Box, p: Sequence[Scalar]) -> bool:
    return box.interior_contains(p)


def interiors_disjoint(b1: Box, b2: Box) -> bool:
    return b1.interiors_disjoint(b2)
