"""Norming pairs, the embedding into l-infinity, and the pulled-back tiling.

A polyhedral normed space ``X`` is given by a symmetric set ``G`` of
functionals with ``||x|| = max_g g(x)``. From a 1-norming set ``M`` we pick
an ordered system of pairs ``(x_nu, f_nu)``:

1. ``||x_nu|| = 1`` and ``f_nu`` in ``M``;
2. ``|f_mu(x_nu)| <= 1/2`` for ``mu < nu``;
3. ``f_nu(x_nu) >= 3/4``;
4. ``{f_nu}`` is 1/2-norming.

Then ``T x = (f_nu(x))_nu`` satisfies ``||x||/2 <= ||T x|| <= ||x||`` and
the preimages of the tiles of l-infinity tile ``X``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Q, Scalar, DimensionMismatch, Point, ScalarLike, format_scalar, point, scalar, sup_norm
from .lp import maximize, null_vector, rank, solve_square
from .refinement import (
    DEFAULT_SCHEDULE,
    WITNESS_SCALE_OFFSET,
    CoordinateProfile,
    Schedule,
    TauId,
    check_level,
    locate_tau,
    tau_spec,
)

__all__ = [
    "Functional",
    "NormedSpace",
    "NormingSet",
    "EmbeddingModel",
    "NotNorming",
    "SearchExhausted",
    "ScheduleError",
    "Witness",
    "norming_certificate",
    "check_norming",
    "build_pairs",
    "check_pairs",
    "embed",
    "pullback_locate",
    "witness",
    "verify_witness",
]

HALF = Q(1, 2)
THREE_QUARTERS = Q(3, 4)


class NotNorming(ValueError):
    def __init__(self, message: str, certificate: Optional[Point] = None):
        super().__init__(message)
        self.certificate = certificate


class SearchExhausted(RuntimeError):
    """No admissible pair exists although the chosen functionals are not yet 1/2-norming."""

    def __init__(self, message: str, pairs: tuple, certificate: Point):
        super().__init__(message)
        self.pairs = pairs
        self.certificate = certificate


class ScheduleError(ValueError):
    pass


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), Q(0))


@dataclass(frozen=True)
class Functional:
    coeffs: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", point(self.coeffs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: Sequence[Scalar]) -> Scalar:
        if len(x) != self.dim:
            raise DimensionMismatch(f"functional of dimension {self.dim} applied to a {len(x)}-vector")
        return _dot(self.coeffs, x)

    def __neg__(self) -> "Functional":
        return Functional(tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        return "(" + ",".join(format_scalar(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class NormedSpace:
    """``R^dim`` with the polyhedral norm ``||x|| = max_{g in generators} g(x)``."""

    dim: int
    kind: str
    generators: Tuple[Point, ...]
    extreme_points: Tuple[Point, ...]

    def __post_init__(self) -> None:
        gens = tuple(point(g) for g in self.generators)
        if self.kind not in ("sup", "ell1", "polytope"):
            raise ValueError(f"unknown norm kind {self.kind!r}")
        if any(len(g) != self.dim for g in gens):
            raise DimensionMismatch("generator dimension mismatch")
        gen_set = set(gens)
        if any(tuple(-c for c in g) not in gen_set for g in gens):
            raise ValueError("generator set must be symmetric (g in G iff -g in G)")
        if rank(gens) < self.dim:
            raise ValueError("generators do not span the dual: not a norm")
        object.__setattr__(self, "generators", gens)
        exts = tuple(point(e) for e in self.extreme_points) or _vertices(gens, self.dim)
        if any(self.norm(e) != 1 for e in exts):
            raise ValueError("extreme points must lie on the unit sphere")
        object.__setattr__(self, "extreme_points", exts)

    @classmethod
    def sup(cls, dim: int) -> "NormedSpace":
        gens = [tuple(Q(s * (i == k)) for i in range(dim)) for k in range(dim) for s in (1, -1)]
        exts = [tuple(Q(v) for v in signs) for signs in itertools.product((1, -1), repeat=dim)]
        return cls(dim, "sup", tuple(gens), tuple(exts))

    @classmethod
    def ell1(cls, dim: int) -> "NormedSpace":
        gens = [tuple(Q(v) for v in signs) for signs in itertools.product((1, -1), repeat=dim)]
        exts = [tuple(Q(s * (i == k)) for i in range(dim)) for k in range(dim) for s in (1, -1)]
        return cls(dim, "ell1", tuple(gens), tuple(exts))

    @classmethod
    def polytope(cls, generators: Sequence[Sequence[ScalarLike]], extreme_points=()) -> "NormedSpace":
        gens = tuple(point(g) for g in generators)
        return cls(len(gens[0]), "polytope", gens, tuple(point(e) for e in extreme_points))

    def norm(self, x: Sequence[Scalar]) -> Scalar:
        if len(x) != self.dim:
            raise DimensionMismatch(f"{len(x)}-vector in a {self.dim}-dimensional space")
        return max(_dot(g, x) for g in self.generators)

    def dual_norm(self, f: Functional) -> Scalar:
        return max(abs(f(e)) for e in self.extreme_points)

    def to_dict(self) -> Dict[str, object]:
        return {
            "dim": self.dim,
            "kind": self.kind,
            "generators": [[format_scalar(c) for c in g] for g in self.generators],
            "extreme_points": [[format_scalar(c) for c in e] for e in self.extreme_points],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "NormedSpace":
        kind = data["kind"]
        dim = int(data["dim"])  # type: ignore[arg-type]
        if kind == "sup":
            return cls.sup(dim)
        if kind == "ell1":
            return cls.ell1(dim)
        space = cls.polytope(data["generators"], data.get("extreme_points") or ())  # type: ignore[arg-type]
        if space.dim != dim:
            raise DimensionMismatch(f"declared dim {dim} but generators have dimension {space.dim}")
        return space


def _vertices(gens: Tuple[Point, ...], dim: int) -> Tuple[Point, ...]:
    """Vertices of ``{x : g(x) <= 1}`` by brute force over ``dim``-subsets."""
    found = set()
    for subset in itertools.combinations(gens, dim):
        if rank(subset) < dim:
            continue
        v = solve_square([list(g) for g in subset], [Q(1)] * dim)
        if all(_dot(g, v) <= 1 for g in gens):
            found.add(v)
    return tuple(sorted(found))


@dataclass(frozen=True)
class NormingSet:
    functionals: Tuple[Functional, ...]
    alpha: Scalar = Q(1)

    def __post_init__(self) -> None:
        fs = tuple(f if isinstance(f, Functional) else Functional(f) for f in self.functionals)
        object.__setattr__(self, "functionals", fs)
        object.__setattr__(self, "alpha", scalar(self.alpha))
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")

    @classmethod
    def standard(cls, space: NormedSpace) -> "NormingSet":
        """The generators on the dual unit sphere; they norm the space exactly.

        Redundant generators (not supporting a facet of the ball) are dropped.
        """
        fs = tuple(Functional(g) for g in space.generators)
        return cls(tuple(f for f in fs if space.dual_norm(f) == 1), Q(1))

    def to_dict(self) -> Dict[str, object]:
        return {
            "alpha": format_scalar(self.alpha),
            "functionals": [[format_scalar(c) for c in f.coeffs] for f in self.functionals],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "NormingSet":
        return cls(tuple(Functional(f) for f in data["functionals"]), scalar(data.get("alpha", 1)))  # type: ignore[arg-type]


def norming_certificate(
    functionals: Sequence[Functional], space: NormedSpace, alpha: Scalar
) -> Optional[Point]:
    """A unit vector ``x`` with ``max_f |f(x)| < alpha``, or None if the set is alpha-norming.

    ``max_f |f(x)| >= alpha ||x||`` for all ``x`` iff, for every generator
    ``g`` of the norm, ``max {g(y) : |f(y)| <= 1 for all f} <= 1/alpha``.
    """
    alpha = scalar(alpha)
    rows = [f.coeffs for f in functionals]
    v = null_vector(rows, space.dim)
    if v is not None:
        return tuple(c / space.norm(v) for c in v)
    a = [r for f in rows for r in (f, tuple(-c for c in f))]
    b = [Q(1)] * len(a)
    seen = set()
    for g in space.generators:
        if tuple(-c for c in g) in seen:
            continue
        seen.add(g)
        res = maximize(g, a, b)
        if res.value > 1 / alpha:
            y = res.x
            return tuple(c / space.norm(y) for c in y)
    return None


def check_norming(m: NormingSet, space: NormedSpace) -> bool:
    """Whether ``m.functionals`` is ``m.alpha``-norming for ``space`` (exact)."""
    if any(f.dim != space.dim for f in m.functionals):
        raise DimensionMismatch("functional dimension differs from the space")
    return norming_certificate(m.functionals, space, m.alpha) is None


@dataclass(frozen=True)
class EmbeddingModel:
    space: NormedSpace
    pairs: Tuple[Tuple[Point, Functional], ...]

    @property
    def gamma(self) -> int:
        return len(self.pairs)

    @property
    def functionals(self) -> Tuple[Functional, ...]:
        return tuple(f for _, f in self.pairs)

    @classmethod
    def identity(cls, dim: int) -> "EmbeddingModel":
        space = NormedSpace.sup(dim)
        pairs = []
        for k in range(dim):
            e = tuple(Q(int(i == k)) for i in range(dim))
            pairs.append((e, Functional(e)))
        return cls(space, tuple(pairs))

    def embed(self, x: Sequence[Scalar]) -> Point:
        if len(x) != self.space.dim:
            raise DimensionMismatch(f"{len(x)}-vector in a {self.space.dim}-dimensional space")
        return tuple(f(x) for _, f in self.pairs)

    def coordinate_profile(self) -> CoordinateProfile:
        table = [[f(x) for _, f in self.pairs] for x, _ in self.pairs]
        return CoordinateProfile("model", self.gamma, lambda nu, mu: (table[nu - 1][mu - 1],) * 2)

    def to_dict(self) -> Dict[str, object]:
        return {
            "space": self.space.to_dict(),
            "pairs": [
                {"x": [format_scalar(c) for c in x], "f": [format_scalar(c) for c in f.coeffs]}
                for x, f in self.pairs
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "EmbeddingModel":
        space = NormedSpace.from_dict(data["space"])  # type: ignore[arg-type]
        pairs = tuple((point(p["x"]), Functional(p["f"])) for p in data["pairs"])  # type: ignore[union-attr]
        return cls(space, pairs)


def _unit_candidate(
    space: NormedSpace, f: Functional, chosen: Sequence[Functional], bound: Scalar, lower: Scalar
) -> Optional[Point]:
    """A unit vector ``x`` with ``f(x) >= lower`` and ``|g(x)| <= bound`` for chosen ``g``."""
    a = [list(g) for g in space.generators]
    b = [Q(1)] * len(a)
    for g in chosen:
        a += [list(g.coeffs), [-c for c in g.coeffs]]
        b += [bound, bound]
    best = maximize(f.coeffs, a, b)
    if best.value < lower:
        return None
    if space.norm(best.x) == 1:
        return best.x
    # the feasible polytope reaches the sphere iff some generator attains 1 on it
    a.append([-c for c in f.coeffs])
    b.append(-lower)
    for g in space.generators:
        res = maximize(g, a, b)
        if res.value == 1:
            return res.x
    return None


def build_pairs(
    space: NormedSpace,
    m: NormingSet,
    *,
    bound: ScalarLike = HALF,
    lower: ScalarLike = THREE_QUARTERS,
) -> EmbeddingModel:
    """Greedily select norming pairs until the chosen functionals are 1/2-norming.

    Candidates are tried in the order of ``m``; the first one admitting a
    unit vector wins. ``bound`` and ``lower`` are the thresholds of
    conditions (2) and (3) and exist to run mutation checks.
    """
    bound, lower = scalar(bound), scalar(lower)
    if m.alpha != 1 or not check_norming(m, space):
        raise NotNorming(
            "the candidate set must be 1-norming for the given norm",
            norming_certificate(m.functionals, space, Q(1)),
        )
    for f in m.functionals:
        if space.dual_norm(f) != 1:
            raise NotNorming(f"functional {f} is not on the dual unit sphere")
    pairs: List[Tuple[Point, Functional]] = []
    while True:
        chosen = [f for _, f in pairs]
        certificate = norming_certificate(chosen, space, HALF)
        if certificate is None:
            return EmbeddingModel(space, tuple(pairs))
        for f in m.functionals:
            if f in chosen:
                continue
            x = _unit_candidate(space, f, chosen, bound, lower)
            if x is not None:
                pairs.append((x, f))
                break
        else:
            raise SearchExhausted(
                f"no admissible pair after {len(pairs)} pairs", tuple(pairs), certificate
            )


def check_pairs(model: EmbeddingModel, norming: Optional[NormingSet] = None) -> List[str]:
    """Violations of the four pair conditions (empty list when all hold)."""
    out = []
    space = model.space
    allowed = set(norming.functionals) if norming is not None else None
    for nu, (x, f) in enumerate(model.pairs, start=1):
        if space.norm(x) != 1:
            out.append(f"(1) ||x_{nu}|| = {space.norm(x)} != 1")
        if space.dual_norm(f) != 1:
            out.append(f"(1) f_{nu} is not on the dual unit sphere")
        if allowed is not None and f not in allowed:
            out.append(f"(1) f_{nu} not drawn from the norming set")
        for mu in range(nu - 1):
            v = model.pairs[mu][1](x)
            if abs(v) > HALF:
                out.append(f"(2) |f_{mu + 1}(x_{nu})| = {abs(v)} > 1/2")
        if f(x) < THREE_QUARTERS:
            out.append(f"(3) f_{nu}(x_{nu}) = {f(x)} < 3/4")
    if not model.pairs or norming_certificate(model.functionals, space, HALF) is not None:
        out.append("(4) chosen functionals are not 1/2-norming")
    return out


def embed(model: EmbeddingModel, x: Sequence[Scalar]) -> Point:
    return model.embed(x)


def pullback_locate(
    model: EmbeddingModel, x: Sequence[Scalar], sched: Schedule = DEFAULT_SCHEDULE
) -> Tuple[TauId, ...]:
    """Tiles of the pulled-back tiling of ``X`` that contain ``x``."""
    return locate_tau(model.embed(x), sched)


@dataclass(frozen=True)
class Witness:
    point: Point  # in X
    image: Point  # T(point), in l-infinity
    radius: Scalar


def witness(model: EmbeddingModel, tid: TauId, sched: Schedule = DEFAULT_SCHEDULE) -> Witness:
    """An interior point of a tile together with a radius of a ball around it inside the tile.

    For a slab ``j`` the point lies on the segment from 0 to
    ``(2^(n+1) - 2/5) T(x_nu)`` with axis-``nu`` coordinate at the middle of
    the slab, and the radius is ``min(1, r) * eps`` with ``r`` half the slab
    width. When that middle lies beyond the segment (possible only for
    ``j = 0``) the segment's far end is used instead.
    """
    dim = model.space.dim
    if tid.is_ball:
        origin = tuple(Q(0) for _ in range(dim))
        return Witness(origin, model.embed(origin), HALF)
    nu, n, j = tid.axis, tid.level, tid.slab
    if nu > model.gamma:
        raise ValueError(f"axis {nu} beyond the {model.gamma} embedding coordinates")
    check = check_level(sched, model.coordinate_profile(), nu, n)
    if not check.ok:
        raise ScheduleError(f"schedule fails at axis {nu}, level {n}: {check.violations}")
    x_nu, f_nu = model.pairs[nu - 1]
    c_nu = f_nu(x_nu)
    lo, hi = 2**n + sched.a(nu, n, j + 1), 2**n + sched.a(nu, n, j)
    half_width = (hi - lo) / 2
    target = lo + half_width
    far_end = (2 ** (n + 1) - WITNESS_SCALE_OFFSET) * c_nu
    scale = target / c_nu if target <= far_end else far_end / c_nu
    x = tuple(tid.sign * scale * c for c in x_nu)
    return Witness(x, model.embed(x), min(Q(1), half_width) * sched.epsilon(nu, n))


def verify_witness(
    model: EmbeddingModel,
    tid: TauId,
    sched: Schedule = DEFAULT_SCHEDULE,
    w: Optional[Witness] = None,
) -> bool:
    """Exact check that the witness ball lies in the tile, coordinate by coordinate."""
    if w is None:
        w = witness(model, tid, sched)
    box = tau_spec(tid, model.gamma, sched)
    return all(
        ax.lower <= z - w.radius and z + w.radius <= ax.upper for ax, z in zip(box.axes, w.image)
    )


def sandwich_holds(model: EmbeddingModel, x: Sequence[Scalar]) -> bool:
    nx = model.space.norm(x)
    nt = sup_norm(model.embed(x))
    return nx / 2 <= nt <= nx
