"""Command-line literals and JSON file formats.

Space file::

    {"dim": 2, "kind": "ell1" | "sup" | "polytope",
     "generators": [["1", "1"], ...], "extreme_points": [...]}   # last two optional for sup/ell1

Norming-set file::  {"alpha": "1", "functionals": [["1", "1"], ...]}
Pairs file::        [{"x": ["0", "1"], "f": ["1", "1"]}, ...]
Schedule file::     {"ratio": "1/10", "eps": "9/100",
                     "overrides": [{"axis": 1, "level": 0, "a": ["1", "1/20"], "eps": "1/20"}]}

Every number is a string holding an integer, ``p/q`` or a decimal.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Tuple, Union

from .core import Point, Scalar, as_window, format_scalar, point, scalar
from .embedding import EmbeddingModel, Functional, NormedSpace, NormingSet
from .refinement import Schedule

PathLike = Union[str, Path]
Window = Tuple[Tuple[Scalar, Scalar], ...]


def parse_point(text: str) -> Point:
    return point(*[part for part in text.split(",")])


def parse_window(text: str) -> Window:
    """``lo1,hi1,lo2,hi2,...`` to closed ``(lo, hi)`` pairs (degenerate axes allowed)."""
    values = [scalar(part) for part in text.split(",")]
    if len(values) % 2 or not values:
        raise ValueError("a window needs an even number of bounds: lo1,hi1,lo2,hi2,...")
    return as_window(list(zip(values[::2], values[1::2])))


def _load(path: PathLike):
    with open(path) as fh:
        return json.load(fh)


def _dump(data, path: PathLike) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def read_schedule(path: PathLike) -> Schedule:
    return Schedule.from_dict(_load(path))


def write_schedule(sched: Schedule, path: PathLike) -> None:
    _dump(sched.to_dict(), path)


def read_space(path: PathLike) -> NormedSpace:
    return NormedSpace.from_dict(_load(path))


def read_norming(path: PathLike) -> NormingSet:
    return NormingSet.from_dict(_load(path))


def pairs_to_list(model: EmbeddingModel) -> List[dict]:
    return [
        {"x": [format_scalar(c) for c in x], "f": [format_scalar(c) for c in f.coeffs]}
        for x, f in model.pairs
    ]


def write_pairs(model: EmbeddingModel, path: PathLike) -> None:
    _dump(pairs_to_list(model), path)


def read_pairs(path: PathLike, space: NormedSpace) -> EmbeddingModel:
    rows = _load(path)
    return EmbeddingModel(space, tuple((point(r["x"]), Functional(r["f"])) for r in rows))
