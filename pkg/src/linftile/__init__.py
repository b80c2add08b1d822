"""Exact tilings of l-infinity of order 2 and their pullbacks to finite-dimensional spaces."""

from .core import Box, Interval, Q, Scalar, Side, floor_log2, point, scalar
from .covering import BALL, SigmaId, locate_sigma, sigma_in_window, sigma_spec
from .embedding import (
    EmbeddingModel,
    Functional,
    NormedSpace,
    NormingSet,
    NotNorming,
    ScheduleError,
    SearchExhausted,
    build_pairs,
    check_norming,
    check_pairs,
    pullback_locate,
    verify_witness,
    witness,
)
from .refinement import (
    DEFAULT_SCHEDULE,
    TAU_BALL,
    Schedule,
    TauId,
    TileOverflow,
    UncoveredPoint,
    locate_tau,
    tau_in_window,
    tau_spec,
    verify_schedule,
)
from .render import render_svg, svg_inventory
from .verifier import SampleSpec, run_mutation, verify_pullback, verify_sigma, verify_tau

__version__ = "0.1.0"

__all__ = [
    "Box",
    "Interval",
    "Q",
    "Scalar",
    "Side",
    "floor_log2",
    "point",
    "scalar",
    "BALL",
    "SigmaId",
    "locate_sigma",
    "sigma_in_window",
    "sigma_spec",
    "EmbeddingModel",
    "Functional",
    "NormedSpace",
    "NormingSet",
    "NotNorming",
    "ScheduleError",
    "SearchExhausted",
    "build_pairs",
    "check_norming",
    "check_pairs",
    "pullback_locate",
    "verify_witness",
    "witness",
    "DEFAULT_SCHEDULE",
    "TAU_BALL",
    "Schedule",
    "TauId",
    "TileOverflow",
    "UncoveredPoint",
    "locate_tau",
    "tau_in_window",
    "tau_spec",
    "verify_schedule",
    "render_svg",
    "svg_inventory",
    "SampleSpec",
    "run_mutation",
    "verify_pullback",
    "verify_sigma",
    "verify_tau",
]
