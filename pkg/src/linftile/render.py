"""SVG picture of the planar tiling inside a window.

Each drawn tile is a ``<rect class="tile">`` whose ``<title>`` holds the
tile id and its exact box, so the figure doubles as a tile inventory.
Slabs beyond ``max_slab`` are summarised per cell by one hatched band.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Iterator, List, Tuple

from .core import Box, Interval, as_window, format_scalar
from .covering import sigma_in_window
from .refinement import DEFAULT_SCHEDULE, TAU_BALL, Schedule, TauId, tau_spec

CANVAS = 640
MARGIN = 20
AXIS_HUES = {1: 210, 2: 25}


def tiles_up_to(window, sched: Schedule, max_slab: int) -> Iterator[Tuple[TauId, Box]]:
    """Tiles with slab index ``<= max_slab`` that meet the window."""
    w = as_window(window)
    dim = len(w)
    for sid in sigma_in_window(w):
        if sid.is_ball:
            yield TAU_BALL, tau_spec(TAU_BALL, dim, sched)
            continue
        for j in range(max_slab + 1):
            tid = TauId.of(sid.sign, sid.axis, sid.level, j)
            box = tau_spec(tid, dim, sched)
            if box.meets(w):
                yield tid, box


def _rest_band(tid: TauId, sched: Schedule, max_slab: int) -> Box:
    """The part of a cell below slab ``max_slab``: infinitely many thinner slabs."""
    base = 2**tid.level
    top = base + sched.a(tid.axis, tid.level, max_slab + 1)
    cell = tau_spec(tid, 2, sched)
    axes = list(cell.axes)
    band = Interval(base, top) if tid.sign > 0 else Interval(-top, -base)
    axes[tid.axis - 1] = band
    return Box(tuple(axes))


def _fill(tid: TauId) -> str:
    if tid.is_ball:
        return "#d9d9d9"
    hue = AXIS_HUES.get(tid.axis, 120)
    light = 80 - 12 * (tid.slab % 4) if tid.sign > 0 else 70 - 12 * (tid.slab % 4)
    return f"hsl({hue},{55 + 10 * (tid.level % 3)}%,{light}%)"


def render_svg(window, sched: Schedule = DEFAULT_SCHEDULE, max_slab: int = 3, labels: bool = True) -> str:
    """Deterministic SVG 1.1 text for a 2-D window."""
    w = as_window(window)
    if len(w) != 2:
        raise ValueError("only 2-dimensional windows can be rendered")
    if max_slab < 0:
        raise ValueError("max_slab must be >= 0")
    (x0, x1), (y0, y1) = w
    if x0 == x1 or y0 == y1:
        raise ValueError("the render window must have positive width and height")
    size = CANVAS - 2 * MARGIN
    scale = size / float(max(x1 - x0, y1 - y0))

    def sx(x) -> float:
        return MARGIN + float(x - x0) * scale

    def sy(y) -> float:
        return MARGIN + float(y1 - y) * scale

    def clip(box: Box):
        (a0, a1), (b0, b1) = box.bounds
        a0, a1, b0, b1 = max(a0, x0), min(a1, x1), max(b0, y0), min(b1, y1)
        return (a0, a1, b0, b1) if a0 <= a1 and b0 <= b1 else None

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "version": "1.1",
            "width": str(CANVAS),
            "height": str(CANVAS),
            "viewBox": f"0 0 {CANVAS} {CANVAS}",
        },
    )
    defs = ET.SubElement(svg, "defs")
    pattern = ET.SubElement(
        defs, "pattern", {"id": "rest", "width": "4", "height": "4", "patternUnits": "userSpaceOnUse"}
    )
    ET.SubElement(pattern, "path", {"d": "M0,4 L4,0", "stroke": "#555", "stroke-width": "0.6"})
    shown = "x".join(f"[{format_scalar(lo)},{format_scalar(hi)}]" for lo, hi in w)
    ET.SubElement(svg, "title").text = f"tiling window {shown}, slabs j <= {max_slab}"

    tiles: List[Tuple[TauId, Box]] = list(tiles_up_to(w, sched, max_slab))
    rests = []
    seen_cells = set()
    for tid, box in tiles:
        if not tid.is_ball and tid.parent not in seen_cells:
            seen_cells.add(tid.parent)
            band = _rest_band(tid, sched, max_slab)
            if band.meets(w):
                rests.append((tid, band))

    def rect(box: Box, attrs: dict, title: str) -> None:
        c = clip(box)
        if c is None:
            return
        a0, a1, b0, b1 = c
        el = ET.SubElement(
            svg,
            "rect",
            {
                "x": f"{sx(a0):.4f}",
                "y": f"{sy(b1):.4f}",
                "width": f"{(sx(a1) - sx(a0)):.4f}",
                "height": f"{(sy(b0) - sy(b1)):.4f}",
                "stroke": "#222",
                "stroke-width": "0.5",
                **attrs,
            },
        )
        ET.SubElement(el, "title").text = title

    for tid, box in tiles:
        rect(box, {"class": "tile", "fill": _fill(tid)}, f"{tid} {box}")
    for tid, band in rests:
        rect(band, {"class": "rest", "fill": "url(#rest)"}, f"{tid.parent} slabs j > {max_slab}: {band}")

    if labels:
        for tid, box in tiles:
            c = clip(box)
            if c is None or not (tid.is_ball or tid.slab == 0):
                continue
            a0, a1, b0, b1 = c
            text = ET.SubElement(
                svg,
                "text",
                {
                    "x": f"{(sx(a0) + sx(a1)) / 2:.4f}",
                    "y": f"{(sy(b0) + sy(b1)) / 2:.4f}",
                    "font-size": "9",
                    "text-anchor": "middle",
                    "font-family": "monospace",
                },
            )
            text.text = "A0" if tid.is_ball else f"{'+' if tid.sign > 0 else '-'}A({tid.level},0)_{tid.axis}"
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def svg_inventory(svg_text: str) -> List[str]:
    """The ``"<id> <box>"`` titles of every tile rect, in document order."""
    root = ET.fromstring(svg_text.split("\n", 1)[1] if svg_text.startswith("<?xml") else svg_text)
    ns = {"s": "http://www.w3.org/2000/svg"}
    return [
        el.find("s:title", ns).text  # type: ignore[union-attr]
        for el in root.findall("s:rect", ns)
        if el.get("class") == "tile"
    ]
