"""Render the planar tiling of [-4,4]^2 to SVG and a PNG preview.

usage: python3 scripts/render_figure.py [--max-slab 3] [--outdir figures]
"""

import argparse
import re
import xml.etree.ElementTree as ET
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import to_rgb  # noqa: E402
import colorsys  # noqa: E402

from linftile import render_svg  # noqa: E402
from linftile.formats import parse_window  # noqa: E402

NS = {"s": "http://www.w3.org/2000/svg"}


def _colour(fill: str):
    m = re.fullmatch(r"hsl\((\d+),(\d+)%,(\d+)%\)", fill)
    if m:
        h, s, lum = (int(v) for v in m.groups())
        return colorsys.hls_to_rgb(h / 360, lum / 100, s / 100)
    return to_rgb(fill)


def preview(svg_text: str, path: Path) -> None:
    root = ET.fromstring(svg_text.split("\n", 1)[1])
    size = float(root.get("width"))
    fig, ax = plt.subplots(figsize=(6, 6), dpi=150)
    for el in root.findall("s:rect", NS):
        x, y, w, h = (float(el.get(k)) for k in ("x", "y", "width", "height"))
        if el.get("class") == "tile":
            ax.add_patch(plt.Rectangle((x, y), w, h, facecolor=_colour(el.get("fill")), edgecolor="#222", lw=0.3))
        else:
            ax.add_patch(plt.Rectangle((x, y), w, h, facecolor="none", edgecolor="#555", hatch="////", lw=0.2))
    for el in root.findall("s:text", NS):
        ax.text(float(el.get("x")), float(el.get("y")), el.text, ha="center", va="center", fontsize=5, family="monospace")
    ax.set_xlim(0, size)
    ax.set_ylim(size, 0)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--window", default="-4,4,-4,4")
    ap.add_argument("--max-slab", type=int, default=3)
    ap.add_argument("--outdir", default="figures")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    svg = render_svg(parse_window(args.window), max_slab=args.max_slab)
    (out / "tiling.svg").write_text(svg)
    preview(svg, out / "tiling.png")
    print(f"wrote {out / 'tiling.svg'} and {out / 'tiling.png'}")


if __name__ == "__main__":
    main()
