"""Point-finite but not locally finite: the window [1, 3/2] x [0, 1/2].

Counts tiles meeting the window for growing caps (always overflows) and the
largest number of tiles through any single point (never more than 2).

usage: python3 scripts/accumulation_demo.py [--points 5000]
"""

import argparse

from linftile.core import Box, Q
from linftile.refinement import DEFAULT_SCHEDULE, TileOverflow, locate_tau, tau_in_window
from linftile.verifier import SampleSpec, sample_points


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=5000)
    args = ap.parse_args()
    window = Box.closed([(1, Q(3, 2)), (0, Q(1, 2))])
    for cap in (10, 100, 1000, 10_000):
        try:
            n = len(tau_in_window(window, DEFAULT_SCHEDULE, cap))
            print(f"cap {cap:>6}: {n} tiles (finite)")
        except TileOverflow:
            print(f"cap {cap:>6}: overflow")
    counts = {}
    pts = list(sample_points(SampleSpec(0, args.points, window, "adversarial")))
    pts += [(1 + DEFAULT_SCHEDULE.a(1, 0, j), Q(1, 4)) for j in range(1, 30)]
    for p in pts:
        k = len(locate_tau(p))
        counts[k] = counts.get(k, 0) + 1
    print("points by number of tiles containing them:", dict(sorted(counts.items())))


if __name__ == "__main__":
    main()
