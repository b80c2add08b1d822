"""Regenerate tests/golden/tiles_w4_j3.txt from tile geometry alone.

Lists the ball and slabs j <= 3 of every cell with level n <= 1 in the
plane: these are exactly the tiles meeting [-4,4]^2. Does not touch the
renderer, so the golden file is an independent reference for it.
"""

from pathlib import Path

from linftile.refinement import TAU_BALL, TauId, tau_spec

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden" / "tiles_w4_j3.txt"


def inventory(max_level: int = 1, max_slab: int = 3):
    rows = [TAU_BALL]
    for sign in (1, -1):
        for nu in (1, 2):
            for n in range(max_level + 1):
                rows += [TauId.of(sign, nu, n, j) for j in range(max_slab + 1)]
    return [f"{t} {tau_spec(t, 2)}" for t in rows]


if __name__ == "__main__":
    GOLDEN.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN.write_text("\n".join(inventory()) + "\n")
    print(f"wrote {GOLDEN}")
