"""Map of the two-generator parameter square.

Each cell gets one of two certificates: a finite word-depth cover of the
circle by closed expansion intervals (a number system exists there), or
an inward-set construction (none can exist).  The two can never both
fire; cells with neither certificate stay unknown and shrink as the
search depth grows.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moebius_systems import render_grid

grid = render_grid(48, 24, depth=8, n_max=8)
glyph = {0: ".", 1: "#", 2: "o"}
print("q_b high at the top, q_a increasing to the right")
print("# = cover certificate, o = inward certificate, . = unknown\n")
for row in grid.labels:
    print("".join(glyph[int(v)] for v in row))

fr = grid.fractions()
print(f"\nfractions: cover {fr['cover']:.3f}, inward {fr['inward']:.3f}, "
      f"unknown {fr['unknown']:.3f}")

out = pathlib.Path(__file__).with_suffix(".pgm")
grid.write_pgm(out)
print(f"PGM image written to {out.name}")
