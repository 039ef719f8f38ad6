"""Where a map contracts and where its inverse expands.

For a non-rotation disc map the inverse derivative exceeds 1 exactly on a
disc crossing the unit circle; its trace on the circle (the expansion
interval V) and the arc carried onto it (U) drive everything downstream:
covers, refinement, and the convergence certificates.
"""

import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moebius_systems import (
    ArcSet,
    contraction,
    covers_circle,
    expansion_geometry,
    image,
    min_inverse_derivative,
)

c2 = contraction(2.0)
g = expansion_geometry(c2)
print("contraction with r = 2:")
print(f"  expansion disc center {g.center:.4f}, radius {g.radius:.4f}")
print(f"  |V| = {g.v_interval.length():.6f}  (= 2*arccos(3/5) = {2*math.acos(0.6):.6f})")
print(f"  |U| + |V| = {g.u_interval.length() + g.v_interval.length():.6f}  (full turn)")
print("  F(U) = V:", image(c2, g.u_interval).approx_eq(g.v_interval, 1e-9))

# the derivative of the inverse is smallest at the point opposite the
# disc center; over the whole circle that gives 1/(|alpha|+|beta|)^2
q = min_inverse_derivative(c2, ArcSet.full_circle())
print(f"  min inverse derivative over the whole circle: {q:.4f}  (= 1/r^2 = {1/4:.4f})")

# three rotated copies of a fat interval cover the circle
thirds = [ArcSet.arc(i * 2 * math.pi / 3, (i + 1) * 2 * math.pi / 3) for i in range(3)]
print("three arcs tile the circle (closed cover):", covers_circle(thirds))
print("two of them do not:", covers_circle(thirds[:2]))
