"""A tour of the disc-preserving transformation algebra.

Every map here sends the closed unit disc onto itself and is stored as a
normalized 2x2 complex matrix ((alpha, beta), (conj beta, conj alpha)).
"""

import math
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moebius_systems import contraction, from_real_line, normalize, rotation

# The doubling map x -> 2x on the real line, conjugated onto the circle.
doubling = from_real_line(2, 0, 0, 1)
print("doubling map:", doubling)
cls = doubling.classify()
print("  class:", cls.kind)
print(f"  stable fixed point at angle {cls.stable:.4f} (the circle image of "
      f"infinity), unstable at {cls.unstable:.4f} (the image of 0)")

# Composition is matrix multiplication; inverses cancel exactly.
halving = from_real_line(1, 0, 0, 2)
print("doubling . halving is the identity:", doubling.compose(halving).is_identity)

# Any disc map factors as rotation . contraction . rotation.
f = rotation(0.4).compose(contraction(3.0)).compose(rotation(-1.1))
k = f.decompose()
print(f"recovered factors: phi1={k.phi1:.4f} r={k.r:.4f} phi2={k.phi2:.4f}")
print("recomposition error at 1:",
      abs(k.recompose().apply_angle(0.0) - f.apply_angle(0.0)))

# The trace squared sorts maps into elliptic / parabolic / hyperbolic.
for name, m in [
    ("quarter turn", rotation(math.pi / 2)),
    ("unit translation", from_real_line(1, 1, 0, 1)),
    ("contraction to 1", contraction(2.0)),
]:
    c = m.classify()
    print(f"{name:>16}: trace^2 = {c.trace_squared:.3f} -> {c.kind}")

# Matrices are validated: this one fixes 0 but does not preserve the circle.
try:
    normalize([[2, 0], [0, 0.5]])
except Exception as exc:
    print("rejected non-disc matrix:", type(exc).__name__)
