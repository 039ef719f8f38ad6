"""Certify the four bundled number systems.

A system is verified when every circle point is representable and the
representation map is continuous.  Two certificate routes exist: the
level-n expansion bound (> 1, or = 1 with no rotation word maps), and a
prefix set B whose refined sets sit inside their expansion intervals.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from moebius_systems import builtin, verify

for name in ("parabolic3", "hyperbolic4", "binary"):
    v = verify(builtin(name), mode="auto")
    print(f"{name:>12}: {v.status}  evidence={v.evidence}")
    for w in v.warnings:
        print(f"{'':>14}note: {w}")

# the continued-fraction system needs the prefix-set route: its expansion
# bounds sit exactly at 1 with the inversion letter being a rotation
cf = builtin("cf")
print(f"{'cf':>12}: level-1 bound alone is inconclusive ->",
      verify(cf, mode="qn", n=1).status)
v = verify(cf, mode="prefix_set", prefix_set=["01", "01-", "1", "1-"])
print(f"{'cf':>12}: {v.status}  B={v.evidence['B']}")

# a strict prefix-set check is honest about bad candidates: this quoted
# set fails containment at the doubled doubling block 22
v = verify(builtin("binary"), mode="prefix_set",
           prefix_set=["0", "1", "1-", "21", "21-", "22"])
print(f"{'binary':>12}: prefix-set route with B including 22 -> {v.status}"
      f" (not contained: {v.evidence['not_contained']})")
